"""Verification suites behind ``segcalc verify``.

Every check is a named callable returning ``None`` on success or a short
witness string (the first discrepant term) on failure.
"""
from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from . import jacquet as jq
from .groth import decompose_signature, expand_product, standard_module, telescope
from .jacquet import Side, linear_extensions, linear_extensions_bruteforce, word_of_permutation
from .segments import (
    COSOCLE, FULL, LEFT, RIGHT, SOCLE, all_words, dual, junction_compose, normalize,
    steinberg, speh, zelevinsky_involution,
)
from .sheaves import mgr, round_trip, s_g, verdier_dual_of_conversion, verify_main_identity
from .groth import sp
from . import spectral as spc

SUITES = ("segments", "jacquet", "groth", "sheaf", "spectral")


@dataclass
class CheckResult:
    name: str
    parameters: dict
    status: str
    witness: str | None = None
    seconds: float = 0.0

    def rerun(self, max_s: int) -> str:
        return f"segcalc verify --only {self.name} --max-s {max_s}"


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    max_s: int = 0

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            line = f"{c.status.upper()}\t{c.name}\t{c.parameters}\t{c.seconds:.3f}s"
            if c.witness:
                line += f"\twitness: {c.witness}\trerun: {c.rerun(self.max_s)}"
            out.append(line)
        n_fail = sum(c.status != "pass" for c in self.checks)
        out.append(f"# {len(self.checks) - n_fail} passed, {n_fail} failed in {self.elapsed:.2f}s")
        return out

    def to_json(self) -> dict:
        return {"elapsed": round(self.elapsed, 3), "max_s": self.max_s,
                "checks": [{"name": c.name, "parameters": c.parameters, "status": c.status,
                            **({"witness": c.witness} if c.witness else {})} for c in self.checks]}


# ---------------------------------------------------------------------------
# segments

def _words(n):
    for s in range(1, n + 1):
        yield from all_words(s)


def chk_normalize(n):
    for w in _words(n):
        runs = w.runs
        if normalize(runs) != runs or sum(k for k, _ in runs) != w.points - 1:
            return w.text()


def chk_involutions(n):
    for w in _words(n):
        if dual(dual(w)) != w:
            return f"dual twice {w.text()}"
        if zelevinsky_involution(zelevinsky_involution(w)) != w:
            return f"involution twice {w.text()}"
        if dual(zelevinsky_involution(w)) != zelevinsky_involution(dual(w)):
            return f"dual/involution {w.text()}"


def _pairs(n):
    for a in range(1, n):
        for b in range(1, n - a + 1):
            for A in all_words(a):
                for B in all_words(b):
                    yield A, B


def chk_junction(n):
    for A, B in _pairs(n):
        for d in (LEFT, RIGHT):
            full = junction_compose(A, B, d, FULL)
            if full != junction_compose(A, B, d, SOCLE) + junction_compose(A, B, d, COSOCLE):
                return f"FULL != SOCLE + COSOCLE for {A.short()} {d.value} {B.short()}"
        if junction_compose(A, B, LEFT, FULL) != junction_compose(B, A, RIGHT, FULL):
            return f"commutativity {A.short()} {B.short()}"
        dl = dual(junction_compose(A, B, RIGHT, COSOCLE).words()[0])
        dr = junction_compose(dual(A), dual(B), LEFT, SOCLE).words()[0]
        if dl != dr:
            return f"dual law {A.short()} {B.short()}: {dl.text()} vs {dr.text()}"


def chk_associativity(n):
    for a in range(1, n):
        for b in range(1, n - a):
            for c in range(1, n - a - b + 1):
                for A in all_words(a):
                    for B in all_words(b):
                        for C in all_words(c):
                            cos = lambda x, y: junction_compose(x, y, RIGHT, COSOCLE).words()[0]
                            if cos(cos(A, B), C) != cos(A, cos(B, C)):
                                return f"{A.short()} {B.short()} {C.short()}"


# ---------------------------------------------------------------------------
# jacquet

def chk_partition(n):
    for s in range(1, min(n, 7) + 1):
        seen = Counter()
        for w in all_words(s):
            for seq in linear_extensions(w).entries:
                seen[seq] += 1
        if set(seen.values()) != {1} or len(seen) != len(list(permutations(range(s)))):
            return f"s={s}: {len(seen)} sequences, multiplicities {sorted(set(seen.values()))}"
        for seq in permutations(range(s)):
            if seq not in linear_extensions(word_of_permutation(seq)):
                return f"word_of_permutation{seq}"


def chk_extensions_bruteforce(n):
    for w in _words(min(n, 6)):
        if linear_extensions(w) != linear_extensions_bruteforce(w):
            return w.text()


def chk_closed_forms(n):
    for s in range(1, min(n, 7) + 1):
        for w in (steinberg(s), speh(s)):
            for t in range(1, s + 1):
                for side in Side:
                    first, second = jq.two_block_jacquet(w, t, side)
                    if jq.pair_signature(first, second, side) != jq.signature_split(w, t, side):
                        return f"{w.short()} t={t} {side.name}"


def chk_speh_of_steinberg(n):
    for s in range(1, 13):
        for t in range(1, 13):
            if s * t > min(12, 2 * n):
                continue
            a, b = jq.speh_of_steinberg_extensions(s, t), jq.ladder_oracle(s, t)
            if a != b:
                return f"(s,t)=({s},{t}): {len(a)} vs oracle {len(b)}"


def chk_red_prefix(n):
    for s in range(1, 13):
        for t in range(1, 13):
            if s * t > min(12, 2 * n):
                continue
            for r in range(max(s, t) + 1, s * t + 1):
                for o in jq.Prefix:
                    if not jq.red_prefix_vanishing(s, t, r, o):
                        return f"(s,t,r)=({s},{t},{r}) {o.name}: {jq.red_prefix_witness(s, t, r, o)}"


# ---------------------------------------------------------------------------
# groth

def _shuffle_multiset(xs, ys):
    out = Counter()
    n = len(xs) + len(ys)
    from itertools import combinations

    for pos in combinations(range(n), len(xs)):
        it_x, it_y, seq = iter(xs), iter(ys), []
        ps = set(pos)
        for k in range(n):
            seq.append(next(it_x) if k in ps else next(it_y))
        out[tuple(seq)] += 1
    return out


def chk_product_law(n):
    for A, B in _pairs(min(n, 7)):
        for d in (RIGHT, LEFT):
            lo, hi = (A, B) if d is RIGHT else (B, A)
            want = Counter()
            for x in linear_extensions(lo).entries:
                for y in linear_extensions(hi).entries:
                    want += _shuffle_multiset(x, tuple(v + lo.points for v in y))
            got = expand_product(A, B, d).signature().entries
            if Counter(got) != want:
                return f"{A.short()} {d.value} {B.short()}"


def chk_telescope(n):
    for t in range(1, max(n, 1) + 1):
        for i in range(1, t + 1):
            if telescope(t, i) != sp(t - 1):
                return f"telescope({t},{i}) = {telescope(t, i).text()}"


def chk_standard_module(n):
    for s in range(1, min(n, 7) + 1):
        sig = standard_module(s).signature()
        if Counter(sig.entries) != Counter(permutations(range(s))):
            return f"s={s}"
        if decompose_signature(sig) != standard_module(s):
            return f"decompose s={s}"


# ---------------------------------------------------------------------------
# sheaf

def _dg_pairs(n, gmax=6):
    for g in range(1, gmax + 1):
        for d in range(g, (n + 1) * g):
            if s_g(d, g) <= n:
                yield d, g


def chk_main_identity(n):
    for d, g in _dg_pairs(min(n, 6)):
        rep = verify_main_identity(d, g)
        if not rep.ok:
            return f"(d,g)=({d},{g}): {rep.witness}"


def chk_round_trip(n):
    for d, g in _dg_pairs(min(n, 6), 3):
        for t in range(1, s_g(d, g) + 1):
            if not round_trip(g, t, d):
                return f"(g,t,d)=({g},{t},{d})"


def chk_verdier_conversion(n):
    for d, g in _dg_pairs(min(n, 6), 3):
        for t in range(1, s_g(d, g) + 1):
            if not verdier_dual_of_conversion(g, t, sp(t - 1), d):
                return f"(g,t,d)=({g},{t},{d})"


def chk_mgr_symmetry(n):
    for s in range(1, max(n, 1) + 1):
        for k in range(1 - s, s):
            a, b = mgr(s, k), mgr(s, -k)
            if [t for t, _ in a] != [t for t, _ in b]:
                return f"mgr({s},{k}) strata"
            for (_, x), (_, y) in zip(a, b):
                if y.tate - x.tate != k:
                    return f"mgr({s},{k}) shift {y.tate - x.tate}"


# ---------------------------------------------------------------------------
# spectral

def chk_mle(n):
    for s in range(1, max(n, 1) + 1):
        rep = spc.mle_degeneration_report(s)
        if not rep.ok:
            return f"s={s}: {rep.problems[0]}"


def chk_euler(n):
    for s in range(1, max(n, 1) + 1):
        for g in (1, 2, 3):
            if not spc.euler_consistency(s * g, g, s):
                return f"(s,g)=({s},{g})"


def chk_global(n):
    for s in range(1, max(n, 1) + 1):
        for g in (1, 2, 3):
            if s * g > 3 * max(n, 2):
                continue
            for case in spc.Case:
                rep = spc.global_ss_check(s * g, g, case)
                if not rep.ok:
                    return f"(s,g,case)=({s},{g},{case.value}): {rep.problems[0]}"


def chk_mge(n):
    for d, g in _dg_pairs(min(n, 4), 3):
        bad = spc.mge_matches_sheaves(d, g)
        if bad:
            return f"(d,g)=({d},{g}) cell {bad[0]}"


def chk_tables(n):
    for s in range(1, max(n, 1) + 1):
        for g in (1, 2, 3):
            for t in range(1, s + 1):
                for case in spc.Case:
                    if not spc.table_duality(case, g, t, s):
                        return f"duality {case.value} (g,t,s)=({g},{t},{s})"
                if not spc.speh_jshriek_euler(g, t, s):
                    return f"Speh J! Euler (g,t,s)=({g},{t},{s})"


CHECKS = {
    "segments.normalize": chk_normalize,
    "segments.involutions": chk_involutions,
    "segments.junction": chk_junction,
    "segments.associativity": chk_associativity,
    "jacquet.partition": chk_partition,
    "jacquet.bruteforce": chk_extensions_bruteforce,
    "jacquet.closed_forms": chk_closed_forms,
    "jacquet.speh_of_steinberg": chk_speh_of_steinberg,
    "jacquet.red_prefix": chk_red_prefix,
    "groth.product_law": chk_product_law,
    "groth.telescope": chk_telescope,
    "groth.standard_module": chk_standard_module,
    "sheaf.main_identity": chk_main_identity,
    "sheaf.round_trip": chk_round_trip,
    "sheaf.verdier_conversion": chk_verdier_conversion,
    "sheaf.mgr_symmetry": chk_mgr_symmetry,
    "spectral.mle_degeneration": chk_mle,
    "spectral.euler_consistency": chk_euler,
    "spectral.global_ss": chk_global,
    "spectral.mge_vs_sheaves": chk_mge,
    "spectral.tables": chk_tables,
}


def threads() -> int:
    try:
        return max(1, int(os.environ.get("SEGCALC_THREADS", "1")))
    except ValueError:
        return 1


def select(suite: str = "all", only: str | None = None) -> list[str]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    names = [n for n in CHECKS if suite == "all" or n.startswith(suite + ".")]
    if only:
        names = [n for n in names if n == only]
        if not names:
            raise ValueError(f"unknown check {only!r}")
    return names


def _run_one(name, max_s):
    t0 = time.perf_counter()
    try:
        wit = CHECKS[name](max_s)
    except Exception as exc:  # a crash is a failure with the exception as witness
        wit = f"{type(exc).__name__}: {exc}"
    return CheckResult(name, {"max_s": max_s}, "pass" if wit is None else "fail", wit,
                       time.perf_counter() - t0)


def run(suite: str = "all", max_s: int = 6, only: str | None = None, workers: int | None = None) -> VerificationReport:
    if max_s < 1:
        raise ValueError("max_s >= 1")
    names = select(suite, only)
    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers or threads()) as ex:
        results = list(ex.map(lambda n: _run_one(n, max_s), names))
    return VerificationReport(results, time.perf_counter() - t0, max_s)
