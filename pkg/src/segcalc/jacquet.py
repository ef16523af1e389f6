"""Jacquet modules through linear extensions.

A constituent of the full Jacquet module of a word on ``s`` points is a
sequence ``(v_1, ..., v_s)`` of support values read left to right.  For the
standard parabolic, slot ``i`` is RIGHT exactly when ``i`` occurs before
``i + 1``; so Sp_s gives the decreasing sequence and Speh_s the increasing
one.  The opposite parabolic reverses every sequence.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable

from .groth import UNIT, VirtualRep
from .segments import (
    LEFT, PI, RIGHT, ArrowWord, CuspidalDatum, DomainError, ZERO,
    as_fraction, fmt_fraction, speh, steinberg, xi,
)


class Side(Enum):
    STANDARD = "standard"
    OPPOSITE = "opposite"


STANDARD, OPPOSITE = Side.STANDARD, Side.OPPOSITE


class Prefix(Enum):
    STEINBERG = "steinberg-prefix"
    SPEH = "speh-prefix"


class Signature:
    """Multiset of value sequences."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable | Counter = ()):
        c = Counter(entries)
        self.entries = Counter({k: v for k, v in c.items() if v})

    @property
    def support(self) -> tuple:
        if not self.entries:
            return ()
        return tuple(sorted(next(iter(self.entries))))

    def __eq__(self, other):
        return isinstance(other, Signature) and self.entries == other.entries

    def __len__(self):
        return sum(self.entries.values())

    def __iter__(self):
        for k in sorted(self.entries):
            for _ in range(self.entries[k]):
                yield k

    def __contains__(self, seq):
        return self.entries.get(tuple(seq), 0) > 0

    def sorted_list(self) -> list[list[int]]:
        return [list(k) for k in self]

    def is_effective(self):
        return all(v > 0 for v in self.entries.values())

    def __repr__(self):
        return f"Signature({self.sorted_list()})"


def _predecessors(w: ArrowWord) -> list[set[int]]:
    pred = [set() for _ in range(w.points)]
    for i, a in enumerate(w.arrows):
        if a is RIGHT:
            pred[i + 1].add(i)
        else:
            pred[i].add(i + 1)
    return pred


def _extensions(pred: list[set[int]]):
    s = len(pred)
    out, seq, used = [], [], [False] * s

    def rec():
        if len(seq) == s:
            out.append(tuple(seq))
            return
        for v in range(s):
            if not used[v] and all(used[p] for p in pred[v]):
                used[v] = True
                seq.append(v)
                rec()
                seq.pop()
                used[v] = False

    rec()
    return out


@lru_cache(maxsize=4096)
def _ext_cached(arrows: tuple) -> tuple:
    return tuple(_extensions(_predecessors(ArrowWord(PI, arrows))))


def linear_extensions(w: ArrowWord) -> Signature:
    return Signature(_ext_cached(w.arrows))


def linear_extensions_bruteforce(w: ArrowWord) -> Signature:
    """Oracle: filter all of S_s against the arrow constraints."""
    out = []
    for p in permutations(range(w.points)):
        pos = {v: k for k, v in enumerate(p)}
        if all((pos[i] < pos[i + 1]) == (a is RIGHT) for i, a in enumerate(w.arrows)):
            out.append(p)
    return Signature(out)


def word_of_permutation(seq, base: CuspidalDatum = PI, center=0) -> ArrowWord:
    seq = tuple(seq)
    if sorted(seq) != list(range(len(seq))):
        raise DomainError(f"{seq} is not a permutation of 0..{len(seq) - 1}")
    pos = {v: k for k, v in enumerate(seq)}
    arrows = tuple(RIGHT if pos[i] < pos[i + 1] else LEFT for i in range(len(seq) - 1))
    return ArrowWord(base, arrows, as_fraction(center))


def full_jacquet(w: ArrowWord, side: Side = STANDARD) -> Signature:
    ext = linear_extensions(w).entries
    if Side(side) is OPPOSITE:
        return Signature(Counter({tuple(reversed(k)): v for k, v in ext.items()}))
    return Signature(ext)


def signature_split(w: ArrowWord, t: int, side: Side = STANDARD) -> Counter:
    """Raw split of the full Jacquet module into first-t / remaining values."""
    if not 1 <= t <= w.points:
        raise DomainError(f"t={t} outside 1..{w.points}")
    out = Counter()
    for seq, c in full_jacquet(w, side).entries.items():
        out[(seq[:t], seq[t:])] += c
    return out


def two_block_jacquet(w: ArrowWord, t: int, side: Side = STANDARD, h: int | None = None):
    """Jacquet module along the parabolic with blocks (tg, (s-t)g).

    Pass ``h`` (a block size in GL_1 units) to get the vanishing case: the
    result is ``ZERO`` unless the cuspidal rank divides ``h``.  For Sp_s and
    Speh_s a pair of centered words is returned, the second one being
    ``UNIT`` when ``t = s``; any other word gives the raw split.
    """
    g = w.base.rank
    if h is not None:
        if h % g:
            return ZERO
        t = h // g
    s = w.points
    if not 1 <= t <= s:
        raise DomainError(f"t={t} outside 1..{s}")
    side = Side(side)
    if s > 1 and not (w.is_steinberg() or w.is_speh()):
        return signature_split(w, t, side)
    c = w.center
    hi, lo = Fraction(s - t, 2), Fraction(-t, 2)
    make = steinberg if w.is_steinberg() else speh
    # the first block takes the top values exactly when the full sequence decreases
    descending = w.is_steinberg() == (side is STANDARD)
    if s == 1:
        descending = True
    first = make(t, w.base, c + (hi if descending else -hi))
    second = make(s - t, w.base, c + (lo if descending else -lo)) if t < s else UNIT
    return first, second


def pair_signature(first, second, side: Side = STANDARD) -> Counter:
    """Split signature predicted by a closed-form pair, in value coordinates.

    Values are exponents relative to the lowest point of the combined
    support, so the result compares directly with :func:`signature_split`.
    """
    blocks = [b for b in (first, second) if b is not UNIT]
    lows = [b.center - Fraction(b.points - 1, 2) for b in blocks]
    base = min(lows)
    sigs = []
    for b, lo in zip(blocks, lows):
        off = lo - base
        if off.denominator != 1:
            raise DomainError("blocks do not share an integral lattice")
        sigs.append([tuple(int(v + off) for v in seq) for seq in full_jacquet(b, side).entries])
    out = Counter()
    if len(sigs) == 1:
        for a in sigs[0]:
            out[(a, ())] += 1
        return out
    for a in sigs[0]:
        for b in sigs[1]:
            out[(a, b)] += 1
    return out


# ---------------------------------------------------------------------------
# Speh_s(Sp_t): the ladder family

def _token_multiplicity(s: int, t: int) -> dict[int, int]:
    mult = Counter()
    for k in range(s):
        for a in range(t):
            mult[k + a] += 1
    return dict(mult)


def row_constraints(s: int, t: int, reading: str = "mirrored") -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Precedence pairs ``(x, y)``: token x must occur before token y.

    Tokens are ``(value, occurrence)`` with 1-based occurrence index.  The
    ``printed`` reading takes both families of inequalities on occurrence
    positions literally; ``mirrored`` reverses each of them, which is the
    form compatible with decreasing Steinberg sequences.
    """
    if reading not in ("printed", "mirrored"):
        raise DomainError(f"unknown reading {reading!r}")
    rel = []
    for k in range(s - 1):
        for i in range(t):
            a = (t - 1 + k - i, min(k + 1, i + 1))
            b = (t + k - i, min(k + 2, i + 1))
            rel.append((a, b))  # n_a > n_b
    for k in range(s):
        for i in range(t):
            for j in range(i + 1, t):
                a = (t - 1 + k - i, min(k + 1, i + 1))
                b = (t - 1 + k - j, min(k + 1, j + 1))
                rel.append((a, b))
    # printed "n_a > n_b" means b precedes a
    if reading == "printed":
        return [(b, a) for a, b in rel]
    return rel


def satisfies_row_conditions(seq, s: int, t: int, reading: str = "mirrored") -> bool:
    pos, seen = {}, Counter()
    for p, v in enumerate(seq):
        seen[v] += 1
        pos[(v, seen[v])] = p
    for x, y in row_constraints(s, t, reading):
        if x not in pos or y not in pos:
            return False
        if not pos[x] < pos[y]:
            return False
    return True


def speh_of_steinberg_extensions(s: int, t: int, reading: str = "mirrored") -> Signature:
    """Sequences in the support of Speh_s(Sp_t) cut out by the two conditions."""
    if s < 1 or t < 1:
        raise DomainError("s, t >= 1")
    mult = _token_multiplicity(s, t)
    tokens = [(v, o) for v in sorted(mult) for o in range(1, mult[v] + 1)]
    pred = {x: set() for x in tokens}
    for v, o in tokens:
        if o > 1:
            pred[(v, o)].add((v, o - 1))
    for x, y in row_constraints(s, t, reading):
        if x not in pred or y not in pred:
            return Signature()
        pred[y].add(x)
    out, seq, used = [], [], set()
    n = len(tokens)

    def rec():
        if len(seq) == n:
            out.append(tuple(v for v, _ in seq))
            return
        for x in tokens:
            if x not in used and pred[x] <= used:
                used.add(x)
                seq.append(x)
                rec()
                seq.pop()
                used.discard(x)

    rec()
    return Signature(out)


def _ladder_terms(s: int, t: int):
    """Determinantal expansion of Speh_s(Sp_t) into products of Steinberg segments.

    Yields ``(sign, [segments])`` with each segment a decreasing value tuple.
    """
    # only permutations with w(i) >= i - t contribute; prune while building them
    used = [False] * s

    def rec(i, segs, inv):
        if i == s:
            yield (-1 if inv % 2 else 1), list(segs)
            return
        for v in range(max(0, i - t), s):
            if used[v]:
                continue
            used[v] = True
            # a value below i + 1 - t left unused could never be placed later
            if all(used[u] for u in range(max(0, i + 1 - t))):
                top = v + t - 1
                seg = [tuple(range(top, i - 1, -1))] if top >= i else []
                extra = sum(1 for u in range(v + 1, s) if used[u])
                yield from rec(i + 1, segs + seg, inv + extra)
            used[v] = False

    yield from rec(0, [], 0)


def _shuffles(segs) -> Counter:
    out = Counter({(): 1})
    for seg in segs:
        nxt = Counter()
        for pre, c in out.items():
            n = len(pre) + len(seg)
            for slots in _combinations(n, len(seg)):
                res, it_p, it_s = [], iter(pre), iter(seg)
                sl = set(slots)
                for k in range(n):
                    res.append(next(it_s) if k in sl else next(it_p))
                nxt[tuple(res)] += c
        out = nxt
    return out


def _combinations(n, k):
    from itertools import combinations

    return combinations(range(n), k)


def ladder_oracle_unpruned(s: int, t: int) -> Signature:
    total = Counter()
    for sign, segs in _ladder_terms(s, t):
        for seq, c in _shuffles(segs).items():
            total[seq] += sign * c
    return Signature(total)


def _multinomial(parts) -> int:
    n = sum(parts)
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def ladder_oracle(s: int, t: int) -> Signature:
    """Full Jacquet module of Speh_s(Sp_t) via the determinantal formula.

    The signed shuffle sum is walked as a prefix tree.  A prefix whose signed
    number of completions vanishes is dropped: the Jacquet module of an
    actual representation has nonnegative multiplicities, so no sequence
    with that prefix survives.  Effectivity of the result is checked.
    """
    merged = Counter()
    for sign, segs in _ladder_terms(s, t):
        merged[tuple(sorted(segs))] += sign
    terms = [(c, list(segs)) for segs, c in sorted(merged.items()) if c]
    n = s * t
    out = Counter()
    # states: list over terms of {pointer tuple: count}
    start = [{tuple(0 for _ in segs): 1} for _, segs in terms]

    def completions(states):
        tot = 0
        for (sign, segs), st in zip(terms, states):
            for ptr, c in st.items():
                tot += sign * c * _multinomial([len(sg) - p for sg, p in zip(segs, ptr)])
        return tot

    def rec(prefix, states):
        if len(prefix) == n:
            c = sum(sign * sum(st.values()) for (sign, _), st in zip(terms, states))
            if c:
                out[tuple(prefix)] += c
            return
        cands = set()
        for (_, segs), st in zip(terms, states):
            for ptr in st:
                for sg, p in zip(segs, ptr):
                    if p < len(sg):
                        cands.add(sg[p])
        for v in sorted(cands):
            new = []
            for (_, segs), st in zip(terms, states):
                nst = Counter()
                for ptr, c in st.items():
                    for k, (sg, p) in enumerate(zip(segs, ptr)):
                        if p < len(sg) and sg[p] == v:
                            nst[ptr[:k] + (p + 1,) + ptr[k + 1:]] += c
                new.append(nst)
            if completions(new) == 0:
                continue
            prefix.append(v)
            rec(prefix, new)
            prefix.pop()

    rec([], start)
    sig = Signature(out)
    if not sig.is_effective():
        raise ArithmeticError("ladder expansion produced a negative multiplicity")
    return sig


def _prefix_run(seq, r, step) -> bool:
    return len(seq) >= r and all(seq[k + 1] - seq[k] == step for k in range(r - 1))


def red_prefix_witness(s: int, t: int, r: int, orientation: Prefix):
    """First sequence starting with a consecutive run of length r, or None."""
    step = -1 if Prefix(orientation) is Prefix.STEINBERG else 1
    for seq in speh_of_steinberg_extensions(s, t):
        if _prefix_run(seq, r, step):
            return seq
    return None


def red_prefix_vanishing(s: int, t: int, r: int, orientation: Prefix = Prefix.STEINBERG) -> bool:
    if r < 1:
        raise DomainError("r >= 1")
    if r > s * t:
        return True
    return red_prefix_witness(s, t, r, orientation) is None


@dataclass(frozen=True, order=True)
class SpehOfSteinberg:
    """The ladder Speh_s(Sp_t) over a cuspidal line, centered at ``center``."""

    s: int
    t: int
    base: CuspidalDatum = PI
    center: Fraction = Fraction(0)

    @property
    def points(self):
        return self.s * self.t

    def as_word(self):
        if self.s == 0 or self.t == 0:
            return UNIT
        if self.s == 1:
            return steinberg(self.t, self.base, self.center)
        if self.t == 1:
            return speh(self.s, self.base, self.center)
        return None

    def text(self):
        return f"Speh_{self.s}(Sp_{self.t})[{self.base.label}]@{fmt_fraction(self.center)}"

    def short(self):
        return f"Speh_{self.s}(Sp_{self.t})"


def ladder(s: int, t: int, base: CuspidalDatum = PI, center=0):
    sym = SpehOfSteinberg(s, t, base, as_fraction(center))
    w = sym.as_word()
    return w if w is not None else sym


def red_closed_form(s: int, t: int, r: int, g: int = 1) -> VirtualRep:
    """Closed form of the Steinberg reduction of Speh_s(Sp_t) at r = max(s, t)."""
    if r != max(s, t):
        raise DomainError(f"r must equal max(s, t) = {max(s, t)}")
    out = VirtualRep()
    if r > t or r == s == t:
        body = ladder(s, t - 1, center=Fraction(-(s * g - 1), 2))
        out = out + VirtualRep.of(body, xi(Fraction((t - 1) * (s * g - 1), 2)), (-1) ** (r - 1))
    if r > s or r == s == t:
        body = ladder(s - 1, t, center=Fraction(-(t * g + 1), 2))
        out = out + VirtualRep.of(body, xi(Fraction((s - 1) * (t * g + 1), 2)))
    return out
