"""Formal Harris-Taylor sheaf symbols and their conversion rules.

A symbol ``j_!HT(g, t, Pi) (x) rec(m)`` is a formal generator of the
Grothendieck group of perverse sheaves on the tower; the inducing slot holds
one irreducible word, so linear combinations in ``Pi`` become linear
combinations of symbols.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .groth import UNIT, VirtualRep, _key_order, lr, ltimes, rtimes, sh, sp
from .segments import (
    PI, CuspidalDatum, DomainError, NO_TWIST, ArrowWord, WeightTwist,
    dual, rec, xi,
)


class Kind(Enum):
    JSHRIEK = "j_!"
    INTERMEDIATE = "j_!*"
    RJSTAR = "Rj_*"
    HT_RESTRICTION = "h"
    # point-supported remainder on the supersingular stratum before it is resolved
    SUPERSINGULAR = "P"


JSHRIEK, INTERMEDIATE, RJSTAR, HT_RESTRICTION, SUPERSINGULAR = (
    Kind.JSHRIEK, Kind.INTERMEDIATE, Kind.RJSTAR, Kind.HT_RESTRICTION, Kind.SUPERSINGULAR)


class Functor(Enum):
    JSHRIEK_STAR = "j_!*"
    RJSTAR = "Rj_*"


@dataclass(frozen=True)
class SheafSymbol:
    kind: Kind
    g: int
    t: int
    base: CuspidalDatum
    inducing: object  # ArrowWord or UNIT
    twist: WeightTwist
    ambient_d: int

    def __post_init__(self):
        if not 1 <= self.t * self.g <= self.ambient_d:
            raise DomainError(f"stratum {self.t}*{self.g} outside 1..{self.ambient_d}")

    def sort_key(self):
        return (self.kind.value, self.g, self.t, self.base.label,
                _key_order((self.inducing, NO_TWIST)), self.twist.rec_factor, self.twist.tate,
                self.ambient_d)

    def text(self) -> str:
        w = self.inducing.text()
        return f"{self.kind.value}HT(g={self.g},t={self.t},{w}) (x) {self.twist.text()}"


class VirtualSheaf:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in dict(terms or {}).items() if c}

    def __add__(self, other: "VirtualSheaf") -> "VirtualSheaf":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        r = VirtualSheaf()
        r.terms = out
        return r

    def __neg__(self):
        return VirtualSheaf({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        return VirtualSheaf({k: n * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, VirtualSheaf) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[SheafSymbol, int]]:
        for k in sorted(self.terms, key=SheafSymbol.sort_key):
            yield k, self.terms[k]

    def twisted(self, tw: WeightTwist) -> "VirtualSheaf":
        out = Counter()
        for sym, c in self.terms.items():
            out[_retwist(sym, sym.twist + tw)] += c
        return VirtualSheaf(out)

    def restricted(self, t: int) -> "VirtualSheaf":
        return VirtualSheaf({k: c for k, c in self.terms.items() if k.t == t})

    def kinds(self):
        return {k.kind for k in self.terms}

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{c:+d}*{k.text()}" for k, c in self)

    def __repr__(self):
        return f"VirtualSheaf({self.text()})"


def _retwist(sym: SheafSymbol, tw: WeightTwist) -> SheafSymbol:
    return SheafSymbol(sym.kind, sym.g, sym.t, sym.base, sym.inducing, tw, sym.ambient_d)


def s_g(d: int, g: int) -> int:
    return d // g


def ht(kind: Kind, g: int, t: int, Pi: VirtualRep, twist: WeightTwist, d: int) -> VirtualSheaf:
    """Linear extension of a sheaf symbol to a virtual inducing representation."""
    out = Counter()
    for w, tw, c in Pi:
        base = w.base if w is not UNIT else PI
        out[SheafSymbol(kind, g, t, base, w, twist + tw, d)] += c
    return VirtualSheaf(out)


def _check_stratum(g, t, d):
    if g < 1 or g > d:
        raise DomainError(f"need 1 <= g <= d, got g={g}, d={d}")
    if not 1 <= t <= s_g(d, g):
        raise DomainError(f"t={t} outside 1..{s_g(d, g)}")


def rpsi_virtual(d: int, g: int) -> VirtualSheaf:
    """The vanishing-cycle class as an alternating sum of j_! extensions."""
    if g < 1 or g > d:
        raise DomainError(f"need 1 <= g <= d, got g={g}, d={d}")
    s = s_g(d, g)
    out = VirtualSheaf()
    for i in range(1, s + 1):
        for t in range(i, s + 1):
            tw = rec(Fraction(-(t * g - 2 + 2 * i - t), 2))
            out = out + (-1) ** (t - i) * ht(JSHRIEK, g, t, lr(i - 1, t - i), tw, d)
    return out


def _resolve_remainder(g, t, Pi, d, dual_side):
    """Point remainder after the supersingular vanishing: the i = s term, or nothing."""
    s = s_g(d, g)
    if d % g or t == s:
        return VirtualSheaf()
    return _conversion_term(g, t, s, Pi, d, dual_side)


def base_of(Pi: VirtualRep) -> CuspidalDatum:
    bases = {w.base for w, _, _ in Pi if w is not UNIT}
    if len(bases) > 1:
        raise DomainError("inducing representation mixes cuspidal lines")
    return bases.pop() if bases else PI


def _conversion_term(g, t, i, Pi, d, dual_side):
    b = base_of(Pi)
    if dual_side:
        return ht(INTERMEDIATE, g, i, ltimes(Pi, sp(i - t - 1, b)),
                  xi(Fraction((t - i) * (g + 1), 2)), d)
    return ht(INTERMEDIATE, g, i, rtimes(Pi, sp(i - t - 1, b)),
              xi(Fraction((i - t) * (g - 1), 2)), d)


def _to_intermediate(g, t, Pi, d, stage, dual_side):
    _check_stratum(g, t, d)
    if isinstance(Pi, ArrowWord):
        Pi = VirtualRep.of(Pi)
    s = s_g(d, g)
    top = s if (d % g or t == s) else s - 1
    out = VirtualSheaf()
    for i in range(t, top + 1):
        out = out + _conversion_term(g, t, i, Pi, d, dual_side)
    if top == s:
        return out
    if stage == "raw":
        return out + ht(SUPERSINGULAR, g, t, Pi, NO_TWIST, d)
    if stage != "resolved":
        raise DomainError(f"unknown stage {stage!r}")
    return out + _resolve_remainder(g, t, Pi, d, dual_side)


def jshriek_to_intermediate(g: int, t: int, Pi, d: int, stage: str = "resolved") -> VirtualSheaf:
    """j_!HT(g,t,Pi) = sum_{i>=t} j_!*HT(g,i,Pi x-> Sp_{i-t}) (x) Xi^{(i-t)(g-1)/2}.

    With ``stage="raw"`` and ``g | d`` the supersingular term is kept as an
    opaque remainder symbol; ``"resolved"`` replaces it by the point sheaf
    on the deepest stratum.
    """
    return _to_intermediate(g, t, Pi, d, stage, dual_side=False)


def rjstar_to_intermediate(g: int, t: int, Pi, d: int, stage: str = "resolved") -> VirtualSheaf:
    """Rj_*HT(g,t,Pi) = sum_{i>=t} j_!*HT(g,i,Pi <-x Sp_{i-t}) (x) Xi^{(t-i)(g+1)/2}."""
    return _to_intermediate(g, t, Pi, d, stage, dual_side=True)


def resolve_supersingular(vs: VirtualSheaf) -> VirtualSheaf:
    """Replace every remainder symbol by its resolved form (j_! side)."""
    out = VirtualSheaf()
    for sym, c in vs:
        if sym.kind is SUPERSINGULAR:
            Pi = VirtualRep.of(sym.inducing, sym.twist)
            out = out + c * _resolve_remainder(sym.g, sym.t, Pi, sym.ambient_d, False)
        else:
            out = out + VirtualSheaf({sym: c})
    return out


def perverse_p(g: int, t: int, d: int, twist: WeightTwist = NO_TWIST) -> VirtualSheaf:
    """The simple perverse sheaf P(g,t,pi) = j_!*HT(g,t,Sp_t)."""
    _check_stratum(g, t, d)
    return ht(INTERMEDIATE, g, t, sp(t - 1), twist, d)


def intermediate_alternating(g: int, t: int, d: int) -> VirtualSheaf:
    """P(g,t) as an alternating sum of j_! extensions from deeper strata."""
    _check_stratum(g, t, d)
    out = VirtualSheaf()
    for r in range(0, s_g(d, g) - t + 1):
        tw = rec(Fraction(-r * (g - 1), 2))
        out = out + (-1) ** r * ht(JSHRIEK, g, t + r, rtimes(sp(t - 1), sh(r - 1)), tw, d)
    return out


def substitute(vs: VirtualSheaf, kind: Kind, rule) -> VirtualSheaf:
    """Replace every symbol of ``kind`` by ``rule(g, t, Pi, d)`` twisted back."""
    out = VirtualSheaf()
    for sym, c in vs:
        if sym.kind is kind:
            repl = rule(sym.g, sym.t, VirtualRep.of(sym.inducing), sym.ambient_d)
            out = out + c * repl.twisted(sym.twist)
        else:
            out = out + VirtualSheaf({sym: c})
    return out


def mgr(s: int, k: int, g: int = 1) -> list[tuple[int, WeightTwist]]:
    """Strata and twists of the graded piece gr_k of the monodromy filtration."""
    if abs(k) >= s:
        return []
    return [(t, rec(Fraction(-(t * g - 1 + k), 2)))
            for t in range(abs(k) + 1, s + 1) if (t - k + 1) % 2 == 0]


def graded_piece(d: int, g: int, k: int) -> VirtualSheaf:
    out = VirtualSheaf()
    for t, tw in mgr(s_g(d, g), k, g):
        out = out + perverse_p(g, t, d, tw)
    return out


def main_identity_rhs(d: int, g: int) -> VirtualSheaf:
    s = s_g(d, g)
    out = VirtualSheaf()
    for k in range(1 - s, s):
        out = out + graded_piece(d, g, k)
    return out


@dataclass
class IdentityReport:
    ok: bool
    lhs: VirtualSheaf
    rhs: VirtualSheaf
    witness: tuple | None = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def first_difference(a: VirtualSheaf, b: VirtualSheaf):
    diff = a - b
    for sym, c in diff:
        return (sym.text(), a.terms.get(sym, 0), b.terms.get(sym, 0))
    return None


def verify_main_identity(d: int, g: int) -> IdentityReport:
    """Vanishing cycles through Prop-style conversion versus the graded pieces."""
    s = s_g(d, g)
    notes = []
    # the two printed shapes of the twist agree identically
    for i in range(1, s + 1):
        for t in range(i, s + 1):
            a = Fraction(-(t * g - 2 + 2 * i - t), 2)
            b = Fraction(-(t * (g - 1) + 2 * (i - 1)), 2)
            if a != b:
                notes.append(f"twist shapes differ at i={i}, t={t}: {a} vs {b}")
    lhs = substitute(rpsi_virtual(d, g), JSHRIEK,
                     lambda g_, t_, Pi, d_: jshriek_to_intermediate(g_, t_, Pi, d_))
    rhs = main_identity_rhs(d, g)
    ok = lhs == rhs and not notes
    return IdentityReport(ok, lhs, rhs, None if ok else first_difference(lhs, rhs), notes)


def round_trip(g: int, t: int, d: int) -> bool:
    """Conversion of the alternating j_! sum back to intermediate extensions."""
    back = substitute(intermediate_alternating(g, t, d), JSHRIEK,
                      lambda g_, t_, Pi, d_: jshriek_to_intermediate(g_, t_, Pi, d_))
    return back == perverse_p(g, t, d, rec(0))


def verdier_dual_of_conversion(g: int, t: int, Pi: VirtualRep, d: int) -> bool:
    """Dualizing each inducing word of the j_! conversion gives the Rj_* one.

    Terms are matched stratum by stratum after dualizing the words; the
    twists must satisfy the exponent swap (g-1) <-> (g+1), i.e.
    ``tate_j! * (g+1) + tate_Rj* * (g-1) = 0`` on every stratum.
    """
    if isinstance(Pi, ArrowWord):
        Pi = VirtualRep.of(Pi)
    left = jshriek_to_intermediate(g, t, Pi, d)
    right = rjstar_to_intermediate(g, t, Pi.map_words(dual), d)

    def by_stratum(vs, f):
        out = {}
        for sym, c in vs:
            out.setdefault(sym.t, Counter())[(f(sym.inducing), sym.twist.rec_factor)] += c
        return out

    def twists(vs):
        out = {}
        for sym, _ in vs:
            out.setdefault(sym.t, set()).add(sym.twist.tate)
        return out

    if by_stratum(left, dual) != by_stratum(right, lambda w: w):
        return False
    tl, tr = twists(left), twists(right)
    for i in tl:
        if len(tl[i]) != 1 or len(tr.get(i, ())) != 1:
            return False
        a, b = next(iter(tl[i])), next(iter(tr[i]))
        if a * (g + 1) + b * (g - 1) != 0:
            return False
    return True


def cohomology_sheaves(g: int, t: int, Pi, i: int, d: int, functor: Functor = Functor.JSHRIEK_STAR) -> VirtualSheaf:
    """Cohomology sheaves h^i of j_!*HT or Rj_*HT, as restriction symbols."""
    if isinstance(Pi, ArrowWord):
        Pi = VirtualRep.of(Pi)
    s = s_g(d, g)
    if not 1 <= t <= s:
        return VirtualSheaf()
    out = VirtualSheaf()
    if Functor(functor) is Functor.JSHRIEK_STAR:
        for a in range(0, s - t + 1):
            if i == t * g - d + a * (g - 1):
                out = out + ht(HT_RESTRICTION, g, t + a, rtimes(Pi, sh(a - 1, base_of(Pi))),
                               xi(Fraction(a * (g - 1), 2)), d)
        return out
    for n in range(0, s - t + 1):
        for r in range(0, s - t - n + 1):
            if n * g + r * (g - 1) != i:
                continue
            b = base_of(Pi)
            rep = rtimes(ltimes(Pi, sp(n - 1, b)), sh(r - 1, b))
            out = out + ht(HT_RESTRICTION, g, t + n + r, rep,
                           xi(Fraction(n * (g + 1) + r * (g - 1), 2)), d)
    return out


class BlockKind(Enum):
    SP = "SP"
    SPEH = "SPEH"


def local_component_admissible(d: int, blocks) -> bool:
    """Dimension and parity constraints on a local component built from blocks."""
    blocks = [(int(t), int(g), BlockKind(k) if not isinstance(k, BlockKind) else k) for t, g, k in blocks]
    if not blocks:
        raise DomainError("empty block list")
    if any(t < 1 or g < 1 for t, g, _ in blocks):
        raise DomainError("block sizes must be positive")
    if sum(t * g for t, g, _ in blocks) != d:
        return False
    sp_lengths = [t for t, _, k in blocks if k is BlockKind.SP]
    if any(k is BlockKind.SPEH and t > 1 for t, _, k in blocks):
        return all(t % 2 == 1 for t in sp_lengths)
    return len({t % 2 for t in sp_lengths}) <= 1
