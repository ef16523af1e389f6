"""Grothendieck-group arithmetic over arrow words."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterator

from .segments import (
    FULL, LEFT, PI, RIGHT, ArrowWord, CuspidalDatum, Direction, DomainError,
    NO_TWIST, UnsupportedSupportError, WeightTwist, all_words, junction_compose,
    steinberg, word, L, R,
)


class InconsistentSignatureError(ValueError):
    pass


class _Unit:
    """The trivial representation of GL_0, the empty product."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    points = 0

    def text(self):
        return "1"

    def __repr__(self):
        return "UNIT"

    def __reduce__(self):
        return (_Unit, ())


UNIT = _Unit()


def _key_order(key):
    w, tw = key
    if w is UNIT:
        return (0, 0, "", (), 0, tw.rec_factor, tw.tate)
    if not isinstance(w, ArrowWord):
        return (w.points, 1, w.text(), (), 0, tw.rec_factor, tw.tate)
    return (w.points, 0, w.base.label, tuple(a.value for a in w.arrows), w.center, tw.rec_factor, tw.tate)


class VirtualRep:
    """Finite formal sum of (word, twist) with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for k, c in dict(terms).items():
                if c:
                    self.terms[k] = self.terms.get(k, 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def of(cls, w, twist: WeightTwist = NO_TWIST, coeff: int = 1) -> "VirtualRep":
        return cls({(w, twist): coeff})

    @classmethod
    def one(cls) -> "VirtualRep":
        return cls.of(UNIT)

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        r = VirtualRep()
        r.terms = out
        return r

    def __neg__(self):
        r = VirtualRep()
        r.terms = {k: -c for k, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return VirtualRep({k: n * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VirtualRep):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator:
        for k in sorted(self.terms, key=_key_order):
            yield k[0], k[1], self.terms[k]

    def twisted(self, tw: WeightTwist) -> "VirtualRep":
        return VirtualRep({(w, t + tw): c for (w, t), c in self.terms.items()})

    def untwisted(self) -> "VirtualRep":
        out = Counter()
        for (w, _), c in self.terms.items():
            out[(w, NO_TWIST)] += c
        return VirtualRep(out)

    def map_words(self, f) -> "VirtualRep":
        out = VirtualRep()
        for (w, t), c in self.terms.items():
            out = out + VirtualRep.of(f(w), t, c)
        return out

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def words(self):
        return [w for w, _, _ in self]

    def signature(self):
        from .jacquet import Signature, linear_extensions

        out = Counter()
        for w, _, c in self:
            if w is UNIT:
                continue
            for seq in linear_extensions(w).entries:
                out[seq] += c
        return Signature(out)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, tw, c in self:
            body = w.text() if tw == NO_TWIST else f"{w.text()} (x) {tw.text()}"
            parts.append(f"{c:+d}*{body}")
        return " ".join(parts)

    def __repr__(self):
        return f"VirtualRep({self.text()})"


def _as_virtual(x) -> VirtualRep:
    if isinstance(x, VirtualRep):
        return x
    if x is None or x is UNIT:
        return VirtualRep.one()
    return VirtualRep.of(x)


def expand_product(A, B, direction: Direction = RIGHT) -> VirtualRep:
    """``A x B`` in the Grothendieck group, bilinear in both slots.

    Irreducible operands give the two junction orientations.  Twists of the
    two factors add up; the unit ``UNIT`` is neutral.
    """
    A, B = _as_virtual(A), _as_virtual(B)
    out = VirtualRep()
    for (a, ta), ca in A.terms.items():
        for (b, tb), cb in B.terms.items():
            tw = ta + tb
            if a is UNIT or b is UNIT:
                w = b if a is UNIT else a
                out = out + VirtualRep.of(w, tw, ca * cb)
                continue
            prod = junction_compose(a, b, direction, FULL)
            out = out + VirtualRep({(w, t + tw): ca * cb * c for (w, t), c in prod.terms.items()})
    return out


def rtimes(A, B) -> VirtualRep:
    return expand_product(A, B, RIGHT)


def ltimes(A, B) -> VirtualRep:
    return expand_product(A, B, LEFT)


def sp(n: int, base: CuspidalDatum = PI):
    """Bracket ``[<n]``: Sp_{n+1}; ``n = -1`` is the empty factor."""
    if n == -1:
        return VirtualRep.one()
    if n < -1:
        raise DomainError(f"[<{n}] is undefined")
    return VirtualRep.of(steinberg(n + 1, base))


def sh(n: int, base: CuspidalDatum = PI):
    """Bracket ``[>n]``: Speh_{n+1}; ``n = -1`` is the empty factor."""
    if n == -1:
        return VirtualRep.one()
    if n < -1:
        raise DomainError(f"[>{n}] is undefined")
    return VirtualRep.of(word(R(n), base=base))


def lr(a: int, b: int, base: CuspidalDatum = PI) -> VirtualRep:
    """Bracket ``[<a, >b]`` on ``a + b + 1`` points."""
    return VirtualRep.of(word(L(a), R(b), base=base))


def decompose_signature(sig) -> VirtualRep:
    """Recover the virtual sum of words whose extension sets give ``sig``."""
    from .jacquet import linear_extensions, word_of_permutation

    entries = Counter({k: v for k, v in sig.entries.items() if v})
    if not entries:
        return VirtualRep()
    support = sorted(next(iter(entries)))
    if len(set(support)) != len(support):
        raise UnsupportedSupportError("repeated support values")
    lo = support[0]
    if support != list(range(lo, lo + len(support))):
        raise UnsupportedSupportError("support is not a segment")
    center = Fraction(lo)
    out = VirtualRep()
    seen = set()
    for seq in sorted(entries):
        if sorted(seq) != support:
            raise InconsistentSignatureError(f"{seq} does not use the common support")
        w = word_of_permutation(tuple(v - lo for v in seq))
        if w in seen:
            continue
        seen.add(w)
        ext = linear_extensions(w).entries
        mults = {entries.get(tuple(v + lo for v in e), 0) for e in ext}
        if len(mults) != 1:
            raise InconsistentSignatureError(f"non-uniform multiplicities {sorted(mults)} over ext({w.short()})")
        out = out + VirtualRep.of(w.with_center(center), coeff=mults.pop())
    total = sum(entries.values())
    if sum(c * len(linear_extensions(w).entries) for w, _, c in out) != total:
        raise InconsistentSignatureError("reconstruction mismatch")
    return out


def standard_module(s: int, base: CuspidalDatum = PI) -> VirtualRep:
    if s < 1:
        raise DomainError("s >= 1")
    out = VirtualRep()
    for w in all_words(s, base):
        out = out + VirtualRep.of(w)
    return out


def telescope(t: int, i: int, base: CuspidalDatum = PI) -> VirtualRep:
    """sum_{r=i}^{t} (-1)^{r-i} [<(i-1), >(r-i)] x-> [<(t-r-1)]."""
    if not 1 <= i <= t:
        raise DomainError(f"telescope needs 1 <= i <= t, got i={i}, t={t}")
    out = VirtualRep()
    for r in range(i, t + 1):
        term = rtimes(lr(i - 1, r - i, base), sp(t - r - 1, base))
        out = out + (-1) ** (r - i) * term
    return out
