"""Arrow words: irreducible elliptic representations of type pi.

A word on ``s`` cuspidal points pi(c - (s-1)/2), ..., pi(c + (s-1)/2) is a
sequence of ``s - 1`` oriented arrows.  Slot ``i`` joins the points with
values ``i`` and ``i + 1`` (value 0 is the lowest exponent).  The all-LEFT
word is the Steinberg Sp_s, the all-RIGHT word is Speh_s.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class SegmentError(ValueError):
    pass


class MalformedWordError(SegmentError):
    pass


class IncompatibleBaseError(SegmentError):
    pass


class UnsupportedSupportError(SegmentError):
    pass


class DomainError(ValueError):
    pass


class Direction(Enum):
    LEFT = "<"
    RIGHT = ">"

    def flip(self) -> "Direction":
        return RIGHT if self is LEFT else LEFT

    def __lt__(self, other):
        return self.value < other.value


LEFT = Direction.LEFT
RIGHT = Direction.RIGHT


class Part(Enum):
    SOCLE = "socle"
    COSOCLE = "cosocle"
    FULL = "full"


SOCLE, COSOCLE, FULL = Part.SOCLE, Part.COSOCLE, Part.FULL


class _Zero:
    """The zero object, returned where a table or functor vanishes."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "ZERO"


ZERO = _Zero()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class CuspidalDatum:
    rank: int = 1
    label: str = "pi"
    dual_label: str = "pi^v"

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("cuspidal rank must be >= 1")

    def dual(self) -> "CuspidalDatum":
        return CuspidalDatum(self.rank, self.dual_label, self.label)


PI = CuspidalDatum()


@dataclass(frozen=True, order=True)
class WeightTwist:
    """A half-integral twist on the single tate axis.

    ``rec(m)`` and ``|Art^{-1}|^m`` carry tate ``m``; ``Xi^x`` carries ``-x``.
    """

    tate: Fraction = Fraction(0)
    rec_factor: str = ""

    def __post_init__(self):
        t = as_fraction(self.tate)
        if t.denominator not in (1, 2):
            raise DomainError(f"twist {t} is not half-integral")
        object.__setattr__(self, "tate", t)

    def __add__(self, other: "WeightTwist") -> "WeightTwist":
        tags = {self.rec_factor, other.rec_factor} - {""}
        if len(tags) > 1:
            raise DomainError(f"cannot combine rec factors {sorted(tags)}")
        return WeightTwist(self.tate + other.tate, tags.pop() if tags else "")

    def shift(self, x) -> "WeightTwist":
        return WeightTwist(self.tate + as_fraction(x), self.rec_factor)

    def text(self) -> str:
        base = self.rec_factor or "1"
        return f"{base}({fmt_fraction(self.tate)})"

    @classmethod
    def parse(cls, text: str) -> "WeightTwist":
        m = re.fullmatch(r"\s*(.*)\(([-0-9/]+)\)\s*", text)
        if not m:
            raise MalformedWordError(f"bad twist {text!r}")
        tag = "" if m.group(1) == "1" else m.group(1)
        return cls(Fraction(m.group(2)), tag)


NO_TWIST = WeightTwist()
REC_PI = "rec(pi)"
REC_SP = "rec(Sp_s(pi))"


def rec(m, tag: str = REC_PI) -> WeightTwist:
    return WeightTwist(as_fraction(m), tag)


def xi(x, tag: str = "") -> WeightTwist:
    return WeightTwist(-as_fraction(x), tag)


def normalize(runs: Iterable[tuple[int, Direction]]) -> tuple[tuple[int, Direction], ...]:
    """Merge adjacent runs of equal direction."""
    out: list[list] = []
    for n, d in runs:
        if not isinstance(n, int) or n <= 0:
            raise MalformedWordError(f"run length {n!r} must be a positive integer")
        d = Direction(d)
        if out and out[-1][1] is d:
            out[-1][0] += n
        else:
            out.append([n, d])
    return tuple((n, d) for n, d in out)


@dataclass(frozen=True, order=True)
class ArrowWord:
    base: CuspidalDatum
    arrows: tuple[Direction, ...]
    center: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(Direction(a) for a in self.arrows))
        object.__setattr__(self, "center", as_fraction(self.center))

    @property
    def points(self) -> int:
        return len(self.arrows) + 1

    @property
    def runs(self):
        return normalize((1, a) for a in self.arrows)

    @classmethod
    def from_runs(cls, runs, base: CuspidalDatum = PI, center=0) -> "ArrowWord":
        arrows = []
        for n, d in normalize(runs):
            arrows.extend([d] * n)
        return cls(base, tuple(arrows), as_fraction(center))

    def is_steinberg(self) -> bool:
        return all(a is LEFT for a in self.arrows)

    def is_speh(self) -> bool:
        return all(a is RIGHT for a in self.arrows)

    def with_center(self, c) -> "ArrowWord":
        return ArrowWord(self.base, self.arrows, as_fraction(c))

    def exponents(self) -> list[Fraction]:
        """Cuspidal exponents of the support, lowest first."""
        s = self.points
        return [self.center + v - Fraction(s - 1, 2) for v in range(s)]

    def text(self) -> str:
        body = " ".join(f"{d.value}{n}" for n, d in self.runs)
        return f"{self.base.label}@{fmt_fraction(self.center)}:[{body}]"

    def short(self) -> str:
        """Compact glyph form used on rendered grids (base and center dropped)."""
        return "[" + " ".join(f"{d.value}{n}" for n, d in self.runs) + "]" if self.arrows else "[.]"

    def __str__(self):
        return self.text()


_WORD_RE = re.compile(r"\s*([^@\s]+)@([-0-9/]+):\[([<>0-9\s]*)\]\s*")


def parse_word(text: str, dual_label: str | None = None, rank: int = 1) -> ArrowWord:
    m = _WORD_RE.fullmatch(text)
    if not m:
        raise MalformedWordError(f"cannot parse word {text!r}")
    label, center, body = m.groups()
    if dual_label is None:
        dual_label = label[:-2] if label.endswith("^v") else label + "^v"
    runs = []
    for tok in body.split():
        if tok[0] not in "<>" or not tok[1:].isdigit():
            raise MalformedWordError(f"bad run {tok!r}")
        runs.append((int(tok[1:]), Direction(tok[0])))
    return ArrowWord.from_runs(runs, CuspidalDatum(rank, label, dual_label), Fraction(center))


def word(*runs, base: CuspidalDatum = PI, center=0) -> ArrowWord:
    """Build ``[<a, >b, ...]`` in bracket notation, dropping empty runs.

    Each argument is a pair ``(n, direction)``; ``n = 0`` runs are allowed
    here since the bracket notation uses them freely (``[<0, >3] = Speh_4``).
    """
    kept = []
    for n, d in runs:
        if n < 0:
            raise MalformedWordError(f"negative run {n}")
        if n:
            kept.append((n, d))
    return ArrowWord.from_runs(kept, base, center)


def L(n: int):
    return (n, LEFT)


def R(n: int):
    return (n, RIGHT)


def steinberg(s: int, base: CuspidalDatum = PI, center=0) -> ArrowWord:
    if s < 1:
        raise DomainError("Sp_s needs s >= 1")
    return ArrowWord(base, (LEFT,) * (s - 1), as_fraction(center))


def speh(s: int, base: CuspidalDatum = PI, center=0) -> ArrowWord:
    if s < 1:
        raise DomainError("Speh_s needs s >= 1")
    return ArrowWord(base, (RIGHT,) * (s - 1), as_fraction(center))


def dual(w: ArrowWord) -> ArrowWord:
    return ArrowWord(w.base.dual(), tuple(reversed(w.arrows)), -w.center)


def zelevinsky_involution(w: ArrowWord) -> ArrowWord:
    return ArrowWord(w.base, tuple(a.flip() for a in w.arrows), w.center)


def junction_compose(A: ArrowWord, B: ArrowWord, direction: Direction, part: Part = FULL):
    """Constituents of ``A x B`` with consecutive supports.

    Returns a :class:`~segcalc.groth.VirtualRep`.  For ``RIGHT`` the support
    of ``A`` sits below that of ``B``; for ``LEFT`` the roles swap.
    """
    from .groth import VirtualRep

    if A.base != B.base:
        raise IncompatibleBaseError(f"{A.base.label} vs {B.base.label}")
    if A.center != B.center:
        raise UnsupportedSupportError(
            f"supports of {A} and {B} are not consecutive after the induction shifts")
    direction = Direction(direction)
    lo, hi = (A, B) if direction is RIGHT else (B, A)
    # the quotient carries the arrow pointing towards the lower operand for RIGHT
    cos = LEFT if direction is RIGHT else RIGHT
    joints = {COSOCLE: [cos], SOCLE: [cos.flip()], FULL: [LEFT, RIGHT]}[Part(part)]
    out = VirtualRep()
    for j in joints:
        out = out + VirtualRep.of(ArrowWord(A.base, lo.arrows + (j,) + hi.arrows, A.center))
    return out


def all_words(s: int, base: CuspidalDatum = PI, center=0) -> list[ArrowWord]:
    from itertools import product

    return [ArrowWord(base, arr, as_fraction(center)) for arr in product((LEFT, RIGHT), repeat=s - 1)]


def place(words: Sequence[ArrowWord]) -> list[Fraction]:
    """Centers of consecutive blocks inside their product (lowest block first).

    This is the exact form of the shifts pi1(-t2/2), pi2(t1/2) for two
    factors, iterated.
    """
    total = sum(w.points for w in words)
    out, acc = [], 0
    for w in words:
        out.append(Fraction(2 * acc + w.points - total, 2))
        acc += w.points
    return out
