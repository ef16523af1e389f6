from collections import Counter
from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from segcalc.groth import (
    UNIT, InconsistentSignatureError, VirtualRep, decompose_signature, expand_product, lr, ltimes,
    rtimes, sh, sp, standard_module, telescope,
)
from segcalc.jacquet import Signature, linear_extensions
from segcalc.segments import (
    LEFT, PI, RIGHT, ArrowWord, DomainError, UnsupportedSupportError, all_words, rec, speh,
    steinberg, word, L,
)

words = st.lists(st.sampled_from([LEFT, RIGHT]), max_size=4).map(lambda a: ArrowWord(PI, tuple(a)))


def shuffle_oracle(lo, hi):
    """Multiset of shuffles of the two extension sets, hi shifted above lo."""
    out = Counter()
    n = lo.points + hi.points
    for x in linear_extensions(lo).entries:
        for y in linear_extensions(hi).entries:
            y = tuple(v + lo.points for v in y)
            for pos in combinations(range(n), len(x)):
                ix, iy = iter(x), iter(y)
                out[tuple(next(ix) if k in pos else next(iy) for k in range(n))] += 1
    return out


class TestVirtualRep:
    def test_zero_never_stored(self):
        v = VirtualRep.of(speh(2)) - VirtualRep.of(speh(2))
        assert not v and v.terms == {}

    def test_arithmetic(self):
        a, b = VirtualRep.of(speh(2)), VirtualRep.of(steinberg(2), rec(1))
        assert (a + b) - b == a
        assert 3 * a == a + a + a
        assert -(a - b) == b - a
        assert (a + b).twisted(rec(-1)).untwisted() == a.untwisted() + b.untwisted()

    def test_effective(self):
        assert standard_module(3).is_effective()
        assert not (-standard_module(3)).is_effective()


class TestExpandProduct:
    def test_cuspidals(self):
        c = steinberg(1)
        assert expand_product(c, c, RIGHT) == VirtualRep.of(steinberg(2)) + VirtualRep.of(speh(2))

    def test_steinberg_times_speh(self):
        got = rtimes(sp(1), sh(1))
        assert got == lr(2, 1) + lr(1, 2)
        assert sum(len(linear_extensions(w)) for w in got.words()) == 6

    @given(words, words)
    def test_commutative(self, a, b):
        assert ltimes(a, b) == rtimes(b, a)

    def test_unit_and_twists(self):
        assert rtimes(VirtualRep.one(), sp(2)) == sp(2)
        got = rtimes(VirtualRep.of(steinberg(1), rec(1)), VirtualRep.of(steinberg(1), rec(-2)))
        assert got == (sp(1) + sh(1)).twisted(rec(-1))

    def test_unsupported_support(self):
        with pytest.raises(UnsupportedSupportError):
            expand_product(steinberg(1), steinberg(1, center=1))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_shuffle_law(self, n):
        for a in range(1, n):
            for A in all_words(a):
                for B in all_words(n - a):
                    for d in (RIGHT, LEFT):
                        lo, hi = (A, B) if d is RIGHT else (B, A)
                        got = expand_product(A, B, d)
                        assert len(got) == 2
                        assert Counter(got.signature().entries) == shuffle_oracle(lo, hi)


class TestDecompose:
    def test_single(self):
        assert decompose_signature(Signature([(2, 1, 0)])) == VirtualRep.of(steinberg(3))

    def test_full_symmetric_group(self):
        assert decompose_signature(Signature(permutations(range(3)))) == standard_module(3)
        assert decompose_signature(Signature([(0, 1), (1, 0)])) == sp(1) + sh(1)

    def test_inconsistent(self):
        with pytest.raises(InconsistentSignatureError):
            decompose_signature(Signature([(1, 0, 2)]))

    def test_repeated_support(self):
        with pytest.raises(UnsupportedSupportError):
            decompose_signature(Signature([(0, 0, 1)]))

    @given(words, words)
    def test_round_trip(self, a, b):
        v = rtimes(a, b) + VirtualRep.of(steinberg(a.points + b.points))
        assert decompose_signature(v.signature()) == v


class TestStandardModule:
    def test_small(self):
        assert standard_module(1) == VirtualRep.of(steinberg(1))
        assert standard_module(2) == sp(1) + sh(1)
        assert len(standard_module(3)) == 4

    @pytest.mark.parametrize("s", range(1, 8))
    def test_signature_is_full(self, s):
        assert Counter(standard_module(s).signature().entries) == Counter(permutations(range(s)))


class TestTelescope:
    def test_examples(self):
        assert telescope(3, 3) == sp(2)
        assert telescope(2, 1) == (sp(1) + sh(1)) - sh(1)
        assert telescope(3, 1) == sp(2)

    @pytest.mark.parametrize("t", range(1, 9))
    def test_collapses(self, t):
        for i in range(1, t + 1):
            assert telescope(t, i) == sp(t - 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            telescope(2, 3)


def test_bracket_helpers():
    assert sp(-1) == VirtualRep.one() and sh(-1) == VirtualRep.one()
    assert lr(0, 3) == VirtualRep.of(speh(4))
    assert sp(2) == VirtualRep.of(word(L(2)))
    with pytest.raises(DomainError):
        sp(-2)
    assert VirtualRep.one().words() == [UNIT]
