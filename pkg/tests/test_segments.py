from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segcalc.groth import VirtualRep
from segcalc.jacquet import linear_extensions
from segcalc.segments import (
    COSOCLE, FULL, LEFT, PI, RIGHT, SOCLE, ArrowWord, CuspidalDatum, IncompatibleBaseError,
    MalformedWordError, UnsupportedSupportError, WeightTwist, all_words, dual, junction_compose,
    normalize, parse_word, place, rec, speh, steinberg, word, xi, zelevinsky_involution, L, R,
)

words = st.lists(st.sampled_from([LEFT, RIGHT]), max_size=7).map(lambda a: ArrowWord(PI, tuple(a)))


def cos(a, b, d=RIGHT):
    return junction_compose(a, b, d, COSOCLE).words()[0]


def soc(a, b, d=RIGHT):
    return junction_compose(a, b, d, SOCLE).words()[0]


class TestNormalize:
    def test_merge_examples(self):
        assert normalize([(2, LEFT), (3, LEFT)]) == ((5, LEFT),)
        assert normalize([(1, LEFT), (1, RIGHT)]) == ((1, LEFT), (1, RIGHT))
        assert normalize([(1, LEFT), (2, LEFT), (1, RIGHT), (3, RIGHT)]) == ((3, LEFT), (4, RIGHT))

    @pytest.mark.parametrize("bad", [[(0, LEFT)], [(-1, RIGHT)], [(2, LEFT), (0, RIGHT)]])
    def test_nonpositive_run(self, bad):
        with pytest.raises(MalformedWordError):
            normalize(bad)

    @given(words)
    def test_idempotent_and_count(self, w):
        runs = w.runs
        assert normalize(runs) == runs
        assert sum(n for n, _ in runs) == w.points - 1
        assert ArrowWord.from_runs(runs) == w


def test_steinberg_speh_brackets():
    assert word(L(3)) == steinberg(4)
    assert word(L(0), R(3)) == speh(4)
    assert steinberg(4).is_steinberg() and speh(4).is_speh()


class TestDual:
    def test_palindromic_steinberg(self):
        w = steinberg(4, center=Fraction(1, 2))
        d = dual(w)
        assert d.arrows == w.arrows and d.base.label == "pi^v" and d.center == Fraction(-1, 2)

    def test_cuspidal(self):
        d = dual(ArrowWord(PI, (), Fraction(1, 2)))
        assert d.points == 1 and d.center == Fraction(-1, 2) and d.base == PI.dual()

    def test_mixed_word(self):
        d = dual(ArrowWord(PI, (LEFT, RIGHT)))
        assert d == ArrowWord(PI.dual(), (RIGHT, LEFT))

    @pytest.mark.parametrize("a", range(1, 5))
    def test_composition_law_exhaustive(self, a):
        # dual turns the x-> cosocle into the <-x socle; checked for all s <= 5
        for b in range(1, 6 - a):
            for A in all_words(a):
                for B in all_words(b):
                    assert dual(cos(A, B)) == soc(dual(A), dual(B), LEFT)
                    assert dual(soc(A, B)) == cos(dual(A), dual(B), LEFT)

    def test_cosocle_reading_fails(self):
        A, B = steinberg(1), steinberg(1)
        assert dual(cos(A, B)) != cos(dual(A), dual(B), LEFT)

    @given(words)
    def test_involutive(self, w):
        assert dual(dual(w)) == w

    def test_datum(self):
        c = CuspidalDatum(3, "rho", "rho*")
        assert c.dual().dual() == c


class TestInvolution:
    def test_examples(self):
        assert zelevinsky_involution(steinberg(4)) == speh(4)
        w = ArrowWord(PI, (LEFT, RIGHT, LEFT))
        assert zelevinsky_involution(zelevinsky_involution(w)) == w
        assert zelevinsky_involution(ArrowWord(PI, (LEFT, LEFT, RIGHT))) == ArrowWord(PI, (RIGHT, RIGHT, LEFT))

    @given(words)
    def test_commutes_with_dual(self, w):
        assert dual(zelevinsky_involution(w)) == zelevinsky_involution(dual(w))


class TestJunction:
    def test_cuspidals_give_steinberg(self):
        c = steinberg(1)
        assert cos(c, c) == steinberg(2)

    @pytest.mark.parametrize("s,t", [(3, 1), (4, 2), (5, 3), (4, 3)])
    def test_socle_bracket(self, s, t):
        assert soc(word(L(t - 1)), word(R(s - t - 1))) == word(L(t - 1), R(s - t))
        assert cos(word(L(t - 1)), word(R(s - t - 1))) == word(L(t), R(s - t - 1))

    def test_full_speh_product(self):
        full = junction_compose(speh(2), speh(2), RIGHT, FULL)
        assert full == VirtualRep.of(speh(4)) + VirtualRep.of(word(R(1), L(1), R(1)))
        # shuffle count: 1 + 5 extensions = C(4, 2)
        assert sum(len(linear_extensions(w)) for w in full.words()) == 6

    def test_left_swaps_operands(self):
        A, B = steinberg(2), speh(3)
        assert cos(A, B, LEFT) == word(R(2), R(1), L(1))
        assert soc(A, B, LEFT) == word(R(2), L(2))

    def test_base_mismatch(self):
        with pytest.raises(IncompatibleBaseError):
            junction_compose(steinberg(1), steinberg(1, PI.dual()), RIGHT)

    def test_center_mismatch(self):
        with pytest.raises(UnsupportedSupportError):
            junction_compose(steinberg(1), steinberg(1, center=1), RIGHT)

    @given(words, words)
    def test_full_is_length_two(self, a, b):
        for d in (LEFT, RIGHT):
            full = junction_compose(a, b, d, FULL)
            assert len(full) == 2 and full.is_effective()
            assert full == junction_compose(a, b, d, SOCLE) + junction_compose(a, b, d, COSOCLE)
        assert junction_compose(a, b, LEFT, FULL) == junction_compose(b, a, RIGHT, FULL)

    @given(words, words, words)
    def test_cosocle_associative(self, a, b, c):
        assert cos(cos(a, b), c) == cos(a, cos(b, c))


class TestTwist:
    def test_additive_axis(self):
        assert (rec(Fraction(-3, 2)) + xi(2)).tate == Fraction(-7, 2)
        assert rec(1).rec_factor == "rec(pi)"

    def test_half_integers_only(self):
        with pytest.raises(ValueError):
            WeightTwist(Fraction(1, 3))

    def test_text_round_trip(self):
        for tw in (rec(Fraction(-5, 2)), xi(3), WeightTwist(Fraction(1, 2), "rec(Sp_s(pi))")):
            assert WeightTwist.parse(tw.text()) == tw


class TestText:
    def test_canonical_form(self):
        w = word(L(3), R(1), center=Fraction(1, 2))
        assert w.text() == "pi@1/2:[<3 >1]"
        assert parse_word(w.text()) == w

    @given(words, st.fractions(max_denominator=2).filter(lambda x: x.denominator in (1, 2)))
    def test_round_trip(self, w, c):
        w = w.with_center(c)
        assert parse_word(w.text()) == w

    @pytest.mark.parametrize("bad", ["pi:[<1]", "pi@0/1:[<x]", "pi@0/1:[=2]"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedWordError):
            parse_word(bad)


def test_block_centers():
    assert place([steinberg(2), steinberg(3)]) == [Fraction(-3, 2), Fraction(1)]
