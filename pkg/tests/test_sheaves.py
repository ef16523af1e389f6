from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segcalc.groth import rtimes, sh, sp
from segcalc.segments import PI, DomainError, rec, steinberg, xi
from segcalc.sheaves import (
    HT_RESTRICTION, INTERMEDIATE, JSHRIEK, SUPERSINGULAR, BlockKind, Functor, SheafSymbol,
    cohomology_sheaves, ht, intermediate_alternating, jshriek_to_intermediate, local_component_admissible,
    mgr, resolve_supersingular, round_trip, rpsi_virtual, s_g, verdier_dual_of_conversion,
    verify_main_identity,
)

DG = [(d, g) for g in range(1, 7) for d in range(g, 7 * g) if s_g(d, g) <= 6]


def coeffs(vs):
    return [(sym.t, sym.inducing, sym.twist, c) for sym, c in vs]


class TestSymbols:
    def test_stratum_bound(self):
        with pytest.raises(DomainError):
            SheafSymbol(JSHRIEK, 2, 3, PI, steinberg(3), rec(0), 5)

    def test_linear_in_inducing(self):
        vs = ht(INTERMEDIATE, 1, 2, sp(1) + 2 * sh(1), rec(0), 2)
        assert sorted(c for _, c in vs) == [1, 2]


class TestVanishingCycles:
    @pytest.mark.parametrize("g", [1, 2, 5])
    def test_single_stratum(self, g):
        (t, w, tw, c), = coeffs(rpsi_virtual(g, g))
        assert (t, w, c) == (1, steinberg(1), 1) and tw == rec(Fraction(-(g - 1), 2))

    def test_two_points(self):
        terms = coeffs(rpsi_virtual(2, 1))
        got = sorted((t, w.short(), c) for t, w, _, c in terms)
        assert got == [(1, "[.]", 1), (2, "[<1]", 1), (2, "[>1]", -1)]

    def test_domain(self):
        with pytest.raises(DomainError):
            rpsi_virtual(2, 3)


class TestConversion:
    def test_deepest_stratum_is_identity(self):
        got = jshriek_to_intermediate(2, 3, sp(2), 6)
        assert got == ht(INTERMEDIATE, 2, 3, sp(2), xi(0), 6)

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_two_strata(self, g):
        d = 2 * g
        got = jshriek_to_intermediate(g, 1, sp(0), d)
        want = ht(INTERMEDIATE, g, 1, sp(0), xi(0), d) + ht(
            INTERMEDIATE, g, 2, rtimes(sp(0), sp(0)), xi(Fraction(g - 1, 2)), d)
        assert got == want
        assert {sym.twist.tate for sym, _ in got if sym.t == 2} == {Fraction(-(g - 1), 2)}

    def test_raw_stage_keeps_remainder(self):
        raw = jshriek_to_intermediate(2, 1, sp(0), 6, stage="raw")
        assert SUPERSINGULAR in raw.kinds()
        assert resolve_supersingular(raw) == jshriek_to_intermediate(2, 1, sp(0), 6)

    def test_no_remainder_off_divisor(self):
        assert SUPERSINGULAR not in jshriek_to_intermediate(2, 1, sp(0), 7, stage="raw").kinds()

    def test_t_too_large(self):
        with pytest.raises(DomainError):
            jshriek_to_intermediate(2, 4, sp(3), 7)

    @pytest.mark.parametrize("d,g", [(d, g) for d, g in DG if g <= 3])
    def test_verdier(self, d, g):
        for t in range(1, s_g(d, g) + 1):
            assert verdier_dual_of_conversion(g, t, sp(t - 1), d)


class TestAlternating:
    def test_single_term(self):
        vs = intermediate_alternating(2, 3, 6)
        assert len(vs) == 1 and vs.kinds() == {JSHRIEK}

    def test_two_terms(self):
        vs = intermediate_alternating(1, 1, 2)
        # r = 0 gives P itself, r = 1 the two constituents of [<0] x-> [>0] with sign -1
        assert sorted((sym.t, c) for sym, c in vs) == [(1, 1), (2, -1), (2, -1)]
        assert vs.restricted(2) == -1 * ht(JSHRIEK, 1, 2, rtimes(sp(0), sh(0)), rec(0), 2)

    @pytest.mark.parametrize("d,g", [(d, g) for d, g in DG if g <= 3])
    def test_round_trip(self, d, g):
        for t in range(1, s_g(d, g) + 1):
            assert round_trip(g, t, d)


class TestMgr:
    def test_examples(self):
        assert [t for t, _ in mgr(4, 0)] == [1, 3]
        assert mgr(4, 4) == [] and mgr(3, -5) == []
        assert mgr(4, 3) == [(4, rec(-3))]

    def test_figure_one_marks(self):
        marks = {(t, k) for k in range(-3, 4) for t, _ in mgr(4, k)}
        assert marks == {(4, 3), (3, 2), (2, 1), (4, 1), (1, 0), (3, 0), (2, -1), (4, -1), (3, -2), (4, -3)}

    @given(st.integers(1, 10), st.integers(-9, 9), st.integers(1, 4))
    def test_n_symmetry(self, s, k, g):
        a, b = mgr(s, k, g), mgr(s, -k, g)
        assert [t for t, _ in a] == [t for t, _ in b]
        assert all(y.tate - x.tate == k for (_, x), (_, y) in zip(a, b))

    def test_rescaled_twist(self):
        assert mgr(4, 1, 6) == [(2, rec(-6)), (4, rec(-12))]


class TestCohomologySheaves:
    def test_degree_zero_piece(self):
        g, t, d = 3, 2, 9
        got = cohomology_sheaves(g, t, sp(1), t * g - d, d)
        assert got == ht(HT_RESTRICTION, g, t, sp(1), xi(0), d)

    def test_large_example(self):
        got = cohomology_sheaves(6, 1, sp(0), -13, 24)
        assert got == ht(HT_RESTRICTION, 6, 2, rtimes(sp(0), sh(0)), xi(Fraction(5, 2)), 24)

    def test_inadmissible_degree(self):
        assert not cohomology_sheaves(6, 1, sp(0), -14, 24)
        assert not cohomology_sheaves(6, 5, sp(4), 0, 24)

    def test_rjstar(self):
        got = cohomology_sheaves(2, 1, sp(0), 2, 4, Functor.RJSTAR)
        assert {sym.t for sym, _ in got} == {2}
        assert {sym.twist.tate for sym, _ in got} == {Fraction(-3, 2)}

    def test_figure_nine_weights(self):
        from segcalc.spectral import gr_cohomology
        for k in range(-3, 4):
            for i in range(-25, 1):
                for sym, _ in gr_cohomology(24, 6, i, k):
                    assert sym.twist.tate == Fraction(-(23 + i + k), 2)


class TestMainIdentity:
    @pytest.mark.parametrize("d,g", DG)
    def test_identity(self, d, g):
        rep = verify_main_identity(d, g)
        assert rep.ok, rep.witness

    def test_report_witness(self):
        rep = verify_main_identity(3, 1)
        assert rep and rep.witness is None and rep.lhs == rep.rhs


class TestAdmissible:
    def test_examples(self):
        assert local_component_admissible(4, [(4, 1, "SP")])
        assert not local_component_admissible(4, [(2, 1, BlockKind.SPEH), (2, 1, BlockKind.SP)])
        assert local_component_admissible(6, [(3, 1, "SP"), (3, 1, "SP")])
        assert not local_component_admissible(5, [(3, 1, "SP"), (2, 1, "SP")])
        assert not local_component_admissible(5, [(4, 1, "SP")])

    def test_empty(self):
        with pytest.raises(DomainError):
            local_component_admissible(3, [])
