"""Finite-graph walk kernels: f, d, r, radii, and the spectral checks."""

from fractions import Fraction

import pytest

from cellgreen import (
    KernelError,
    asymptotic_check,
    builtin_cell,
    cell_functions,
    cell_green_series,
    modified_determinants,
    spectral_property_report,
    transition_matrix,
)
from cellgreen.algebra import Poly, RatFunc, series_from_ratfunc
from cellgreen.greenkernel import (
    build_pd,
    build_pf,
    green_entry,
    green_entry_elim,
)


def P(*coeffs) -> Poly:
    return Poly([Fraction(c) for c in coeffs])


@pytest.fixture(scope="module")
def diamond_cf():
    return cell_functions(builtin_cell("diamond"))


@pytest.fixture(scope="module")
def path2_cf():
    return cell_functions(builtin_cell("path2"))


class TestModifiedMatrices:
    def test_diamond_pf_blocks_interior_to_far_boundary(self):
        pf = build_pf(builtin_cell("diamond"))
        q = Fraction(1, 3)
        h = Fraction(1, 2)
        assert pf[3] == [0, 0, 0, 0, q, q]
        assert pf[2] == [q, 0, 0, 0, q, q]
        assert pf[4] == [0, 0, h, h, 0, 0]
        assert pf[0] == [0, 0, 1, 0, 0, 0]
        assert pf[1] == [0, 0, 0, 1, 0, 0]

    def test_diamond_pd_absorbs_far_boundary(self):
        pd = build_pd(builtin_cell("diamond"))
        assert pd[1] == [0, 0, 0, 0, 0, 0]
        assert pd[0] == [0, 0, 1, 0, 0, 0]
        assert pd[3] == [0, Fraction(1, 3), 0, 0, Fraction(1, 3), Fraction(1, 3)]

    def test_determinants_agree_and_match_hand_value(self):
        det_f, det_d = modified_determinants(builtin_cell("diamond"))
        assert det_f == det_d
        assert det_f == P(1, 0, -1, 0, Fraction(1, 9))


class TestGreenEntry:
    def test_single_state_chain(self):
        t = [[Fraction(0)]]
        assert green_entry(t, 0, 0) == RatFunc(P(1), P(1))

    def test_diamond_origin_entry(self):
        t = transition_matrix(builtin_cell("diamond"))
        got = green_entry(t, 0, 0)
        assert got == RatFunc(P(9, 0, -9, 0, 1), P(9, 0, -12, 0, 3))

    def test_path2_origin_entry(self):
        t = transition_matrix(builtin_cell("path2"))
        assert green_entry(t, 0, 0) == RatFunc(P(2, 0, -1), P(2, 0, -2))

    def test_elimination_route_agrees_on_every_small_cell(self, enumerated_cells):
        for g in enumerated_cells:
            pf = build_pf(g)
            pd = build_pd(g)
            assert green_entry(pf, 0, 0) == green_entry_elim(pf, 0, 0)
            assert green_entry(pd, 0, 1) == green_entry_elim(pd, 0, 1)

    def test_offdiagonal_entry_transpose_convention(self):
        # first-step decomposition: G(v1, w | z) = z/deg(v1) * sum over
        # neighbors of the w-column entries, checked on the path cell
        t = transition_matrix(builtin_cell("path2"))
        g01 = green_entry(t, 0, 1)
        g21 = green_entry(t, 2, 1)
        z = RatFunc(P(0, 1), P(1))
        assert g01 == z * g21


class TestCellFunctions:
    def test_diamond_f(self, diamond_cf):
        assert diamond_cf.f == RatFunc(P(9, 0, -6), P(9, 0, -9, 0, 1))

    def test_diamond_d(self, diamond_cf):
        assert diamond_cf.d == RatFunc(P(0, 0, 0, 0, 1), P(9, 0, -9, 0, 1))

    def test_diamond_r(self, diamond_cf):
        assert diamond_cf.r == RatFunc(P(0, 0, 3, 0, -1), P(9, 0, -6))
        one = RatFunc(P(1), P(1))
        assert diamond_cf.f == one / (one - diamond_cf.r)

    def test_path2_functions(self, path2_cf):
        assert path2_cf.f == RatFunc(P(2), P(2, 0, -1))
        assert path2_cf.d == RatFunc(P(0, 0, 1), P(2, 0, -1))
        assert path2_cf.r == RatFunc(P(0, 0, 1), P(2))

    def test_normalization_fixed_points(self, diamond_cf, path2_cf):
        for cf in (diamond_cf, path2_cf):
            assert cf.f(Fraction(0)) == 1
            assert cf.d(Fraction(0)) == 0
            assert cf.d(Fraction(1)) == 1
            assert cf.d.derivative()(Fraction(0)) == 0

    def test_diamond_series_prefixes(self, diamond_cf):
        f_ser = series_from_ratfunc(diamond_cf.f, 7)
        assert f_ser.coeffs[:5] == (
            1, 0, Fraction(1, 3), 0, Fraction(2, 9)
        )
        d_ser = series_from_ratfunc(diamond_cf.d, 9)
        assert d_ser.coeffs == (
            0, 0, 0, 0, Fraction(1, 9), 0, Fraction(1, 9), 0, Fraction(8, 81)
        )

    def test_compose_low_order(self, diamond_cf):
        # f is even and d has valuation 4, so the first correction enters
        # at z^8 through the squared term: f(d) = 1 + d^2/3 + ...
        f_ser = series_from_ratfunc(diamond_cf.f, 9)
        d_ser = series_from_ratfunc(diamond_cf.d, 9)
        composed = f_ser.compose(d_ser)
        assert composed.order == 9
        assert composed.coeffs == (
            1, 0, 0, 0, 0, 0, 0, 0, Fraction(1, 243)
        )

    def test_invalid_cell_rejected(self):
        bad = "vertices 4\nboundary 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
        from cellgreen import CellError, parse_cell

        with pytest.raises(CellError):
            cell_functions(parse_cell(bad))


class TestSpectralData:
    def test_diamond_shared_radius(self, diamond_cf):
        rho_f = diamond_cf.spectral_f.rho
        rho_d = diamond_cf.spectral_d.rho
        # least positive root of z^4 - 9 z^2 + 9; approx 2*sqrt(3)/(1+sqrt(5))
        assert float(rho_f) == pytest.approx(1.07046626931927, abs=1e-9)
        assert float(rho_d) == pytest.approx(float(rho_f), abs=1e-9)
        assert diamond_cf.spectral_f.pole_order == 1

    def test_path2_radius(self, path2_cf):
        assert float(path2_cf.spectral_f.rho) == pytest.approx(2 ** 0.5, abs=1e-9)
        assert path2_cf.spectral_r is None

    def test_property_report_passes_on_named_cells(self):
        for name in ("diamond", "path2", "path3", "sierpinski", "theta4"):
            cf = cell_functions(builtin_cell(name))
            report = spectral_property_report(cf)
            assert report.all_passed, (name, report.to_json())

    def test_report_items_exact_names(self, diamond_cf):
        report = spectral_property_report(diamond_cf)
        assert [item.name for item in report.items] == [
            "shared_radius",
            "simple_poles",
            "radius_gap",
            "expansion_between_fixed_points",
            "first_pole",
        ]


class TestSeriesNonnegativity:
    def test_probability_coefficients_on_named_cells(self):
        for name in ("diamond", "path2", "path3", "sierpinski", "theta4"):
            cf = cell_functions(builtin_cell(name))
            f_ser = series_from_ratfunc(cf.f, 61)
            d_ser = series_from_ratfunc(cf.d, 61)
            assert all(c >= 0 for c in f_ser.coeffs)
            assert all(c >= 0 for c in d_ser.coeffs)
            assert sum(d_ser.coeffs) <= 1
            assert cf.d(Fraction(1)) == 1
            assert cf.f(Fraction(1)) >= 1
            assert cf.d.derivative()(Fraction(1)) >= 2


class TestAsymptotics:
    def test_diamond_convergence_to_stationary_mass(self):
        t = transition_matrix(builtin_cell("diamond"))
        rep = asymptotic_check(t, 0, 40)
        assert rep.bipartite
        assert rep.phi == Fraction(1, 6)
        assert rep.coefficients[8] == Fraction(14, 81)
        assert rep.odd_coefficients_zero
        assert rep.errors_nonincreasing
        # geometric decay by a factor of 3 per even step after the start
        assert rep.even_relative_errors[1] == 1
        assert rep.even_relative_errors[2] == Fraction(1, 3)
        assert rep.even_relative_errors[3] == Fraction(1, 9)

    def test_path2_hits_stationary_mass_immediately(self):
        t = transition_matrix(builtin_cell("path2"))
        rep = asymptotic_check(t, 0, 10)
        assert rep.phi == Fraction(1, 2)
        assert rep.even_relative_errors[1:] == (0, 0, 0, 0, 0)
        assert rep.odd_coefficients_zero
        assert rep.errors_nonincreasing

    def test_nonstochastic_rows_rejected(self):
        with pytest.raises(ValueError):
            asymptotic_check([[Fraction(1, 2)]], 0, 4)

    def test_sierpinski_not_bipartite(self):
        t = transition_matrix(builtin_cell("sierpinski"))
        rep = asymptotic_check(t, 0, 12)
        assert not rep.bipartite
        assert rep.odd_coefficients_zero is None


class TestCellGreenSeries:
    def test_diamond_walk_counts(self):
        s = cell_green_series(builtin_cell("diamond"), 9)
        assert s.coeffs == (
            1, 0, Fraction(1, 3), 0, Fraction(2, 9), 0,
            Fraction(5, 27), 0, Fraction(14, 81),
        )

    def test_prefix_stability(self):
        short = cell_green_series(builtin_cell("diamond"), 5)
        long = cell_green_series(builtin_cell("diamond"), 30)
        assert long.truncate(5) == short
