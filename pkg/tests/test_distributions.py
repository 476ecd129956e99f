import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parityspace.distributions import (
    BoundaryLeakWarning,
    PhaseGrid,
    bj_fock_decomposition,
    born_jordan,
    cohen_convolution_check,
    covariance_check,
    distribution,
    evaluate,
    evaluate_points,
    husimi,
    marginals,
    read_field_csv,
    rotation_deviation,
    s_dist,
    tau_dist,
    total_integral,
    wigner,
    working_dimension,
    write_field_csv,
)
from parityspace.fock import DensityMatrix, cat_state, coherent_state, density_from_pure, number_state
from parityspace.parity import FilterKind, parity_wigner
from parityspace.specfun import ASINH_ONE, hermite_psi

ORIGIN = PhaseGrid(-1, 1, -1, 1, 3, 3)
VAC = number_state(0, 1)


def at_origin(field):
    return field.values[1, 1]


class TestPhaseGrid:
    def test_parse_roundtrip(self):
        g = PhaseGrid.parse("-3:3:61,-2:2:41")
        assert (g.nx, g.np) == (61, 41) and PhaseGrid.parse(g.to_spec()) == g
        assert g.dx == pytest.approx(0.1)

    @pytest.mark.parametrize("spec", ["-3:3:61", "a:b:c,1:2:3", "3:-3:10,-1:1:5", "-1:1:1,-1:1:5"])
    def test_parse_rejects(self, spec):
        with pytest.raises(ValueError):
            PhaseGrid.parse(spec)

    def test_padded(self):
        g = PhaseGrid.square(2, 21).padded(3, 1)
        assert (g.nx, g.np) == (27, 23) and g.x_min == pytest.approx(-2.6)


class TestPointValues:
    def test_wigner_vacuum(self):
        assert at_origin(wigner(VAC, ORIGIN)).real == pytest.approx(1 / math.pi, abs=1e-14)

    def test_husimi_vacuum(self):
        assert at_origin(husimi(VAC, ORIGIN)).real == pytest.approx(1 / (2 * math.pi), abs=1e-14)

    def test_wigner_one_photon(self):
        assert at_origin(wigner(number_state(1, 2), ORIGIN)).real == pytest.approx(-1 / math.pi, abs=1e-14)

    def test_s_half_vacuum(self):
        assert at_origin(s_dist(VAC, -0.5, ORIGIN)).real == pytest.approx(2 / (3 * math.pi), abs=1e-14)

    def test_bj_vacuum_gap(self):
        bj = at_origin(born_jordan(VAC, ORIGIN)).real
        w = at_origin(wigner(VAC, ORIGIN)).real
        assert bj == pytest.approx(ASINH_ONE / math.pi, abs=1e-14)
        assert w - bj == pytest.approx((1 - ASINH_ONE) / math.pi, abs=1e-14)

    def test_s_positive_rejected(self):
        with pytest.raises(ValueError):
            s_dist(VAC, 0.5, ORIGIN)

    def test_coherent_wigner_gaussian(self):
        alpha = 0.8 - 0.3j
        x0, p0 = math.sqrt(2) * alpha.real, math.sqrt(2) * alpha.imag
        x = np.array([0.0, 1.1, -0.4, 2.0])
        p = np.array([0.0, -0.4, 0.9, -1.5])
        psi = coherent_state(alpha, 40)
        got = evaluate_points(psi, parity_wigner(60), x, p).real
        want = np.exp(-(x - x0) ** 2 - (p - p0) ** 2) / math.pi
        assert np.abs(got - want).max() < 1e-9

    def test_coherent_husimi_gaussian(self):
        alpha = -0.5 + 0.6j
        x0, p0 = math.sqrt(2) * alpha.real, math.sqrt(2) * alpha.imag
        g = PhaseGrid.square(2, 9)
        X, P = g.mesh()
        got = husimi(coherent_state(alpha, 40), g).values.real
        want = np.exp(-((X - x0) ** 2 + (P - p0) ** 2) / 2) / (2 * math.pi)
        assert np.abs(got - want).max() < 1e-9


class TestSymmetry:
    def test_bj_fock4_quarter_turn(self):
        g = PhaseGrid.square(3, 31)
        f = born_jordan(number_state(4, 5), g).values
        assert np.abs(np.rot90(f) - f).max() < 1e-8

    def test_bj_rotation_breaking(self):
        from parityspace.distributions import parity_for

        rho = number_state(4, 5)
        g = PhaseGrid.square(2.5, 11)
        par = parity_for(FilterKind.born_jordan(), working_dimension(rho, 13))
        assert rotation_deviation(rho, par, g, math.pi / 2) < 1e-8
        assert rotation_deviation(rho, par, g, math.pi / 4) > 1e-3

    def test_wigner_fock_radial(self):
        rho = number_state(3, 4)
        g = PhaseGrid.square(2, 9)
        assert rotation_deviation(rho, parity_wigner(40), g, 0.37) < 1e-10

    def test_nonradial_sign_pattern(self):
        g = PhaseGrid.square(2.5, 11)
        v = bj_fock_decomposition(4, g)["nonradial"].values.real
        idx = {round(a, 6): i for i, a in enumerate(g.xs)}
        axes = [(2, 0), (0, 2), (-2, 0), (0, -2)]
        diag = [(1.5, 1.5), (-1.5, 1.5), (-1.5, -1.5), (1.5, -1.5)]
        av = [v[idx[a], idx[b]] for a, b in axes]
        dv = [v[idx[a], idx[b]] for a, b in diag]
        assert all(a > 1e-3 for a in av) and all(d < -1e-3 for d in dv)
        assert np.ptp(av) < 1e-12 and np.ptp(dv) < 1e-12

    def test_split_sums_to_field(self):
        g = PhaseGrid.square(2, 15)
        full = born_jordan(number_state(4, 5), g, N=45).values
        parts = bj_fock_decomposition(4, g, N=45)
        assert np.abs(parts["radial"].values + parts["nonradial"].values - full).max() < 1e-10

    def test_radial_part_is_radial(self):
        g = PhaseGrid.square(2, 15)
        r = bj_fock_decomposition(4, g)["radial"].values
        assert np.abs(np.rot90(r) - r).max() < 1e-12
        assert np.abs(r - r.T).max() < 1e-12


class TestMarginals:
    GRID = PhaseGrid.square(7, 141)

    @pytest.mark.parametrize("kind", [FilterKind.wigner(), FilterKind.born_jordan()])
    def test_fock_one_marginal(self, kind):
        field = distribution(number_state(1, 2), kind, self.GRID)
        mg = marginals(field)
        want = hermite_psi(1, mg.x) ** 2
        assert np.abs(mg.px - want).max() < 1e-6
        assert np.abs(mg.pp - hermite_psi(1, mg.p) ** 2).max() < 1e-6

    def test_husimi_marginal_is_smoothed(self):
        mg = marginals(husimi(number_state(1, 2), self.GRID))
        assert np.abs(mg.px - hermite_psi(1, mg.x) ** 2).max() > 0.01

    def test_boundary_warning(self):
        field = wigner(VAC, PhaseGrid.square(1.5, 11))
        with pytest.warns(BoundaryLeakWarning):
            marginals(field)

    def test_quiet_on_wide_grid(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            marginals(wigner(VAC, self.GRID))

    @pytest.mark.parametrize("kind", [FilterKind.wigner(), FilterKind.s_param(-0.6), FilterKind.born_jordan(),
                                      FilterKind.tau_param(0.3)])
    def test_total_integral(self, kind):
        rho = density_from_pure(cat_state(2))
        assert total_integral(distribution(rho, kind, self.GRID)) == pytest.approx(1.0, abs=1e-6)


class TestStructural:
    def test_cohen_convolution(self):
        err = cohen_convolution_check(cat_state(2), -0.5, PhaseGrid.square(3, 61))
        assert err < 1e-6

    def test_cohen_rejects_nonnegative(self):
        with pytest.raises(ValueError):
            cohen_convolution_check(VAC, 0.0, ORIGIN)

    @pytest.mark.parametrize("kind", [FilterKind.wigner(), FilterKind.born_jordan(), FilterKind.tau_param(0.3)])
    def test_covariance(self, kind):
        g = PhaseGrid.square(2, 21)
        assert covariance_check(cat_state(2), kind, (3, -2), g) < 1e-8

    def test_linearity(self):
        g = PhaseGrid.square(2, 9)
        a = density_from_pure(number_state(1, 3))
        b = density_from_pure(cat_state(3))
        mix = DensityMatrix.mixture([0.3, 0.7], [a, b])
        for kind in (FilterKind.born_jordan(), FilterKind.tau_param(0.2)):
            fm = distribution(mix, kind, g, N=40).values
            fa = distribution(a, kind, g, N=40).values
            fb = distribution(b, kind, g, N=40).values
            assert np.abs(fm - (0.3 * fa + 0.7 * fb)).max() < 1e-12

    def test_bj_real(self):
        f = born_jordan(cat_state(2), PhaseGrid.square(2, 11))
        assert f.max_imag < 1e-12

    def test_tau_complex_and_conjugate(self):
        g = PhaseGrid.square(2, 11)
        rho = cat_state(2)
        a = tau_dist(rho, 0.3, g, N=40).values
        b = tau_dist(rho, 0.7, g, N=40).values
        assert np.abs(a.imag).max() > 1e-3
        assert np.abs(a.conj() - b).max() < 1e-8

    def test_jobs_do_not_change_result(self):
        g = PhaseGrid.square(2, 61)
        rho = cat_state(2)
        a = born_jordan(rho, g, jobs=1).values
        b = born_jordan(rho, g, jobs=4).values
        assert np.array_equal(a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(number_state(5, 6), parity_wigner(4), ORIGIN)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
    def test_wigner_bounded(self, x, p):
        v = evaluate_points(cat_state(2), parity_wigner(40), [x], [p])
        assert abs(v[0]) <= 1 / math.pi + 1e-12


class TestCsv:
    def test_roundtrip(self, tmp_path):
        f = tau_dist(cat_state(2), 0.3, PhaseGrid(-1, 2, -2, 2, 7, 5))
        write_field_csv(f, tmp_path / "f.csv")
        back = read_field_csv(tmp_path / "f.csv")
        assert back.grid == f.grid and back.kind == f.kind
        assert np.array_equal(back.values, f.values)

    def test_header(self, tmp_path):
        write_field_csv(wigner(VAC, ORIGIN), tmp_path / "w.csv")
        lines = (tmp_path / "w.csv").read_text().splitlines()
        assert lines[0] == "# kind=wigner nx=3 np=3" and len(lines) == 10
