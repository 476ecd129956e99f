import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, gammaln

from parityspace import kernels
from parityspace._kernels_py import displacement_blocks as numpy_blocks
from parityspace.displacement import (
    characteristic_function,
    displacement_columns,
    displacement_matrix,
    squeeze_elements,
    squeeze_guard,
    squeeze_matrix,
)
from parityspace.fock import DensityMatrix, LadderOps, density_from_pure, number_state

# 30-digit expm of (alpha a^dag - conj(alpha) a) on 60 levels, alpha = 0.7 - 0.4i
MP_D = {
    (3, 1): 0.228749666905228926 - 0.388181252930085541j,
    (1, 3): 0.228749666905228926 + 0.388181252930085541j,
    (5, 0): -0.0192021841700241152 - 0.0116639104476593363j,
    (2, 2): -0.0641243026357338649 + 0j,
}
# same for exp[(xi/2)(a^2 - a^dag^2)], xi = 0.5
MP_S = {(0, 0): 0.941710615831675707, (2, 0): -0.307719176458370449, (4, 2): -0.552547364065837543}


def scipy_reference(alpha, N):
    """Independent dense D(alpha) from scipy's generalized Laguerre polynomials."""
    out = np.zeros((N, N), dtype=complex)
    x = abs(alpha) ** 2
    for m in range(N):
        for n in range(N):
            lo, hi = min(m, n), max(m, n)
            mag = math.exp(0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) - x / 2) * eval_genlaguerre(lo, hi - lo, x)
            if m >= n:
                out[m, n] = mag * alpha ** (m - n)
            else:
                out[m, n] = mag * (-alpha.conjugate()) ** (n - m)
    return out


class TestDisplacement:
    def test_identity_at_zero(self):
        assert np.array_equal(displacement_matrix(0, 10).entries, np.eye(10))

    def test_vacuum_entry(self):
        assert displacement_matrix(1.0, 5).entries[0, 0] == pytest.approx(math.exp(-0.5), abs=1e-15)

    def test_first_subdiagonal(self):
        d = displacement_matrix(2j, 4).entries
        assert d[1, 0] == pytest.approx(2j * math.exp(-2), abs=1e-15)

    def test_high_precision_entries(self):
        d = displacement_matrix(0.7 - 0.4j, 8).entries
        for (m, n), v in MP_D.items():
            assert abs(d[m, n] - v) < 1e-14

    def test_matches_scipy_laguerre(self):
        for alpha in (0.3 + 0.1j, -1.2 + 2.0j, 2.5j):
            assert np.abs(displacement_matrix(alpha, 25).entries - scipy_reference(alpha, 25)).max() < 1e-12

    @given(st.floats(0, 4), st.floats(-math.pi, math.pi))
    def test_unitary_on_guarded_block(self, r, phi):
        dm = displacement_matrix(cmath.rect(r, phi), 60 + int(16 * r * r))
        assert dm.N > dm.guard
        assert dm.unitarity_defect() < 1e-8

    def test_adjoint_is_negation(self):
        a = 0.9 - 1.3j
        d = displacement_matrix(a, 30).entries
        assert np.allclose(d.conj().T, displacement_matrix(-a, 30).entries, atol=1e-14)

    @given(st.complex_numbers(max_magnitude=1.5), st.complex_numbers(max_magnitude=1.5))
    def test_composition_up_to_phase(self, a, b):
        N = 70
        da = displacement_matrix(a, N).entries
        db = displacement_matrix(b, N).entries
        dab = displacement_matrix(a + b, N).entries
        k = 20
        phase = cmath.exp(1j * (a * b.conjugate()).imag)
        assert np.abs((da @ db)[:k, :k] - phase * dab[:k, :k]).max() < 1e-7

    def test_batched_columns(self):
        al = np.array([0.1, 1 + 1j, -2j])
        blk = displacement_columns(al, 12, 3)
        for i, a in enumerate(al):
            assert np.allclose(blk[i], displacement_matrix(a, 12).entries[:, :3], atol=1e-15)

    def test_large_dimension_finite(self):
        d = displacement_matrix(3 + 4j, 600).entries
        assert np.all(np.isfinite(d))


class TestKernelBackends:
    def test_backend_selected(self):
        assert kernels.BACKEND in ("cython", "numpy")
        assert "numpy" in kernels.backends()

    @pytest.mark.parametrize("shape", [(1, 1), (7, 3), (3, 7), (40, 40), (90, 5)])
    def test_backends_agree(self, shape, rng):
        al = (rng.normal(size=50) + 1j * rng.normal(size=50)) * 1.5
        al[0] = 0
        outs = {name: fn(al, *shape) for name, fn in kernels.backends().items()}
        ref = numpy_blocks(al, *shape)
        for name, out in outs.items():
            assert out.shape == (50,) + shape
            assert np.abs(out - ref).max() < 1e-13, name

    def test_empty(self):
        for fn in kernels.backends().values():
            assert fn(np.zeros(0, complex), 4, 4).shape == (0, 4, 4)


class TestSqueeze:
    def test_identity(self):
        assert np.allclose(squeeze_matrix(0.0, 10).entries, np.eye(10), atol=1e-15)

    def test_high_precision_entries(self):
        s = squeeze_matrix(0.5, 10).entries
        for (m, n), v in MP_S.items():
            assert abs(s[m, n] - v) < 1e-12

    def test_vacuum_overlap_is_sqrt_sech(self):
        assert squeeze_matrix(0.5, 10).entries[0, 0] == pytest.approx(math.sqrt(1 / math.cosh(0.5)), abs=1e-12)

    @pytest.mark.parametrize("xi", [-2.0, -0.3, 0.7, 2.5])
    def test_parity_superselection(self, xi):
        s = squeeze_matrix(xi, 16).entries
        m, n = np.indices(s.shape)
        assert np.abs(s[(m + n) % 2 == 1]).max() == 0

    @pytest.mark.parametrize("xi", [-1.5, -1.0, 0.4, 1.5])
    def test_unitary_on_guarded_block(self, xi):
        sq = squeeze_matrix(xi, 200)
        assert sq.guarded_rows >= 1
        assert sq.unitarity_defect < 1e-8
        assert sq.truncation_error < 1e-9

    def test_heavy_tail_leaves_no_guarded_rows(self):
        # tanh(3)^(n/2) tails: no row of a 200-level block is complete
        sq = squeeze_matrix(3.0, 200)
        assert sq.guarded_rows == 0 and math.isnan(sq.unitarity_defect)
        assert sq.truncation_error < 1e-9

    def test_closed_form_matches_expm(self):
        for xi in (-1.7, 0.25, 2.2):
            assert np.abs(squeeze_matrix(xi, 12).entries - squeeze_elements(xi, 12)).max() < 1e-10

    def test_closed_form_far_out(self):
        s = squeeze_elements(40.0, 8)
        assert np.all(np.isfinite(s)) and abs(s[0, 0]) < 1e-8

    def test_second_moment_scaling(self):
        xi = 0.8
        N = 60
        psi = squeeze_matrix(xi, N).entries[:, 0]
        x = LadderOps.build(N).x_op
        var = (psi.conj() @ x @ x @ psi).real
        assert var == pytest.approx(math.exp(-2 * xi) * 0.5, abs=1e-6)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            squeeze_matrix(3.5, 10)

    def test_guard_rule(self):
        assert squeeze_guard(0.0, 10) >= 20
        assert squeeze_guard(3.0, 10) >= 40 * math.exp(3)
        assert squeeze_guard(0.1, 1000) == math.ceil(1000 * (math.exp(0.2) - 1))


class TestCharacteristic:
    def test_origin(self, rng):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        r = a @ a.conj().T
        assert characteristic_function(DensityMatrix(r / np.trace(r).real), 0) == pytest.approx(1.0)

    def test_vacuum(self):
        rho = density_from_pure(number_state(0, 3))
        assert characteristic_function(rho, 1 - 2j) == pytest.approx(math.exp(-2.5), abs=1e-15)

    def test_bounded(self, rng):
        rho = density_from_pure(number_state(3, 6))
        for a in rng.normal(size=50) + 1j * rng.normal(size=50):
            assert abs(characteristic_function(rho, 2 * a)) <= 1 + 1e-12
