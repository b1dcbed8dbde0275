"""Closed-form spectrum against brute-force roots, matrices, and invariants."""

import math

import numpy as np
import pytest

from xxzpair import (
    DegenerateInput,
    ModelParams,
    NotARoot,
    cubic_invariants,
    eigenstate,
    eigenvalues,
    shifted_cubic,
    triplet_coefficients,
    triplet_shifted_roots,
    triplet_solutions,
)
from xxzpair import oracle, spectrum
from xxzpair.crosscheck import sample_params

PI = math.pi


def rand_params(seed, n):
    rng = np.random.default_rng(seed)
    return [sample_params(rng) for _ in range(n)]


class TestShiftedCubic:
    def test_zero_energy_isotropic(self):
        # J = 0 kills every eps-free term, so F(0) = 0.
        p = ModelParams(1.0, 1.0, 1.0, PI / 3)
        assert shifted_cubic(0.0, p) == 0.0

    def test_isotropic_factorization(self):
        # J = 0 gives F = eps (eps^2 - 4 b0^2), so eps = 2 b0 is a root.
        p = ModelParams(0.7, 0.7, 1.0, 0.9)
        assert abs(shifted_cubic(2.0, p)) < 1e-12

    def test_direct_arithmetic(self):
        p = ModelParams(1.0, 0.0, 1.0, PI / 3)
        assert shifted_cubic(1.0, p) == pytest.approx(-3.0, abs=1e-12)

    def test_matches_triplet_block_char_poly(self):
        # det(eps I - block) must reproduce the cubic for generic params.
        p = ModelParams(1.3, -0.4, 0.8, 1.1)
        block = oracle.triplet_block(p)
        for eps in (-2.0, -0.3, 0.0, 0.7, 1.9):
            det = np.linalg.det(eps * np.eye(3) - block)
            assert det == pytest.approx(shifted_cubic(eps, p), abs=1e-10)


class TestCubicInvariants:
    def test_zero_anisotropy(self):
        inv = cubic_invariants(ModelParams(1.0, 1.0, 1.0, 0.3))
        assert inv.q == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert inv.r == 0.0
        assert inv.p == pytest.approx(PI / 2, rel=1e-15)

    def test_equatorial_arithmetic(self):
        inv = cubic_invariants(ModelParams(1.0, 0.0, 1.0, PI / 2))
        assert inv.q == pytest.approx(16.0 / 9.0, rel=1e-12)
        assert inv.r == pytest.approx(44.0 / 27.0, rel=1e-12)
        assert inv.p == pytest.approx(0.8127555613686607, abs=1e-12)

    def test_degenerate_input(self):
        with pytest.raises(DegenerateInput) as exc_info:
            cubic_invariants(ModelParams(1.0, 1.0, 0.0, 0.3))
        inv = exc_info.value.invariants
        assert (inv.q, inv.r, inv.p) == (0.0, 0.0, PI / 2)

    def test_reality_guarantee(self):
        # Hermiticity forces r^2 <= q^3 for any real parameter set.
        for p in rand_params(11, 300):
            inv = cubic_invariants(p)
            assert inv.r**2 <= inv.q**3 * (1.0 + 1e-10)
            assert 0.0 <= inv.p <= PI


class TestTripletRoots:
    def test_isotropic_roots(self):
        p = ModelParams(2.0, 2.0, 1.0, 0.77)
        assert triplet_shifted_roots(p) == pytest.approx((-2.0, 0.0, 2.0), abs=1e-12)

    def test_equatorial_roots(self):
        p = ModelParams(1.0, 0.0, 1.0, PI / 2)
        expected = (1.0 - math.sqrt(5.0), 0.0, 1.0 + math.sqrt(5.0))
        assert triplet_shifted_roots(p) == pytest.approx(expected, abs=1e-12)

    def test_generic_roots_frozen(self):
        # Independent values from numpy.roots on the same cubic.
        p = ModelParams(1.0, 0.0, 1.0, PI / 3)
        expected = (-1.5141369293352913, 0.4280067316837971, 3.086130197651495)
        assert triplet_shifted_roots(p) == pytest.approx(expected, abs=1e-12)

    def test_degenerate_input_propagates(self):
        with pytest.raises(DegenerateInput):
            triplet_shifted_roots(ModelParams(0.0, 0.0, 0.0, 0.0))

    def test_random_roots_residual_and_order(self):
        for p in rand_params(12, 300):
            roots = triplet_shifted_roots(p)
            assert roots[0] <= roots[1] <= roots[2]
            for eps in roots:
                tol = 1e-9 * max(1.0, abs(eps) ** 3)
                assert abs(shifted_cubic(eps, p)) < tol

    def test_matches_numpy_roots(self):
        for p in rand_params(13, 100):
            coeffs = [1.0, -2.0 * p.j, -4.0 * p.b0**2,
                      8.0 * p.j * p.b0**2 * math.cos(p.theta) ** 2]
            ref = np.sort(np.roots(coeffs).real)
            got = np.array(triplet_shifted_roots(p))
            assert np.max(np.abs(got - ref)) < 1e-8 * max(1.0, np.max(np.abs(ref)))


class TestEigenvalues:
    def test_exchange_only(self):
        # Singlet at -(j_z + 2 j_x); triplet collapses onto j_z when J = b0 = 0.
        assert eigenvalues(ModelParams(1.0, 1.0, 0.0, 0.5)) == pytest.approx(
            (-3.0, 1.0, 1.0, 1.0))

    def test_isotropic_with_field(self):
        assert eigenvalues(ModelParams(1.0, 1.0, 1.0, PI / 3)) == pytest.approx(
            (-3.0, -1.0, 1.0, 3.0), abs=1e-12)

    def test_generic_point_frozen(self):
        got = eigenvalues(ModelParams(1.0, 0.0, 1.0, PI / 3))
        expected = (-2.0, -1.5141369293352913, 0.4280067316837971,
                    3.086130197651495)
        assert got == pytest.approx(expected, abs=1e-12)

    def test_shift_covariance(self):
        # eps_n depends on the couplings only through J = j_x - j_z.
        e_a = eigenvalues(ModelParams(2.0, 1.0, 0.9, 1.2))
        e_b = eigenvalues(ModelParams(1.0, 0.0, 0.9, 1.2))
        for n in (1, 2, 3):
            assert e_a[n] - 1.0 == pytest.approx(e_b[n], abs=1e-12)
        assert e_a[0] == pytest.approx(e_b[0] - 3.0, abs=1e-12)


class TestTripletCoefficients:
    def test_frozen_isotropic_level(self):
        p = ModelParams(1.0, 1.0, 1.0, PI / 3)
        sol = triplet_coefficients(-2.0, p)
        assert sol.n == 1
        assert sol.a == pytest.approx(0.25, abs=1e-14)
        assert sol.b == pytest.approx(-math.sqrt(3.0 / 8.0), abs=1e-14)
        assert sol.c == pytest.approx(0.75, abs=1e-14)
        assert sol.d == pytest.approx(48.0, rel=1e-13)
        assert not sol.fallback_used

    def test_equator_zero_root_fallback(self):
        p = ModelParams(1.0, 0.0, 1.0, PI / 2)
        eps_mid = triplet_shifted_roots(p)[1]
        sol = triplet_coefficients(eps_mid, p)
        assert sol.fallback_used
        s = 1.0 / math.sqrt(2.0)
        assert (sol.a, sol.b, sol.c) == pytest.approx((s, 0.0, -s), abs=1e-12)

    def test_polar_axis_fallback(self):
        # sin(theta) = 0 decouples the block; eps = 2 b0 is the pure uu state.
        p = ModelParams(0.3, 0.1, 1.0, 0.0)
        sol = triplet_coefficients(2.0, p)
        assert sol.fallback_used
        assert (sol.a, sol.b, sol.c) == pytest.approx((1.0, 0.0, 0.0), abs=1e-12)

    def test_not_a_root(self):
        p = ModelParams(1.0, 0.0, 1.0, PI / 3)
        with pytest.raises(NotARoot):
            triplet_coefficients(0.5, p)

    def test_normalization_closed_form(self):
        for p in rand_params(14, 300):
            for sol in triplet_solutions(p):
                if not sol.fallback_used:
                    norm = sol.a**2 + sol.b**2 + sol.c**2
                    assert abs(norm - 1.0) < 1e-12

    def test_coefficient_symmetries(self):
        # Same-index maps: a(theta) = c(pi - theta) and b even in theta;
        # a(eps) = -c(-eps) and b even in eps, for the raw closed forms.
        for p in rand_params(15, 200):
            mirrored = ModelParams(p.j_x, p.j_z, p.b0, PI - p.theta)
            for eps in triplet_shifted_roots(p):
                a1, b1, c1, _ = spectrum.closed_form_coefficients(eps, p)
                a2, b2, c2, _ = spectrum.closed_form_coefficients(eps, mirrored)
                assert a1 == pytest.approx(c2, abs=1e-10)
                assert b1 == pytest.approx(b2, abs=1e-10)
                a3, b3, c3, _ = spectrum.closed_form_coefficients(-eps, p)
                assert a1 == pytest.approx(-c3, abs=1e-10)
                assert b1 == pytest.approx(b3, abs=1e-10)

    def test_degenerate_trio_is_orthonormal(self):
        sols = triplet_solutions(ModelParams(1.0, 1.0, 0.0, 1.0))
        assert all(s.degenerate for s in sols)
        vecs = np.array([[s.a, s.b, s.c] for s in sols])
        assert np.allclose(vecs @ vecs.T, np.eye(3), atol=1e-12)


class TestEigenstate:
    def test_singlet_constant(self):
        expected = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
        for p in (ModelParams(1.0, 0.2, 0.5, 0.3), ModelParams(-2.0, 5.0, 3.0, 2.0)):
            for phi in (0.0, 1.1):
                assert np.allclose(eigenstate(p, 0, phi), expected)

    def test_frozen_isotropic_state(self):
        got = eigenstate(ModelParams(1.0, 1.0, 1.0, PI / 3), 1, 0.0)
        expected = [0.25, -0.4330127018922193, -0.4330127018922193, 0.75]
        assert np.allclose(got, expected, atol=1e-12)

    def test_strong_exchange_top_level(self):
        # j_x >> b0 sends the top level to the symmetric triplet (gauge-free
        # comparison through amplitude magnitudes).
        v = eigenstate(ModelParams(1e3, 0.0, 1.0, PI / 3), 3, 0.0)
        s = 1.0 / math.sqrt(2.0)
        assert np.allclose(np.abs(v), [0.0, s, s, 0.0], atol=2e-3)

    def test_residuals_all_levels_several_azimuths(self):
        for p in rand_params(16, 100):
            energies = eigenvalues(p)
            for phi in (0.0, 0.9, 4.4):
                h = oracle.hamiltonian(p, phi)
                hnorm = np.linalg.norm(h)
                for n in range(4):
                    v = eigenstate(p, n, phi)
                    assert abs(np.linalg.norm(v) - 1.0) < 1e-12
                    residual = np.linalg.norm(h @ v - energies[n] * v)
                    assert residual < 1e-9 * hnorm

    def test_azimuth_only_phases(self):
        p = ModelParams(0.8, -0.2, 1.1, 0.7)
        v0 = eigenstate(p, 2, 0.0)
        v1 = eigenstate(p, 2, 0.6)
        phase = complex(math.cos(0.6), -math.sin(0.6))
        assert np.allclose(v1, v0 * np.array([phase, 1.0, 1.0, phase.conjugate()]))


class TestParamsValidation:
    @pytest.mark.parametrize("bad", [
        dict(j_x=float("nan"), j_z=0.0, b0=1.0, theta=0.5),
        dict(j_x=0.0, j_z=float("inf"), b0=1.0, theta=0.5),
        dict(j_x=0.0, j_z=0.0, b0=-1.0, theta=0.5),
        dict(j_x=0.0, j_z=0.0, b0=1.0, theta=4.0),
    ])
    def test_rejects_bad_inputs(self, bad):
        with pytest.raises(ValueError):
            ModelParams(**bad)
