"""Tests for the composition unitaries and the weak-decay pairing."""

import numpy as np
import pytest

from berglab.basis import TruncatedBasis, kernel_expansion
from berglab.geometry import sample_ball
from berglab.quadrature import build_rule
from berglab.sequences import build_sequence
from berglab.toeplitz import Symbol
from berglab.unitaries import (conjugate_toeplitz, exact_available,
                               unitary_matrix, unitary_matrix_exact,
                               unitary_matrix_quadrature, unitarity_defect,
                               weak_pairing_exact)


def window(mat, basis, probe):
    keep = basis.degrees <= probe
    return float(np.linalg.norm(mat[np.ix_(keep, keep)], 2))


@pytest.fixture(scope="module")
def basis():
    return TruncatedBasis.create(1, 12)


@pytest.fixture(scope="module")
def rule():
    return build_rule(1, 40, angular=192)


class TestMatrixRoutes:
    def test_origin_is_parity(self, basis):
        u = unitary_matrix_exact([0.0], basis)
        expect = np.diag((-1.0) ** np.arange(13) + 0j)
        np.testing.assert_allclose(u.mat, expect, atol=1e-15)

    def test_origin_parity_two_variables(self):
        b2 = TruncatedBasis.create(2, 4)
        u = unitary_matrix_exact(np.zeros(2, complex), b2)
        np.testing.assert_allclose(np.diag(u.mat), (-1.0) ** b2.degrees,
                                   atol=1e-15)

    def test_first_column_is_kernel(self, basis):
        for z in (0.5, 0.3 + 0.4j):
            u = unitary_matrix_exact([z], basis)
            kexp = kernel_expansion([z], basis)
            np.testing.assert_allclose(u.mat[:, 0], kexp.coeffs, atol=1e-14)

    def test_self_adjoint(self, basis):
        # entries are alternating binomial sums; roundoff grows with degree
        u = unitary_matrix_exact([0.3 - 0.55j], basis)
        assert np.max(np.abs(u.mat - u.mat.conj().T)) < 1e-10

    def test_exact_matches_quadrature(self, basis, rule):
        for z in ([0.5 + 0.0j], [0.2 - 0.4j]):
            ue = unitary_matrix_exact(z, basis)
            uq = unitary_matrix_quadrature(z, basis, rule)
            assert np.max(np.abs(ue.mat - uq.mat)) < 1e-11

    def test_exact_matches_quadrature_two_variables(self):
        b2 = TruncatedBasis.create(2, 5)
        rule2 = build_rule(2, 14, angular=64)
        z = np.array([0.4 + 0j, 0.0 + 0j])
        ue = unitary_matrix_exact(z, b2)
        uq = unitary_matrix_quadrature(z, b2, rule2)
        assert np.max(np.abs(ue.mat - uq.mat)) < 1e-10

    def test_exact_availability(self):
        assert exact_available([0.3 + 0.2j], 1)
        assert exact_available([0.5, 0.0], 2)
        assert exact_available([0.0, 0.0], 2)
        assert not exact_available([0.3, 0.2], 2)
        assert not exact_available([0.3j, 0.0], 2)

    def test_auto_route_policy(self, basis, rule):
        z_near = [1.0 - 1e-6]
        u = unitary_matrix(z_near, basis)  # exact, no rule needed in n=1
        assert np.all(np.isfinite(u.mat))
        b2 = TruncatedBasis.create(2, 4)
        with pytest.raises(ValueError, match="resolution"):
            unitary_matrix(np.array([(1 - 1e-6) / np.sqrt(2)] * 2,
                                    dtype=complex), b2, None)

    def test_compression_is_contraction(self, basis):
        for t in (0.3, 0.9, 1 - 1e-5):
            u = unitary_matrix_exact([t], basis)
            assert np.linalg.norm(u.mat, 2) <= 1.0 + 1e-12


class TestUnitarityDefect:
    def test_window_defect_decreases_n1(self):
        defects = []
        for d in (6, 8, 10, 12):
            b = TruncatedBasis.create(1, d)
            u = unitary_matrix_exact([0.5], b)
            v = u.mat.conj().T @ u.mat - np.eye(d + 1)
            defects.append(window(v, b, 3))
        assert all(a > b for a, b in zip(defects, defects[1:]))

    def test_window_defect_decreases_n2(self):
        defects = []
        for d in (4, 6, 8):
            b = TruncatedBasis.create(2, d)
            u = unitary_matrix_exact(np.array([0.5, 0.0], complex), b)
            v = u.mat.conj().T @ u.mat - np.eye(len(b))
            defects.append(window(v, b, 2))
        assert all(a > b for a, b in zip(defects, defects[1:]))

    def test_full_defect_reported(self, basis):
        u = unitary_matrix_exact([0.5], basis)
        assert 0.0 < unitarity_defect(u) <= 1.0 + 1e-12


class TestConjugation:
    def test_radial_symbol_at_origin(self, basis, rule):
        f = Symbol.radial(lambda u: u ** 2, 1.0)
        lhs, rhs = conjugate_toeplitz([0.0], f, basis, rule)
        assert np.max(np.abs(lhs.mat - rhs.mat)) < 1e-12

    def test_constant_symbol(self, basis, rule):
        f = Symbol.constant(1.0)
        lhs, rhs = conjugate_toeplitz([0.5], f, basis, rule)
        # right side is exactly the identity; left side approaches it on
        # any fixed low-degree window as the truncation grows
        assert np.max(np.abs(rhs.mat - np.eye(len(basis)))) < 1e-12
        assert window(lhs.mat - np.eye(len(basis)), basis, 3) < 0.05

    def test_defect_decreases_with_degree(self, rule):
        f = Symbol.radial(lambda u: u ** 2, 1.0)
        defects = []
        for d in (6, 8, 10, 12):
            b = TruncatedBasis.create(1, d)
            lhs, rhs = conjugate_toeplitz([0.5], f, b, rule)
            defects.append(window(lhs.mat - rhs.mat, b, 3))
        assert all(a > b for a, b in zip(defects, defects[1:]))


class TestWeakPairing:
    def test_benchmark_value(self):
        value, bound = weak_pairing_exact([0.9], [0.0], [0.0])
        assert abs(value - 0.19) < 1e-12
        assert bound >= abs(value)

    def test_center_pairing_formula(self):
        # value at z = w = 0 is (1 - |z_m|^2)^((n+1)/2)
        zm = np.array([0.6 + 0j, 0.3 + 0j])
        value, _ = weak_pairing_exact(zm, np.zeros(2), np.zeros(2))
        assert abs(value - (1 - 0.45) ** 1.5) < 1e-14

    def test_bound_dominates_randomly(self):
        rng = np.random.default_rng(41)
        for n in (1, 2, 3):
            zm = sample_ball(n, 1000, rng, 0.999)
            z = sample_ball(n, 1000, rng, 0.9)
            w = sample_ball(n, 1000, rng, 0.9)
            for i in range(1000):
                v, b = weak_pairing_exact(zm[i], z[i], w[i])
                assert abs(v) <= b + 1e-14

    def test_matrix_pairing_converges(self):
        zm, zp, wp = [0.6], [0.3], [0.2j]
        target, _ = weak_pairing_exact(zm, zp, wp)
        errs = []
        for d in (6, 8, 10, 12):
            b = TruncatedBasis.create(1, d)
            u = unitary_matrix_exact(zm, b)
            kz = kernel_expansion(zp, b).coeffs
            kw = kernel_expansion(wp, b).coeffs
            errs.append(abs(complex(np.vdot(kw, u.mat @ kz)) - target))
        assert all(a > b for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 1e-8

    def test_decay_along_separated_sequence(self):
        seq = build_sequence([1.0], 0.5, 8)
        pts = seq.points()
        vals, bounds = [], []
        for m in range(8):
            v, b = weak_pairing_exact(pts[m], [0.2], [0.1])
            vals.append(abs(v))
            bounds.append(b)
        assert all(a > b for a, b in zip(vals, vals[1:]))
        one_minus = 1.0 - seq.radii ** 2
        slope = np.polyfit(np.log(one_minus), np.log(bounds), 1)[0]
        assert abs(slope - 1.0) <= 0.05  # (n+1)/2 at n = 1
