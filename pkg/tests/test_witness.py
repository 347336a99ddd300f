"""Tests for regions, boundary traces, the witness operator, decay and
the separation experiment."""

import numpy as np
import pytest

from berglab.basis import Expansion, TruncatedBasis
from berglab.geometry import pseudo_metric, sample_ball
from berglab.quadrature import rule_for_basis
from berglab.sequences import build_sequence
from berglab.toeplitz import Symbol, commutator, op_norm, toeplitz_monomial_radial
from berglab.witness import (SphereSet, boundary_trace_check,
                             build_prop1_config, default_panel,
                             exclusion_radius, in_region_W,
                             lemma3_lower_bound, prop1_decay, region_infimum,
                             separation_experiment, witness_operator,
                             witness_symbol)

R = 0.5


def e1(n):
    v = np.zeros(n, dtype=complex)
    v[0] = 1.0
    return v


def e2(n):
    v = np.zeros(n, dtype=complex)
    v[1] = 1.0
    return v


class TestSphereSet:
    def test_create_and_distance(self):
        f = SphereSet.create([e1(2), e2(2)])
        assert len(f) == 2
        d = f.min_dist(np.array([[0.5 + 0j, 0.0 + 0j]]))
        assert abs(d[0] - 0.5) < 1e-14

    def test_empty_needs_dimension(self):
        with pytest.raises(ValueError):
            SphereSet.create([])
        f = SphereSet.create([], n=2)
        assert len(f) == 0
        assert np.isinf(f.min_dist(np.zeros((1, 2)))[0])

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            SphereSet.create([[0.9 + 0j]])

    def test_containment(self):
        small = SphereSet.create([e1(2)])
        big = SphereSet.create([e1(2), e2(2)])
        assert big.contains(small)
        assert not small.contains(big)


class TestRegionMembership:
    def test_empty_set_is_centered_ball(self):
        f = SphereSet.create([], n=1)
        assert in_region_W(f, R, [0.3])
        assert not in_region_W(f, R, [0.6])

    def test_on_ray_point_belongs(self):
        f = SphereSet.create([e1(2)])
        assert in_region_W(f, R, 0.5 * e1(2))

    def test_orthogonal_direction_excluded(self):
        # inf_t rho(0.5 e2, t e1) = 0.5, approached only at t = 0;
        # strict comparison with r = 0.5 excludes the point
        f = SphereSet.create([e1(2)])
        z = 0.5 * e2(2)
        inf_val = region_infimum(f, z[None, :])[0]
        assert abs(inf_val - 0.5) < 1e-9
        assert not in_region_W(f, R, z)

    def test_infimum_matches_grid_search(self):
        rng = np.random.default_rng(51)
        f = SphereSet.create([e1(2)])
        z = sample_ball(2, 12, rng, 0.9)
        golden = region_infimum(f, z)
        ts = np.linspace(0.0, 1.0 - 1e-9, 20001)
        for i in range(len(z)):
            grid = np.min(pseudo_metric(
                z[i][None, :], ts[:, None] * e1(2)[None, :]))
            assert golden[i] <= grid + 1e-9
            assert golden[i] >= grid - 1e-6

    def test_dense_direction_sample_accepts_aligned_points(self):
        rng = np.random.default_rng(52)
        from berglab.geometry import random_sphere_points
        dirs = random_sphere_points(2, 24, rng)
        f = SphereSet.create(dirs)
        for t in (0.1, 0.5, 0.9):
            pts = t * dirs
            assert np.all(in_region_W(f, R, pts))

    def test_monotone_in_direction_set(self):
        rng = np.random.default_rng(53)
        f1 = SphereSet.create([e1(2)])
        f2 = SphereSet.create([e1(2), e2(2)])
        z = sample_ball(2, 200, rng)
        m1 = np.atleast_1d(in_region_W(f1, R, z))
        m2 = np.atleast_1d(in_region_W(f2, R, z))
        assert not np.any(m1 & ~m2)


class TestBoundaryTrace:
    def test_single_direction(self):
        rng = np.random.default_rng(54)
        for n in (1, 2):
            f = SphereSet.create([e1(n)])
            rep = boundary_trace_check(f, R, 200, 0.999, rng)
            assert rep["directions_confirmed"] == 1
            assert rep["violations"] == 0
            assert rep["ok"]

    def test_empty_set(self):
        rng = np.random.default_rng(55)
        f = SphereSet.create([], n=2)
        rep = boundary_trace_check(f, R, 100, 0.999, rng)
        assert rep["violations"] == 0 and rep["ok"]

    def test_far_sphere_point_outside(self):
        f = SphereSet.create([e1(2)])
        assert not in_region_W(f, R, 0.999 * e2(2))

    def test_exclusion_radius_inverts_delta(self):
        from berglab.geometry import delta_for
        for r in (0.3, 0.5, 0.7):
            for gap in (1e-3, 1e-4):
                eps_star = exclusion_radius(r, gap) / 2.0
                assert delta_for(r, eps_star) >= gap


class TestWitnessSymbol:
    def test_vanishes_at_origin_and_off_support(self):
        rng = np.random.default_rng(56)
        f = witness_symbol(R)
        assert f(np.zeros((1, 1), complex))[0] == 0.0
        z = sample_ball(1, 500, rng)
        outside = np.linalg.norm(z, axis=1) >= R
        assert np.max(np.abs(f(z[outside]))) == 0.0

    def test_sup_norm_attained(self):
        f = witness_symbol(R)
        u = np.linspace(0, R, 4001)[:, None].astype(complex)
        vals = np.abs(f(u))
        assert vals.max() <= f.sup_norm_bound + 1e-12
        assert vals.max() > f.sup_norm_bound - 1e-6

    def test_commutator_nonzero_with_frozen_norm(self):
        basis = TruncatedBasis.create(1, 12)
        f = witness_symbol(R)
        a = toeplitz_monomial_radial(0, f.profile, basis, support=R)
        c = commutator(a, a.adjoint())
        assert abs(op_norm(c) - R ** 8 / 18.0) < 1e-15


@pytest.fixture(scope="module")
def flagship():
    basis = TruncatedBasis.create(1, 12)
    rule = rule_for_basis(1, 12, radial_breaks=(R * R,))
    return basis, rule


class TestWitnessOperator:
    def test_single_term_spectrum_close_to_s(self, flagship):
        basis, rule = flagship
        w = witness_operator(e1(1), R, 1, basis, rule)
        top_t = float(np.max(np.linalg.eigvalsh(w.T.mat)))
        top_s = float(np.max(np.linalg.eigvalsh(w.S.mat)))
        assert abs(top_t - top_s) / top_s < 1e-6

    def test_s_positive_semidefinite(self, flagship):
        basis, rule = flagship
        w = witness_operator(e1(1), R, 3, basis, rule)
        assert float(np.min(np.linalg.eigvalsh(w.S.mat))) >= -1e-10

    def test_two_route_agreement_tightens(self, flagship):
        defects = {}
        for d in (6, 12):
            basis = TruncatedBasis.create(1, d)
            rule = rule_for_basis(1, d, radial_breaks=(R * R,))
            w = witness_operator(e1(1), R, 1, basis, rule, two_route=True)
            defects[d] = w.two_route_defects[0]
        assert defects[12] < defects[6]

    def test_conditioning_warning(self, flagship):
        basis, rule = flagship
        w = witness_operator(e1(1), R, 6, basis, rule)
        assert w.conditioning_warning  # 1 - t_6 is below 1e-6


class TestLemma3:
    def test_flagship_lower_bound(self, flagship):
        basis, rule = flagship
        w = witness_operator(e1(1), R, 5, basis, rule)
        rep = lemma3_lower_bound(w.T, w.S, w.seq, basis, rule,
                                 unitaries=w.unitaries)
        assert rep["ok"]
        assert rep["floor_c"] > 0
        assert abs(rep["lambda_max"] - R ** 16 / 324.0) < 1e-18
        vals = np.asarray(rep["values"])
        guar = np.asarray(rep["guaranteed"])
        assert np.all(vals >= guar - 1e-15 * (1 + rep["lambda_max"]))
        assert np.all(np.asarray(rep["norms"]) >= rep["floor_c"] - 1e-20)

    def test_single_term_value_close_to_lambda(self, flagship):
        basis, rule = flagship
        w = witness_operator(e1(1), R, 1, basis, rule)
        rep = lemma3_lower_bound(w.T, w.S, w.seq, basis, rule,
                                 unitaries=w.unitaries)
        assert rep["values"][0] >= rep["lambda_max"] - rep["tolerances"][0] \
            - 1e-18
        assert rep["tolerances"][0] < 1e-13


class TestProp1:
    def test_sequence_too_close_rejected(self, flagship):
        basis, rule = flagship
        rng = np.random.default_rng(57)
        f = SphereSet.create([e1(1)])
        seq = build_sequence(e1(1), R, 3)
        cfg = build_prop1_config(f, 0.5, rule, rng)
        h = Expansion(basis, np.eye(len(basis), dtype=complex)[:, 0])
        with pytest.raises(ValueError, match="within eps"):
            prop1_decay(default_panel(SphereSet.create([], n=1), R, 1),
                        f, seq, h, 1.0, cfg, basis, rule)

    def test_zero_symbol_gives_zero_curve(self, flagship):
        basis, rule = flagship
        rng = np.random.default_rng(58)
        f_empty = SphereSet.create([], n=1)
        seq = build_sequence(e1(1), R, 4)
        cfg = build_prop1_config(f_empty, 0.5, rule, rng)
        h = Expansion(basis, np.eye(len(basis), dtype=complex)[:, 0])
        zero = Symbol.sampled(lambda pts: np.zeros(pts.shape[0], complex),
                              0.0)
        rep = prop1_decay([zero], f_empty, seq, h, 1.0, cfg, basis, rule)
        assert np.max(np.abs(rep["curves"][0])) == 0.0

    def test_empty_config_trivial(self, flagship):
        _, rule = flagship
        rng = np.random.default_rng(59)
        cfg = build_prop1_config(SphereSet.create([], n=1), 0.5, rule, rng)
        assert cfg.delta == 1.0
        assert cfg.nu_v2 == 0.0

    def test_nonempty_config_values(self):
        rng = np.random.default_rng(60)
        rule = rule_for_basis(2, 6)
        f = SphereSet.create([e2(2)])
        cfg = build_prop1_config(f, 0.5, rule, rng)
        assert cfg.delta > 0.0
        assert 0.0 < cfg.nu_v2 < 0.2
        near = (1.0 - 0.05) * e2(2)
        far = 0.5 * e1(2)
        assert abs(cfg.eta(near[None, :])[0] - 1.0) < 1e-14
        assert abs(cfg.eta(far[None, :])[0]) == 0.0


class TestSeparation:
    def test_rejects_equal_sets(self, flagship):
        basis, rule = flagship
        rng = np.random.default_rng(61)
        f = SphereSet.create([e1(1)])
        with pytest.raises(ValueError, match="2 eps"):
            separation_experiment(f, f, R, 3, basis, rule, eps=0.5, rng=rng)

    def test_flagship_report(self, flagship):
        basis, rule = flagship
        rng = np.random.default_rng(62)
        rep = separation_experiment(
            SphereSet.create([], n=1), SphereSet.create([e1(1)]), R, 5,
            basis, rule, eps=0.5, rng=rng)
        assert rep["ok"]
        assert rep["separation_factor"] >= 10.0
        assert rep["monotone_violations"] == 0
        assert rep["vanish_ok"]
        # the same-horizon contrast is structural and far smaller
        assert 1.0 < rep["separation_factor_same_horizon"] < 10.0

    def test_two_dimensional_configuration(self):
        basis = TruncatedBasis.create(2, 8)
        rule = rule_for_basis(2, 8, radial_breaks=(R * R,))
        rng = np.random.default_rng(63)
        f1 = SphereSet.create([e2(2)])
        f2 = SphereSet.create([e1(2), e2(2)])
        rep = separation_experiment(f1, f2, R, 4, basis, rule, eps=0.5,
                                    rng=rng, decay_M=8)
        assert rep["ok"]
        # zeta must be the direction of F2 farthest from F1
        zeta = np.asarray(rep["zeta"])
        assert abs(zeta[0][0] - 1.0) < 1e-14
        assert rep["prop1"]["slope"] == pytest.approx(1.5, rel=1e-6)
