"""Experiment suites: one callable per CLI subcommand.

Each suite returns a report dict with a machine-readable check list
("checks", "failures", "passed"), the measured values, and any curve
data destined for CSV.  The acceptance tests call the same functions, so
the CLI exit code and the test verdicts cannot drift apart.
"""

from __future__ import annotations

import numpy as np

from .basis import Expansion, TruncatedBasis, kernel, kernel_expansion, project
from .config import ExperimentConfig
from .geometry import (delta_for, disjoint_threshold, ellipsoid_params,
                       in_ellipsoid, in_metric_ball, metric_combined_bound,
                       moebius, pseudo_metric, random_sphere_points,
                       sample_ball, sample_metric_ball)
from .quadrature import build_rule, integrate, rule_for_basis
from .sequences import build_sequence, pairwise_rho
from .toeplitz import (Symbol, commutator, op_norm, toeplitz_matrix,
                       toeplitz_monomial_radial, toeplitz_radial)
from .unitaries import (unitary_matrix_exact, unitary_matrix_quadrature,
                        weak_pairing_exact)
from .witness import (SphereSet, build_prop1_config, default_panel,
                      lemma3_lower_bound, prop1_decay,
                      separation_experiment, witness_operator,
                      witness_symbol)
from .reports import check, summarize_checks

__all__ = ["run_geometry", "run_sequence", "run_basis", "run_toeplitz",
           "run_unitary", "run_witness", "run_prop1", "run_separate",
           "run_all", "SUITES"]

_GEOM_DIMS = (1, 2, 3)


def _rng(cfg: ExperimentConfig, suite: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, suite])


def _window_norm(mat: np.ndarray, basis: TruncatedBasis,
                 probe_degree: int) -> float:
    keep = basis.degrees <= probe_degree
    return float(np.linalg.norm(mat[np.ix_(keep, keep)], 2))


def _near_boundary_points(zetas: np.ndarray, delta: float,
                          rng: np.random.Generator) -> np.ndarray:
    """One point a per direction with |a - zeta| < delta and |a| < 1."""
    n = zetas.shape[1]
    out = np.empty_like(zetas)
    pending = np.arange(len(zetas))
    while pending.size:
        v = sample_ball(n, pending.size, rng)
        cand = zetas[pending] + 0.98 * delta * v
        good = np.linalg.norm(cand, axis=1) < 1.0
        out[pending[good]] = cand[good]
        pending = pending[~good]
    return out


# ----------------------------------------------------------------- geometry

def run_geometry(cfg: ExperimentConfig) -> dict:
    rng = _rng(cfg, 1)
    checks = []
    payload: dict = {}

    eq4_tol = cfg.tol("eq4_violation")
    worst_eq4 = 0.0
    for n in _GEOM_DIMS:
        z = sample_ball(n, 100_000, rng, 0.95)
        w = sample_ball(n, 100_000, rng, 0.95)
        u = sample_ball(n, 100_000, rng, 0.95)
        lhs, rhs = metric_combined_bound(z, w, u)
        worst_eq4 = max(worst_eq4, float(np.max(lhs - rhs)))
    payload["eq4_max_violation"] = worst_eq4
    checks.append(check("eq4_combined_metric", worst_eq4 <= eq4_tol,
                        worst_eq4, eq4_tol))

    inv_tol = cfg.tol("moebius_involution")
    worst_inv = 0.0
    for n in _GEOM_DIMS:
        a = sample_ball(n, 10_000, rng, 0.9)
        z = sample_ball(n, 10_000, rng, 0.9)
        back = moebius(a, moebius(a, z))
        worst_inv = max(worst_inv,
                        float(np.max(np.linalg.norm(back - z, axis=1))))
    payload["involution_max_error"] = worst_inv
    checks.append(check("moebius_involution", worst_inv <= inv_tol,
                        worst_inv, inv_tol))

    iso_tol = cfg.tol("rho_isometry")
    worst_iso = 0.0
    for n in _GEOM_DIMS:
        u = sample_ball(n, 10_000, rng, 0.9)
        z = sample_ball(n, 10_000, rng, 0.9)
        w = sample_ball(n, 10_000, rng, 0.9)
        before = pseudo_metric(z, w)
        after = pseudo_metric(moebius(u, z), moebius(u, w))
        worst_iso = max(worst_iso, float(np.max(np.abs(after - before))))
    payload["isometry_max_error"] = worst_iso
    checks.append(check("rho_moebius_isometry", worst_iso <= iso_tol,
                        worst_iso, iso_tol))

    # ball disjointness under the threshold
    overlap = 0
    tested = 0
    for n in _GEOM_DIMS:
        z = sample_ball(n, 40, rng, 0.9)
        w = sample_ball(n, 40, rng, 0.9)
        rho = pseudo_metric(z, w)
        keep = rho > 0.3
        for zi, wi, ri in zip(z[keep], w[keep], rho[keep]):
            s = (1.0 - np.sqrt(1.0 - ri * ri)) / ri
            r1 = r2 = 0.999 * s
            if not 0.0 < r1 < 1.0:
                continue
            assert ri >= disjoint_threshold(r1, r2)
            pts = sample_metric_ball(zi, r1, 1000, rng)
            overlap += int(np.count_nonzero(in_metric_ball(wi, r2, pts)))
            pts = sample_metric_ball(wi, r2, 1000, rng)
            overlap += int(np.count_nonzero(in_metric_ball(zi, r1, pts)))
            tested += 1
    payload["disjointness_configs"] = tested
    payload["disjointness_overlaps"] = overlap
    checks.append(check("ball_disjointness", overlap == 0, overlap, 0))

    # metric vs ellipsoid membership, away from the boundary band
    band = cfg.tol("membership_band")
    disagreements = 0
    for n in _GEOM_DIMS:
        for _ in range(12):
            a = sample_ball(n, 1, rng, 0.85)[0]
            r = float(rng.uniform(0.2, 0.8))
            z = sample_ball(n, 4000, rng)
            rho = pseudo_metric(z, a)
            off_band = np.abs(rho - r) > band
            m1 = in_metric_ball(a, r, z[off_band])
            m2 = in_ellipsoid(a, r, z[off_band])
            disagreements += int(np.count_nonzero(m1 != m2))
    payload["membership_disagreements"] = disagreements
    checks.append(check("membership_agreement", disagreements == 0,
                        disagreements, 0))

    # delta_for: inclusion of E(a, r) in the eps-ball at zeta, plus the
    # Euclidean inclusion E(a, r) within B(a, 2 r sqrt(s))
    grid = [(0.3, 0.2), (0.3, 0.1), (0.3, 0.05),
            (0.5, 0.2), (0.5, 0.1), (0.5, 0.05),
            (0.7, 0.2), (0.7, 0.1), (0.7, 0.05)]
    inclusion_violations = 0
    euclid_violations = 0
    ineq_ok = True
    for r, eps in grid:
        delta = delta_for(r, eps)
        ineq_ok &= 2 * r * np.sqrt(2 * delta / (1 - r * r)) + delta < eps
        for n in _GEOM_DIMS:
            count = 34 if n == 1 else 33
            zetas = random_sphere_points(n, count, rng)
            centers = _near_boundary_points(zetas, delta, rng)
            for zeta, a in zip(zetas, centers):
                pts = sample_metric_ball(a, r, 1000, rng)
                dist = np.linalg.norm(pts - zeta[None, :], axis=1)
                inclusion_violations += int(np.count_nonzero(dist >= eps))
                s = ellipsoid_params(a, r).s
                da = np.linalg.norm(pts - a[None, :], axis=1)
                euclid_violations += int(
                    np.count_nonzero(da >= 2 * r * np.sqrt(s)))
    payload["delta_inclusion_violations"] = inclusion_violations
    payload["euclidean_inclusion_violations"] = euclid_violations
    checks.append(check("delta_for_inequality", bool(ineq_ok)))
    checks.append(check("lemma_delta_inclusion", inclusion_violations == 0,
                        inclusion_violations, 0))
    checks.append(check("euclidean_inclusion_2rsqrt_s",
                        euclid_violations == 0, euclid_violations, 0))

    report = summarize_checks(checks)
    report.update(payload)
    return report


# ----------------------------------------------------------------- sequence

def run_sequence(cfg: ExperimentConfig) -> dict:
    rng = _rng(cfg, 2)
    checks = []
    r = 0.5
    zeta = np.zeros(cfg.n, dtype=complex)
    zeta[0] = 1.0
    seq = build_sequence(zeta, r, 10)
    thr = disjoint_threshold(r, r)

    increasing = bool(np.all(np.diff(seq.radii) > 0))
    floors = bool(np.all(seq.radii > 1.0 - 1.0 / np.arange(1, 11)))
    checks.append(check("radii_strictly_increasing", increasing))
    checks.append(check("radii_above_floor", floors))

    rho = pairwise_rho(seq)
    off = rho[np.triu_indices(10, 1)]
    min_rho = float(off.min())
    checks.append(check("pairwise_rho_above_threshold", min_rho >= thr,
                        min_rho, thr))

    pts = seq.points()
    overlaps = 0
    for k in range(10):
        samples = sample_metric_ball(pts[k], r, 1000, rng)
        for l in range(10):
            if l == k:
                continue
            overlaps += int(np.count_nonzero(
                in_metric_ball(pts[l], r, samples)))
    checks.append(check("ball_overlap_samples", overlaps == 0, overlaps, 0))

    prefix = build_sequence(zeta, r, 6)
    prefix_ok = bool(np.array_equal(prefix.radii, seq.radii[:6]))
    checks.append(check("prefix_determinism", prefix_ok))

    report = summarize_checks(checks)
    report.update({
        "radii": seq.radii.tolist(),
        "gaps": seq.gaps.tolist(),
        "threshold": thr,
        "min_pairwise_rho": min_rho,
        "csv": {
            "sequence_radii": (["m", "t", "one_minus_t"],
                               [[m + 1, float(seq.radii[m]),
                                 float(seq.gaps[m])] for m in range(10)]),
            "sequence_rho": (["k", "l", "rho"],
                             [[k + 1, l + 1, float(rho[k, l])]
                              for k in range(10) for l in range(10)]),
        },
    })
    return report


# -------------------------------------------------------------------- basis

def run_basis(cfg: ExperimentConfig) -> dict:
    checks = []
    payload: dict = {}

    basis1 = TruncatedBasis.create(1, 12)
    rule1 = rule_for_basis(1, 12, seed=cfg.seed)
    emat = basis1.eval(rule1.nodes)
    gram = emat.conj().T @ (rule1.weights[:, None] * emat)
    defect1 = float(np.max(np.abs(gram - np.eye(len(basis1)))))
    checks.append(check("gram_identity_n1_d12",
                        defect1 <= cfg.tol("gram_defect_n1"), defect1,
                        cfg.tol("gram_defect_n1")))

    basis2 = TruncatedBasis.create(2, 8)
    rule2 = rule_for_basis(2, 8, seed=cfg.seed)
    emat2 = basis2.eval(rule2.nodes)
    gram2 = emat2.conj().T @ (rule2.weights[:, None] * emat2)
    defect2 = float(np.max(np.abs(gram2 - np.eye(len(basis2)))))
    checks.append(check("gram_identity_n2_d8",
                        defect2 <= cfg.tol("gram_defect_n2"), defect2,
                        cfg.tol("gram_defect_n2")))

    z6 = np.array([0.6 + 0.0j])
    knorm = integrate(lambda pts: np.abs(kernel(z6, pts)) ** 2, rule1,
                      jobs=cfg.jobs)
    kerr = abs(float(np.real(knorm)) - 1.0)
    checks.append(check("kernel_norm_one", kerr <= cfg.tol("kernel_norm"),
                        kerr, cfg.tol("kernel_norm")))

    # reproducing identity for a random polynomial of full degree
    rng = _rng(cfg, 3)
    coeffs = rng.standard_normal(len(basis1)) + 1j * rng.standard_normal(
        len(basis1))
    g = Expansion(basis1, coeffs)
    zz = np.array([0.35 - 0.2j])
    pair = integrate(lambda pts: g.eval(pts) * np.conj(kernel(zz, pts)),
                     rule1, jobs=cfg.jobs)
    expect = (1.0 - float(np.sum(np.abs(zz) ** 2))) * g.eval(zz)
    rep_err = abs(complex(pair) - complex(expect))
    checks.append(check("reproducing_identity", rep_err <= 1e-10,
                        rep_err, 1e-10))

    # kernel diagonal partial sums increase toward (1-|z|^2)^(-(n+1))
    zdiag = np.array([0.4 + 0.1j])
    limit = (1.0 - float(np.sum(np.abs(zdiag) ** 2))) ** -2.0
    sums = []
    for d in range(1, 13):
        bd = TruncatedBasis.create(1, d)
        sums.append(float(np.sum(np.abs(bd.eval(zdiag[None, :])[0]) ** 2)))
    monotone = bool(np.all(np.diff(sums) > 0)) and bool(sums[-1] < limit)
    tail = abs(sums[-1] - limit) / limit
    checks.append(check("kernel_diagonal_monotone", monotone))
    checks.append(check("kernel_diagonal_limit", tail <= 1e-6, tail, 1e-6))

    # projection: orthonormality, anti-analytic annihilation, kernel match
    e_beta = Expansion(basis1,
                       np.eye(len(basis1), dtype=complex)[:, 5])
    proj = project(e_beta.eval, basis1, rule1)
    unit_err = float(np.max(np.abs(proj.coeffs
                                   - e_beta.coeffs)))
    checks.append(check("projection_orthonormal", unit_err <= 1e-12,
                        unit_err, 1e-12))

    anti = project(lambda pts: np.conj(pts[:, 0]), basis1, rule1)
    anti_err = float(np.max(np.abs(anti.coeffs)))
    checks.append(check("projection_kills_antianalytic", anti_err <= 1e-12,
                        anti_err, 1e-12))

    kexp = project(lambda pts: kernel(z6, pts), basis1, rule1)
    kclosed = kernel_expansion(z6, basis1)
    kerr2 = float(np.max(np.abs(kexp.coeffs - kclosed.coeffs)))
    checks.append(check("projection_matches_kernel_series", kerr2 <= 1e-10,
                        kerr2, 1e-10))

    payload.update({
        "gram_defect_n1": defect1,
        "gram_defect_n2": defect2,
        "kernel_norm_error": kerr,
        "kernel_partial_sums": sums,
        "rule_n1": rule1.meta(),
        "rule_n2": rule2.meta(),
    })
    report = summarize_checks(checks)
    report.update(payload)
    return report


# ----------------------------------------------------------------- toeplitz

def _symbol_panel(r: float) -> list[Symbol]:
    wit = witness_symbol(r)
    return [
        Symbol.constant(1.0),
        Symbol.radial(lambda u: u ** 2, 1.0, label="|z|^2"),
        wit,
        Symbol.radial(lambda u: (np.asarray(u) < r).astype(float), 1.0,
                      support=r, label="disk indicator"),
        Symbol.sampled(lambda pts: np.exp(
            -np.sum(np.abs(pts) ** 2, axis=-1)) * (1.0 + 0.5 * pts[:, 0]),
            1.5, label="smooth sampled"),
    ]


def run_toeplitz(cfg: ExperimentConfig) -> dict:
    checks = []
    r = cfg.r
    basis = TruncatedBasis.create(1, 12)
    rule = rule_for_basis(1, 12, seed=cfg.seed, radial_breaks=(r * r,))

    t_one = toeplitz_matrix(Symbol.constant(1.0), basis, rule)
    id_err = float(np.max(np.abs(t_one.mat - np.eye(len(basis)))))
    checks.append(check("t_const_is_identity", id_err <= 1e-13, id_err, 1e-13))

    ks = np.arange(13)
    t_r2 = toeplitz_matrix(Symbol.radial(lambda u: u ** 2, 1.0), basis, rule)
    diag_err = float(np.max(np.abs(np.diag(t_r2.mat) - (ks + 1) / (ks + 2))))
    checks.append(check("diag_radius_squared",
                        diag_err <= cfg.tol("toeplitz_diag"), diag_err,
                        cfg.tol("toeplitz_diag")))

    fast_tol = cfg.tol("fast_path")
    worst_fast = 0.0
    for profile, support, label in (
            (lambda u: u ** 2, None, "u^2"),
            (lambda u: np.exp(-3.0 * np.asarray(u) ** 2), None, "gaussian"),
            (lambda u: np.clip(1.0 - (np.asarray(u) / r) ** 2, 0.0, None),
             r, "bump"),
    ):
        gen = toeplitz_matrix(Symbol.radial(profile, 1.0, support=support),
                              basis, rule)
        fast = toeplitz_radial(profile, basis, support=support)
        worst_fast = max(worst_fast,
                         float(np.max(np.abs(gen.mat - fast.mat))))
    checks.append(check("radial_fast_path", worst_fast <= fast_tol,
                        worst_fast, fast_tol))

    wit = witness_symbol(r)
    band_gen = toeplitz_matrix(wit, basis, rule)
    band_fast = toeplitz_monomial_radial(0, wit.profile, basis, support=r)
    band_err = float(np.max(np.abs(band_gen.mat - band_fast.mat)))
    checks.append(check("band_fast_path", band_err <= fast_tol, band_err,
                        fast_tol))

    # also in two variables (band entries carry sphere moments there)
    basis2 = TruncatedBasis.create(2, 6)
    rule2 = rule_for_basis(2, 6, seed=cfg.seed, radial_breaks=(r * r,))
    wit2_gen = toeplitz_matrix(wit, basis2, rule2)
    wit2_fast = toeplitz_monomial_radial(0, wit.profile, basis2, support=r)
    band2_err = float(np.max(np.abs(wit2_gen.mat - wit2_fast.mat)))
    checks.append(check("band_fast_path_n2", band2_err <= fast_tol,
                        band2_err, fast_tol))

    contraction_tol = cfg.tol("norm_contraction")
    worst_excess = -np.inf
    for sym in _symbol_panel(r):
        tm = toeplitz_matrix(sym, basis, rule)
        excess = op_norm(tm) - sym.sup_norm_bound
        worst_excess = max(worst_excess, excess)
    checks.append(check("norm_contraction", worst_excess <= contraction_tol,
                        worst_excess, contraction_tol))

    ns = Symbol.sampled(
        lambda pts: pts[:, 0] * np.exp(-np.sum(np.abs(pts) ** 2, axis=-1)),
        1.0, label="nonradial")
    t_ns = toeplitz_matrix(ns, basis, rule)
    t_conj = toeplitz_matrix(ns.conjugate(), basis, rule)
    adj_err = float(np.max(np.abs(t_conj.mat - t_ns.mat.conj().T)))
    checks.append(check("adjoint_symmetry", adj_err <= 1e-12, adj_err, 1e-12))

    self_comm = commutator(t_r2, t_r2)
    radial_comm = commutator(t_r2, toeplitz_radial(
        lambda u: np.exp(-3.0 * np.asarray(u) ** 2), basis))
    checks.append(check("self_commutator_zero",
                        op_norm(self_comm) <= 1e-14))
    checks.append(check("radial_symbols_commute",
                        op_norm(radial_comm) <= 1e-12))

    cmat = commutator(band_fast, band_fast.adjoint())
    smat = cmat @ cmat
    eigs = np.linalg.eigvalsh(smat.mat)
    min_eig = float(eigs.min())
    comm_norm = op_norm(cmat)
    checks.append(check("witness_commutator_nonzero", comm_norm > 0.0,
                        comm_norm))
    checks.append(check("squared_commutator_psd",
                        min_eig >= -cfg.tol("psd_floor"), min_eig,
                        -cfg.tol("psd_floor")))

    # compactly supported radial symbols have geometrically decaying diagonal
    small = toeplitz_radial(
        lambda u: (np.asarray(u) < 0.4).astype(float), basis, support=0.4)
    diag = np.real(np.diag(small.mat))
    decay_ok = bool(np.all(np.diff(diag) < 0)) and diag[-1] < 1e-6 * diag[0]
    checks.append(check("compact_support_diagonal_decay", decay_ok,
                        float(diag[-1] / diag[0])))

    report = summarize_checks(checks)
    report.update({
        "identity_error": id_err,
        "diag_error": diag_err,
        "fast_path_worst": worst_fast,
        "band_fast_path_error": band_err,
        "band_fast_path_error_n2": band2_err,
        "norm_excess_worst": worst_excess,
        "commutator_norm": comm_norm,
        "s_min_eigenvalue": min_eig,
        "rule": rule.meta(),
    })
    return report


# ------------------------------------------------------------------ unitary

def run_unitary(cfg: ExperimentConfig) -> dict:
    rng = _rng(cfg, 4)
    checks = []
    sweep = list(cfg.d_sweep)
    probe = max(2, min(sweep) // 2)
    z_half = np.array([0.5 + 0.0j])
    f_sq = Symbol.radial(lambda u: u ** 2, 1.0, label="|z|^2")

    rule = build_rule(1, cfg.radial_points, angular=cfg.angular,
                      seed=cfg.seed)
    unit_defects = []
    conj_defects = []
    for d in sweep:
        basis = TruncatedBasis.create(1, d)
        u = unitary_matrix_exact(z_half, basis)
        vmat = u.mat.conj().T @ u.mat - np.eye(len(basis))
        unit_defects.append(_window_norm(vmat, basis, probe))
        tf = toeplitz_matrix(f_sq, basis, rule)
        lhs = (u @ tf @ u.adjoint()).mat
        rhs = toeplitz_matrix(f_sq.compose_moebius(z_half), basis, rule).mat
        conj_defects.append(_window_norm(lhs - rhs, basis, probe))
    unit_dec = bool(np.all(np.diff(unit_defects) < 0))
    conj_dec = bool(np.all(np.diff(conj_defects) < 0))
    checks.append(check("unitarity_defect_decreasing", unit_dec,
                        unit_defects))
    checks.append(check("conjugation_defect_decreasing", conj_dec,
                        conj_defects))

    basis = TruncatedBasis.create(1, max(sweep))
    u_ex = unitary_matrix_exact(z_half, basis)
    u_q = unitary_matrix_quadrature(z_half, basis, rule)
    route_err = float(np.max(np.abs(u_ex.mat - u_q.mat)))
    checks.append(check("exact_matches_quadrature", route_err <= 1e-10,
                        route_err, 1e-10))

    kexp = kernel_expansion(z_half, basis)
    col_err = float(np.max(np.abs(u_ex.mat[:, 0] - kexp.coeffs)))
    checks.append(check("u_e0_is_kernel", col_err <= 1e-13, col_err, 1e-13))
    e0_norm = float(np.linalg.norm(u_ex.mat[:, 0]))
    checks.append(check("u_e0_norm_one", abs(e0_norm - 1.0) <= 1e-6,
                        abs(e0_norm - 1.0), 1e-6))

    # closed-form pairing: exact value at the benchmark point
    value, bound = weak_pairing_exact(np.array([0.9 + 0j]),
                                      np.array([0.0 + 0j]),
                                      np.array([0.0 + 0j]))
    bench_err = abs(value - 0.19)
    checks.append(check("pairing_benchmark",
                        bench_err <= cfg.tol("lemma1_value"), bench_err,
                        cfg.tol("lemma1_value")))

    worst_gap = -np.inf
    for n in _GEOM_DIMS:
        zm = sample_ball(n, 3334, rng, 0.999)
        z = sample_ball(n, 3334, rng, 0.9)
        w = sample_ball(n, 3334, rng, 0.9)
        for i in range(3334):
            v, b = weak_pairing_exact(zm[i], z[i], w[i])
            worst_gap = max(worst_gap, abs(v) - b)
    checks.append(check("pairing_bound_dominates", worst_gap <= 1e-14,
                        worst_gap, 1e-14))

    # matrix pairing converges to the closed form across the sweep
    zm = np.array([0.6 + 0.0j])
    zp = np.array([0.3 + 0.0j])
    wp = np.array([0.0 + 0.2j])
    target, _ = weak_pairing_exact(zm, zp, wp)
    pair_errs = []
    for d in sweep:
        bd = TruncatedBasis.create(1, d)
        ud = unitary_matrix_exact(zm, bd)
        kz = kernel_expansion(zp, bd).coeffs
        kw = kernel_expansion(wp, bd).coeffs
        pair_errs.append(abs(complex(np.vdot(kw, ud.mat @ kz)) - target))
    pair_dec = bool(np.all(np.diff(pair_errs) < 0))
    checks.append(check("pairing_matrix_converges", pair_dec, pair_errs))

    # decay along a separated sequence: values vanish, log-bound is linear
    zeta = np.zeros(cfg.n, dtype=complex)
    zeta[0] = 1.0
    seq = build_sequence(zeta, cfg.r, 8)
    pts = seq.points()
    vals, bounds = [], []
    zfix = 0.2 * zeta
    wfix = 0.1 * zeta
    for m in range(len(seq)):
        v, b = weak_pairing_exact(pts[m], zfix, wfix)
        vals.append(abs(v))
        bounds.append(b)
    vals_dec = bool(np.all(np.diff(vals) < 0))
    one_minus = 1.0 - seq.radii ** 2
    slope = float(np.polyfit(np.log(one_minus), np.log(bounds), 1)[0])
    target_slope = 0.5 * (cfg.n + 1)
    slope_ok = abs(slope - target_slope) <= 0.05 * target_slope
    checks.append(check("pairing_decays_along_sequence", vals_dec, vals))
    checks.append(check("bound_log_slope", slope_ok, slope, target_slope))

    report = summarize_checks(checks)
    report.update({
        "d_sweep": sweep,
        "probe_degree": probe,
        "unitarity_defects": unit_defects,
        "conjugation_defects": conj_defects,
        "route_agreement": route_err,
        "pairing_matrix_errors": pair_errs,
        "sequence_pairing_values": vals,
        "sequence_pairing_bounds": bounds,
        "bound_slope": slope,
        "csv": {
            "unitary_sweep": (["d", "unitarity_defect", "conjugation_defect"],
                              [[d, unit_defects[i], conj_defects[i]]
                               for i, d in enumerate(sweep)]),
        },
    })
    return report


# ------------------------------------------------------------------ witness

def run_witness(cfg: ExperimentConfig) -> dict:
    checks = []
    sweep = list(cfg.d_sweep)
    zeta = cfg.zeta_vec
    r = cfg.r

    reports = {}
    margins = {}
    two_route = {}
    for d in sweep:
        basis = TruncatedBasis.create(cfg.n, d)
        rule = rule_for_basis(cfg.n, d, seed=cfg.seed,
                              radial_breaks=(r * r,))
        wop = witness_operator(zeta, r, cfg.M, basis, rule,
                               two_route=(d == max(sweep) or d == min(sweep)))
        rep = lemma3_lower_bound(wop.T, wop.S, wop.seq, basis, rule,
                                 unitaries=wop.unitaries)
        reports[d] = rep
        margins[d] = np.asarray(rep["margins"])
        if wop.two_route_defects is not None:
            two_route[d] = list(wop.two_route_defects)

    final = reports[max(sweep)]
    checks.append(check("lower_bound_holds_all_d",
                        all(reports[d]["ok"] for d in sweep)))
    checks.append(check("floor_positive", final["floor_positive"],
                        final["floor_c"]))

    improving = all(
        bool(np.all(margins[d2] >= margins[d1]))
        for d1, d2 in zip(sweep[:-1], sweep[1:]))
    checks.append(check("margins_improve_across_sweep", improving))

    # two-route agreement at the first sequence point improves with degree
    first_defects = [two_route[d][0] for d in sorted(two_route)]
    route_ok = (len(first_defects) == 2
                and first_defects[-1] < first_defects[0])
    checks.append(check("two_route_defect_shrinks_m1", route_ok,
                        first_defects))

    # PSD of S itself at the flagship degree
    basis = TruncatedBasis.create(cfg.n, max(sweep))
    rule = rule_for_basis(cfg.n, max(sweep), seed=cfg.seed,
                          radial_breaks=(r * r,))
    wop = witness_operator(zeta, r, cfg.M, basis, rule)
    s_min = float(np.linalg.eigvalsh(wop.S.mat).min())
    checks.append(check("s_positive_semidefinite",
                        s_min >= -cfg.tol("psd_floor"), s_min))

    report = summarize_checks(checks)
    report.update({
        "d_sweep": sweep,
        "lambda_max": final["lambda_max"],
        "floor_c": final["floor_c"],
        "values": final["values"],
        "guaranteed": final["guaranteed"],
        "tolerances_measured": final["tolerances"],
        "norms": final["norms"],
        "u_norms": final["u_norms"],
        "margins_by_degree": {str(d): margins[d].tolist() for d in sweep},
        "two_route_defects": {str(d): two_route[d] for d in two_route},
        "conditioning_warning": wop.conditioning_warning,
        "csv": {
            "witness_margins": (
                ["m"] + [f"margin_d{d}" for d in sweep],
                [[m + 1] + [float(margins[d][m]) for d in sweep]
                 for m in range(cfg.M)]),
        },
    })
    return report


# -------------------------------------------------------------------- prop1

def run_prop1(cfg: ExperimentConfig) -> dict:
    rng = _rng(cfg, 5)
    checks = []
    r = cfg.r

    # one-dimensional compact-support panel over the long sequence
    basis = TruncatedBasis.create(1, 12)
    rule = rule_for_basis(1, 12, seed=cfg.seed, radial_breaks=(r * r,))
    F_empty = SphereSet.create([], n=1)
    seq = build_sequence(np.array([1.0 + 0j]), r, cfg.decay_M)
    cfg1 = build_prop1_config(F_empty, cfg.eps, rule, rng)
    h = Expansion(basis, np.eye(len(basis), dtype=complex)[:, 0])
    panel = default_panel(F_empty, r, 1)
    rep1 = prop1_decay(panel, F_empty, seq, h, 1.0, cfg1, basis, rule,
                       decay_frac=cfg.tol("decay_fraction"),
                       slope_rel=cfg.tol("slope_rel"))
    checks.append(check("decay_below_fraction_n1", all(rep1["decay_ok"]),
                        [c[-1] / c[0] for c in rep1["curves"]],
                        cfg.tol("decay_fraction")))
    checks.append(check("slope_within_tolerance_n1", rep1["slope_ok"],
                        rep1["slope"], rep1["slope_target"]))

    # two dimensions: nonempty direction set, real cutoff bound
    basis2 = TruncatedBasis.create(2, 8)
    rule2 = rule_for_basis(2, 8, seed=cfg.seed, radial_breaks=(r * r,))
    F1 = SphereSet.create([[0.0 + 0j, 1.0 + 0j]])
    seq2 = build_sequence(np.array([1.0 + 0j, 0.0 + 0j]), r, 8)
    cfg2 = build_prop1_config(F1, cfg.eps, rule2, rng)
    h2 = Expansion(basis2, np.eye(len(basis2), dtype=complex)[:, 0])
    panel2 = default_panel(F1, r, 2)
    rep2 = prop1_decay(panel2, F1, seq2, h2, 1.0, cfg2, basis2, rule2,
                       decay_frac=cfg.tol("decay_fraction"),
                       slope_rel=cfg.tol("slope_rel"))
    checks.append(check("slope_within_tolerance_n2", rep2["slope_ok"],
                        rep2["slope"], rep2["slope_target"]))
    checks.append(check("cutoff_bound_holds_n2", rep2["eta_bound_ok"]))
    checks.append(check("decay_below_fraction_n2", all(rep2["decay_ok"]),
                        [c[-1] / c[0] for c in rep2["curves"]]))

    report = summarize_checks(checks)
    report.update({
        "n1": rep1,
        "n2": rep2,
        "delta_n2": cfg2.delta,
        "nu_v2_n2": cfg2.nu_v2,
        "csv": {
            "prop1_curves_n1": (
                ["m", "t"] + [f"product_{k+1}" for k in range(len(rep1["curves"]))],
                [[m + 1, rep1["radii"][m]]
                 + [rep1["curves"][k][m] for k in range(len(rep1["curves"]))]
                 for m in range(len(rep1["radii"]))]),
        },
    })
    return report


# ----------------------------------------------------------------- separate

def run_separate(cfg: ExperimentConfig) -> dict:
    rng = _rng(cfg, 6)
    basis = TruncatedBasis.create(cfg.n, cfg.degree)
    rule = rule_for_basis(cfg.n, cfg.degree, seed=cfg.seed,
                          radial_breaks=(cfg.r * cfg.r,))
    F1 = SphereSet.create(cfg.f1_vecs, n=cfg.n)
    F2 = SphereSet.create(cfg.f2_vecs, n=cfg.n)
    rep = separation_experiment(
        F1, F2, cfg.r, cfg.M, basis, rule, eps=cfg.eps, rng=rng,
        decay_M=cfg.decay_M,
        separation_factor=cfg.tol("separation_factor"),
        decay_frac=cfg.tol("decay_fraction"))

    checks = [
        check("separation_factor",
              rep["separation_ok"], rep["separation_factor"],
              cfg.tol("separation_factor")),
        check("witness_floor_positive", rep["lemma3"]["floor_positive"],
              rep["lemma3"]["floor_c"]),
        check("panel_vanishes_off_region", rep["vanish_ok"],
              rep["vanish_off_region_max"]),
        check("monotone_region", rep["monotone_violations"] == 0,
              rep["monotone_violations"], 0),
        check("boundary_trace_F1", rep["boundary_trace_F1"]["ok"],
              rep["boundary_trace_F1"]["violations"], 0),
        check("boundary_trace_F2", rep["boundary_trace_F2"]["ok"],
              rep["boundary_trace_F2"]["violations"], 0),
        check("ideal_panel_decays", rep["prop1"]["ok"]),
    ]
    report = summarize_checks(checks)
    curves = rep["prop1"]["curves"]
    report.update(rep)
    report["quadrature"] = rule.meta()
    report["csv"] = {
        "separation_curves": (
            ["m", "witness_normalized"]
            + [f"ideal_{k+1}_normalized" for k in range(len(curves))],
            [[m + 1,
              rep["witness_curve_normalized"][m] if m < cfg.M else ""]
             + [curves[k][m] / curves[k][0] for k in range(len(curves))]
             for m in range(len(curves[0]))]),
    }
    return report


# ---------------------------------------------------------------------- all

SUITES = {
    "geometry": run_geometry,
    "sequence": run_sequence,
    "basis": run_basis,
    "toeplitz": run_toeplitz,
    "unitary": run_unitary,
    "witness": run_witness,
    "prop1": run_prop1,
    "separate": run_separate,
}


def run_all(cfg: ExperimentConfig) -> dict:
    results = {}
    failures = []
    for name, fn in SUITES.items():
        rep = fn(cfg)
        results[name] = rep
        failures.extend(f"{name}:{f}" for f in rep["failures"])
    return {"suites": results, "failures": failures,
            "passed": not failures}
