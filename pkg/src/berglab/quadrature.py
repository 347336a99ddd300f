"""Quadrature on the complex unit ball against normalized Lebesgue measure.

The measure nu is normalized so that nu(ball) = 1.  In polar form
dnu = 2n r^(2n-1) dr x dsigma with sigma the normalized surface measure,
and the substitution t = r^2 turns the radial factor into n t^(n-1) dt,
polynomial in t.

Constructions:
  n = 1   Gauss-Legendre in t = |z|^2 on [0, 1] times uniform angles.
  n = 2   Gauss-Legendre in t times a Hopf product rule on the 3-sphere
          (uniform angles in both torus directions, Gauss-Legendre in
          x = sin^2 of the Hopf latitude).
  n >= 3  Gauss-Legendre in t times seeded quasi-random sphere samples
          (Sobol points pushed through the Gaussian inverse CDF); the
          rule is flagged stochastic and reports exactness 0.

Radial break points split the t-interval into panels so that piecewise
polynomial radial factors (compactly supported symbol profiles) are
integrated exactly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

__all__ = ["QuadratureRule", "build_rule", "rule_for_basis", "integrate",
           "panel_gauss_legendre"]

_CHUNK = 4096  # fixed reduction block; keeps sums independent of job count


def panel_gauss_legendre(points_per_panel: int,
                         breaks: tuple[float, ...] = ()) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [0, 1] split at ``breaks``.

    Exact for polynomials of degree <= 2p - 1 on each panel, hence for
    global polynomials of that degree and for piecewise polynomials with
    kinks at the break points.
    """
    edges = [0.0, *sorted(b for b in breaks if 0.0 < b < 1.0), 1.0]
    x, w = np.polynomial.legendre.leggauss(points_per_panel)
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        xs.append(a + half * (x + 1.0))
        ws.append(half * w)
    return np.concatenate(xs), np.concatenate(ws)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights on the ball, with exactness metadata.

    ``exactness_degree`` D means monomials z^alpha conj(z)^beta with
    |alpha|, |beta| <= D are integrated exactly (up to roundoff).  Rules
    with a stochastic spherical part report D = 0 and carry a warning
    flag.
    """

    n: int
    nodes: np.ndarray    # (N, n) complex, strictly inside the ball
    weights: np.ndarray  # (N,) positive, summing to 1
    exactness_degree: int
    radial_points: int
    angular: int
    seed: int | None = None
    stochastic_sphere: bool = False
    radial_breaks: tuple[float, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.weights)

    def meta(self) -> dict:
        return {
            "dimension": self.n,
            "node_count": int(len(self.weights)),
            "exactness_degree": int(self.exactness_degree),
            "radial_points": int(self.radial_points),
            "angular": int(self.angular),
            "seed": self.seed,
            "stochastic_sphere": bool(self.stochastic_sphere),
            "radial_breaks": list(self.radial_breaks),
            "weight_sum": float(np.sum(self.weights)),
        }


def _disk_rule(radial_points: int, angular: int,
               breaks: tuple[float, ...]) -> tuple[np.ndarray, np.ndarray, int]:
    t, wt = panel_gauss_legendre(radial_points, breaks)
    theta = 2.0 * np.pi * np.arange(angular) / angular
    radii = np.sqrt(t)
    nodes = (radii[:, None] * np.exp(1j * theta)[None, :]).reshape(-1, 1)
    weights = np.repeat(wt / angular, angular)
    exact = min(2 * radial_points - 1, angular - 1)
    return nodes, weights, exact


def _hopf_rule(radial_points: int, angular: int,
               breaks: tuple[float, ...]) -> tuple[np.ndarray, np.ndarray, int]:
    t, wt = panel_gauss_legendre(radial_points, breaks)
    wt = wt * 2.0 * t  # radial factor n t^(n-1) dt, n = 2
    x, wx = panel_gauss_legendre(radial_points, ())
    th = 2.0 * np.pi * np.arange(angular) / angular
    phase = np.exp(1j * th)

    rad = np.sqrt(t)
    c1 = np.sqrt(1.0 - x)
    c2 = np.sqrt(x)
    # node (sqrt(t(1-x)) e^{i th1}, sqrt(t x) e^{i th2}), weight product
    z1 = (rad[:, None, None, None] * c1[None, :, None, None]
          * phase[None, None, :, None])
    z2 = (rad[:, None, None, None] * c2[None, :, None, None]
          * phase[None, None, None, :])
    z1 = np.broadcast_to(z1, (len(t), len(x), angular, angular))
    z2 = np.broadcast_to(z2, (len(t), len(x), angular, angular))
    nodes = np.stack([z1.ravel(), z2.ravel()], axis=1)
    weights = (wt[:, None, None, None] * wx[None, :, None, None]
               * np.full((angular, angular), angular ** -2.0)[None, None])
    weights = weights.ravel()
    exact = min(2 * radial_points - 2, angular - 1)
    return nodes, weights, exact


def _sphere_sample_rule(n: int, radial_points: int, count: int, seed: int,
                        breaks: tuple[float, ...]) -> tuple[np.ndarray, np.ndarray, int]:
    t, wt = panel_gauss_legendre(radial_points, breaks)
    wt = wt * n * t ** (n - 1)
    sob = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
    u = sob.random(count)
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    g = ndtri(u)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    xi = g[:, :n] + 1j * g[:, n:]
    rad = np.sqrt(t)
    nodes = (rad[:, None, None] * xi[None, :, :]).reshape(-1, n)
    weights = np.repeat(wt / count, count)
    return nodes, weights, 0


def build_rule(n: int, radial_points: int, angular: int | None = None,
               seed: int | None = None,
               radial_breaks: tuple[float, ...] = ()) -> QuadratureRule:
    """Build a quadrature rule for the complex n-ball.

    ``angular`` is the number of uniform angles per torus circle for
    n <= 2, and the number of quasi-random sphere samples for n >= 3
    (where ``seed`` controls the sampling and is required).
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if radial_points < 1:
        raise ValueError(f"radial_points must be >= 1, got {radial_points}")
    breaks = tuple(sorted(set(float(b) for b in radial_breaks)))
    if any(not 0.0 < b < 1.0 for b in breaks):
        raise ValueError(f"radial breaks must lie in (0, 1): {breaks}")

    stochastic = False
    if n == 1:
        angular = angular if angular is not None else 4 * radial_points
        nodes, weights, exact = _disk_rule(radial_points, angular, breaks)
    elif n == 2:
        angular = angular if angular is not None else 2 * radial_points + 1
        nodes, weights, exact = _hopf_rule(radial_points, angular, breaks)
    else:
        angular = angular if angular is not None else 4096
        seed = 0 if seed is None else seed
        nodes, weights, exact = _sphere_sample_rule(
            n, radial_points, angular, seed, breaks)
        stochastic = True

    return QuadratureRule(
        n=n, nodes=nodes, weights=weights, exactness_degree=exact,
        radial_points=radial_points, angular=angular, seed=seed,
        stochastic_sphere=stochastic, radial_breaks=breaks)


def rule_for_basis(n: int, degree: int, *, margin: int = 4,
                   seed: int | None = None,
                   radial_breaks: tuple[float, ...] = ()) -> QuadratureRule:
    """A rule whose exactness covers Toeplitz entries at basis ``degree``.

    Targets exactness 2*degree + margin, enough for products of two basis
    elements and a polynomial symbol factor.
    """
    target = 2 * degree + margin
    if n == 1:
        p = (target + 2) // 2
        return build_rule(n, max(p, 12), angular=max(target + 1, 64),
                          seed=seed, radial_breaks=radial_breaks)
    if n == 2:
        p = (target + 3) // 2
        return build_rule(n, p, angular=target + 1, seed=seed,
                          radial_breaks=radial_breaks)
    p = (target + 2) // 2
    return build_rule(n, p, seed=seed, radial_breaks=radial_breaks)


def _chunk_slices(total: int) -> list[slice]:
    return [slice(i, min(i + _CHUNK, total)) for i in range(0, total, _CHUNK)]


def integrate(f, rule: QuadratureRule, jobs: int = 1) -> complex:
    """Integrate f over the ball: sum of w_i f(node_i).

    ``f`` must accept an (N, n) complex array and return (N,) values.
    The reduction is blocked into fixed-size chunks summed in order, so
    the result is bit-identical for any ``jobs``.
    """
    values = np.asarray(f(rule.nodes))
    if values.shape != (len(rule),):
        raise ValueError(
            f"integrand returned shape {values.shape}, expected ({len(rule)},)")
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(
            f"integrand is not finite at node {i}: z = {rule.nodes[i]}")
    terms = rule.weights * values
    slices = _chunk_slices(len(terms))
    if jobs > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(lambda s: np.sum(terms[s]), slices))
    else:
        partials = [np.sum(terms[s]) for s in slices]
    return complex(np.sum(np.asarray(partials)))
