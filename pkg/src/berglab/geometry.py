"""Geometry of the complex unit ball.

Moebius involutions, the pseudo-hyperbolic metric rho, metric balls
E(a, r) and their Euclidean ellipsoid description.

A point of the ball is a 1-D complex array z of length n with |z| < 1.
Every function broadcasts over leading axes, so stacks of shape (..., n)
work anywhere a single point does.

Conventions:
    phi_a(z) = (a - P_a z - sqrt(1 - |a|^2) Q_a z) / (1 - <z, a>)
with P_a the projection onto span(a) (P_0 = 0, hence phi_0 = -identity),
and rho(z, w) = |phi_z(w)|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_point",
    "inner",
    "moebius",
    "pseudo_metric",
    "metric_combined_bound",
    "disjoint_threshold",
    "EllipsoidParams",
    "ellipsoid_params",
    "in_metric_ball",
    "in_ellipsoid",
    "delta_for",
    "sample_ball",
    "sample_metric_ball",
    "random_sphere_points",
]


def as_point(z, *, name: str = "point") -> np.ndarray:
    """Coerce to a complex array of ball points; validate |z| < 1.

    Accepts a scalar (read as a point of the 1-dimensional ball), a length-n
    sequence, or any stack of shape (..., n).
    """
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    norms = np.linalg.norm(arr, axis=-1)
    if not np.all(norms < 1.0):
        bad = float(np.max(norms))
        raise ValueError(f"{name} must lie strictly inside the unit ball "
                         f"(max |z| = {bad:.17g})")
    return arr


def _check_same_dim(*points: np.ndarray) -> int:
    dims = {p.shape[-1] for p in points}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def inner(z, w) -> np.ndarray:
    """Hermitian inner product <z, w> = sum_i z_i * conj(w_i) (last axis)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.sum(z * np.conj(w), axis=-1)


def moebius(a, z) -> np.ndarray:
    """Evaluate the involutive automorphism phi_a at z.

    phi_a exchanges 0 and a and is an involution: phi_a(phi_a(z)) = z.
    Broadcasts over leading axes of both arguments.
    """
    a = as_point(a, name="a")
    z = as_point(z, name="z")
    _check_same_dim(a, z)

    aa = np.sum(np.abs(a) ** 2, axis=-1)
    za = inner(z, a)
    s = np.sqrt(1.0 - aa)
    safe = np.where(aa > 0.0, aa, 1.0)
    coef = np.where(aa > 0.0, za / safe, 0.0)
    proj = coef[..., None] * a
    perp = z - proj
    return (a - proj - s[..., None] * perp) / (1.0 - za)[..., None]


def pseudo_metric(z, w) -> np.ndarray:
    """Pseudo-hyperbolic metric rho(z, w) = |phi_z(w)|, in [0, 1).

    Evaluated directly through the automorphism, which is exact at
    coincident points (the identity route 1 - rho^2 = (1-|z|^2)(1-|w|^2)
    / |1 - <z,w>|^2 loses half the working precision there under the
    square root).  Broadcasts like ``moebius``.
    """
    return np.linalg.norm(moebius(z, w), axis=-1)


def metric_combined_bound(z, w, u) -> tuple[np.ndarray, np.ndarray]:
    """Return (lhs, rhs) of the combined-metric inequality

        rho(z, w) <= (rho(z, u) + rho(u, w)) / (1 + rho(z, u) rho(u, w)).
    """
    lhs = pseudo_metric(z, w)
    a = pseudo_metric(z, u)
    b = pseudo_metric(u, w)
    rhs = (a + b) / (1.0 + a * b)
    return lhs, rhs


def disjoint_threshold(r1: float, r2: float) -> float:
    """Threshold t = (r1 + r2)/(1 + r1 r2).

    If rho(z, w) >= t then E(z, r1) and E(w, r2) are disjoint.
    """
    if not (0.0 < r1 < 1.0 and 0.0 < r2 < 1.0):
        raise ValueError(f"radii must lie in (0, 1), got {r1}, {r2}")
    return (r1 + r2) / (1.0 + r1 * r2)


@dataclass(frozen=True)
class EllipsoidParams:
    """Euclidean parameters of the metric ball E(a, r).

    E(a, r) is the ellipsoid of center ``center``, semiaxis r*s along the
    direction of a and r*sqrt(s) transverse to it, where
    s = (1 - |a|^2)/(1 - r^2 |a|^2).  axis_direction is None when a = 0
    (the ellipsoid degenerates to the round ball B(0, r)).
    """

    center: np.ndarray
    s: float
    radial_semiaxis: float
    transverse_semiaxis: float
    axis_direction: np.ndarray | None


def ellipsoid_params(a, r: float) -> EllipsoidParams:
    """Ellipsoid parameters (c, s) of E(a, r)."""
    a = as_point(a, name="a")
    if a.ndim != 1:
        raise ValueError("ellipsoid_params expects a single center point")
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    amod2 = float(np.sum(np.abs(a) ** 2))
    s = (1.0 - amod2) / (1.0 - r * r * amod2)
    center = ((1.0 - r * r) / (1.0 - r * r * amod2)) * a
    if amod2 > 0.0:
        direction = a / np.sqrt(amod2)
    else:
        direction = None
    return EllipsoidParams(
        center=center,
        s=s,
        radial_semiaxis=r * s,
        transverse_semiaxis=r * np.sqrt(s),
        axis_direction=direction,
    )


def in_metric_ball(a, r: float, z) -> np.ndarray:
    """Membership test rho(z, a) < r (strict).  Broadcasts over z."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    return pseudo_metric(z, a) < r


def in_ellipsoid(a, r: float, z) -> np.ndarray:
    """Membership in E(a, r) through the ellipsoid inequality

        |P z - c|^2 / (r^2 s^2) + |Q z|^2 / (r^2 s) < 1.

    Agrees with in_metric_ball away from the common boundary.
    """
    a = as_point(a, name="a")
    z = as_point(z, name="z")
    _check_same_dim(a, z)
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    amod2 = float(np.sum(np.abs(a) ** 2))
    if amod2 == 0.0:
        return np.sum(np.abs(z) ** 2, axis=-1) < r * r
    params = ellipsoid_params(a, r)
    coef = inner(z, a) / amod2
    proj = coef[..., None] * a
    perp = z - proj
    lhs = (np.sum(np.abs(proj - params.center) ** 2, axis=-1)
           / (r * r * params.s ** 2)
           + np.sum(np.abs(perp) ** 2, axis=-1) / (r * r * params.s))
    return lhs < 1.0


def delta_for(r: float, eps: float) -> float:
    """A delta > 0 with 2 r sqrt(2 delta / (1 - r^2)) + delta < eps.

    Closed form delta = min(eps/2, (1 - r^2) eps^2 / (32 r^2)); each summand
    is then at most eps/2, with strict slack whenever the two branches
    differ.  Consequence: if |a - zeta| < delta for a boundary direction
    zeta, every point of E(a, r) lies within eps of zeta.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    return min(eps / 2.0, (1.0 - r * r) * eps * eps / (32.0 * r * r))


def sample_ball(n: int, count: int, rng: np.random.Generator,
                radius: float = 1.0) -> np.ndarray:
    """Uniform samples from the complex n-ball of the given radius.

    Uniform with respect to Lebesgue measure on C^n = R^(2n): Gaussian
    direction times radius U^(1/(2n)).
    """
    x = rng.standard_normal((count, 2 * n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    rad = radius * rng.random(count) ** (1.0 / (2 * n))
    x *= rad[:, None]
    return x[:, :n] + 1j * x[:, n:]


def sample_metric_ball(a, r: float, count: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Exact samples of E(a, r): the image under phi_a of uniform B(0, r)."""
    a = as_point(a, name="a")
    u = sample_ball(a.shape[-1], count, rng, radius=r)
    return moebius(a, u)


def random_sphere_points(n: int, count: int,
                         rng: np.random.Generator) -> np.ndarray:
    """Uniform points of the unit sphere of C^n."""
    x = rng.standard_normal((count, 2 * n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x[:, :n] + 1j * x[:, n:]
