"""Finite model of the Bergman space: truncated monomial basis, kernels,
expansions and projection.

The monomials z^alpha are orthogonal; their norms satisfy
||z^alpha||^2 = n! alpha! / (n + |alpha|)!, computed through log-gamma to
keep relative error near machine precision at any degree.  A truncated
basis collects all normalized monomials e_alpha with |alpha| <= d in
graded lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import as_point, inner
from .quadrature import QuadratureRule

__all__ = ["multi_indices", "monomial_norm", "TruncatedBasis", "Expansion",
           "kernel", "kernel_expansion", "project"]


def multi_indices(n: int, degree: int) -> list[tuple[int, ...]]:
    """All multi-indices of length n with total degree <= degree,
    ordered by (total degree, lexicographic)."""
    if n < 1 or degree < 0:
        raise ValueError(f"need n >= 1 and degree >= 0, got {n}, {degree}")

    def of_degree(dim: int, total: int):
        if dim == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in of_degree(dim - 1, total - head):
                yield (head, *rest)

    out: list[tuple[int, ...]] = []
    for total in range(degree + 1):
        out.extend(sorted(of_degree(n, total)))
    return out


def monomial_norm(alpha: tuple[int, ...], n: int) -> float:
    """||z^alpha|| = sqrt(n! alpha! / (n + |alpha|)!)."""
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise ValueError(f"invalid multi-index {alpha} for dimension {n}")
    total = sum(alpha)
    log_sq = (math.lgamma(n + 1)
              + sum(math.lgamma(a + 1) for a in alpha)
              - math.lgamma(n + total + 1))
    return math.exp(0.5 * log_sq)


@dataclass(frozen=True)
class TruncatedBasis:
    """Orthonormal monomial basis e_alpha = z^alpha / ||z^alpha||, |alpha| <= d."""

    n: int
    degree: int
    indices: tuple[tuple[int, ...], ...]
    norms: np.ndarray

    @classmethod
    def create(cls, n: int, degree: int) -> "TruncatedBasis":
        idx = tuple(multi_indices(n, degree))
        norms = np.array([monomial_norm(a, n) for a in idx])
        return cls(n=n, degree=degree, indices=idx, norms=norms)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def degrees(self) -> np.ndarray:
        """Total degree |alpha| per basis element."""
        return np.array([sum(a) for a in self.indices])

    def index_of(self, alpha: tuple[int, ...]) -> int:
        return self.indices.index(tuple(alpha))

    def eval(self, points) -> np.ndarray:
        """Matrix of basis values, shape (N, count); column j is e_{alpha_j}."""
        pts = as_point(points, name="points")
        pts = pts.reshape(-1, self.n)
        powers = [pts[:, j][:, None] ** np.arange(self.degree + 1)[None, :]
                  for j in range(self.n)]
        idx = np.asarray(self.indices)
        out = np.ones((pts.shape[0], len(self.indices)), dtype=complex)
        for j in range(self.n):
            out *= powers[j][:, idx[:, j]]
        out /= self.norms[None, :]
        return out

    def to_json(self) -> dict:
        return {"dimension": self.n, "degree": self.degree,
                "indices": [list(a) for a in self.indices],
                "norms": self.norms.tolist()}


@dataclass(frozen=True)
class Expansion:
    """Coefficients against a truncated basis: f = sum_a coeffs[a] e_a."""

    basis: TruncatedBasis
    coeffs: np.ndarray

    def __post_init__(self):
        if len(self.coeffs) != len(self.basis):
            raise ValueError(
                f"coefficient count {len(self.coeffs)} does not match basis "
                f"size {len(self.basis)}")

    def eval(self, points) -> np.ndarray:
        """Evaluate the expansion at ball points (broadcasts)."""
        pts = as_point(points, name="points")
        squeeze = pts.ndim == 1
        values = self.basis.eval(pts) @ self.coeffs
        return values[0] if squeeze else values

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def to_json(self) -> dict:
        return {"re": self.coeffs.real.tolist(),
                "im": self.coeffs.imag.tolist()}


def kernel(z, w) -> np.ndarray:
    """Normalized reproducing kernel k_z evaluated at w.

    k_z(w) = (1 - |z|^2)^((n+1)/2) (1 - <w, z>)^(-n-1); ||k_z|| = 1 and
    <g, k_z> = (1 - |z|^2)^((n+1)/2) g(z) for analytic g.
    """
    z = as_point(z, name="z")
    w = as_point(w, name="w")
    n = z.shape[-1]
    zz = np.sum(np.abs(z) ** 2, axis=-1)
    return ((1.0 - zz) ** (0.5 * (n + 1))
            * (1.0 - inner(w, z)) ** (-(n + 1)))


def kernel_expansion(z, basis: TruncatedBasis) -> Expansion:
    """Truncated expansion of k_z: coefficients (1-|z|^2)^((n+1)/2) conj(e_a(z))."""
    z = as_point(z, name="z")
    if z.ndim != 1:
        raise ValueError("kernel_expansion expects a single point")
    zz = float(np.sum(np.abs(z) ** 2))
    coeffs = ((1.0 - zz) ** (0.5 * (basis.n + 1))
              * np.conj(basis.eval(z[None, :])[0]))
    return Expansion(basis=basis, coeffs=coeffs)


def project(f, basis: TruncatedBasis, rule: QuadratureRule) -> Expansion:
    """Orthogonal projection onto the truncated basis by quadrature.

    ``f`` maps an (N, n) array of points to (N,) values; the coefficient
    at alpha is the rule's value of <f, e_alpha>.
    """
    if rule.n != basis.n:
        raise ValueError("rule and basis dimensions differ")
    values = np.asarray(f(rule.nodes))
    if not np.all(np.isfinite(values)):
        i = int(np.argmax(~np.isfinite(values)))
        raise ValueError(f"integrand is not finite at node {i}")
    emat = basis.eval(rule.nodes)
    coeffs = emat.conj().T @ (rule.weights * values)
    return Expansion(basis=basis, coeffs=coeffs)
