"""Weighted composition unitaries U_z and their truncated matrices.

U_z f = (f o phi_z) k_z is a self-adjoint unitary involution of the
Bergman space, and U_z T_f U_z* = T_{f o phi_z}.  The truncated matrix is
the compression P U_z P, obtained two ways:

  * quadrature of the integrand e_alpha(phi_z(w)) k_z(w) conj(e_beta(w)),
    adequate while the rule resolves the kernel peak at w ~ z;
  * exact entries by expanding (z - w)^k (1 - conj(z) w)^(-k-2) (and its
    several-variable analogue along a coordinate ray), needed once
    1 - |z| falls below what any desk-scale rule can resolve.

``unitary_matrix`` picks the route automatically: exact whenever it is
available, quadrature otherwise; ``method=`` forces a choice.  Both
routes agree to roundoff at moderate |z| (property verified in tests).

The compression of a unitary has norm <= 1, and P U_z P -> U_z entrywise
as the truncation degree grows; identities involving products of
compressions hold only up to a degree-dependent defect, which is why the
laboratory's checks always sweep the degree.
"""

from __future__ import annotations

import math

import numpy as np

from .basis import TruncatedBasis, kernel
from .geometry import as_point, inner, moebius
from .quadrature import QuadratureRule
from .toeplitz import OperatorMatrix, Symbol, toeplitz_matrix

__all__ = ["unitary_matrix", "unitary_matrix_quadrature",
           "unitary_matrix_exact", "exact_available", "unitarity_defect",
           "conjugate_toeplitz", "weak_pairing_exact"]

# above this gap the quadrature route resolves the kernel peak comfortably
_EXACT_GAP = 0.05


def unitary_matrix_quadrature(z, basis: TruncatedBasis,
                              rule: QuadratureRule) -> OperatorMatrix:
    """Entries <U_z e_alpha, e_beta> by quadrature."""
    z = as_point(z, name="z")
    if z.ndim != 1 or z.shape[0] != basis.n:
        raise ValueError("z must be a single point of the basis dimension")
    if rule.n != basis.n:
        raise ValueError("rule and basis dimensions differ")
    composed = basis.eval(moebius(z, rule.nodes))
    kv = kernel(z, rule.nodes)
    emat = basis.eval(rule.nodes)
    mat = emat.conj().T @ ((rule.weights * kv)[:, None] * composed)
    return OperatorMatrix(basis, mat)


def _binom_table(nmax: int) -> np.ndarray:
    """Pascal triangle as floats, C[i, j] for i, j <= nmax."""
    c = np.zeros((nmax + 1, nmax + 1))
    c[:, 0] = 1.0
    for i in range(1, nmax + 1):
        c[i, 1:i + 1] = c[i - 1, 1:i + 1] + c[i - 1, :i]
    return c


def _disk_entries(z: complex, degree: int) -> np.ndarray:
    """Exact one-dimensional entries <U_z e_k, e_j>, shape (j, k).

    Coefficient of w^j in sqrt(k+1)(1-|z|^2)(z-w)^k (1-conj(z) w)^(-k-2):
    a finite binomial convolution, stable in double precision at desk
    degrees because the alternating terms stay below ~C(2d+1, d).
    """
    nmax = 2 * degree + 2
    c = _binom_table(nmax)
    zc = np.conj(z)
    out = np.zeros((degree + 1, degree + 1), dtype=complex)
    zp = z ** np.arange(degree + 1)
    zcp = zc ** np.arange(degree + 1)
    one = 1.0 - abs(z) ** 2
    for k in range(degree + 1):
        for j in range(degree + 1):
            acc = 0.0 + 0.0j
            for i in range(min(j, k) + 1):
                acc += ((-1.0) ** i * c[k, i] * c[k + j - i + 1, j - i]
                        * zp[k - i] * zcp[j - i])
            out[j, k] = math.sqrt((k + 1.0) / (j + 1.0)) * one * acc
    return out


def _ray_entries(t: float, axis: int, basis: TruncatedBasis) -> np.ndarray:
    """Exact entries of U_z for z = t e_axis, t real in [0, 1), any n >= 2.

    Nonzero only when alpha and beta agree off the axis; the axis factor
    expands (t - w)^a (1 - t w)^(-(|alpha| + n + 1)) as in one dimension,
    and the transverse monomials contribute sphere moments through the
    basis norms:

        <U_z e_alpha, e_beta> = (-1)^(|alpha| - a)
            (1 - t^2)^((|alpha| - a + n + 1)/2) c_{b} ||z^beta|| / ||z^alpha||,

    where a, b are the axis components and c_b is the w^b coefficient of
    the axis expansion.
    """
    n = basis.n
    d = basis.degree
    nmax = 2 * d + n + 2
    c = _binom_table(nmax)
    tp = t ** np.arange(2 * d + 2)
    one = 1.0 - t * t
    size = len(basis)
    pos = {alpha: i for i, alpha in enumerate(basis.indices)}
    out = np.zeros((size, size), dtype=complex)
    for ia, alpha in enumerate(basis.indices):
        a = alpha[axis]
        tot = sum(alpha)
        rest = tuple(v for i, v in enumerate(alpha) if i != axis)
        m = tot + n  # series (1 - t w)^(-(m+1)): coeff C(m + l, l) t^l
        sign = (-1.0) ** (tot - a)
        pref = sign * one ** (0.5 * (tot - a + n + 1))
        for b in range(d - (tot - a) + 1):
            beta = list(alpha)
            beta[axis] = b
            ib = pos.get(tuple(beta))
            if ib is None:
                continue
            acc = 0.0
            for i in range(min(a, b) + 1):
                acc += ((-1.0) ** i * c[a, i] * c[m + b - i, b - i]
                        * tp[a - i + b - i])
            out[ib, ia] = (pref * acc
                           * basis.norms[ib] / basis.norms[ia])
    return out


def exact_available(z, n: int) -> bool:
    """Exact entries exist for every z when n = 1, and for points on a
    coordinate ray t e_j (t >= 0 real) when n >= 2."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if n == 1:
        return True
    nz = np.abs(z) > 0.0
    if np.count_nonzero(nz) > 1:
        return False
    if not np.any(nz):
        return True
    j = int(np.argmax(nz))
    return abs(z[j].imag) == 0.0 and z[j].real >= 0.0


def unitary_matrix_exact(z, basis: TruncatedBasis) -> OperatorMatrix:
    """Exact compression P U_z P (no quadrature error source)."""
    z = as_point(z, name="z")
    if z.ndim != 1 or z.shape[0] != basis.n:
        raise ValueError("z must be a single point of the basis dimension")
    if basis.n == 1:
        return OperatorMatrix(basis, _disk_entries(complex(z[0]), basis.degree))
    if not exact_available(z, basis.n):
        raise ValueError(
            "exact entries for n >= 2 require z on a coordinate ray t e_j")
    nz = np.abs(z) > 0.0
    axis = int(np.argmax(nz)) if np.any(nz) else 0
    return OperatorMatrix(basis, _ray_entries(float(z[axis].real), axis, basis))


def unitary_matrix(z, basis: TruncatedBasis, rule: QuadratureRule | None = None,
                   method: str = "auto") -> OperatorMatrix:
    """Truncated matrix of U_z.

    method="auto" uses exact entries when available (mandatory once
    1 - |z| < 0.05, where quadrature cannot resolve the kernel peak),
    otherwise the quadrature route.
    """
    z = as_point(z, name="z")
    gap = 1.0 - float(np.linalg.norm(z))
    if method == "quadrature":
        if rule is None:
            raise ValueError("quadrature route needs a rule")
        return unitary_matrix_quadrature(z, basis, rule)
    if method == "exact":
        return unitary_matrix_exact(z, basis)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if exact_available(z, basis.n):
        return unitary_matrix_exact(z, basis)
    if gap < _EXACT_GAP:
        raise ValueError(
            f"1 - |z| = {gap:.3g} is below the quadrature resolution limit "
            f"and no exact route exists for this z")
    if rule is None:
        raise ValueError("quadrature route needs a rule")
    return unitary_matrix_quadrature(z, basis, rule)


def unitarity_defect(u: OperatorMatrix) -> float:
    """Operator norm of U*U - I on the truncation."""
    eye = np.eye(len(u.basis))
    return float(np.linalg.norm(u.mat.conj().T @ u.mat - eye, 2))


def conjugate_toeplitz(z, f: Symbol, basis: TruncatedBasis,
                       rule: QuadratureRule,
                       method: str = "auto") -> tuple[OperatorMatrix, OperatorMatrix]:
    """Both routes of the conjugation identity.

    Returns (U_z T_f U_z*, T_{f o phi_z}); they agree up to a defect that
    shrinks as the truncation degree grows.
    """
    u = unitary_matrix(z, basis, rule, method=method)
    tf = toeplitz_matrix(f, basis, rule)
    lhs = u @ tf @ u.adjoint()
    rhs = toeplitz_matrix(f.compose_moebius(z), basis, rule)
    return lhs, rhs


def weak_pairing_exact(zm, z, w) -> tuple[complex, float]:
    """Closed-form pairing <U_{z_m} k_z, k_w> and its decay bound.

    value = ((1-|w|^2)(1-|z|^2)(1-|z_m|^2))^((n+1)/2)
            / ((1 - <phi_{z_m}(w), z>)(1 - <w, z_m>))^(n+1),
    |value| <= bound = same numerator / ((1-|z|)(1-|w|))^(n+1).
    The bound decays like (1 - |z_m|^2)^((n+1)/2) along any sequence
    approaching the sphere.
    """
    zm = as_point(zm, name="zm")
    z = as_point(z, name="z")
    w = as_point(w, name="w")
    n = zm.shape[-1]
    zz = float(np.sum(np.abs(z) ** 2))
    ww = float(np.sum(np.abs(w) ** 2))
    mm = float(np.sum(np.abs(zm) ** 2))
    numer = ((1.0 - ww) * (1.0 - zz) * (1.0 - mm)) ** (0.5 * (n + 1))
    phi_w = moebius(zm, w)
    denom = ((1.0 - inner(phi_w, z)) * (1.0 - inner(w, zm))) ** (n + 1)
    value = complex(numer / denom)
    bound = float(numer / ((1.0 - math.sqrt(zz))
                           * (1.0 - math.sqrt(ww))) ** (n + 1))
    return value, bound
