"""Wigner D-matrices on SO(3), Wigner d-polynomials and the W and V groups.

Conventions: rotations are Z-Y-Z, k(a, b, c) = k(a,0,0) w3 k(-b,0,0) w3 k(c,0,0),
and D(k(t,0,0)) is diagonal with entry exp(-i m t) at row m.  Numerically
D is obtained from the action of k on degree-d solid harmonics, which keeps
it polynomial in the matrix entries (so jets pass straight through).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, pi, sqrt

import numpy as np

from .indexed import CenterIndexedMatrix, CenterIndexedVector
from .jets import Jet, xcos, xsin, xstack
from .surd import ONE, ZERO, SurdScalar, i_power

# --------------------------------------------------------------------------
# Jacobi polynomials and the small-d functions


def jacobi_polynomial(n: int, a, b, x):
    """P_n^{(a,b)}(x) by the three-term recurrence (exact for Fraction input)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    p_prev = 1 + 0 * x
    if n == 0:
        return p_prev
    p = (a - b + x * (2 + a + b)) / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c0 = 2 * k * (k + a + b) * (s - 2)
        c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p


def _check_index(d: int, *ms: int) -> None:
    if d < 0:
        raise ValueError("dimension parameter must be nonnegative")
    for m in ms:
        if abs(m) > d:
            raise IndexError(f"index {m} outside [-{d}, {d}]")


def _canonical_d_index(mp: int, m: int) -> tuple[int, int, int]:
    """Map (m', m) to a pair with m >= |m'| plus the sign picked up on the way."""
    if m >= abs(mp):
        return mp, m, 1
    if -m >= abs(mp):
        return -mp, -m, (-1) ** ((mp + m) % 2)
    if mp >= abs(m):
        return m, mp, (-1) ** ((mp + m) % 2)
    return -m, -mp, 1


def wigner_small_d(d: int, m_row: int, m_col: int, x: float) -> float:
    """The Wigner d-polynomial at x = cos(beta)."""
    _check_index(d, m_row, m_col)
    mp, m, sign = _canonical_d_index(m_row, m_col)
    ratio = factorial(d + m) * factorial(d - m) / (factorial(d + mp) * factorial(d - mp))
    val = (
        2.0 ** (-m)
        * sqrt(ratio)
        * (1 - x) ** ((m - mp) / 2)
        * (1 + x) ** ((m + mp) / 2)
        * jacobi_polynomial(d - m, m - mp, m + mp, x)
    )
    return sign * val


def _small_d_exact(d: int, mp: int, m: int, x: int) -> SurdScalar:
    """Exact d-polynomial value at x in {-1, 0, 1}."""
    a, b, sign = _canonical_d_index(mp, m)
    mp, m = a, b
    if x == 1:
        return SurdScalar.make(sign) if mp == m else ZERO
    if x == -1:
        return SurdScalar.make(sign * (-1) ** (d - m)) if mp == -m else ZERO
    ratio = Fraction(factorial(d + m) * factorial(d - m), factorial(d + mp) * factorial(d - mp))
    p0 = jacobi_polynomial(d - m, Fraction(m - mp), Fraction(m + mp), Fraction(0))
    return SurdScalar.make(sign * Fraction(1, 2**m) * p0, ratio)


# --------------------------------------------------------------------------
# rotations, Weyl and V elements


def rotation_z(theta):
    """k(theta, 0, 0); accepts floats, arrays or jets."""
    c, s = xcos(theta), xsin(theta)
    zero, one = 0 * c, 0 * c + 1
    rows = [xstack([c, -s, zero], -1), xstack([s, c, zero], -1), xstack([zero, zero, one], -1)]
    return xstack(rows, -2)


W3 = -np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


def euler_rotation(alpha, beta, gamma):
    """k(alpha, beta, gamma) = k(alpha,0,0) w3 k(-beta,0,0) w3 k(gamma,0,0)."""
    return rotation_z(alpha) @ (W3 @ rotation_z(-beta) @ W3) @ rotation_z(gamma)


WEYL: dict[str, np.ndarray] = {
    "I": np.eye(3, dtype=int),
    "w2": -np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    "w3": W3,
    "w4": np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
    "w5": np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    "wl": -np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
}


def v_element(eps1: int, eps2: int) -> np.ndarray:
    """v_{eps1, eps2} = diag(eps1, eps1*eps2, eps2)."""
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise ValueError("V elements are indexed by signs")
    return np.diag([eps1, eps1 * eps2, eps2])


def weyl_element(name: str) -> np.ndarray:
    try:
        return WEYL[name]
    except KeyError:
        raise ValueError(f"unknown Weyl element {name!r}") from None


def same_mod_sign(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a, b) or np.array_equal(a, -b))


def weyl_name(matrix: np.ndarray) -> str:
    for name, w in WEYL.items():
        if same_mod_sign(np.asarray(matrix), w):
            return name
    raise ValueError("matrix is not a Weyl element")


def weyl_product(*names: str) -> str:
    out = np.eye(3, dtype=int)
    for n in names:
        out = out @ weyl_element(n)
    return weyl_name(out)


def weyl_inverse(name: str) -> str:
    return weyl_name(weyl_element(name).T)


def weyl_permutation(name: str) -> tuple[int, int, int]:
    """pi with w[i, pi(i)] != 0."""
    w = weyl_element(name)
    return tuple(int(np.flatnonzero(w[i])[0]) for i in range(3))


def weyl_action(mu, w: str):
    """mu^w, defined by p_{mu^w}(a) = p_mu(w a w^{-1}) on diagonal a."""
    if abs(sum(mu)) > 1e-9 * (1 + sum(abs(complex(m)) for m in mu)):
        raise ValueError("spectral parameter must sum to zero")
    perm = weyl_permutation(w)
    inv = [0, 0, 0]
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(mu[inv[j]] for j in range(3))


def wv_commutation(w: str, v: tuple[int, int]) -> tuple[int, int]:
    """Signs of v' = w v w^{-1}, so that w v = v' w."""
    wm = weyl_element(w)
    conj = wm @ v_element(*v) @ wm.T
    diag = np.diag(conj)
    if not np.array_equal(conj, np.diag(diag)):
        raise ArithmeticError("conjugate of a V element left V")
    return int(diag[0]), int(diag[2])


@dataclass(frozen=True)
class VCharacter:
    """The character of V with chi(v_{-+}) = eps1 and chi(v_{+-}) = eps2."""

    eps1: int
    eps2: int

    def __post_init__(self):
        if self.eps1 not in (1, -1) or self.eps2 not in (1, -1):
            raise ValueError("character signs must be +-1")

    def __call__(self, v: tuple[int, int]) -> int:
        e1, e2 = v
        return (self.eps1 if e1 == -1 else 1) * (self.eps2 if e2 == -1 else 1)


V_GROUP = [(1, 1), (-1, 1), (1, -1), (-1, -1)]

# --------------------------------------------------------------------------
# solid harmonics and the numerical D-matrix


@lru_cache(maxsize=None)
def _harmonic_tables(d: int):
    """Coefficients of the degree-d solid harmonics and the sampling pseudo-inverse."""
    terms = []
    for m in range(-d, d + 1):
        am = abs(m)
        norm = sqrt(factorial(d - am) / factorial(d + am))
        sgn = (-1) ** am if m >= 0 else 1
        coeffs = []
        for k in range((d - am) // 2 + 1):
            c = (-1) ** k * factorial(2 * d - 2 * k) / (2**d * factorial(k) * factorial(d - k) * factorial(d - am - 2 * k))
            coeffs.append((k, sgn * norm * c))
        terms.append((m, coeffs))
    rng = np.random.default_rng(20240611 + d)
    pts = rng.normal(size=(2 * (2 * d + 1) + 2, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    h = _harmonics_eval(d, terms, pts)  # (npts, 2d+1)
    return terms, pts, np.linalg.pinv(h)  # pinv: (2d+1, npts)


def _harmonics_eval(d: int, terms, v):
    """Evaluate the 2d+1 solid harmonics at points v of shape (..., 3)."""
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    r2 = x * x + y * y + z * z
    wp, wm = x + 1j * y, x - 1j * y
    zp = [0 * x + 1]
    r2p = [0 * x + 1]
    wpp = [0 * x + 1]
    wmp = [0 * x + 1]
    for _ in range(d):
        zp.append(zp[-1] * z)
        r2p.append(r2p[-1] * r2)
        wpp.append(wpp[-1] * wp)
        wmp.append(wmp[-1] * wm)
    out = []
    for m, coeffs in terms:
        am = abs(m)
        poly = 0 * x
        for k, c in coeffs:
            poly = poly + zp[d - am - 2 * k] * r2p[k] * c
        out.append(poly * (wpp[am] if m >= 0 else wmp[am]))
    return xstack(out, -1)


def wigner_D_array(d: int, k):
    """D^d(k) for k of shape (..., 3, 3); works on ndarrays and on jets."""
    if d == 0:
        if isinstance(k, Jet):
            return Jet.constant(k.space, np.ones(k.shape[:-2] + (1, 1)))
        return np.ones(np.shape(k)[:-2] + (1, 1), dtype=complex)
    terms, pts, pinv = _harmonic_tables(d)
    if isinstance(k, Jet):
        v = (k.T @ pts.T).swapaxes(-1, -2)  # (..., npts, 3)
        a = _harmonics_eval(d, terms, v)  # (..., npts, 2d+1)
        return pinv @ a
    k = np.asarray(k, dtype=float)
    v = np.einsum("...ba,ib->...ia", k, pts)
    a = _harmonics_eval(d, terms, v)
    return np.einsum("mi,...in->...mn", pinv, a)


def _check_rotation(k: np.ndarray, tol: float = 1e-10) -> None:
    k = np.asarray(k, dtype=float)
    if k.shape != (3, 3):
        raise ValueError("rotation must be 3x3")
    if np.max(np.abs(k.T @ k - np.eye(3))) > tol or abs(np.linalg.det(k) - 1) > tol:
        raise ValueError("matrix is not special orthogonal")


def wigner_D(d: int, k) -> CenterIndexedMatrix:
    """The Wigner D-matrix D^d(k) of a single rotation."""
    _check_rotation(k)
    return CenterIndexedMatrix(wigner_D_array(d, np.asarray(k, dtype=float)))


# --------------------------------------------------------------------------
# exact values at signed permutation matrices


@lru_cache(maxsize=None)
def _quarter_turn_euler(key: tuple) -> tuple[int, int, int]:
    target = np.array(key).reshape(3, 3)
    for a in range(4):
        for b in range(3):
            for c in range(4):
                r = euler_rotation(a * pi / 2, b * pi / 2, c * pi / 2)
                if np.allclose(r, target, atol=1e-12):
                    return a, b, c
    raise ValueError("not a signed permutation rotation")


@lru_cache(maxsize=None)
def _exact_D_cached(d: int, key: tuple) -> tuple:
    a, b, c = _quarter_turn_euler(key)
    x = {0: 1, 1: 0, 2: -1}[b]
    rows = []
    for mp in range(-d, d + 1):
        row = []
        for m in range(-d, d + 1):
            row.append(i_power(-mp * a) * _small_d_exact(d, mp, m, x) * i_power(-m * c))
        rows.append(tuple(row))
    return tuple(rows)


def wigner_D_exact(d: int, element) -> CenterIndexedMatrix:
    """Exact D^d at a Weyl element, V element, or any signed permutation rotation."""
    if isinstance(element, str):
        mat = weyl_element(element)
    elif isinstance(element, tuple) and len(element) == 2:
        mat = v_element(*element)
    else:
        mat = np.asarray(element, dtype=int)
    if round(np.linalg.det(mat)) != 1:
        mat = -mat
    key = tuple(int(v) for v in mat.ravel())
    vals = np.empty((2 * d + 1, 2 * d + 1), dtype=object)
    for i, row in enumerate(_exact_D_cached(d, key)):
        for j, v in enumerate(row):
            vals[i, j] = v
    return CenterIndexedMatrix(vals)


def exact_matmul(a: CenterIndexedMatrix, b: CenterIndexedMatrix) -> CenterIndexedMatrix:
    """Product of exact matrices; entries fall back to complex if radicands mix."""
    av, bv = a.values, b.values
    n = av.shape[0]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            s = ZERO
            for k in range(n):
                s = s + av[i, k] * bv[k, j]
            out[i, j] = s
    return CenterIndexedMatrix(out)


def sigma_projection(d: int, chi: VCharacter) -> CenterIndexedMatrix:
    """Sigma^d_chi = 1/4 sum_v chi(v) D^d(v), in exact arithmetic."""
    n = 2 * d + 1
    out = np.empty((n, n), dtype=object)
    out[:] = ZERO
    for v in V_GROUP:
        dv = wigner_D_exact(d, v).values
        for i in range(n):
            for j in range(n):
                out[i, j] = out[i, j] + dv[i, j] * Fraction(chi(v), 4)
    return CenterIndexedMatrix(out)


# --------------------------------------------------------------------------
# basis vectors


def basis_v(d: int, j: int) -> CenterIndexedVector:
    """The unit vector bv^d_j."""
    _check_index(d, j)
    v = np.zeros(2 * d + 1, dtype=complex)
    v[j + d] = 1.0
    return CenterIndexedVector(v)


def basis_u(d: int, j: int, sign: int) -> CenterIndexedVector:
    """bu^{d,sign}_j = (bv_j + sign (-1)^d bv_{-j}) / 2."""
    _check_index(d, j)
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    v = np.zeros(2 * d + 1, dtype=complex)
    v[j + d] += 0.5
    v[-j + d] += 0.5 * sign * (-1) ** d
    return CenterIndexedVector(v)


def tilde_i_diag(d: int) -> np.ndarray:
    """diag(i^d, ..., i^{-d})."""
    return np.diag([1j ** (-m) for m in range(-d, d + 1)])


def exact_to_complex(a) -> np.ndarray:
    return np.vectorize(complex, otypes=[complex])(np.asarray(a.values if hasattr(a, "values") else a))


__all__ = [
    "jacobi_polynomial",
    "wigner_small_d",
    "wigner_D",
    "wigner_D_array",
    "wigner_D_exact",
    "euler_rotation",
    "rotation_z",
    "sigma_projection",
    "basis_u",
    "basis_v",
    "weyl_action",
    "wv_commutation",
    "VCharacter",
    "V_GROUP",
    "WEYL",
    "ONE",
]
