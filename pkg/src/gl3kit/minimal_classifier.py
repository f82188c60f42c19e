"""Power-function-minimal vectors: construction, classification and brute-force checks.

A vector f in C^{2d+1} is power-function minimal for mu when both lowering
operators Y^{-1}_mu and Y^{-2}_mu kill it.  For mu in standard form the
solutions fall into six cases; `classify_minimal` returns the case and an
explicit basis, and `minimal_nullspace` recomputes the same space numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .coefficient_flow import y_matrix
from .indexed import CenterIndexedVector
from .spectral import SpectralParameter, as_mu
from .wigner import VCharacter, basis_u, basis_v, v_element, weyl_action, weyl_element, wigner_D_array

CASE_TOL = 1e-9
AMBIGUOUS_TOL = 1e-6
NULL_TOL = 1e-10


# --------------------------------------------------------------------------
# standard forms of mu


@dataclass(frozen=True)
class Unitary:
    """mu = (i t1, i t2, -i (t1 + t2))."""

    t1: float
    t2: float

    def __post_init__(self):
        for name, val in (("t1 - t2", self.t1 - self.t2), ("2 t1 + t2", 2 * self.t1 + self.t2),
                          ("t1 + 2 t2", self.t1 + 2 * self.t2)):
            if abs(val) < CASE_TOL:
                raise ValueError(f"{name} must be nonzero for the unitary standard form")

    def mu(self) -> SpectralParameter:
        return SpectralParameter(1j * self.t1, 1j * self.t2, -1j * (self.t1 + self.t2))


@dataclass(frozen=True)
class Shifted:
    """mu = (x + i t, -2 i t, -x + i t) with x >= 0."""

    x: float
    t: float = 0.0

    def __post_init__(self):
        if self.x < 0:
            raise ValueError("x must be nonnegative")

    def mu(self) -> SpectralParameter:
        return SpectralParameter(self.x + 1j * self.t, -2j * self.t, -self.x + 1j * self.t)


StandardMu = Unitary | Shifted


def standard_form(mu) -> StandardMu:
    """Recognize a spectral parameter given as three numbers."""
    if isinstance(mu, (Unitary, Shifted)):
        return mu
    m1, m2, m3 = as_mu(mu).as_tuple()
    if max(abs(m1.real), abs(m2.real), abs(m3.real)) < CASE_TOL:
        return Unitary(m1.imag, m2.imag)
    x, t = m1.real, m1.imag
    if abs(m2 + 2j * t) < CASE_TOL and abs(m3 - (-x + 1j * t)) < CASE_TOL and x >= 0:
        return Shifted(x, t)
    raise ValueError(f"{(m1, m2, m3)} is not in standard form: expected (it1, it2, -i(t1+t2)) "
                     "or (x+it, -2it, -x+it) with x >= 0")


# --------------------------------------------------------------------------
# the g vectors


def g2_coefficient(d: int, k: int, index: int, mu) -> complex:
    """g^d_{2,k,index} with index = 2j + k."""
    if (index - k) % 2 or index < k or index > d:
        raise ValueError("index must be k + 2j within 0..d")
    m1, m2, m3 = as_mu(mu).as_tuple()
    if index == 0:
        return 0.5
    out = 1.0 + 0j
    for i in range((index - k) // 2):
        s = 2 * i + k
        den = m1 - m2 - 1 - s
        if abs(den) < CASE_TOL:
            raise ZeroDivisionError(f"g2 coefficient {index} has a vanishing denominator")
        out *= -sqrt((d - 1 - s) * (d - s)) * (3 * m3 + 2 * d - 1 + s) / (sqrt((d + 1 + s) * (d + 2 + s)) * den)
    return out


def g_vectors(which: str, d: int, delta: int = 0, eps: int = 1, mu=(0, 0, 0)) -> CenterIndexedVector:
    """g1, g2^{d,delta,eps}, g3^{d,delta,eps} or g4^{d,eps} as vectors in C^{2d+1}."""
    m = as_mu(mu)
    if eps not in (1, -1) or delta not in (0, 1):
        raise ValueError("need delta in {0,1} and eps = +-1")
    if which == "g1":
        if d != 2:
            raise ValueError("g1 lives at d = 2")
        return CenterIndexedVector(-sqrt(6) * (1 + m.mu3) * np.asarray(basis_u(2, 2, 1))
                                   + (m.mu1 - m.mu2 - 1) * np.asarray(basis_u(2, 0, 1)))
    if which == "g4":
        if d % 2 == 0:
            raise ValueError("g4 needs d odd")
        kappa = (d + 1) // 2
        return _combine(d, eps, {i: g2_coefficient(d, kappa, i, m) for i in range(kappa, d + 1, 2)})
    if which == "g2":
        return _combine(d, eps, {i: g2_coefficient(d, delta, i, m) for i in range(delta, d + 1, 2)})
    if which == "g3":
        coefs = {i: g2_coefficient(d, delta, i, m) for i in range(delta, d, 2)}
        if (d - delta) % 2 == 0:
            if d < 2:
                raise ValueError("g3 needs d >= 2")
            prev = g2_coefficient(d, delta, d - 2, m)
            if d - 2 == 0:
                prev = 1.0  # the 1/2 on the j=0 coefficient is a weight, not part of the recursion
            coefs[d] = prev / sqrt(d * (2 * d - 1))
        return _combine(d, eps, coefs)
    raise ValueError(f"unknown family {which!r}")


def _combine(d: int, eps: int, coefs: dict[int, complex]) -> CenterIndexedVector:
    out = np.zeros(2 * d + 1, dtype=complex)
    for i, c in coefs.items():
        if i == 0 and eps * (-1) ** d == -1:
            continue  # bu_0 vanishes for this sign
        out += c * np.asarray(basis_u(d, i, eps))
    return CenterIndexedVector(out)


# --------------------------------------------------------------------------
# brute force


def lowering_map(d: int, mu) -> np.ndarray:
    """f -> (Y^{-1} f, Y^{-2} f) as a (2d+1) x (4d-4) matrix acting on rows."""
    parts = [y_matrix(a, d, mu) for a in (-1, -2) if d + a >= 0]
    return np.hstack(parts) if parts else np.zeros((2 * d + 1, 0), dtype=complex)


def minimal_nullspace(d: int, mu) -> np.ndarray:
    """Orthonormal rows spanning {f : Y^{-1}_mu f = 0 = Y^{-2}_mu f}."""
    if d < 2 and d + (-1) < 0:
        return np.eye(2 * d + 1, dtype=complex)
    mat = lowering_map(d, mu)
    u, s, vh = np.linalg.svd(mat.T)
    top = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > NULL_TOL * top))
    return vh[rank:].conj()


def lowering_residual(d: int, mu, f) -> float:
    v = np.asarray(f, dtype=complex)
    return float(np.linalg.norm(v @ lowering_map(d, mu)))


def subspace_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle between row spaces (pi/2 on dimension mismatch)."""
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    if a.shape[0] == 0 and b.shape[0] == 0:
        return 0.0
    if a.shape[0] != b.shape[0]:
        return float(np.pi / 2)
    qa, _ = np.linalg.qr(a.T)
    qb, _ = np.linalg.qr(b.T)
    # sine form: arccos of singular values loses half the digits near zero
    resid = qa - qb @ (qb.conj().T @ qa)
    return float(np.arcsin(min(1.0, np.linalg.norm(resid, 2))))


# --------------------------------------------------------------------------
# classification


@dataclass
class BasisVector:
    label: str
    vector: np.ndarray
    delta: int | None = None
    eps: int | None = None


@dataclass
class MinimalClass:
    case: int
    d: int
    mu: SpectralParameter
    basis: list[BasisVector] = field(default_factory=list)
    character: VCharacter | None = None

    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, 2 * self.d + 1), dtype=complex)
        return np.array([b.vector for b in self.basis])


class AmbiguousParameter(ValueError):
    """mu sits within the ambiguity band of a case boundary."""


def _close(a: float, b: float) -> bool:
    gap = abs(a - b)
    if gap < CASE_TOL:
        return True
    if gap < AMBIGUOUS_TOL:
        raise AmbiguousParameter(f"parameter within {gap:.1e} of a case boundary")
    return False


def character_for(d: int) -> VCharacter:
    """The character paired with the minimal vector at weight d."""
    if d == 0:
        return VCharacter(1, 1)
    if d == 1:
        return VCharacter(1, -1)
    return VCharacter((-1) ** d, 1)


def classify_minimal(d: int, mu) -> MinimalClass:
    """Case number 1..6 and an explicit basis of the power-function-minimal vectors."""
    std = standard_form(mu)
    m = std.mu()
    out = MinimalClass(case=1, d=d, mu=m)
    if d in (0, 1):
        out.case = 2
        out.basis = [BasisVector(f"bv_{j}", np.asarray(basis_v(d, j))) for j in range(-d, d + 1)]
        return out
    shifted = isinstance(std, Shifted)
    if shifted and _close(std.x, (d - 1) / 2):
        if d % 2 == 0 or not _close(std.t, 0):
            eps = (-1) ** d
            out.case = 4
            out.basis = [
                BasisVector("g2", np.asarray(g_vectors("g2", d, 0, eps, m)), 0, eps),
                BasisVector("g2", np.asarray(g_vectors("g2", d, 1, -eps, m)), 1, -eps),
            ]
        else:
            kappa = (d + 1) // 2
            delta, eps = (kappa + 1) % 2, (-1) ** kappa
            out.case = 5
            out.basis = [
                BasisVector("g2", np.asarray(g_vectors("g2", d, delta, eps, m)), delta, eps),
                BasisVector("g4+", np.asarray(g_vectors("g4", d, 0, 1, m)), None, 1),
                BasisVector("g4-", np.asarray(g_vectors("g4", d, 0, -1, m)), None, -1),
            ]
        out.character = character_for(d)
        return out
    if shifted and _close(std.x, d - 1) and _close(std.t, 0):
        eps = (-1) ** d
        out.case = 6
        out.basis = [
            BasisVector("g3", np.asarray(g_vectors("g3", d, 1, eps, m)), 1, eps),
            BasisVector("g3", np.asarray(g_vectors("g3", d, 0, eps, m)), 0, eps),
            BasisVector("bu+", np.asarray(basis_u(d, d, 1)), None, 1),
            BasisVector("bu-", np.asarray(basis_u(d, d, -1)), None, -1),
        ]
        return out
    if d == 2:
        out.case = 3
        out.basis = [BasisVector("g1", np.asarray(g_vectors("g1", 2, mu=m)))]
    return out


# --------------------------------------------------------------------------
# vanishing of the Whittaker function


def _duality_translate(v: np.ndarray, d: int) -> np.ndarray:
    return v @ wigner_D_array(d, v_element(-1, -1) @ weyl_element("wl"))


def _in_span(f: np.ndarray, rows: list[np.ndarray], tol: float = 1e-8) -> bool:
    basis = np.array(rows)
    coef, *_ = np.linalg.lstsq(basis.T, f, rcond=None)
    return float(np.linalg.norm(basis.T @ coef - f)) <= tol * max(1.0, np.linalg.norm(f))


def whittaker_vanishing(d: int, mu, f) -> bool:
    """True when f W^d(., mu, psi_{1,1}) is identically zero, for power-function-minimal f."""
    v = np.asarray(f, dtype=complex)
    if v.shape != (2 * d + 1,):
        raise ValueError(f"expected a vector of length {2 * d + 1}")
    if np.linalg.norm(v) < 1e-14:
        return True
    std = standard_form(mu)
    m = std.mu()
    if d >= 1 and lowering_residual(d, m, v) > 1e-8 * np.linalg.norm(v):
        raise ValueError("f is not power-function minimal for this mu")
    if d == 0:
        return False
    shifted = isinstance(std, Shifted)
    if shifted and _close(std.x, d - 1) and _close(std.t, 0):
        top = np.asarray(basis_v(d, d))
        return _in_span(v, [top, _duality_translate(top, d)])
    if shifted and d % 2 == 1 and _close(std.x, (d - 1) / 2) and _close(std.t, 0):
        s = np.asarray(g_vectors("g4", d, 0, 1, m)) + np.asarray(g_vectors("g4", d, 0, -1, m))
        return _in_span(v, [s, _duality_translate(s, d)])
    if shifted and _close(std.x, (d - 1) / 2) and (d % 2 == 0 or not _close(std.t, 0)):
        from .gamma_functional import t_matrix

        mw = weyl_action(m.as_tuple(), "w3")
        return _in_span(v, [np.asarray(basis_v(d, d)) @ np.asarray(t_matrix(d, "w3", mw))])
    # no integral differences among the mu_i (or none that matter here):
    # the Whittaker matrix is invertible, so only f = 0 gives zero
    return False


# --------------------------------------------------------------------------
# minimal K-type parameters and the Y^0 diagnostic


@dataclass(frozen=True)
class MinimalKType:
    d0: int
    vector: np.ndarray
    character: VCharacter
    description: str

    def mu(self, t: float = 0.0, x: float = 0.0) -> SpectralParameter:
        if self.d0 <= 1:
            if abs(x) >= 0.5:
                raise ValueError("need |x| < 1/2")
            return SpectralParameter(x + 1j * t, -x + 1j * t, -2j * t)
        h = (self.d0 - 1) / 2
        return SpectralParameter(h + 1j * t, -h + 1j * t, -2j * t)


def minimal_ktype_parameters(d0: int) -> MinimalKType:
    if d0 < 0:
        raise ValueError("weight must be nonnegative")
    if d0 == 0:
        return MinimalKType(0, np.ones(1, dtype=complex), character_for(0),
                            "f = 1; Re(mu) = 0 or mu = (x+it, -x+it, -2it), |x| < 1/2")
    if d0 == 1:
        return MinimalKType(1, np.asarray(basis_u(1, 0, -1)), character_for(1),
                            "f = bu^{1,-}_0; Re(mu) = 0 or mu = (x+it, -x+it, -2it), |x| < 1/2")
    h = (d0 - 1) / 2
    return MinimalKType(d0, np.asarray(basis_u(d0, d0, 1)), character_for(d0),
                        f"f = bu^{{{d0},+}}_{d0}; mu = ({h:g}+it, {-h:g}+it, -2it)")


@dataclass(frozen=True)
class SkewDiagnostic:
    eigenvalue: complex
    residual: float
    excluded: bool
    note: str


def y0_skew_exclusion(d: int, mu) -> SkewDiagnostic:
    """Y^0_mu on bv^d_{-d}: a real nonzero eigenvalue cannot come from a cusp form.

    Y^0 is skew-adjoint on the forms, so its eigenvalues there are imaginary.
    """
    m = as_mu(mu)
    row = np.asarray(basis_v(d, -d)) @ y_matrix(0, d, m)
    lam = row[0]
    resid = float(np.linalg.norm(row - lam * np.asarray(basis_v(d, -d))))
    is_eigen = resid < 1e-9 * max(1.0, abs(lam))
    excluded = is_eigen and abs(lam.imag) < 1e-12 and abs(lam) > 1e-12
    if not is_eigen:
        note = "bv_{-d} is not an eigenvector at this mu"
    elif excluded:
        note = "real nonzero eigenvalue: excluded"
    else:
        note = "eigenvalue compatible with skew-adjointness"
    return SkewDiagnostic(complex(lam), resid, bool(excluded), note)


def d1_eigenvalues(mu) -> dict[str, complex]:
    """Y^0 eigenvalues on bu^{1,-}_0, bu^{1,-}_1, bu^{1,+}_1."""
    m = as_mu(mu)
    out = {}
    for label, j, s in (("bu^{1,-}_0", 0, -1), ("bu^{1,-}_1", 1, -1), ("bu^{1,+}_1", 1, 1)):
        u = np.asarray(basis_u(1, j, s))
        img = u @ y_matrix(0, 1, m)
        k = int(np.argmax(np.abs(u)))
        out[label] = img[k] / u[k]
    return out
