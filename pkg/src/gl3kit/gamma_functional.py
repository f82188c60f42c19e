"""Classical Whittaker functions, gamma-factor matrices and intertwining matrices T^d(w, mu)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, pi, sqrt

import mpmath
import numpy as np
from scipy import integrate, special

from .indexed import CenterIndexedMatrix, CenterIndexedVector
from .spectral import as_mu
from .wigner import (basis_u, euler_rotation, v_element, weyl_action, weyl_element, weyl_name,
                     wigner_D_array, wigner_small_d)

POLE_TOL = 1e-12


class PoleError(ValueError):
    """A gamma function was asked for its value at a pole."""

    def __init__(self, location, message: str | None = None):
        self.location = location
        super().__init__(message or f"gamma pole at {location}")


class SingularityError(ValueError):
    """A meromorphic expression has a genuine (non-removable) singularity."""


def _near_pole(z: complex) -> bool:
    z = complex(z)
    return abs(z.imag) < POLE_TOL and z.real < 0.5 and abs(z.real - round(z.real)) < POLE_TOL


def complex_gamma(z) -> complex:
    """Gamma(z) for complex z; raises PoleError at nonpositive integers."""
    if _near_pole(z):
        raise PoleError(complex(z))
    return complex(special.gamma(complex(z)))


def reciprocal_gamma(z) -> complex:
    """1/Gamma(z), which is entire."""
    return complex(special.rgamma(complex(z)))


# --------------------------------------------------------------------------
# classical Whittaker functions


def classical_whittaker(d: int, m: int, y: float, u, method: str = "whittaker") -> complex:
    """The diagonal entry W^d_{m,m}(y, u).

    method="whittaker" uses the closed forms (the confluent W-function for y != 0);
    method="quadrature" integrates the defining oscillatory integral (needs Re u > 0).
    """
    if abs(m) > d:
        raise IndexError(f"index {m} outside [-{d}, {d}]")
    u = complex(u)
    if method == "quadrature":
        return _whittaker_quadrature(m, y, u)
    if method != "whittaker":
        raise ValueError(f"unknown method {method!r}")
    if y == 0:
        return 2 ** (1 - u) * pi * complex_gamma(u) * reciprocal_gamma((1 + u + m) / 2) * reciprocal_gamma((1 + u - m) / 2)
    eps = 1 if y > 0 else -1
    ay = abs(y)
    w = complex(mpmath.whitw(-eps * m / 2, u / 2, 4 * pi * ay))
    return (pi * ay) ** ((1 + u) / 2) / ay * reciprocal_gamma((1 - eps * m + u) / 2) * w


def _whittaker_quadrature(m: int, y: float, u: complex) -> complex:
    if u.real <= 0:
        raise ValueError("the defining integral needs Re(u) > 0")
    # integrand is even after pairing x with -x: 2 (1+x^2)^{-(1+u)/2} cos(m atan x + 2 pi y x)
    omega = 2 * pi * y

    def amp(x):
        return (1 + x * x) ** (-(1 + u) / 2)

    parts = []
    for part in (np.real, np.imag):
        if omega == 0:
            val, _ = integrate.quad(lambda x: part(amp(x)) * np.cos(m * np.arctan(x)), 0, np.inf, limit=400)
        else:
            c, _ = integrate.quad(lambda x: part(amp(x)) * np.cos(m * np.arctan(x)), 0, np.inf,
                                  weight="cos", wvar=abs(omega), limlst=200)
            s, _ = integrate.quad(lambda x: part(amp(x)) * np.sin(m * np.arctan(x)), 0, np.inf,
                                  weight="sin", wvar=abs(omega), limlst=200)
            val = c - np.sign(omega) * s
        parts.append(val)
    return 2 * (parts[0] + 1j * parts[1])


def classical_whittaker_matrix(d: int, y: float, u) -> np.ndarray:
    return np.diag([classical_whittaker(d, m, y, u) for m in range(-d, d + 1)])


# --------------------------------------------------------------------------
# gamma-factor matrices


@dataclass(frozen=True)
class GammaMatrix:
    """diag_m Gamma((1 - eps m + u)/2) / Gamma((1 - eps m - u)/2)."""

    d: int
    u: complex
    eps: int
    entries: tuple
    poles: tuple

    def entry(self, m: int) -> complex:
        if m in self.poles:
            raise PoleError((self.u, m), f"Gamma_W entry {m} has a pole at u={self.u}")
        return self.entries[m + self.d]

    def matrix(self) -> np.ndarray:
        if self.poles:
            raise PoleError((self.u, self.poles), f"Gamma_W has poles at rows {list(self.poles)}")
        return np.diag(self.entries)


def gamma_W(d: int, u, eps: int = 1) -> GammaMatrix:
    if eps not in (1, -1):
        raise ValueError("eps must be +-1")
    u = complex(u)
    entries, poles = [], []
    for m in range(-d, d + 1):
        top = (1 - eps * m + u) / 2
        if _near_pole(top):
            poles.append(m)
            entries.append(complex("nan"))
        else:
            entries.append(complex_gamma(top) * reciprocal_gamma((1 - eps * m - u) / 2))
    return GammaMatrix(d, u, eps, tuple(entries), tuple(poles))


def gamma_to_classical_quotient(d: int, u) -> np.ndarray:
    """Row-m quotient of the classical-Whittaker expression for Gamma_W(u,+1) by Gamma_W(u,+1)."""
    u = complex(u)
    lead = 1j * complex_gamma(1 + u) / (2 ** (1 + u) * pi)
    vpp = wigner_D_array(d, v_element(1, 1))
    vmp = wigner_D_array(d, v_element(-1, 1))
    rot = wigner_D_array(d, euler_rotation(-pi / 2, 0, 0))
    rhs = lead * (np.exp(1j * pi * u / 2) * vpp - np.exp(-1j * pi * u / 2) * vmp) @ rot @ classical_whittaker_matrix(d, 0, -u)
    return np.diag(rhs) / np.array(gamma_W(d, u).entries)


# --------------------------------------------------------------------------
# intertwining matrices


def _word_for(w: str) -> tuple[str, ...]:
    """A shortest word in w2, w3 for the Weyl element w."""
    frontier = {"I": ()}
    seen = dict(frontier)
    while w not in seen:
        nxt = {}
        for name, word in frontier.items():
            for g in ("w2", "w3"):
                prod = weyl_name(weyl_element(name) @ weyl_element(g))
                if prod not in seen and prod not in nxt:
                    nxt[prod] = word + (g,)
        seen.update(nxt)
        frontier = nxt
    return seen[w]


@lru_cache(maxsize=None)
def _outer_w3(d: int) -> tuple[np.ndarray, np.ndarray]:
    wl = weyl_element("wl")
    vmm = v_element(-1, -1)
    return wigner_D_array(d, vmm @ wl), wigner_D_array(d, wl @ vmm)


def _t_generator(d: int, g: str, mu) -> np.ndarray:
    m1, m2, m3 = mu
    if g == "w2":
        return pi ** (m1 - m2) * gamma_W(d, m2 - m1, 1).matrix()
    left, right = _outer_w3(d)
    return pi ** (m2 - m3) * left @ gamma_W(d, m3 - m2, 1).matrix() @ right


def t_matrix(d: int, w: str, mu, word: tuple[str, ...] | None = None) -> CenterIndexedMatrix:
    """T^d(w, mu), built from the w2 and w3 generators through T(ww', mu) = T(w, mu) T(w', mu^w).

    `word` selects the factorization (a tuple of 'w2'/'w3'); by default a shortest one.
    """
    mu = as_mu(mu).as_tuple()
    if word is None:
        word = _word_for(w)
    elif weyl_name(np.linalg.multi_dot([np.eye(3)] + [weyl_element(g) for g in word] + [np.eye(3)])) != w:
        raise ValueError(f"word {word} does not multiply to {w}")
    out = np.eye(2 * d + 1, dtype=complex)
    cur = mu
    for g in word:
        out = out @ _t_generator(d, g, cur)
        cur = weyl_action(cur, g)
    return CenterIndexedMatrix(out)


# --------------------------------------------------------------------------
# rows of F^d(u)


def _sqrt_binomial(top: int, d: int, m: int) -> float:
    return sqrt(factorial(top) / (factorial(d + m) * factorial(d - m)))


def f_matrix_row(d: int, which: str, m_row: int, u) -> complex:
    """F^d_{m',d}(u) ("last") or F^d_{m',d-1}(u) ("second_to_last"), continued in u."""
    if abs(m_row) > d:
        raise IndexError(f"index {m_row} outside [-{d}, {d}]")
    u = complex(u)
    rg = reciprocal_gamma
    if which == "last":
        pre = 2.0**-d * sqrt(pi) * _sqrt_binomial(2 * d, d, m_row)
        return pre * complex_gamma((d - m_row - u) / 2) * complex_gamma((d + m_row - u) / 2) * rg((d - u) / 2) * rg((d + 1 - u) / 2)
    if which == "second_to_last":
        if d < 1:
            raise ValueError("no second-to-last column when d = 0")
        if m_row == 0:
            return 0j
        pre = 2.0 ** (1 - d) * _sqrt_binomial(2 * d - 1, d, m_row) * (-m_row) * sqrt(pi)
        return (pre * complex_gamma((d - 1 - m_row - u) / 2) * complex_gamma((d - 1 + m_row - u) / 2)
                * complex_gamma((1 - u) / 2) * rg((d - u) / 2) * rg((d + 1 - u) / 2) * rg(-(u + 1) / 2))
    raise ValueError("which must be 'last' or 'second_to_last'")


def f_matrix_row_quadrature(d: int, which: str, m_row: int, u: float) -> float:
    """Integral of (1-x^2)^{-1-u/2} d^d_{m',m}(x) over [-1,1] (needs Re u small enough)."""
    col = d if which == "last" else d - 1
    val, _ = integrate.quad(lambda x: (1 - x * x) ** (-1 - u / 2) * wigner_small_d(d, m_row, col, x), -1, 1, limit=200)
    return val


# --------------------------------------------------------------------------
# rows of the w3 and w4 intertwining expressions


@dataclass(frozen=True)
class RowSpec:
    """Which of the four intertwined rows: bu^{d,sign}_{row} against Gamma(u1) (and Gamma(u2))."""

    d: int
    sign: int
    row: str  # "d" or "d-1"
    u1: complex
    u2: complex | None = None

    @property
    def delta(self) -> int:
        return 0 if self.sign == (-1) ** self.d else 1

    @property
    def eta(self) -> int:
        return 0 if self.sign == 1 else 1

    @property
    def indices(self) -> list[int]:
        start = self.delta if self.row == "d" else 1 - self.delta
        return list(range(start, self.d + 1, 2))

    @property
    def out_sign(self) -> int:
        if self.u2 is None:
            return self.sign
        eps = (-1) ** self.d
        return eps if self.row == "d" else -eps


def _row_coefficients(spec: RowSpec, shift1: complex = 0, shift2: complex = 0) -> dict[int, complex]:
    d, eta = spec.d, spec.eta
    u1 = spec.u1 + shift1
    u2 = None if spec.u2 is None else spec.u2 + shift2
    g, rg = complex_gamma, reciprocal_gamma
    out = {}
    if spec.row == "d":
        lead = 1j ** (d + eta) / 2 ** (d - 1) * g((1 + eta + u1) / 2) * rg((eta - u1) / 2)
    else:
        lead = (1j ** (d + 1 + eta) / 2 ** (d - 2) * g((1 + eta + u1) / 2) * g((1 - u1) / 2)
                * rg((eta - u1) / 2) * rg(-(u1 + 1) / 2))
    for m in spec.indices:
        c = 0.5 if m == 0 else 1.0
        if spec.row == "d":
            body = _sqrt_binomial(2 * d, d, m) * g((d - m - u1) / 2) * g((d + m - u1) / 2)
        else:
            body = m * _sqrt_binomial(2 * d - 1, d, m) * g((d - 1 - m - u1) / 2) * g((d - 1 + m - u1) / 2)
        body *= rg((d - u1) / 2) * rg((d + 1 - u1) / 2)
        if u2 is not None:
            body *= g((1 - m + u2) / 2) * rg((1 - m - u2) / 2)
        out[m] = lead * c * 1j ** (-m) * body
    return out


def _coefficient_ratio(spec: RowSpec, m: int, u1: complex, u2: complex | None) -> complex:
    """coef(m+2)/coef(m) from the rational ratio formulas."""
    d = spec.d
    base = -sqrt((d - m) * (d - 1 - m) / ((d + 2 + m) * (d + 1 + m)))
    if spec.row == "d":
        r = base * (d - u1 + m) / (d - 2 - u1 - m)
    else:
        r = base * (m + 2) * (d - 1 - u1 + m) / (m * (d - 3 - u1 - m))
    if u2 is not None:
        r *= (-1 - m - u2) / (-1 - m + u2)
    return 2 * r if m == 0 else r


def _as_vector(spec: RowSpec, coefs: dict[int, complex]) -> CenterIndexedVector:
    out = np.zeros(2 * spec.d + 1, dtype=complex)
    for m, c in coefs.items():
        out += c * np.asarray(basis_u(spec.d, m, spec.out_sign))
    return CenterIndexedVector(out)


_SHIFT_DIRECTION = (1.0, 0.6180339887498949)


def _richardson(values: list[np.ndarray]) -> np.ndarray:
    """Extrapolate f(h), f(h/2), f(h/4) to h -> 0 assuming a power series in h."""
    f0, f1, f2 = values
    g1 = 2 * f1 - f0
    g2 = 2 * f2 - f1
    return (4 * g2 - g1) / 3


def _shifted_limit(fn, h: float = 1e-5) -> np.ndarray:
    vals = [np.asarray(fn(h / 2**k)) for k in range(3)]
    growth = np.max(np.abs(vals[2])) / max(np.max(np.abs(vals[0])), 1e-300)
    if growth > 3.0:
        raise SingularityError("expression blows up under parameter shifts")
    return _richardson(vals)


def _coefficients_anywhere(spec: RowSpec, h: float = 1e-5) -> dict[int, complex]:
    try:
        return _row_coefficients(spec)
    except PoleError:
        pass
    a1, a2 = _SHIFT_DIRECTION
    keys = spec.indices

    def at(t):
        c = _row_coefficients(spec, a1 * t, a2 * t if spec.u2 is not None else 0)
        return np.array([c[m] for m in keys])

    vals = _shifted_limit(at, h)
    return dict(zip(keys, vals))


def intertwined_row(d: int, sign: int, row: str, u, method: str = "direct") -> CenterIndexedVector:
    """bu^{d,sign}_{row} D(v_{--} w_l) Gamma_W(u1) D(w_l v_{--}) [Gamma_W(u2)] via the closed sums.

    `u` is a number (w3 rows) or a pair (u1, u2) (w4 rows); row is "d" or "d-1".
    method="direct" sums the gamma-product coefficients, passing to the limit
    under small parameter shifts at removable singularities; method="ratios"
    starts from the first nonvanishing coefficient and multiplies by the
    rational ratios of successive coefficients.
    """
    if sign not in (1, -1) or row not in ("d", "d-1"):
        raise ValueError("sign must be +-1 and row 'd' or 'd-1'")
    if d < 1 or (row == "d-1" and d < 2):
        raise ValueError("d too small for this row")
    u1, u2 = (complex(u[0]), complex(u[1])) if isinstance(u, (tuple, list)) else (complex(u), None)
    spec = RowSpec(d, sign, row, u1, u2)
    coefs = _coefficients_anywhere(spec)
    if method == "direct":
        return _as_vector(spec, coefs)
    if method != "ratios":
        raise ValueError(f"unknown method {method!r}")
    keys = spec.indices
    scale = max(abs(c) for c in coefs.values())
    nonzero = [m for m in keys if abs(coefs[m]) > 1e-8 * scale]
    if not nonzero:
        return _as_vector(spec, coefs)
    anchor = nonzero[0]
    out = {m: 0j for m in keys}
    out[anchor] = coefs[anchor]
    a1, a2 = _SHIFT_DIRECTION
    for m in keys:
        if m < anchor or m + 2 > d:
            continue

        def ratio(t, m=m):
            return _coefficient_ratio(spec, m, u1 + a1 * t, None if u2 is None else u2 + a2 * t)

        try:
            r = _coefficient_ratio(spec, m, u1, u2)
        except ZeroDivisionError:
            r = complex(_shifted_limit(ratio, 1e-5))
        out[m + 2] = out[m] * r
    return _as_vector(spec, out)


def intertwined_row_by_matrices(d: int, sign: int, row: str, u) -> CenterIndexedVector:
    """The same row computed by multiplying the D and Gamma_W matrices directly."""
    left, right = _outer_w3(d)
    j = d if row == "d" else d - 1
    u1, u2 = (u if isinstance(u, (tuple, list)) else (u, None))
    out = np.asarray(basis_u(d, j, sign)) @ left @ gamma_W(d, u1).matrix() @ right
    if u2 is not None:
        out = out @ gamma_W(d, u2).matrix()
    return CenterIndexedVector(out)


def case3_anchor_constant(d: int) -> float:
    """Coefficient of bu^{d,+}_kappa in bu^{d,+}_{d-1} T^d(w4, mu^{w5}) at mu = ((d-1)/2, 0, -(d-1)/2)."""
    if d % 4 != 3:
        raise ValueError("needs d = 3 mod 4")
    kappa = (d + 1) // 2
    return (pi ** (-1.5 * (d - 1)) * 2.0 ** (3 - 2 * d) * factorial(d)
            * sqrt(factorial(2 * d - 1) * factorial(kappa - 1) / factorial(3 * kappa - 1)))


# --------------------------------------------------------------------------
# g-vectors against intertwined rows


@dataclass
class ProportionalityReport:
    case: int
    d: int
    mu: tuple
    pairs: list = field(default_factory=list)  # (label, ratio, residual)

    @property
    def worst(self) -> float:
        return max((r for _, _, r in self.pairs), default=0.0)

    @property
    def ok(self) -> bool:
        return self.worst < 1e-8


def proportionality(a, b) -> tuple[complex, float]:
    """Best c with a = c b and the relative residual |a - c b| / |a|."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    nb = np.vdot(b, b).real
    if nb == 0:
        return 0j, (0.0 if np.linalg.norm(a) == 0 else 1.0)
    c = np.vdot(b, a) / nb
    return c, float(np.linalg.norm(a - c * b) / max(np.linalg.norm(a), 1e-300))


def _w3_row(d: int, sign: int, row: str, mu) -> np.ndarray:
    nu = weyl_action(mu, "w3")  # T^d(w3, mu^{w3})
    return pi ** (nu[1] - nu[2]) * np.asarray(intertwined_row(d, sign, row, nu[2] - nu[1]))


def _w4_row(d: int, sign: int, row: str, mu) -> np.ndarray:
    # T(w4, mu^{w5}) = T(w3, mu^{w5}) T(w2, (mu^{w5})^{w3})
    nu = weyl_action(mu, "w5")
    nu2 = weyl_action(nu, "w3")
    scale = pi ** (nu[1] - nu[2]) * pi ** (nu2[0] - nu2[1])
    return scale * np.asarray(intertwined_row(d, sign, row, (nu[2] - nu[1], nu2[1] - nu2[0])))


def verify_gdwhittfes(case: int, d: int, t: float = 0.0) -> ProportionalityReport:
    """Check that each g-vector is a multiple of the matching row of an intertwining matrix."""
    from .minimal_classifier import g_vectors

    eps = (-1) ** d
    if case == 1:
        if d < 2 or (d % 2 == 1 and t == 0):
            raise ValueError("case 1 needs d >= 2 and (d even or t != 0)")
        mu = ((d - 1) / 2 + 1j * t, -2j * t, -(d - 1) / 2 + 1j * t)
        pairs = [("g2^{d,0,eps}", g_vectors("g2", d, 0, eps, mu), _w3_row(d, eps, "d", mu)),
                 ("g2^{d,1,-eps}", g_vectors("g2", d, 1, -eps, mu), _w3_row(d, -eps, "d", mu))]
    elif case in (2, 3):
        if d % 4 != (1 if case == 2 else 3):
            raise ValueError(f"case {case} needs d = {1 if case == 2 else 3} mod 4")
        mu = ((d - 1) / 2, 0.0, -(d - 1) / 2)
        if case == 2:
            pairs = [("g2^{d,0,-}", g_vectors("g2", d, 0, -1, mu), _w3_row(d, -1, "d", mu)),
                     ("g4^{d,+}", g_vectors("g4", d, 0, 1, mu), _w3_row(d, 1, "d", mu)),
                     ("g4^{d,-}", g_vectors("g4", d, 0, -1, mu), _w4_row(d, 1, "d", mu))]
        else:
            pairs = [("g2^{d,1,+}", g_vectors("g2", d, 1, 1, mu), _w3_row(d, 1, "d", mu)),
                     ("g4^{d,-}", g_vectors("g4", d, 0, -1, mu), _w3_row(d, -1, "d", mu)),
                     ("g4^{d,+}", g_vectors("g4", d, 0, 1, mu), _w4_row(d, 1, "d-1", mu))]
    elif case == 4:
        mu = (d - 1.0, 0.0, 1.0 - d)
        pairs = [("g3^{d,1,eps}", g_vectors("g3", d, 1, eps, mu), _w3_row(d, eps, "d-1", mu)),
                 ("g3^{d,0,eps}", g_vectors("g3", d, 0, eps, mu), _w3_row(d, eps, "d", mu))]
    else:
        raise ValueError("case must be 1..4")
    rep = ProportionalityReport(case, d, mu)
    for label, g, row in pairs:
        c, r = proportionality(np.asarray(g), row)
        rep.pairs.append((label, c, r))
    return rep
