"""Lie-algebra differential operators on functions of g = x y k.

Two independent routes are provided.  The flow route differentiates
f(g exp(t1 X1) ... exp(tn Xn)) with multi-parameter jets, re-running the
Iwasawa decomposition on jet-valued matrices.  The coordinate route applies
the first-order operators Z_j, K_j and the left-acting K-operators in the
eight coordinates (x1, x2, x3, y1, y2, alpha, beta, gamma) to a degree-3
Taylor jet of f.  Casimir operators are assembled along both routes.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable

import numpy as np

from .jets import Jet, jet_space, value_of, xpow, xsqrt, xstack, xsum, xexp
from .spectral import as_mu, lambda1, lambda2
from .wigner import euler_rotation, wigner_D_array

SQ2, SQ6 = sqrt(2.0), sqrt(6.0)

# --------------------------------------------------------------------------
# Lie algebra bases


def elementary(i: int, j: int) -> np.ndarray:
    """E_{i,j} with 1-based indices."""
    e = np.zeros((3, 3), dtype=complex)
    e[i - 1, j - 1] = 1.0
    return e


K_MATS = {
    1: np.array([[0, 0, -1], [0, 0, -1j], [1, 1j, 0]], dtype=complex),
    -1: np.array([[0, 0, 1], [0, 0, -1j], [-1, 1j, 0]], dtype=complex),
    0: SQ2 * np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex),
}

X_MATS = {
    2: np.array([[1, 1j, 0], [1j, -1, 0], [0, 0, 0]], dtype=complex),
    -2: np.array([[1, -1j, 0], [-1j, -1, 0], [0, 0, 0]], dtype=complex),
    1: -np.array([[0, 0, 1], [0, 0, 1j], [1, 1j, 0]], dtype=complex),
    -1: -np.array([[0, 0, -1], [0, 0, 1j], [-1, 1j, 0]], dtype=complex),
    0: -SQ6 / 3 * np.diag([1, 1, -2]).astype(complex),
}

N1, N2, N3 = elementary(2, 3), elementary(1, 2), elementary(1, 3)
A1 = (elementary(1, 1) + elementary(2, 2) - 2 * elementary(3, 3)) / 3
A2 = (2 * elementary(1, 1) - elementary(2, 2) - elementary(3, 3)) / 3


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def modulo_identity(a: np.ndarray) -> np.ndarray:
    """Remove the scalar part (the identity acts as zero on PSL(3))."""
    return a - np.trace(a) / 3 * np.eye(3)


def iwasawa_conversion(j: int) -> np.ndarray:
    """X_j written through N1, N2, N3, A1, A2 and K_j (as a matrix)."""
    if abs(j) == 2:
        s = 1 if j > 0 else -1
        return s * 2j * N2 - A1 + 2 * A2 - s * 1j * SQ2 / 2 * K_MATS[0]
    if abs(j) == 1:
        s = 1 if j > 0 else -1
        return -2j * N1 - s * 2 * N3 - K_MATS[j]
    return -SQ6 * A1


def eij_expansion(i: int, j: int) -> np.ndarray:
    """4 E_{i,j} = sum_k conj([X_k]_ij) X_k + sum_k conj([K_k]_ij) K_k, mod identity.

    The K coefficients pair K_k with its own entry; pairing with K_{-k}
    flips the sign of the E_{1,3} and E_{3,1} rotation parts.
    """
    out = np.zeros((3, 3), dtype=complex)
    for basis in (X_MATS, K_MATS):
        for mat in basis.values():
            out += np.conj(mat[i - 1, j - 1]) * mat
    return out


# --------------------------------------------------------------------------
# Iwasawa coordinates


@dataclass(frozen=True)
class IwasawaPoint:
    """Coordinates of g = x y k, x unipotent, y = diag(y1 y2, y1, 1), k = k(alpha, beta, gamma)."""

    x1: float
    x2: float
    x3: float
    y1: float
    y2: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not (self.y1 > 0 and self.y2 > 0):
            raise ValueError("y coordinates must be positive")

    def x_matrix(self) -> np.ndarray:
        return np.array([[1, self.x2, self.x3], [0, 1, self.x1], [0, 0, 1.0]])

    def y_matrix(self) -> np.ndarray:
        return np.diag([self.y1 * self.y2, self.y1, 1.0])

    def k_matrix(self) -> np.ndarray:
        return euler_rotation(self.alpha, self.beta, self.gamma)

    def matrix(self) -> np.ndarray:
        return self.x_matrix() @ self.y_matrix() @ self.k_matrix()

    @staticmethod
    def random(rng: np.random.Generator) -> "IwasawaPoint":
        x = rng.uniform(-1, 1, 3)
        y = rng.uniform(0.5, 2.0, 2)
        a, g = rng.uniform(-np.pi, np.pi, 2)
        b = rng.uniform(0.3, np.pi - 0.3)
        return IwasawaPoint(*x, *y, a, b, g)


@dataclass
class IwasawaCoords:
    """x, y coordinates and the rotation matrix k; entries may be floats, arrays or jets."""

    x1: object
    x2: object
    x3: object
    y1: object
    y2: object
    k: object

    def matrix(self):
        """Reassemble g = x y k (numeric only)."""
        x = np.array([[1, self.x2, self.x3], [0, 1, self.x1], [0, 0, 1.0]])
        y = np.diag([self.y1 * self.y2, self.y1, 1.0])
        return x @ y @ np.asarray(self.k)


def _col(a):
    return a.expand(-1) if isinstance(a, Jet) else np.asarray(a)[..., None]


def iwasawa_decompose(g) -> IwasawaCoords:
    """Split g (shape (..., 3, 3), real, complex or jet) as r x y k.

    Gram-Schmidt on the rows from the bottom up.  Dot products are bilinear,
    so complex input gives the analytic continuation of the real formulas.
    """
    if not isinstance(g, Jet):
        g = np.asarray(g)
        if g.shape[-2:] != (3, 3):
            raise ValueError("expected 3x3 matrices")
        det = np.linalg.det(g)
    else:
        det = np.linalg.det(g.value)
    if np.any(np.abs(det) == 0):
        raise np.linalg.LinAlgError("singular matrix has no Iwasawa decomposition")
    r1, r2, r3 = g[..., 0, :], g[..., 1, :], g[..., 2, :]
    n3 = xsqrt(xsum(r3 * r3, -1))
    k3 = r3 / _col(n3)
    c23 = xsum(r2 * k3, -1)
    u2 = r2 - _col(c23) * k3
    n2 = xsqrt(xsum(u2 * u2, -1))
    k2 = u2 / _col(n2)
    c12 = xsum(r1 * k2, -1)
    c13 = xsum(r1 * k3, -1)
    u1 = r1 - _col(c12) * k2 - _col(c13) * k3
    n1 = xsqrt(xsum(u1 * u1, -1))
    k1 = u1 / _col(n1)
    k = xstack([k1, k2, k3], -2)
    k = k * np.sign(np.real(det))[..., None, None]
    return IwasawaCoords(x1=c23 / n3, x2=c12 / n2, x3=c13 / n3, y1=n2 / n3, y2=n1 / n2, k=k)


# --------------------------------------------------------------------------
# functions on G


def power_function(mu, p) -> complex:
    """p_{rho+mu}(x y k) = y1^(1-mu3) y2^(1+mu1)."""
    m = as_mu(mu)
    y1, y2 = p.y1, p.y2
    if not isinstance(y1, Jet) and np.any(np.real(np.asarray(y1)) <= 0):
        raise ValueError("y1 must be positive")
    if not isinstance(y2, Jet) and np.any(np.real(np.asarray(y2)) <= 0):
        raise ValueError("y2 must be positive")
    return xpow(y1, 1 - m.mu3) * xpow(y2, 1 + m.mu1)


def character(n: tuple[float, float], p):
    """psi_n(x) = e(n1 x1 + n2 x2)."""
    return xexp((n[0] * p.x1 + n[1] * p.x2) * 2j * np.pi)


@dataclass(frozen=True)
class TestFunction:
    """f(x y k) = p_{rho+mu}(y) psi_n(x) D^d(k), returned as a (2d+1)x(2d+1) batch."""

    __test__ = False  # not a pytest class

    mu: tuple
    d: int
    n: tuple[float, float] = (0.0, 0.0)

    def __call__(self, p: IwasawaCoords):
        return wigner_D_array(self.d, p.k) * _scalar_factor(self, p)

    def entry(self, mp: int, m: int) -> Callable:
        d = self.d

        def f(p):
            return self(p)[..., mp + d, m + d]

        return f


def _scalar_factor(tf: TestFunction, p):
    s = power_function(tf.mu, p)
    if tf.n != (0.0, 0.0):
        s = s * character(tf.n, p)
    return s.expand(-1).expand(-1) if isinstance(s, Jet) else np.asarray(s)[..., None, None]


# --------------------------------------------------------------------------
# flow route


def _expm_jet(t: Jet, x: np.ndarray) -> Jet:
    out = Jet.constant(t.space, np.eye(3))
    power = np.eye(3, dtype=complex)
    tp = Jet.constant(t.space, 1.0)
    fact = 1.0
    for p in range(1, t.order + 1):
        power = power @ x
        tp = tp * t
        fact *= p
        out = out + tp * (power / fact)
    return out


def lie_derivative(f: Callable, g: np.ndarray, directions: list[np.ndarray]):
    """d/dt1 ... d/dtn f(g exp(t1 X1) ... exp(tn Xn)) at t = 0."""
    n = len(directions)
    if n == 0:
        return f(iwasawa_decompose(np.asarray(g, dtype=complex)))
    space = jet_space(n, n)
    mat = Jet.constant(space, np.asarray(g, dtype=complex))
    for i, x in enumerate(directions):
        t = Jet.variable(space, i, 0.0)
        mat = mat @ _expm_jet(t, np.asarray(x, dtype=complex))
    val = f(iwasawa_decompose(mat))
    return val.partial((1,) * n)


def casimir_by_definition(which: int, f: Callable, g: np.ndarray):
    """Delta_1 = -1/2 sum E_ij E_ji; Delta_2 = 1/3 sum E_ij E_jk E_ki + Delta_1 (flow route)."""
    idx = (1, 2, 3)
    d1 = 0
    for i in idx:
        for j in idx:
            d1 = d1 + lie_derivative(f, g, [elementary(i, j), elementary(j, i)])
    d1 = -0.5 * d1
    if which == 1:
        return d1
    d3 = 0
    for i in idx:
        for j in idx:
            for k in idx:
                d3 = d3 + lie_derivative(f, g, [elementary(i, j), elementary(j, k), elementary(k, i)])
    return d3 / 3 + d1


# --------------------------------------------------------------------------
# coordinate route

X1, X2, X3, Y1, Y2, ALPHA, BETA, GAMMA = range(8)


class CoordinateCalculus:
    """Degree-3 jets of f in the eight Iwasawa coordinates and the printed operators."""

    def __init__(self, point: IwasawaPoint, order: int = 3):
        self.point = point
        sp = jet_space(8, order)
        vals = [point.x1, point.x2, point.x3, point.y1, point.y2, point.alpha, point.beta, point.gamma]
        self.vars = [Jet.variable(sp, i, v) for i, v in enumerate(vals)]
        x1, x2, x3, y1, y2, a, b, c = self.vars
        self.coords = IwasawaCoords(x1, x2, x3, y1, y2, euler_rotation(a, b, c))
        self._cache: dict = {}
        e = {
            "eia": (a * 1j).exp(),
            "emia": (a * -1j).exp(),
            "eic": (c * 1j).exp(),
            "emic": (c * -1j).exp(),
            "cot": b.cos() / b.sin(),
            "csc": b.sin().reciprocal(),
            "y1y2": y1 * y2,
        }
        self.aux = e

    def jet(self, f: Callable) -> Jet:
        return f(self.coords)

    def _c(self, name_or_jet, order: int):
        j = self.aux[name_or_jet] if isinstance(name_or_jet, str) else name_or_jet
        return j.truncate(order) if isinstance(j, Jet) else j

    def _v(self, i: int, order: int) -> Jet:
        return self.vars[i].truncate(order)

    # first-order operators -------------------------------------------------
    def Z(self, j: int, F: Jet) -> Jet:
        o = F.order - 1
        y1, y2, x2 = self._v(Y1, o), self._v(Y2, o), self._v(X2, o)
        if abs(j) == 2:
            s = 1 if j > 0 else -1
            return y2 * F.deriv(Y2) * 2 - y1 * F.deriv(Y1) + y2 * F.deriv(X2) * (2j * s)
        if abs(j) == 1:
            s = 1 if j > 0 else -1
            return y1 * (F.deriv(X1) + x2 * F.deriv(X3)) * (-2j) - self._c("y1y2", o) * F.deriv(X3) * (2 * s)
        return y1 * F.deriv(Y1) * (-SQ6)

    def K_left(self, j: int, F: Jet) -> Jet:
        """Operators differentiating f(exp(t K_j) k)."""
        o = F.order - 1
        if j == 0:
            return F.deriv(ALPHA) * (-SQ2)
        s = 1 if j > 0 else -1
        pref = self._c("eia" if s > 0 else "emia", o)
        inner = self._c("csc", o) * F.deriv(GAMMA) * 1j - self._c("cot", o) * F.deriv(ALPHA) * 1j - F.deriv(BETA) * s
        return pref * inner

    def K_right(self, j: int, F: Jet) -> Jet:
        """Operators differentiating f(k exp(t K_j))."""
        o = F.order - 1
        if j == 0:
            return F.deriv(GAMMA) * (-SQ2)
        s = 1 if j > 0 else -1
        pref = self._c("emic" if s > 0 else "eic", o)
        inner = self._c("cot", o) * F.deriv(GAMMA) * 1j - F.deriv(BETA) * s - self._c("csc", o) * F.deriv(ALPHA) * 1j
        return pref * inner

    def Z_tilde(self, j: int, F: Jet) -> Jet:
        if abs(j) == 2:
            s = 1 if j > 0 else -1
            return self.Z(j, F) - self.K_left(0, F) * (s * 1j * SQ2 / 2)
        if abs(j) == 1:
            return self.Z(j, F) - self.K_left(j, F)
        return self.Z(0, F)

    def iwasawa_basis(self, name: str, F: Jet) -> Jet:
        """N1, N2, N3, A1, A2 as operators on functions of x y."""
        o = F.order - 1
        y1, y2, x2 = self._v(Y1, o), self._v(Y2, o), self._v(X2, o)
        if name == "N1":
            return y1 * F.deriv(X1) + y1 * x2 * F.deriv(X3)
        if name == "N2":
            return y2 * F.deriv(X2)
        if name == "N3":
            return self._c("y1y2", o) * F.deriv(X3)
        if name == "A1":
            return y1 * F.deriv(Y1)
        if name == "A2":
            return y2 * F.deriv(Y2)
        raise ValueError(name)

    def X(self, j: int, F: Jet) -> Jet:
        """X_j = sum_l D^2_{l,j}(k) Z~_l."""
        d2 = wigner_D_array(2, self.coords.k.truncate(F.order - 1))
        out = 0
        for l in range(-2, 3):
            out = out + d2[l + 2, j + 2] * self.Z_tilde(l, F)
        return out

    # spherical parts -------------------------------------------------------
    def delta1_spherical(self, F: Jet) -> Jet:
        o = F.order - 2
        x2, y1, y2 = self._v(X2, o), self._v(Y1, o), self._v(Y2, o)
        d = lambda a, b: F.deriv(a).deriv(b)  # noqa: E731
        return (
            -y1 * y1 * d(Y1, Y1)
            - y2 * y2 * d(Y2, Y2)
            + y1 * y2 * d(Y1, Y2)
            - y1 * y1 * (x2 * x2 + y2 * y2) * d(X3, X3)
            - y1 * y1 * d(X1, X1)
            - y2 * y2 * d(X2, X2)
            - y1 * y1 * x2 * d(X1, X3) * 2
        )

    def delta2_spherical(self, F: Jet) -> Jet:
        o = F.order - 2
        x2, y1, y2 = self._v(X2, o), self._v(Y1, o), self._v(Y2, o)
        d2 = lambda a, b: F.deriv(a).deriv(b)  # noqa: E731
        d3 = lambda a, b, c: F.deriv(a).deriv(b).deriv(c)  # noqa: E731
        t = lambda j: j.truncate(o - 1)  # noqa: E731
        x2l, y1l, y2l = t(x2), t(y1), t(y2)
        third = (
            -y1l * y1l * y2l * d3(Y1, Y1, Y2)
            + y1l * y2l * y2l * d3(Y1, Y2, Y2)
            - y1l**3 * y2l * d3(X3, X3, Y1)
            + y1l * y2l * y2l * d3(X2, X2, Y1)
            - y1l * y1l * y2l * x2l * d3(X1, X3, Y2) * 2
            + (y2l * y2l - x2l * x2l) * y1l * y1l * y2l * d3(X3, X3, Y2)
            - y1l * y1l * y2l * d3(X1, X1, Y2)
            + y1l * y1l * y2l * y2l * d3(X1, X2, X3) * 2
            + y1l * y1l * y2l * y2l * x2l * d3(X2, X3, X3) * 2
        )
        second = (
            y1 * y1 * d2(Y1, Y1)
            - y2 * y2 * d2(Y2, Y2)
            + y1 * y1 * x2 * d2(X1, X3) * 2
            + (x2 * x2 + y2 * y2) * y1 * y1 * d2(X3, X3)
            + y1 * y1 * d2(X1, X1)
            - y2 * y2 * d2(X2, X2)
        )
        return third + second

    # Casimir operators -----------------------------------------------------
    def casimir(self, which: int, F: Jet) -> Jet:
        Z, KL, KR = self.Z, self.K_left, self.K_right
        if which == 1:
            out = (
                self.delta1_spherical(F) * 8
                - KL(1, Z(-1, F)) * 2
                - KL(0, Z(2, F) - Z(-2, F)) * (SQ2 * 1j)
                - KL(-1, Z(1, F)) * 2
            )
            return out / 8
        if which != 2:
            raise ValueError("which must be 1 or 2")
        one = lambda G: G.truncate(G.order - 1)  # noqa: E731

        def T(j, G):
            if j == 1:
                return Z(-1, Z(0, G)) * SQ6 + (one(Z(1, G)) - Z(-2, Z(1, G))) * 6
            if j == -1:
                return Z(1, Z(0, G)) * SQ6 + (one(Z(-1, G)) - Z(2, Z(-1, G))) * 6
            zdiff = Z(-2, G) - Z(2, G)
            return (Z(1, Z(1, G)) - Z(-1, Z(-1, G))) * 3 + (Z(0, zdiff) * SQ6 + one(zdiff) * 6) * 2

        out = (
            self.delta2_spherical(F) * 96
            + KL(1, T(1, F)) * 2
            + KL(0, T(0, F)) * (SQ2 * 1j)
            + KL(-1, T(-1, F)) * 2
            + (KL(1, KR(0, Z(-1, F) - Z(1, F))) + KL(-1, KR(0, Z(-1, F) - Z(1, F)))) * (6 * SQ2 * 1j)
        )
        return out / 96


# --------------------------------------------------------------------------
# public operations


def coordinate_operator(name: str, f: Callable, p: IwasawaPoint, finite_difference: bool = False,
                        step: float = 1e-5):
    """Apply one of Z_j, K_j, Kleft_j, Ztilde_j (names like 'Z2', 'Zm1', 'K1', 'Kleft0') at p.

    With finite_difference=True the coefficients of the operator are still read
    off from the coordinate formula, but the derivatives of f are central
    differences instead of jets.
    """
    calc = CoordinateCalculus(p, order=1)
    kind, j = _parse_operator_name(name)
    op = {"Z": calc.Z, "K": calc.K_right, "Kleft": calc.K_left, "Ztilde": calc.Z_tilde}[kind]
    if not finite_difference:
        return value_of(op(j, calc.jet(f)))
    coeffs = [value_of(op(j, v)) for v in calc.vars]
    base = np.array([p.x1, p.x2, p.x3, p.y1, p.y2, p.alpha, p.beta, p.gamma], dtype=float)
    out = 0
    for v, c in enumerate(coeffs):
        if c == 0:
            continue
        hi, lo = base.copy(), base.copy()
        hi[v] += step
        lo[v] -= step
        fh = f(_coords_at(hi))
        fl = f(_coords_at(lo))
        out = out + c * (fh - fl) / (2 * step)
    return out


def _coords_at(vals: np.ndarray) -> IwasawaCoords:
    return IwasawaCoords(*vals[:5], euler_rotation(*vals[5:]))


def _parse_operator_name(name: str) -> tuple[str, int]:
    for kind in ("Kleft", "Ztilde", "Z", "K"):
        if name.startswith(kind):
            rest = name[len(kind):]
            sign = -1 if rest.startswith("m") else 1
            rest = rest.lstrip("mp+-")
            if rest.isdigit():
                return kind, sign * int(rest)
    raise ValueError(f"unknown operator {name!r}")


def x_operator(j: int, f: Callable, p: IwasawaPoint, path: str = "coordinates"):
    """(X_j f)(p) either from the coordinate formula or from the flow definition."""
    if path == "flow":
        return lie_derivative(f, p.matrix(), [X_MATS[j]])
    calc = CoordinateCalculus(p, order=1)
    F = calc.jet(f)
    d2 = wigner_D_array(2, p.k_matrix())
    out = 0
    for l in range(-2, 3):
        out = out + d2[l + 2, j + 2] * value_of(calc.Z_tilde(l, F))
    return out


def casimir(which: int, f: Callable, p: IwasawaPoint):
    """Delta_1 or Delta_2 at p from the printed coordinate expressions."""
    calc = CoordinateCalculus(p, order=3 if which == 2 else 2)
    return value_of(calc.casimir(which, calc.jet(f)))


def casimir_definition_check(which: int, f: Callable, p: IwasawaPoint) -> float:
    """Max deviation between the coordinate form and the E_{i,j} definition."""
    a = casimir(which, f, p)
    b = casimir_by_definition(which, f, p.matrix())
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def lambda_x_eigenvalue(mu, x: float) -> complex:
    """27 lambda2^2 + 4 (lambda1 + x^2 - 1)(lambda1 + 4x^2 - 1)^2."""
    l1, l2 = lambda1(mu), lambda2(mu)
    return 27 * l2**2 + 4 * (l1 + x * x - 1) * (l1 + 4 * x * x - 1) ** 2


def lambda_x_factored_unitary(t1: float, t2: float, x: float) -> float:
    return ((t1 - t2) ** 2 + 4 * x * x) * ((2 * t1 + t2) ** 2 + 4 * x * x) * ((t1 + 2 * t2) ** 2 + 4 * x * x)


def lambda_x_factored_shifted(a: float, t: float, x: float) -> float:
    return 4 * (x - a) * (x + a) * (9 * t * t + (2 * x - a) ** 2) * (9 * t * t + (2 * x + a) ** 2)
