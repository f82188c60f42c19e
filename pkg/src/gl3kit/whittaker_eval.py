"""Minimal-weight Whittaker functions: Mellin-Barnes kernels, quadrature, and independent oracles.

W^{d*}(y, mu) = (1/4pi^2) int (pi y1)^{1-s1} (pi y2)^{1-s2} G^d(s, mu) ds/(2 pi i)^2 is
evaluated on vertical lines with composite Gauss-Legendre rules.  Differential
operators in y become shift operators on the kernel: theta_j = y_j d/dy_j acts
as multiplication by 1 - s_j and multiplication by pi y_j shifts s_j by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial, pi, sqrt
from typing import Callable

import numpy as np
from scipy import integrate, special
from scipy.interpolate import CubicSpline

from .gamma_functional import PoleError, classical_whittaker, complex_gamma
from .indexed import CenterIndexedMatrix, CenterIndexedVector
from .lie_operators import iwasawa_decompose, power_function
from .spectral import as_mu, lambda1, lambda2
from .wigner import weyl_action, weyl_element, wigner_D_array, wigner_small_d

PANEL_WIDTH = 2.0
NODES_PER_PANEL = 20


# --------------------------------------------------------------------------
# Lambda factors and kernels


def lambda_alpha(alpha: tuple[int, int, int], mu) -> complex:
    """pi^{-3/2 + mu3 - mu1} prod Gamma((1 + alpha_k + mu_i - mu_j)/2) over (12), (13), (23)."""
    m1, m2, m3 = as_mu(mu).as_tuple()
    a1, a2, a3 = alpha
    return (pi ** (-1.5 + m3 - m1) * complex_gamma((1 + a1 + m1 - m2) / 2)
            * complex_gamma((1 + a2 + m1 - m3) / 2) * complex_gamma((1 + a3 + m2 - m3) / 2))


def lambda_star(d: int, mu) -> complex:
    """(-1)^d pi^{-3/2 + mu3 - mu1} Gamma(d) Gamma((1 + mu1 - mu3)/2) Gamma((2 + mu1 - mu3)/2)."""
    if d < 2:
        raise ValueError("lambda_star is defined for d >= 2")
    m1, _, m3 = as_mu(mu).as_tuple()
    return ((-1) ** d * pi ** (-1.5 + m3 - m1) * factorial(d - 1)
            * complex_gamma((1 + m1 - m3) / 2) * complex_gamma((2 + m1 - m3) / 2))


def _lg(z):
    return special.loggamma(np.asarray(z, dtype=complex))


def _check_poles(z) -> None:
    z = np.asarray(z, dtype=complex)
    near = (np.abs(z.imag) < 1e-12) & (z.real < 0.5) & (np.abs(z.real - np.round(z.real)) < 1e-12)
    if np.any(near):
        raise PoleError(complex(z[near].flat[0]))


def g_kernel(d: int, beta, eta, s, mu) -> complex | np.ndarray:
    """prod_i Gamma((beta_i + s1 - mu_i)/2) Gamma((eta_i + s2 + mu_i)/2) / Gamma((s1 + s2 + sum(beta+eta) - 2d)/2)."""
    m = as_mu(mu).as_tuple()
    s1 = np.asarray(s[0], dtype=complex)
    s2 = np.asarray(s[1], dtype=complex)
    log = 0
    for i in range(3):
        top1 = (beta[i] + s1 - m[i]) / 2
        top2 = (eta[i] + s2 + m[i]) / 2
        _check_poles(top1)
        _check_poles(top2)
        log = log + _lg(top1) + _lg(top2)
    bottom = (s1 + s2 + sum(beta) + sum(eta) - 2 * d) / 2
    out = np.exp(log) * special.rgamma(bottom)
    return complex(out) if out.ndim == 0 else out


def _tilde_indices(d: int, ell: tuple[int, int]) -> tuple[tuple, tuple]:
    l1, l2 = ell
    if d == 0:
        return (0, 0, 0), (0, 0, 0)
    if d == 1:
        return (l1, l1, 1 - l1), (l2, l2, 1 - l2)
    return (d, 0, l1), (0, d, l2)


def g_tilde(d: int, ell: tuple[int, int], s, mu):
    """The specialized kernel at weight d (d = 0, d = 1 and d >= 2 use different index maps)."""
    beta, eta = _tilde_indices(d, ell)
    return g_kernel(d, beta, eta, s, mu)


def _binomial_terms(d: int, m_prime: int) -> list[tuple[float, tuple[int, int]]]:
    """[(weight, ell)] with G^d_{m'} = sum weight * G~^d(ell)."""
    if abs(m_prime) > d:
        raise IndexError(f"index {m_prime} outside [-{d}, {d}]")
    eps = -1 if m_prime < 0 else 1
    m = abs(m_prime)
    root = sqrt(comb(2 * d, d + m))
    return [(root * eps**ell * comb(m, ell), (d - m, ell)) for ell in range(m + 1)]


def g_vector_component(d: int, m_prime: int, s, mu):
    """G^d_{m'}(s, mu)."""
    return sum(w * g_tilde(d, ell, s, mu) for w, ell in _binomial_terms(d, m_prime))


# --------------------------------------------------------------------------
# contours and quadrature


@dataclass(frozen=True)
class ContourSpec:
    s1: float | None = None
    s2: float | None = None
    height: float | None = None
    density: float = NODES_PER_PANEL / PANEL_WIDTH
    adaptive: bool = True


@dataclass(frozen=True)
class CharacterParams:
    n1: float = 1.0
    n2: float = 1.0

    @property
    def degenerate(self) -> bool:
        return self.n1 * self.n2 == 0


@dataclass
class EvalResult:
    value: complex | np.ndarray
    error: float
    nodes: int
    contour: tuple[float, float] = (0.0, 0.0)
    height: float = 0.0


def _pole_bounds(d: int, mu) -> tuple[float, float]:
    """Rightmost real parts of the s1- and s2-poles over every kernel used at weight d."""
    m = as_mu(mu).as_tuple()
    r1 = r2 = -np.inf
    for l1 in range(d + 1):
        for l2 in range(d + 1):
            beta, eta = _tilde_indices(d, (l1, l2))
            r1 = max(r1, max(m[i].real - beta[i] for i in range(3)))
            r2 = max(r2, max(-m[i].real - eta[i] for i in range(3)))
    return r1, r2


def check_minimal_line(d: int, mu) -> None:
    """Weight d >= 2 kernels describe a Whittaker function only when mu1 - mu2 = d - 1."""
    if d >= 2:
        m = as_mu(mu)
        if abs(m.mu1 - m.mu2 - (d - 1)) > 1e-9:
            raise ValueError(f"weight {d} needs mu1 - mu2 = {d - 1}, got {complex(m.mu1 - m.mu2):.6g}")


def resolve_contour(d: int, mu, contour: ContourSpec | None = None) -> tuple[float, float, float]:
    contour = contour or ContourSpec()
    r1, r2 = _pole_bounds(d, mu)
    s1 = contour.s1 if contour.s1 is not None else max(1.0, r1 + 1.0)
    s2 = contour.s2 if contour.s2 is not None else max(1.0, r2 + 1.0)
    if s1 <= r1 or s2 <= r2:
        raise ValueError(f"contour ({s1}, {s2}) is not right of the poles at ({r1:.3g}, {r2:.3g})")
    m = as_mu(mu).as_tuple()
    height = contour.height or 30 + 5 * max(abs(x.imag) for x in m)
    return s1, s2, height


@lru_cache(maxsize=None)
def _gauss_panels(height: float, density: float) -> tuple[np.ndarray, np.ndarray]:
    npanel = max(1, int(np.ceil(2 * height / PANEL_WIDTH)))
    per = max(2, int(round(density * PANEL_WIDTH)))
    x, w = np.polynomial.legendre.leggauss(per)
    edges = np.linspace(-height, height, npanel + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


KernelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def mellin_integral(kernel: KernelFn, y: tuple[float, float], s1: float, s2: float, height: float,
                    density: float = NODES_PER_PANEL / PANEL_WIDTH, chunk: int = 200,
                    with_mass: bool = False):
    """(1/4pi^2) int (pi y1)^{1-s1} (pi y2)^{1-s2} kernel(s) ds/(2 pi i)^2 on a truncated square.

    kernel(S1, S2) gets broadcastable arrays and returns shape (..., k) for k components.
    Returns (value, nodes), plus the integral of the absolute integrand when with_mass is set;
    roundoff limits the absolute accuracy to about machine epsilon times that mass.
    """
    t, w = _gauss_panels(float(height), float(density))
    y1, y2 = y
    a1 = s1 + 1j * t
    a2 = s2 + 1j * t
    f1 = np.exp((1 - a1) * np.log(pi * y1)) * w
    f2 = np.exp((1 - a2) * np.log(pi * y2)) * w
    total = mass = 0
    for start in range(0, len(t), chunk):
        sl = slice(start, start + chunk)
        vals = kernel(a1[sl, None], a2[None, :])  # (c, n, k)
        total = total + np.einsum("i,j,ijk->k", f1[sl], f2, vals)
        if with_mass:
            mass = mass + np.einsum("i,j,ijk->k", np.abs(f1[sl]), np.abs(f2), np.abs(vals))
    norm = (4 * pi**2) ** 2
    if with_mass:
        return total / norm, len(t) ** 2, mass / norm
    return total / norm, len(t) ** 2


class _KernelBank:
    """Shared gamma factors for every G~^d(ell) on a grid of (s1, s2)."""

    def __init__(self, d: int, mu):
        self.d = d
        self.mu = as_mu(mu).as_tuple()

    def tilde_logs(self, s1, s2) -> dict[tuple[int, int], np.ndarray]:
        d, m = self.d, self.mu
        out = {}
        cache1, cache2, cacheb = {}, {}, {}
        for l1 in range(d + 1):
            for l2 in range(d + 1):
                beta, eta = _tilde_indices(d, (l1, l2))
                k1 = beta
                if k1 not in cache1:
                    cache1[k1] = sum(_lg((beta[i] + s1 - m[i]) / 2) for i in range(3))
                if eta not in cache2:
                    cache2[eta] = sum(_lg((eta[i] + s2 + m[i]) / 2) for i in range(3))
                b = sum(beta) + sum(eta) - 2 * d
                if b not in cacheb:
                    cacheb[b] = (s1 + s2 + b) / 2
                out[(l1, l2)] = (cache1[k1], cache2[eta], cacheb[b])
        return out

    def components(self, s1, s2, which: list[int]) -> np.ndarray:
        logs = self.tilde_logs(s1, s2)
        rg_cache = {}
        vals = []
        for mp in which:
            acc = 0
            for wgt, ell in _binomial_terms(self.d, mp):
                l1, l2, b = logs[ell]
                key = id(b)
                if key not in rg_cache:
                    rg_cache[key] = special.rgamma(b)
                acc = acc + wgt * np.exp(l1 + l2) * rg_cache[key]
            vals.append(acc)
        return np.stack(np.broadcast_arrays(*vals), axis=-1)


def w_star(d: int, y: tuple[float, float], mu, contour: ContourSpec | None = None,
           components: list[int] | None = None, tol: float = 1e-8) -> EvalResult:
    """W^{d*}(y, mu) as a vector over m' (or the requested components)."""
    if y[0] <= 0 or y[1] <= 0:
        raise ValueError("y must be a positive pair")
    check_minimal_line(d, mu)
    s1, s2, height = resolve_contour(d, mu, contour)
    contour = contour or ContourSpec()
    which = list(range(-d, d + 1)) if components is None else list(components)
    bank = _KernelBank(d, mu)

    def kernel(a, b):
        return bank.components(a, b, which)

    density = contour.density
    if contour.adaptive:
        # panels converge like (1 + gap)^(-2n) with a pole at distance gap from the line
        r1, r2 = _pole_bounds(d, mu)
        density *= max(1.0, 1.5 / min(s1 - r1, s2 - r2))
    val, n, mass = mellin_integral(kernel, y, s1, s2, height, density, with_mass=True)
    err = np.inf
    if contour.adaptive:
        for _ in range(4):
            val2, n2, mass = mellin_integral(kernel, y, s1, s2, 2 * height, density, with_mass=True)
            err = float(np.max(np.abs(val2 - val)))
            val, n, height = val2, n + n2, 2 * height
            # for large y the value cancels down to roundoff, so accept that floor too
            floor = 64 * np.finfo(float).eps * float(np.max(mass))
            if err < tol * float(np.max(np.abs(val))) or err < floor:
                err = max(err, floor)
                break
        else:
            raise ArithmeticError(f"truncation did not converge (last change {err:.2e})")
    return EvalResult(val, err, n, (s1, s2), height)


def w_star_from_kernel(kernel: KernelFn, y, s1: float, s2: float, height: float = 40.0) -> complex:
    val, _ = mellin_integral(kernel, y, s1, s2, height)
    return complex(val[0])


# --------------------------------------------------------------------------
# Mellin-space operators


@dataclass(frozen=True)
class MellinTerm:
    """coef * (pi y1)^{a1} (pi y2)^{a2} P(theta1, theta2) acting on component `target`."""

    coef: complex
    shift: tuple[int, int]
    poly: Callable
    target: int = 0


def apply_terms(terms: list[MellinTerm], kernels: dict[int, Callable], s1, s2):
    """Kernel of sum_terms term(phi_target) at s, given the kernels of phi_j."""
    out = 0
    for t in terms:
        a1, a2 = t.shift
        u1, u2 = s1 + a1, s2 + a2
        out = out + t.coef * t.poly(1 - u1, 1 - u2) * kernels[t.target](u1, u2)
    return out


def _c_plus(d: int, mp: int) -> float:
    return sqrt(max(0, d * (d + 1) - mp * (mp + 1)))


def _c_minus(d: int, mp: int) -> float:
    return sqrt(max(0, d * (d + 1) - mp * (mp - 1)))


def delta1_terms(d: int, mp: int, mu) -> list[MellinTerm]:
    """The first Whittaker equation at component m' (zero on solutions)."""
    l1 = lambda1(mu)
    one = lambda a, b: 1  # noqa: E731
    terms = [
        MellinTerm(1, (0, 0), lambda a, b: -a * (a - 1) - b * (b - 1) + a * b - l1, 0),
        MellinTerm(4, (2, 0), one, 0),
        MellinTerm(4, (0, 2), one, 0),
        MellinTerm(-2 * mp, (0, 1), one, 0),
    ]
    if mp + 1 <= d:
        terms.append(MellinTerm(-_c_plus(d, mp), (1, 0), one, 1))
    if mp - 1 >= -d:
        terms.append(MellinTerm(-_c_minus(d, mp), (1, 0), one, -1))
    return terms


def delta2_terms(d: int, mp: int, mu) -> list[MellinTerm]:
    """The second Whittaker equation at component m'."""
    l2 = lambda2(mu)
    one = lambda a, b: 1  # noqa: E731
    terms = [
        MellinTerm(1, (0, 0), lambda a, b: -a * (a - 1) * b + a * b * (b - 1) + a * (a - 1) - b * (b - 1) - l2, 0),
        MellinTerm(-4, (0, 2), lambda a, b: a, 0),
        MellinTerm(4, (2, 0), lambda a, b: b, 0),
        MellinTerm(-4, (2, 0), one, 0),
        MellinTerm(4, (0, 2), one, 0),
        MellinTerm(2 * mp, (0, 1), lambda a, b: a - 1, 0),
    ]
    if mp + 1 <= d:
        c = _c_plus(d, mp)
        terms += [MellinTerm(c, (1, 0), lambda a, b: 1 - b, 1), MellinTerm(-2 * c, (1, 1), one, 1)]
    if mp - 1 >= -d:
        c = _c_minus(d, mp)
        terms += [MellinTerm(c, (1, 0), lambda a, b: 1 - b, -1), MellinTerm(2 * c, (1, 1), one, -1)]
    return terms


def _component_kernels(d: int, mp: int, mu) -> dict[int, Callable]:
    out = {}
    for off in (-1, 0, 1):
        j = mp + off
        if abs(j) <= d:
            out[off] = (lambda jj: (lambda a, b: g_vector_component(d, jj, (a, b), mu)))(j)
    return out


def mellin_pde_residual(d: int, m_prime: int, s, mu, which: int = 1) -> tuple[complex, float]:
    """(residual, scale) of the transported Whittaker equation `which` at the point s."""
    check_minimal_line(d, mu)
    kernels = _component_kernels(d, m_prime, mu)
    terms = delta1_terms(d, m_prime, mu) if which == 1 else delta2_terms(d, m_prime, mu)
    s1, s2 = complex(s[0]), complex(s[1])
    total = apply_terms(terms, kernels, s1, s2)
    scale = sum(abs(apply_terms([t], kernels, s1, s2)) for t in terms)
    return complex(total), float(scale)


def _ladder_kernel(d: int, mp: int, sign: int, mu) -> Callable:
    """Kernel of S^{sign}_{m'} phi_{m'} built by composing shift operators."""
    l1, l2 = lambda1(mu), lambda2(mu)
    base = lambda a, b: g_vector_component(d, mp, (a, b), mu)  # noqa: E731

    def delta1_minus(a, b):
        # (Delta1 - lambda1) phi_{m'}
        return (((1 - a) * (-a) * -1 + (1 - b) * (-b) * -1 + (1 - a) * (1 - b) - l1) * base(a, b)
                + 4 * base(a + 2, b) + 4 * base(a, b + 2))

    def delta2_minus(a, b):
        t1, t2 = 1 - a, 1 - b
        val = (-t1 * (t1 - 1) * t2 + t1 * t2 * (t2 - 1) + t1 * (t1 - 1) - t2 * (t2 - 1) - l2) * base(a, b)
        val = val - 4 * (1 - a) * base(a, b + 2) + 4 * (1 - b) * base(a + 2, b)
        return val - 4 * base(a + 2, b) + 4 * base(a, b + 2)

    def inner(a, b):
        # (1 - theta2 + sign 2 pi y2)(Delta1 - lambda1) + (Delta2 - lambda2)
        #   + 2 pi m' y2 (theta1 + theta2 - 1 - sign 2 pi y2)
        val = (1 - (1 - b)) * delta1_minus(a, b) + 2 * sign * delta1_minus(a, b + 1)
        val = val + delta2_minus(a, b)
        val = val + 2 * mp * ((1 - a) + (1 - (b + 1)) - 1) * base(a, b + 1) - 4 * mp * sign * base(a, b + 2)
        return val

    def outer(a, b):
        # 1/(4 pi^2 y1 y2) = (1/4) (pi y1)^{-1} (pi y2)^{-1}
        return inner(a - 1, b - 1) / 4

    return outer


def ladder_check(d: int, m_prime: int, sign: int, y_grid, mu, pointwise_s=None) -> float:
    """Max relative residual of S^{+-}_{m'} phi_{m'} = +-sqrt(d(d+1) - m'(m'+-1)) phi_{m'+-1}.

    With y_grid given the two sides are integrated on a common contour; the
    pointwise kernel identity is checked at `pointwise_s` when supplied.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    check_minimal_line(d, mu)
    coef = sign * (_c_plus(d, m_prime) if sign == 1 else _c_minus(d, m_prime))
    target = m_prime + sign
    lhs_k = _ladder_kernel(d, m_prime, sign, mu)

    def rhs_k(a, b):
        if abs(target) > d:
            return 0 * a * b
        return coef * g_vector_component(d, target, (a, b), mu)

    worst = 0.0
    if pointwise_s is not None:
        for s in pointwise_s:
            l, r = lhs_k(*s), rhs_k(*s)
            worst = max(worst, abs(l - r) / max(1.0, abs(r), abs(l)))
    if y_grid is not None:
        s1, s2, _ = resolve_contour(d, mu)
        s1, s2 = s1 + 2, s2 + 2  # keep every shifted kernel pole-free on the line
        for y in y_grid:
            l = w_star_from_kernel(lambda a, b: np.atleast_1d(lhs_k(a, b))[..., None], y, s1, s2)
            r = w_star_from_kernel(lambda a, b: np.asarray(rhs_k(a, b) + 0 * a * b)[..., None], y, s1, s2)
            worst = max(worst, abs(l - r) / max(abs(r), 1e-300) if abs(r) > 1e-12 else abs(l))
    return worst


# --------------------------------------------------------------------------
# Barnes' second lemma


def barnes_second_lemma_check(a, b, c, dd, e, shift: float = 0.0, height: float = 40.0) -> tuple[complex, complex, float]:
    """(quadrature, closed form, |difference|) for the Barnes second lemma integral."""
    a, b, c, dd, e = (complex(x) for x in (a, b, c, dd, e))
    f = a + b + c + dd + e
    left = max(-a.real, -b.real, -c.real)
    right = min(dd.real, e.real)
    if left >= right:
        raise ValueError("no vertical line separates the increasing and decreasing pole families")
    sigma = (left + right) / 2 + shift
    if not left < sigma < right:
        raise ValueError("shifted line crosses a pole family")
    # Gauss-Legendre panels converge like (1 + gap)^(-2n) with a pole at distance gap from the line
    gap = min(sigma - left, right - sigma)
    density = NODES_PER_PANEL / PANEL_WIDTH * max(1.0, 1.5 / gap)
    t, w = _gauss_panels(float(height), float(np.ceil(density)))
    s = sigma + 1j * t
    log = _lg(a + s) + _lg(b + s) + _lg(c + s) + _lg(dd - s) + _lg(e - s)
    vals = np.exp(log) * special.rgamma(f + s)
    quad = complex(np.sum(w * vals) / (2 * pi))
    g = complex_gamma
    closed = (g(a + e) * g(b + e) * g(c + e) * g(a + dd) * g(b + dd) * g(c + dd)
              / (g(f - a) * g(f - b) * g(f - c)))
    return quad, closed, abs(quad - closed)


# --------------------------------------------------------------------------
# Jacquet-integral oracles


def _unipotent(u1, u2, u3) -> np.ndarray:
    """x with x1 at (2,3), x2 at (1,2), x3 at (1,3), batched."""
    shape = np.broadcast(u1, u2, u3).shape
    out = np.zeros(shape + (3, 3))
    out[..., 0, 0] = out[..., 1, 1] = out[..., 2, 2] = 1
    out[..., 1, 2] = u1
    out[..., 0, 1] = u2
    out[..., 0, 2] = u3
    return out


def jacquet_integrand(d: int, u: tuple[np.ndarray, np.ndarray, np.ndarray], y, mu, psi: CharacterParams) -> np.ndarray:
    """I^d(w_l u y, mu) conj(psi(u)), batched over u; shape (..., 2d+1, 2d+1)."""
    u1, u2, u3 = (np.asarray(x, dtype=float) for x in u)
    ymat = np.diag([y[0] * y[1], y[0], 1.0])
    g = weyl_element("wl") @ _unipotent(u1, u2, u3) @ ymat
    coords = iwasawa_decompose(g)
    scal = power_function(mu, coords) * np.exp(-2j * pi * (psi.n1 * u1 + psi.n2 * u2))
    return wigner_D_array(d, coords.k) * scal[..., None, None]


class _WhittakerSpline:
    """W^d_{j,j}(Y, u) for Y > 0 on a log-spaced cubic spline (mpmath underneath)."""

    def __init__(self, d: int, u: complex, rows: list[int], sign: int = -1, lo: float = 1e-10, hi: float = 60.0,
                 points: int = 1500):
        self.u = complex(u)
        self.gamma = min(0.0, self.u.real)
        self.t = np.linspace(np.log(lo), np.log(hi), points)
        self.lo, self.hi = self.t[0], self.t[-1]
        yy = np.exp(self.t)
        self.splines = {}
        for j in rows:
            vals = np.array([classical_whittaker(d, j, sign * float(v), self.u) for v in yy])
            h = vals * np.exp(2 * pi * yy) * yy ** (-self.gamma)
            self.splines[j] = CubicSpline(self.t, h)

    def __call__(self, j: int, big_y: np.ndarray) -> np.ndarray:
        t = np.clip(np.log(big_y), self.lo, self.hi)
        out = self.splines[j](t) * np.exp(-2 * pi * big_y) * big_y ** self.gamma
        return np.where(big_y > np.exp(self.hi), 0.0, out)


def _rotation_sign(d: int) -> int:
    """sigma with D^d(R(w))_{j,j} = exp(i sigma j atan w) for the residual rotation R(w)."""
    if d == 0:
        return 1
    r = _k_reduced(np.array(0.0), np.array(0.0), np.array(1.0)) @ _k_reduced(np.array(0.0), np.array(0.0), np.array(0.0)).T
    ph = wigner_D_array(d, r)[d + 1, d + 1]
    return 1 if abs(ph - np.exp(1j * pi / 4)) < 1e-9 else -1


def _k_reduced(a, v, w):
    """K-part of w_l u after the substitution c = rho v, b = (w sqrt(1+v^2) + a v)/rho."""
    rho = np.sqrt(1 + a * a)
    b = (w * np.sqrt(1 + v * v) + a * v) / rho
    return iwasawa_decompose(weyl_element("wl") @ _unipotent(b, a, rho * v)).k


def jacquet_oracle(d: int, y, mu, rows: list[int] | None = None, psi: CharacterParams = CharacterParams(),
                   nodes: int = 160) -> tuple[CenterIndexedMatrix, float]:
    """W^d(y, mu, psi_n) from the Jacquet integral, reduced to two dimensions.

    With u = (a at (1,2), b at (2,3), c at (1,3)) and c = rho v, b = (w sqrt(1+v^2) + a v)/rho,
    rho = sqrt(1+a^2), the K-part factors as R(atan w) k(a, v, 0) with R diagonal under D^d, so
    the w-integral is a classical GL(2) Whittaker function and

      W_{j,m}(I, psi_y) = int int (1+v^2)^{(-1-mu1+mu3)/2} rho^{-1+mu3-mu2}
                          W_{sigma j}(-y1 sqrt(1+v^2)/rho, mu1-mu2) D^d(k(a,v,0))_{j,m}
                          e(-y1 a v/rho) e(-y2 a) dv da

    for psi_{1,1}; a general character replaces (y1, y2) by (n1 y1, n2 y2) inside the integral.

    The a-integral is oscillatory with algebraic decay and goes through QUADPACK's Fourier
    rule; it converges for rows whose GL(2) factor vanishes fast enough at small argument.
    Rows not requested are returned as nan.  The error is the larger of QUADPACK's estimate
    and the change from halving the v-nodes.
    """
    m1, m2, m3 = as_mu(mu).as_tuple()
    rows = list(range(-d, d + 1)) if rows is None else list(rows)
    sigma = _rotation_sign(d)
    u = m1 - m2
    c1, c2 = psi.n1 * y[0], psi.n2 * y[1]
    if c1 != 0:
        spline = _WhittakerSpline(d, u, [sigma * j for j in rows], sign=-1 if c1 > 0 else 1)
        y1 = abs(c1)
        whitt = spline
    else:
        y1 = 0.0
        at_zero = {sigma * j: classical_whittaker(d, sigma * j, 0.0, u) for j in rows}
        whitt = lambda j, big_y: at_zero[j] * np.ones_like(big_y)  # noqa: E731
    phase = 1 if c1 >= 0 else -1
    x, wts = np.polynomial.legendre.leggauss(nodes)
    xh, wh = np.polynomial.legendre.leggauss(nodes // 2)
    th, thh = x * pi / 2, xh * pi / 2
    dim = 2 * d + 1

    def fiber(a: float, theta, weights) -> np.ndarray:
        rho = sqrt(1 + a * a)
        scale = max(1.0, rho / (4 * y1)) if y1 > 0 else 1.0
        v = scale * np.tan(theta)
        jac = weights * (pi / 2) * scale / np.cos(theta) ** 2
        big_y = y1 * np.sqrt(1 + v * v) / rho
        amp = ((1 + v * v) ** ((-1 - m1 + m3) / 2) * rho ** (-1 + m3 - m2)
               * np.exp(-2j * pi * phase * y1 * a * v / rho))
        dk = wigner_D_array(d, _k_reduced(np.full_like(v, a), v, np.zeros_like(v)))
        out = np.zeros((dim, dim), dtype=complex)
        for j in rows:
            g = whitt(sigma * j, big_y)
            out[j + d] = np.einsum("n,nm->m", jac * amp * g, dk[:, j + d, :])
        return out

    cache: dict[float, np.ndarray] = {}

    def f(a: float) -> np.ndarray:
        if a not in cache:
            cache[a] = fiber(a, th, x * 0 + wts)
        return cache[a]

    omega = 2 * pi * abs(c2)
    flip = 1 if c2 >= 0 else -1
    result = np.full((dim, dim), np.nan, dtype=complex)
    err = 0.0
    for j in rows:
        for m in range(-d, d + 1):
            def even(t, part):
                val = f(t)[j + d, m + d] + f(-t)[j + d, m + d]
                return val.real if part == 0 else val.imag

            def odd(t, part):
                val = f(t)[j + d, m + d] - f(-t)[j + d, m + d]
                return val.real if part == 0 else val.imag

            acc = 0j
            for part, unit in ((0, 1), (1, 1j)):
                if omega == 0:
                    c, ec = integrate.quad(even, 0, np.inf, args=(part,), limit=400)
                    s_, es = 0.0, 0.0
                else:
                    c, ec = integrate.quad(even, 0, np.inf, args=(part,), weight="cos", wvar=omega, limlst=300)
                    s_, es = integrate.quad(odd, 0, np.inf, args=(part,), weight="sin", wvar=omega, limlst=300)
                acc += unit * (c - 1j * flip * s_)
                err = max(err, ec + es)
            result[j + d, m + d] = acc
    # node-halving check at a few abscissae
    for a in (0.0, 0.7, 3.0):
        full = fiber(a, th, wts)
        half = fiber(a, thh, wh)
        err = max(err, float(np.nanmax(np.abs(full - half)[[j + d for j in rows]])))
    outer = y[0] ** (1 - m1) * y[1] ** (1 + m3)
    return CenterIndexedMatrix(outer * result), float(abs(outer) * err)


def jacquet_full_oracle(d: int, y, mu, psi: CharacterParams = CharacterParams()) -> tuple[CenterIndexedMatrix, float]:
    """The full matrix W^d(y, mu, psi) for d in {0, 1}; needs Re mu1 > Re mu2 > Re mu3."""
    if d not in (0, 1):
        raise ValueError("the full oracle handles d = 0 and d = 1")
    m = as_mu(mu).as_tuple()
    if not (m[0].real > m[1].real > m[2].real):
        raise ValueError("needs Re(mu1) > Re(mu2) > Re(mu3) for absolute convergence")
    return jacquet_oracle(d, y, mu, psi=psi)


def jacquet_central_oracle(d: int, y, t: float, row: int | None = None, mu=None) -> tuple[complex, float]:
    """W^d_{row,0}(y, mu, psi_{1,1}) (row = -d by default) from the two-dimensional reduction.

    mu defaults to ((d-1)/2 + it, -(d-1)/2 + it, -2it); any mu with mu1 - mu2 = d - 1 works.
    """
    if d < 2:
        raise ValueError("the central oracle is for d >= 2")
    row = -d if row is None else row
    if row not in (d, -d):
        raise ValueError("row must be +-d")
    if mu is None:
        mu = ((d - 1) / 2 + 1j * t, -(d - 1) / 2 + 1j * t, -2j * t)
    m1, m2, m3 = as_mu(mu).as_tuple()
    if abs(m1 - m2 - (d - 1)) > 1e-9:
        raise ValueError("needs mu1 - mu2 = d - 1")
    y1, y2 = y
    # W(y, psi_{1,1}) = y1^{1-mu1} y2^{1+mu3} W(I, psi_y)
    outer = y1 ** (1 - m1) * y2 ** (1 + m3)
    if row == d:
        # the classical Whittaker factor carries 1/Gamma(0)
        w = classical_whittaker(d, d, 1.0, d - 1)
        return complex(0.0 * outer * w), 0.0
    nd = sqrt(factorial(2 * d)) / (factorial(d) * 2**d)
    m1c, m3c = complex(m1), complex(m3)

    gl_x, gl_w = np.polynomial.legendre.leggauss(16)

    def amplitude(u3: np.ndarray, r2: float) -> np.ndarray:
        r3 = np.sqrt(1 + u3 * u3)
        yy = y1 * r3 / r2
        cw = (2 * pi) ** d * yy ** (d - 1) * np.exp(-2 * pi * yy) / factorial(d - 1)
        return (1 + u3 * u3) ** ((-1 + m3c - m1c) / 2) * cw * nd * r3 ** (-d)

    def cosine_transform(fn, omega: float) -> tuple[complex, float]:
        # int_0^inf fn(x) cos(omega x) dx for complex-valued fn, via QUADPACK's Fourier rule
        out, err = 0j, 0.0
        for part, unit in ((np.real, 1), (np.imag, 1j)):
            g = lambda x: part(fn(x))  # noqa: E731
            if omega == 0:
                val, e = integrate.quad(g, 0, np.inf, limit=400, epsabs=1e-14)
            else:
                val, e = integrate.quad(g, 0, np.inf, weight="cos", wvar=omega, limlst=400, epsabs=1e-14)
            out += unit * val
            err += e
        return out, err

    @lru_cache(maxsize=None)
    def inner(u2: float) -> complex:
        # the u3-integrand is even and dies like exp(-2 pi y1 |u3| / r2), so a panel rule that
        # resolves each oscillation of e(-y1 u2 u3 / r2) on [0, L] suffices (QUADPACK's Fourier
        # routines are not re-entrant, so they stay on the outer integral)
        r2 = sqrt(1 + u2 * u2)
        kappa = y1 * abs(u2) / r2
        length = r2 * (d + 45) / (2 * pi * y1) + 10
        width = min(0.5, 0.25 / kappa) if kappa > 0 else 0.5
        edges = np.linspace(0, length, int(np.ceil(length / width)) + 1)
        half = np.diff(edges) / 2
        mid = edges[:-1] + half
        u3 = (mid[:, None] + half[:, None] * gl_x).ravel()
        wts = (half[:, None] * gl_w).ravel()
        val = np.sum(wts * amplitude(u3, r2) * np.cos(2 * pi * kappa * u3))
        return complex(2 * (1 + u2 * u2) ** ((-1 + m3c - complex(m2)) / 2) * val)

    # inner is even in u2 as well
    total, err = cosine_transform(inner, 2 * pi * y2)
    total, err = 2 * (-1) ** d * total, 2 * err
    return complex(outer * total), float(abs(outer) * err)


# --------------------------------------------------------------------------
# asymptotics


def bad_growth_ratio(d: int, y1: float = 1.0, small: float = 0.1, large: float = 0.5) -> float:
    """|W^{d*}_0(y1, small)| / |W^{d*}_0(y1, large)| at mu = (d-1, 0, 1-d)."""
    mu = (d - 1.0, 0.0, 1.0 - d)
    a = w_star(d, (y1, small), mu, components=[0]).value[0]
    b = w_star(d, (y1, large), mu, components=[0]).value[0]
    return float(abs(a) / abs(b))


def bad_growth_exponent(d: int, y2: float, y1: float = 1.0) -> float:
    """Local exponent log2 |W(y1, y2) / W(y1, 2 y2)| of the central entry at mu = (d-1, 0, 1-d).

    The rightmost s2-pole of the kernel sits at s2 = d - 1, so the residue predicts
    growth like y2^{2-d} as y2 -> 0 (logarithmic at d = 2).
    """
    return float(np.log2(bad_growth_ratio(d, y1, y2, 2 * y2)))


__all__ = [
    "CharacterParams", "ContourSpec", "EvalResult", "MellinTerm", "apply_terms", "bad_growth_exponent",
    "bad_growth_ratio", "barnes_second_lemma_check", "check_minimal_line", "delta1_terms", "delta2_terms", "g_kernel", "g_tilde",
    "g_vector_component", "jacquet_central_oracle", "jacquet_full_oracle", "jacquet_integrand", "jacquet_oracle",
    "ladder_check", "lambda_alpha", "lambda_star", "mellin_integral", "mellin_pde_residual", "resolve_contour",
    "w_star",
]
