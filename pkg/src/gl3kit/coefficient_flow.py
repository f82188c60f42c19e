"""The operators Y^a_mu on coefficient vectors in C^{2d+1}.

A row vector f stands for the function p_{rho+mu}(y) f D^d(k); the Lie
algebra acts on it through five operators Y^a_mu : C^{2d+1} -> C^{2d+2a+1}.
This module applies them, checks them against the differential operators,
and runs the raising-operator and Gram-table arguments built on top of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from .clebsch_gordan import cg, cg_float, cgb_vector
from .indexed import CenterIndexedVector
from .spectral import as_mu
from .surd import SurdScalar
from .wigner import VCharacter, basis_u, v_element, weyl_action, weyl_element, wigner_D_array

SQ6 = sqrt(6.0)


def _vec(f) -> np.ndarray:
    return np.asarray(f, dtype=complex)


def _dim(n: int) -> int:
    if n % 2 == 0:
        raise ValueError("coefficient vectors have odd length")
    return (n - 1) // 2


def _check_shift(a: int, d: int) -> None:
    if a not in (-2, -1, 0, 1, 2):
        raise ValueError("a must lie in -2..2")
    if d + a < 0:
        raise ValueError(f"d + a = {d + a} is negative")


# --------------------------------------------------------------------------
# the five operators


def y_matrix(a: int, d: int, mu) -> np.ndarray:
    """Matrix M with Y^a_mu f = f @ M (rows j = -d..d, columns -(d+a)..d+a)."""
    _check_shift(a, d)
    m = as_mu(mu)
    c = cg_float(d, 2, a)
    diff = m.mu1 - m.mu2 + 1
    mid = SQ6 * (m.mu3 - 1) - float(cgb_vector(d)[a + 2])
    out = np.zeros((2 * d + 1, 2 * d + 2 * a + 1), dtype=complex)
    for j in range(-d, d + 1):
        for shift, factor in ((-2, diff - j), (0, mid), (2, diff + j)):
            coef = c[j + d, shift + 2]
            target = j + shift
            if abs(target) > d + a:
                # pushed out of range: the selection rules must have zeroed it
                assert coef == 0.0, (a, d, j, shift)
                continue
            out[j + d, target + d + a] += coef * factor
    return out


def y_action(a: int, d: int, mu, f) -> CenterIndexedVector:
    """Y^a_mu f for f in C^{2d+1}."""
    v = _vec(f)
    if v.shape != (2 * d + 1,):
        raise ValueError(f"expected a vector of length {2 * d + 1}")
    return CenterIndexedVector(v @ y_matrix(a, d, mu))


def apply_word(word, d: int, mu, f) -> CenterIndexedVector:
    """Apply Y^{a_1}, then Y^{a_2}, ... (word is the tuple (a_1, a_2, ...))."""
    v = _vec(f)
    for a in word:
        v = v @ y_matrix(a, d, mu)
        d += a
    return CenterIndexedVector(v)


def y_action_exact(a: int, d: int, j: int, mu: tuple[Fraction, Fraction, Fraction]) -> dict[int, SurdScalar]:
    """Exact coefficients of Y^a_mu bv^d_j for rational mu, keyed by target index."""
    _check_shift(a, d)
    m1, m2, m3 = (Fraction(x) for x in mu)
    if m1 + m2 + m3 != 0:
        raise ValueError("spectral parameter must sum to zero")
    diff = m1 - m2 + 1
    # sqrt6 (mu3 - 1) - B_a is sqrt6 times a rational
    mid = SurdScalar.make(m3 - 1, 6) - cgb_vector(d)[a + 2]
    out = {}
    for shift, factor in ((-2, SurdScalar.make(diff - j)), (0, mid), (2, SurdScalar.make(diff + j))):
        coef = cg(d, 2, a, j, shift) * factor
        if abs(j + shift) <= d + a:
            out[j + shift] = coef
        elif not coef.is_zero:
            raise AssertionError("nonzero coefficient outside the index range")
    return out


def _root(n) -> SurdScalar:
    n = Fraction(n)
    if n < 0:
        raise ValueError("negative radicand in a display coefficient")
    return SurdScalar.make(1, n)


def explicit_display(a: int, d: int, j: int, mu: tuple[Fraction, Fraction, Fraction]) -> dict[int, SurdScalar] | None:
    """Y^a_mu bv^d_j read off from the written-out five-case formulas (exact).

    Returns None when the normalizing factor on the left vanishes.
    """
    m1, m2, m3 = (Fraction(x) for x in mu)
    dm = m1 - m2
    r = _root
    if a == 0:
        lead = 2 * r(d * (d + 1) * (2 * d - 1) * (2 * d + 3))
        terms = {
            j - 2: r(6 * (d + 2 - j) * (d + 1 - j) * (d + j) * (d - 1 + j)) * (dm + 1 - j),
            j: SurdScalar.make(-2 * (d * (d + 1) - 3 * j * j) * m3, 6),
            j + 2: r(6 * (d + 2 + j) * (d + 1 + j) * (d - j) * (d - 1 - j)) * (dm + 1 + j),
        }
    elif a == 1:
        lead = r(2 * d * (d + 1) * (d + 2) * (2 * d + 1))
        terms = {
            j - 2: -r((d + 1 - j) * (d + 2 - j) * (d + 3 - j) * (d + j)) * (dm + 1 - j),
            j: -2 * j * r((d + 1 - j) * (d + 1 + j)) * (3 * m3 - d - 1),
            j + 2: r((d - j) * (d + 1 + j) * (d + 2 + j) * (d + 3 + j)) * (dm + 1 + j),
        }
    elif a == -1:
        lead = r(2 * d * (d - 1) * (d + 1) * (2 * d + 1))
        terms = {
            j - 2: -r((d + 1 - j) * (d - 2 + j) * (d - 1 + j) * (d + j)) * (dm + 1 - j),
            j: 2 * j * r((d - j) * (d + j)) * (3 * m3 + d),
            j + 2: r((d - 2 - j) * (d - 1 - j) * (d - j) * (d + 1 + j)) * (dm + 1 + j),
        }
    elif a == 2:
        lead = 2 * r((d + 1) * (d + 2) * (2 * d + 1) * (2 * d + 3))
        terms = {
            j - 2: r((d + 1 - j) * (d + 2 - j) * (d + 3 - j) * (d + 4 - j)) * (dm + 1 - j),
            j: 2 * r((d + 1 - j) * (d + 2 - j) * (d + 1 + j) * (d + 2 + j)) * (3 * m3 - 2 * d - 3),
            j + 2: r((d + 1 + j) * (d + 2 + j) * (d + 3 + j) * (d + 4 + j)) * (dm + 1 + j),
        }
    elif a == -2:
        lead = 2 * r(d * (d - 1) * (2 * d - 1) * (2 * d + 1))
        terms = {
            j - 2: r((d - 3 + j) * (d - 2 + j) * (d - 1 + j) * (d + j)) * (dm + 1 - j),
            j: 2 * r((d - 1 - j) * (d - j) * (d - 1 + j) * (d + j)) * (3 * m3 + 2 * d - 1),
            j + 2: r((d - 3 - j) * (d - 2 - j) * (d - 1 - j) * (d - j)) * (dm + 1 + j),
        }
    else:
        raise ValueError("a must lie in -2..2")
    if lead.is_zero:
        return None
    return {t: c / lead for t, c in terms.items() if abs(t) <= d + a and not c.is_zero}


def display_consistency(a: int, d: int, mu: tuple[Fraction, Fraction, Fraction]) -> bool:
    """True when the general action and the written-out formula agree exactly for every j."""
    for j in range(-d, d + 1):
        disp = explicit_display(a, d, j, mu)
        if disp is None:
            continue
        gen = {t: c for t, c in y_action_exact(a, d, j, mu).items() if not c.is_zero}
        if set(gen) != set(disp) or any(gen[t] != disp[t] for t in gen):
            return False
    return True


# --------------------------------------------------------------------------
# comparison with the differential operators


def _k_fit_basis(d: int, column: int, ks: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    cols, labels = [], []
    for b in range(max(d - 2, abs(column)), d + 3):
        dm = wigner_D_array(b, ks)
        for mp in range(-b, b + 1):
            cols.append(dm[:, mp + b, column + b])
            labels.append((b, mp))
    return np.stack(cols, axis=1), labels


def y_action_pointwise_check(a: int, d: int, mu, f, point, samples: int | None = None,
                             seed: int = 0) -> float:
    """Max deviation between y_action and the Lie-algebra action at one point.

    X_0 (or X_1 when a is odd) is applied to p_{rho+mu}(y) sum f_m' D^d_{m',0}(k)
    at the x, y coordinates of the point and many rotations k; the coefficient
    of the D^{d+a} column is then read off by least squares.
    """
    from .lie_operators import IwasawaPoint, TestFunction, x_operator

    _check_shift(a, d)
    v = _vec(f)
    m = as_mu(mu)
    column = 1 if a % 2 else 0
    cg0 = float(cg(d, 2, a, 0, column))
    if column > d + a or cg0 == 0:
        raise ValueError(f"the D^{d + a} column {column} cannot isolate Y^{a} at d = {d}")
    if np.allclose(v, 0):
        return 0.0
    tf = TestFunction(m.as_tuple(), d)

    def func(c):
        full = tf(c)
        out = 0
        for mp in range(-d, d + 1):
            out = out + full[..., mp + d, d] * v[mp + d]
        return out

    rng = np.random.default_rng(seed)
    _, labels = _k_fit_basis(d, column, np.eye(3)[None])
    n = samples or 3 * len(labels)
    rows, ks = [], []
    for _ in range(n):
        a_, g_ = rng.uniform(-np.pi, np.pi, 2)
        b_ = rng.uniform(0.2, np.pi - 0.2)
        p = IwasawaPoint(point.x1, point.x2, point.x3, point.y1, point.y2, a_, b_, g_)
        rows.append(x_operator(column, func, p))
        ks.append(p.k_matrix())
    basis, labels = _k_fit_basis(d, column, np.array(ks))
    coef, *_ = np.linalg.lstsq(basis, np.array(rows), rcond=None)
    power = point.y1 ** (1 - m.mu3) * point.y2 ** (1 + m.mu1)
    got = np.array([coef[i] for i, (b, _) in enumerate(labels) if b == d + a]) / (cg0 * power)
    want = _vec(y_action(a, d, m, v))
    return float(np.max(np.abs(got - want)))


# --------------------------------------------------------------------------
# adjoints and raising operators


def adjoint_y(a: int, d: int, mu, f) -> CenterIndexedVector:
    """hat Y^a_mu f = -(-1)^a sqrt((2d+2a+1)/(2d+1)) Y^{-a}_mu f, for f in C^{2(d+a)+1}."""
    _check_shift(a, d)
    scale = -((-1) ** a) * sqrt((2 * d + 2 * a + 1) / (2 * d + 1))
    return CenterIndexedVector(scale * _vec(y_action(-a, d + a, mu, f)))


def _raising_coefficients(variant: int, d: int, mu, j: int) -> tuple[complex, complex, complex]:
    m3 = as_mu(mu).mu3
    if variant == 1:
        return (
            sqrt(d * (d + 2) ** 2 * (2 * d + 1) ** 2 * (2 * d + 5)),
            2 * sqrt(6 * d * (d + 1) * (d + 2) * (2 * d + 1)) * (d - 1 - 2 * j - 2 * m3),
            -sqrt(d**2 * (d + 2) * (2 * d - 1) * (2 * d + 1) * (2 * d + 3)),
        )
    if variant == 2:
        return (
            sqrt((d + 1) * (d + 2) ** 2 * (d + 3) * (2 * d + 1) * (2 * d + 7)),
            2 * sqrt(6 * (d + 1) * (d + 2) * (2 * d + 1) * (2 * d + 3)) * (2 * d + 1 - 2 * j - 2 * m3),
            -sqrt(d * (d + 1) ** 2 * (d + 2) * (2 * d - 1) * (2 * d + 1)),
        )
    raise ValueError("variant must be 1 or 2")


def raising_R(variant: int, d: int, mu, j: int, sign: int = 1) -> CenterIndexedVector:
    """R^{d,a}_{mu,j} bu^{d,sign}_j from its definition as a polynomial in Y^0, Y^a."""
    if abs(j) > d:
        raise ValueError("need |j| <= d")
    a = variant
    c1, c2, c3 = _raising_coefficients(variant, d, mu, j)
    u = basis_u(d, j, sign)
    out = (
        c1 * _vec(apply_word((a, 0), d, mu, u))
        + c2 * _vec(apply_word((a,), d, mu, u))
        + c3 * _vec(apply_word((0, a), d, mu, u))
    )
    return CenterIndexedVector(out)


def _u_or_zero(d: int, j: int, sign: int) -> np.ndarray:
    if abs(j) > d:
        return np.zeros(2 * d + 1, dtype=complex)
    return _vec(basis_u(d, j, sign))


def raising_R_closed_form(variant: int, d: int, mu, j: int, sign: int = 1) -> CenterIndexedVector:
    """The two-term right-hand side of the raising identities."""
    m = as_mu(mu)
    m1, m2, m3 = m.as_tuple()
    prod = (m1 - m3 + 1) * (m2 - m3 + 1)
    if variant == 1:
        up = d + 1
        c_low = 8 * j * sqrt(max(0, 3 * (d + 1 - j) * (d + 2 - j) * (d + 3 - j) * (d + j))) * (m1 - m2 + 1 - j)
        c_mid = -8 * j * sqrt(max(0, 3 * (d + 1 - j) * (d + 1 + j))) * (
            (d - j - 2) * (j + 1 + 3 * m3) - 2 * prod + 4 * (j + 1))
    elif variant == 2:
        up = d + 2
        c_low = -4 * j * sqrt(max(0, 6 * (d + 1 - j) * (d + 2 - j) * (d + 3 - j) * (d + 4 - j))) * (m1 - m2 + 1 - j)
        c_mid = -4 * sqrt(max(0, 6 * (d + 1 - j) * (d + 2 - j) * (d + 1 + j) * (d + 2 + j))) * (
            (2 * d - j) * (d + 2 - 3 * m3) + 2 * prod - j * (d + 1 - j))
    else:
        raise ValueError("variant must be 1 or 2")
    return CenterIndexedVector(c_low * _u_or_zero(up, j - 2, sign) + c_mid * _u_or_zero(up, j, sign))


def adjoint_raising_R(variant: int, d: int, mu, j: int, sign: int = 1) -> CenterIndexedVector:
    """conj(hat R^{d,a}_{mu,j} bu^{d+a}_j), using hat Y^a taken at -conj(mu)."""
    a = variant
    m = as_mu(mu)
    dual = -m.conjugate()
    c1, c2, c3 = (np.conj(c) for c in _raising_coefficients(variant, d, mu, j))
    u = _vec(basis_u(d + a, j, sign))

    def hat(b, level, v):
        # hat Y^b maps level+b back to level
        return _vec(adjoint_y(b, level, dual, v))

    # adjoint reverses the order of composition
    t1 = hat(a, d, hat(0, d + a, u))
    t2 = hat(a, d, u)
    t3 = hat(0, d, hat(a, d, u))
    return CenterIndexedVector(np.conj(c1 * t1 + c2 * t2 + c3 * t3))


def adjoint_raising_R_closed_form(variant: int, d: int, mu, j: int, sign: int = 1) -> CenterIndexedVector:
    m1, m2, m3 = as_mu(mu).as_tuple()
    prod = (m1 - m3 + 1) * (m2 - m3 + 1)
    dm = m1 - m2
    rt = lambda n: sqrt(max(0, n))  # noqa: E731
    if variant == 1:
        lo = -8 * rt(3 * (d + 2 - j) * (d - 1 + j) * (d + j) * (d + 1 + j)) * (dm - 1 + j)
        mid = -8 * j * rt(3 * (d + 1 - j) * (d + 1 + j)) * ((d - j - 2) * (j + 1 + 3 * m3) - 2 * prod + 4 * (j + 1))
        hi = 8 * (j + 1) * rt(3 * (d - 1 - j) * (d - j) * (d + 1 - j) * (d + 2 + j)) * (dm - 1 - j)
    elif variant == 2:
        lo = -4 * rt(6 * (d - 1 + j) * (d + j) * (d + 1 + j) * (d + 2 + j)) * (dm - 1 + j)
        mid = -4 * rt(6 * (d + 1 - j) * (d + 2 - j) * (d + 1 + j) * (d + 2 + j)) * (
            (2 * d - j) * (d + 2 - 3 * m3) + 2 * prod - j * (d + 1 - j))
        hi = -4 * (1 + j) * rt(6 * (d - 1 - j) * (d - j) * (d + 1 - j) * (d + 2 - j)) * (dm - 1 - j)
    else:
        raise ValueError("variant must be 1 or 2")
    return CenterIndexedVector(lo * _u_or_zero(d, j - 2, sign) + mid * _u_or_zero(d, j, sign)
                               + hi * _u_or_zero(d, j + 2, sign))


# --------------------------------------------------------------------------
# the spaces V^d_{kappa, chi} and the Gram recursion


def _parities(chi: VCharacter) -> tuple[int, int]:
    """(delta, eps) with chi = chi_{(-1)^delta, eps}."""
    return (0 if chi.eps1 == 1 else 1), chi.eps2


def space_indices(d: int, chi: VCharacter, kappa: int) -> list[int]:
    """Indices 2j+delta >= kappa with bu^{d,eps}_{2j+delta} nonzero."""
    delta, eps = _parities(chi)
    out = []
    for idx in range(delta, d + 1, 2):
        if idx < kappa:
            continue
        if idx == 0 and eps * (-1) ** d == -1:
            continue
        out.append(idx)
    return out


def space_basis(d: int, chi: VCharacter, kappa: int) -> np.ndarray:
    """Rows bu^{d,eps}_{2j+delta} spanning V^d_{kappa,chi}."""
    _, eps = _parities(chi)
    idx = space_indices(d, chi, kappa)
    if not idx:
        return np.zeros((0, 2 * d + 1), dtype=complex)
    return np.array([_vec(basis_u(d, j, eps)) for j in idx])


def _coords(basis: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Coordinates of the orthogonal projection of w onto the (orthogonal) rows of basis."""
    if basis.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    norms = np.sum(np.abs(basis) ** 2, axis=1)
    return (basis.conj() @ w) / norms


def j_min(d: int, d0: int, chi: VCharacter, kappa: int) -> int:
    delta, _ = _parities(chi)
    if kappa == 0 and delta == 0 and (d - d0) % 2:
        return 2
    if delta == 1 and kappa == 0:
        return 1
    return kappa


def minimal_weight(chi: VCharacter, kappa: int) -> int:
    delta, eps = _parities(chi)
    if kappa > 0:
        return kappa
    return 1 if (delta == 1 or eps == -1) else 0


@dataclass
class GramReport:
    """Outcome of propagating the sesquilinear form from the minimal weight upward."""

    d0: int
    tables: dict[int, np.ndarray] = field(default_factory=dict)
    expected: dict[int, np.ndarray] = field(default_factory=dict)
    deviation: float = 0.0
    consistency: float = 0.0

    @property
    def ok(self) -> bool:
        return self.deviation < 1e-9 and self.consistency < 1e-9


def _check_kappa(mu, chi: VCharacter, kappa: int) -> None:
    if kappa == 0:
        return
    delta, _ = _parities(chi)
    m = as_mu(mu)
    if abs(m.mu1 - m.mu2 + 1 - kappa) > 1e-9 or kappa % 2 != delta:
        raise ValueError("kappa > 0 needs mu1 - mu2 + 1 = kappa with the parity of delta")


def gram_recursion_check(d: int, mu, chi: VCharacter, kappa: int = 0, base: complex | None = None) -> GramReport:
    """Propagate <., .> on V^d from the minimal weight through the adjoint relations.

    At each level the spanning set Y^1 V^{d-1} + Y^2 V^{d-2}, closed under Y^0,
    gives an overdetermined linear system for the new Gram table; its residual
    is reported as `consistency` and the distance to bu bu^T as `deviation`.
    """
    _check_kappa(mu, chi, kappa)
    m = as_mu(mu)
    dual = -m.conjugate()
    d0 = minimal_weight(chi, kappa)
    rep = GramReport(d0=d0)
    if d < d0:
        return rep
    b0 = space_basis(d0, chi, kappa)
    if base is None:
        base = float(np.real(b0[0] @ b0[0]))
    rep.tables[d0] = np.array([[base]], dtype=complex)
    bases = {d0: b0}
    for level in range(d0 + 1, d + 1):
        basis = space_basis(level, chi, kappa)
        bases[level] = basis
        n = basis.shape[0]
        if n == 0:
            rep.tables[level] = np.zeros((0, 0), dtype=complex)
            continue
        gens, funcs = [], []
        for a in (1, 2):
            src = level - a
            if src not in rep.tables or bases[src].shape[0] == 0:
                continue
            gsrc = rep.tables[src]
            for r, u in enumerate(bases[src]):
                s = _vec(y_action(a, src, m, u))
                # <Y^a u, v> = <u, proj hat Y^a_{-conj mu} v>
                row = np.empty(n, dtype=complex)
                for c, v in enumerate(basis):
                    w = _vec(adjoint_y(a, src, dual, v))
                    row[c] = gsrc[r] @ np.conj(_coords(bases[src], w))
                gens.append(_coords(basis, s))
                funcs.append(row)
        # close under Y^0: <Y^0 s, v> = <s, proj hat Y^0 v>
        hat0 = np.array([_coords(basis, _vec(adjoint_y(0, level, dual, v))) for v in basis])
        y0 = y_matrix(0, level, m)
        frontier = list(zip(gens, funcs))
        for _ in range(n):
            nxt = []
            for g, fr in frontier:
                vec = g @ basis
                g2 = _coords(basis, vec @ y0)
                fr2 = np.conj(hat0) @ fr
                nxt.append((g2, fr2))
            gens += [x[0] for x in nxt]
            funcs += [x[1] for x in nxt]
            frontier = nxt
        gmat = np.array(gens)
        fmat = np.array(funcs)
        scale = np.linalg.norm(gmat, axis=1, keepdims=True)
        scale[scale == 0] = 1
        gmat, fmat = gmat / scale, fmat / scale
        table, *_ = np.linalg.lstsq(gmat, fmat, rcond=None)
        resid = np.abs(gmat @ table - fmat).max() / max(1.0, np.abs(fmat).max())
        rep.consistency = max(rep.consistency, float(resid))
        rep.tables[level] = table
    for level, table in rep.tables.items():
        b = bases[level]
        expect = (b @ b.T).astype(complex)
        rep.expected[level] = expect
        if table.size:
            rep.deviation = max(rep.deviation, float(np.abs(table - expect).max()))
    return rep


def gram_adjointness_residual(rep: GramReport, mu, chi: VCharacter, kappa: int = 0) -> float:
    """Max |<Y^a u, v> - <u, hat Y^a_{-conj mu} v>| over propagated levels and a in {-2..2}."""
    m = as_mu(mu)
    dual = -m.conjugate()
    worst = 0.0
    for d, g in rep.tables.items():
        bd = space_basis(d, chi, kappa)
        for a in (-2, -1, 0, 1, 2):
            t = d + a
            if t not in rep.tables or rep.tables[t].size == 0 or g.size == 0:
                continue
            bt, gt = space_basis(t, chi, kappa), rep.tables[t]
            for r, u in enumerate(bd):
                lhs_coords = _coords(bt, _vec(y_action(a, d, m, u)))
                for c, v in enumerate(bt):
                    lhs = lhs_coords @ gt[:, c]
                    w = _vec(adjoint_y(a, d, dual, v))
                    rhs = g[r] @ np.conj(_coords(bd, w))
                    worst = max(worst, abs(lhs - rhs))
    return worst


# --------------------------------------------------------------------------
# span generation and multiplicities


@dataclass
class SpanResult:
    d_target: int
    vectors: np.ndarray
    rank: int
    expected_dim: int
    outside: float


def _orth_rows(rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    u, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return rows[:0]
    keep = s > tol * s[0]
    return vh[keep]


def generate_minimal_span(d0: int, chi: VCharacter, kappa: int, mu, d_target: int) -> SpanResult:
    """Words in Y^0, Y^1, Y^2 applied to bu^{d0}_min, as an orthonormal basis at d_target."""
    _check_kappa(mu, chi, kappa)
    _, eps = _parities(chi)
    if d0 != minimal_weight(chi, kappa):
        raise ValueError(f"minimal weight for this character and kappa is {minimal_weight(chi, kappa)}")
    m = as_mu(mu)
    levels: dict[int, np.ndarray] = {d0: _vec(basis_u(d0, j_min(d0, d0, chi, kappa), eps))[None, :]}
    for level in range(d0 + 1, d_target + 1):
        rows = []
        for a in (1, 2):
            if level - a in levels and levels[level - a].shape[0]:
                rows.append(levels[level - a] @ y_matrix(a, level - a, m))
        cur = _orth_rows(np.vstack(rows)) if rows else np.zeros((0, 2 * level + 1), dtype=complex)
        y0 = y_matrix(0, level, m)
        for _ in range(level + 1):
            grown = _orth_rows(np.vstack([cur, cur @ y0])) if cur.shape[0] else cur
            if grown.shape[0] == cur.shape[0]:
                break
            cur = grown
        levels[level] = cur
    vecs = levels.get(d_target, np.zeros((0, 2 * d_target + 1), dtype=complex))
    basis = space_basis(d_target, chi, kappa)
    outside = 0.0
    if vecs.shape[0]:
        proj = np.array([_coords(basis, v) @ basis if basis.shape[0] else 0 * v for v in vecs])
        outside = float(np.abs(vecs - proj).max())
    return SpanResult(d_target, vecs, int(vecs.shape[0]), len(space_indices(d_target, chi, kappa)), outside)


def multiplicities(d0: int, d: int) -> int:
    """Number of copies of a minimal-weight-d0 form among the weight-d vector forms."""
    if d < 0 or d0 < 0:
        raise ValueError("weights are nonnegative")
    if d0 == 0:
        return d // 2 + 1 if d % 2 == 0 else (d - 1) // 2
    if d0 == 1:
        return (d + 1) // 2
    return (d - d0) // 2 + 1 if d >= d0 else 0


def span_configuration(d0: int, t: float = 0.3) -> tuple[VCharacter, int, tuple]:
    """A (character, kappa, mu) triple with minimal weight d0, for cross-checks."""
    if d0 == 0:
        return VCharacter(1, 1), 0, (0.4j, 0.1j, -0.5j)
    if d0 == 1:
        return VCharacter(-1, 1), 0, (0.4j, 0.1j, -0.5j)
    x = (d0 - 1) / 2
    return VCharacter((-1) ** d0, 1), d0, (x + 1j * t, -x + 1j * t, -2j * t)


# --------------------------------------------------------------------------
# intertwining and duality


def intertwining_compatibility_check(a: int, d: int, mu, w: str, f) -> float:
    """|Y^a_mu (f T^d(w^-1, mu^w)) - (Y^a_{mu^w} f) T^{d+a}(w^-1, mu^w)|."""
    from .gamma_functional import t_matrix
    from .wigner import weyl_inverse

    m = as_mu(mu)
    mw = weyl_action(m.as_tuple(), w)
    winv = weyl_inverse(w)
    v = _vec(f)
    t_low = np.asarray(t_matrix(d, winv, mw))
    t_high = np.asarray(t_matrix(d + a, winv, mw))
    lhs = _vec(y_action(a, d, m, v @ t_low))
    rhs = _vec(y_action(a, d, mw, v)) @ t_high
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))


def _duality_matrix(d: int) -> np.ndarray:
    return wigner_D_array(d, v_element(-1, -1) @ weyl_element("wl"))


def duality_check(a: int, d: int, mu, f) -> float:
    """|Y^a_mu (f D^d(v_{--} w_l)) + (Y^a_{-mu^{w_l}} f) D^{d+a}(v_{--} w_l)|."""
    m = as_mu(mu)
    mwl = tuple(-x for x in weyl_action(m.as_tuple(), "wl"))
    v = _vec(f)
    lhs = _vec(y_action(a, d, m, v @ _duality_matrix(d)))
    rhs = -_vec(y_action(a, d, mwl, v)) @ _duality_matrix(d + a)
    return float(np.max(np.abs(lhs - rhs)))
