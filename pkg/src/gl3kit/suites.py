"""Named verification suites.

Each suite runs a family of identity checks and returns a SuiteResult made of
Check records (name, worst observed value, tolerance, pass flag, count).  The
eight acceptance suites are `exact`, `dmatrix`, `casimir`, `ycalc`,
`minimal`, `gamma`, `whittaker` and `lambdax`; `cg` is a quick subset of the
Clebsch-Gordan identities.  Random test points come from a seeded generator.
"""
from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import pi, sqrt
from typing import Callable

import numpy as np

DEFAULT_SEED = 20240601


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    count: int = 1
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0
    budget: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def count(self) -> int:
        return sum(c.count for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "identities_checked": self.count,
            "elapsed_seconds": round(self.elapsed, 3),
            "budget_seconds": self.budget,
            "checks": [asdict(c) for c in self.checks],
        }


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def bound(self, name: str, values, tol: float, detail: str = "") -> None:
        """Record that every value is below tol (NaN fails)."""
        arr = np.atleast_1d(np.asarray(values, dtype=float))
        worst = float(np.max(arr)) if arr.size else 0.0
        ok = bool(arr.size == 0 or (np.all(np.isfinite(arr)) and worst < tol))
        self.checks.append(Check(name, worst, tol, ok, int(arr.size), detail))

    def exact(self, name: str, mismatches: int, count: int, detail: str = "") -> None:
        self.checks.append(Check(name, float(mismatches), 0.0, mismatches == 0, count, detail))

    def flag(self, name: str, ok: bool, value: float = 0.0, tol: float = 0.0, count: int = 1, detail: str = "") -> None:
        self.checks.append(Check(name, float(value), tol, bool(ok), count, detail))


def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


# --------------------------------------------------------------------------
# exact identities


def _exact_lie_basis():
    """X_j and K_j as 3x3 arrays of exact SurdSum entries."""
    from .surd import SurdScalar, SurdSum

    def mat(rows, scale=SurdScalar.make(1)):
        return [[SurdSum([scale * SurdScalar.make(Fraction(c.real), 1, Fraction(c.imag))]) for c in row]
                for row in rows]

    i = 1j
    xs = {
        2: mat([[1, i, 0], [i, -1, 0], [0, 0, 0]]),
        -2: mat([[1, -i, 0], [-i, -1, 0], [0, 0, 0]]),
        1: mat([[0, 0, -1], [0, 0, -i], [-1, -i, 0]]),
        -1: mat([[0, 0, 1], [0, 0, -i], [1, -i, 0]]),
        0: mat([[1, 0, 0], [0, 1, 0], [0, 0, -2]], SurdScalar.make(Fraction(-1, 3), 6)),
    }
    ks = {
        1: mat([[0, 0, -1], [0, 0, -i], [1, i, 0]]),
        -1: mat([[0, 0, 1], [0, 0, -i], [-1, i, 0]]),
        0: mat([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], SurdScalar.make(1, 2)),
    }
    return xs, ks


def _exact_mm(a, b):
    from .surd import SurdSum

    return [[SurdSum([]) + sum((a[r][k] * b[k][c] for k in range(3)), SurdSum([])) for c in range(3)]
            for r in range(3)]


def _exact_sub(a, b):
    return [[a[r][c] - b[r][c] for c in range(3)] for r in range(3)]


def _exact_scale(s, a):
    return [[s * a[r][c] for c in range(3)] for r in range(3)]


def _exact_equal(a, b) -> bool:
    return all((a[r][c] - b[r][c]).is_zero for r in range(3) for c in range(3))


def printed_cg_tables() -> dict[tuple[int, int, int], list[list]]:
    """The three tabulated coefficient matrices (rows m, columns i), as exact entries."""
    from .surd import SurdScalar

    def t(scale, rows):
        return [[SurdScalar.make(Fraction(c, scale), r) if c else SurdScalar.make(0) for c, r in row] for row in rows]

    z = (0, 1)
    return {
        (2, 2, -1): t(10, [[z, z, z, (2, 5), (2, 10)],
                          [z, z, (-1, 30), (-1, 10), (2, 5)],
                          [z, (1, 30), z, (-1, 30), z],
                          [(-2, 5), (1, 10), (1, 30), z, z],
                          [(-2, 10), (-2, 5), z, z, z]]),
        (2, 1, 0): t(6, [[z, (2, 6), (2, 3)],
                        [(-2, 3), (1, 6), (3, 2)],
                        [(-3, 2), z, (3, 2)],
                        [(-3, 2), (-1, 6), (2, 3)],
                        [(-2, 3), (-2, 6), z]]),
        (1, 1, 0): t(2, [[z, (1, 2), (1, 2)],
                        [(-1, 2), z, (1, 2)],
                        [(-1, 2), (-1, 2), z]]),
    }


def _cg_symmetry(rec: _Recorder) -> None:
    from .clebsch_gordan import cg

    bad = n = 0
    for d in range(7):
        for k in (1, 2):
            for a in range(-k, k + 1):
                if d + a < 0:
                    continue
                for m in range(-d, d + 1):
                    for i in range(-k, k + 1):
                        n += 1
                        if cg(d, k, a, -m, -i) != cg(d, k, a, m, i) * (-1) ** ((k - a) % 2):
                            bad += 1
    rec.exact("cg symmetry under (m, i) -> (-m, -i), d <= 6, k <= 2", bad, n)


def _cg_tables(rec: _Recorder) -> None:
    from .clebsch_gordan import cg_matrix

    for (d, k, a), table in printed_cg_tables().items():
        got = cg_matrix(d, k, a)
        bad = sum(1 for r, row in enumerate(table) for c, want in enumerate(row) if got[r][c] != want)
        same_text = [[repr(x) for x in row] for row in table] == [[repr(x) for x in row] for row in got]
        rec.exact(f"tabulated C^{{{d},{k},{a}}}", bad + (0 if same_text else 1), len(table) * len(table[0]))


def suite_exact(rng: np.random.Generator) -> list[Check]:
    from .clebsch_gordan import cg
    from .surd import SurdScalar, SurdSum, i_power

    rec = _Recorder()
    _cg_symmetry(rec)
    _cg_tables(rec)

    xs, ks = _exact_lie_basis()
    zero = [[SurdScalar.make(0)] * 3 for _ in range(3)]

    def bracket(a, b):
        return _exact_sub(_exact_mm(a, b), _exact_mm(b, a))

    def rule(name, left, right, coef_fn, target):
        bad = n = 0
        for j in left:
            for k in right:
                n += 1
                want = _exact_scale(coef_fn(j, k), target[j + k]) if (j + k) in target else zero
                if not _exact_equal(bracket(left[j], right[k]), want):
                    bad += 1
        rec.exact(name, bad, n)

    rule("[X_j, X_k] = 2 sqrt5 i^{1-j-k} C^{2,2,-1}_{j,k} K_{j+k}", xs, xs,
         lambda j, k: SurdScalar.make(2, 5) * i_power(1 - j - k) * cg(2, 2, -1, j, k), ks)
    rule("[X_j, K_k] = sqrt12 i^{1+k} C^{2,1,0}_{j,k} X_{j+k}", xs, ks,
         lambda j, k: SurdScalar.make(1, 12) * i_power(1 + k) * cg(2, 1, 0, j, k), xs)
    rule("[K_j, K_k] = 2i C^{1,1,0}_{j,k} K_{j+k}", ks, ks,
         lambda j, k: SurdScalar.make(0, 1, 2) * cg(1, 1, 0, j, k), ks)

    basis = [("X", j, m) for j, m in xs.items()] + [("K", j, m) for j, m in ks.items()]
    bad = 0
    for la, ja, a in basis:
        for lb, jb, b in basis:
            s = sum((a[r][c] * b[r][c].conjugate() for r in range(3) for c in range(3)), SurdSum([]))
            want = 4 if (la, ja) == (lb, jb) else 0
            if not (s - want).is_zero:
                bad += 1
    rec.exact("Killing-form orthonormality of X_j, K_j (norm 4)", bad, len(basis) ** 2)
    return rec.checks


def suite_cg(rng: np.random.Generator) -> list[Check]:
    from .clebsch_gordan import cg_float, cg_sum_identity, three_j

    rec = _Recorder()
    _cg_symmetry(rec)
    _cg_tables(rec)
    rec.bound("sum identity sum C sqrt(d(d+1)-m(m-+1)) = C_{m,0} B_a",
              [cg_sum_identity(d, m, a) for d in range(9) for a in range(-2, 3) if d + a >= 0
               for m in range(-d, d + 1)], 1e-12)
    worst, n = 0.0, 0
    for d in range(7):
        for k in (1, 2):
            # columns of the coupling matrix are orthonormal over the target weights
            for a in range(-k, k + 1):
                if d + a < abs(d - k):
                    continue
                c = cg_float(d, k, a)
                n += 1
                worst = max(worst, abs(np.sum(c * c) - (2 * (d + a) + 1)))
    rec.flag("coupling completeness sum_{m,i} C^2 = 2(d+a)+1", worst < 1e-12, worst, 1e-12, n)
    worst, n = 0.0, 0
    for j in range(1, 5):
        for j3 in range(max(0, j - 1), j + 2):
            for j3b in range(max(0, j - 1), j + 2):
                for m3 in range(-min(j3, j3b), min(j3, j3b) + 1):
                    s = sum(three_j(1, j, j3, m1, -m1 - m3, m3)
                            * three_j(1, j, j3b, m1, -m1 - m3, m3)
                            for m1 in (-1, 0, 1) if abs(m1 + m3) <= j)
                    want = (j3 == j3b) / (2 * j3 + 1)
                    worst = max(worst, abs(s - want))
                    n += 1
    rec.flag("3j orthogonality over (m1, m2)", worst < 1e-12, worst, 1e-12, n)
    return rec.checks


# --------------------------------------------------------------------------
# Wigner D-matrices


PRINTED_D1_W3 = 0.5 * np.array([[-1, -1j * sqrt(2), 1], [1j * sqrt(2), 0, 1j * sqrt(2)], [1, -1j * sqrt(2), -1]])
PRINTED_D2_W3 = 0.25 * np.array([
    [1, 2j, -sqrt(6), -2j, 1],
    [-2j, 2, 0, 2, 2j],
    [-sqrt(6), 0, -2, 0, -sqrt(6)],
    [2j, 2, 0, 2, -2j],
    [1, -2j, -sqrt(6), 2j, 1],
])


def _random_rotations(rng: np.random.Generator, n: int) -> np.ndarray:
    from scipy.spatial.transform import Rotation

    return Rotation.random(n, random_state=rng).as_matrix()


def suite_dmatrix(rng: np.random.Generator) -> list[Check]:
    from .clebsch_gordan import cg_float
    from .wigner import WEYL, exact_to_complex, wigner_D_array, wigner_D_exact

    rec = _Recorder()
    w3 = WEYL["w3"]
    rec.bound("D^1(w3) equals the tabulated matrix", np.abs(wigner_D_array(1, w3) - PRINTED_D1_W3).max(), 1e-12)
    rec.bound("D^2(w3) equals the tabulated matrix", np.abs(wigner_D_array(2, w3) - PRINTED_D2_W3).max(), 1e-12)
    exact_gap = [np.abs(exact_to_complex(wigner_D_exact(d, w)) - wigner_D_array(d, WEYL[w])).max()
                 for d in range(6) for w in WEYL]
    rec.bound("exact D^d at Weyl elements equals the numerical D^d, d <= 5", exact_gap, 1e-12)

    ka, kb = _random_rotations(rng, 200), _random_rotations(rng, 200)
    mult, unit = [], []
    for d in range(6):
        for a, b in zip(ka, kb):
            da, db, dab = wigner_D_array(d, a), wigner_D_array(d, b), wigner_D_array(d, a @ b)
            mult.append(np.abs(da @ db - dab).max())
            unit.append(np.abs(da @ da.conj().T - np.eye(2 * d + 1)).max())
    rec.bound("D(ab) = D(a) D(b), 200 rotations, d <= 5", mult, 1e-10)
    rec.bound("D unitary, 200 rotations, d <= 5", unit, 1e-10)

    worst = []
    for k_mat in _random_rotations(rng, 5):
        for d in range(5):
            dd = wigner_D_array(d, k_mat)
            for k in (1, 2):
                dk = wigner_D_array(k, k_mat)
                bigs = {a: wigner_D_array(d + a, k_mat) for a in range(-k, k + 1) if d + a >= 0}
                cs = {a: cg_float(d, k, a) for a in bigs}
                for j in range(-k, k + 1):
                    for i in range(-k, k + 1):
                        for mp in range(-d, d + 1):
                            for m in range(-d, d + 1):
                                lhs = dk[j + k, i + k] * dd[mp + d, m + d]
                                rhs = 0j
                                for a, big in bigs.items():
                                    e = d + a
                                    if abs(mp + j) <= e and abs(m + i) <= e:
                                        rhs += cs[a][mp + d, j + k] * cs[a][m + d, i + k] * big[mp + j + e, m + i + e]
                                worst.append(abs(lhs - rhs))
    rec.bound("product rule D^k_{j,i} D^d_{m',m} = sum_a C C D^{d+a}", worst, 1e-10)
    return rec.checks


# --------------------------------------------------------------------------
# Casimir operators


def suite_casimir(rng: np.random.Generator) -> list[Check]:
    from .lie_operators import IwasawaPoint, TestFunction, casimir, casimir_by_definition, iwasawa_decompose
    from .spectral import lambda1, lambda2, random_mu

    rec = _Recorder()
    eig, defn = [], []
    for _ in range(5):
        mu = random_mu(rng).as_tuple()
        p = IwasawaPoint.random(rng)
        for d in range(4):
            tf = TestFunction(mu, d, (0.0, 0.0))
            f = np.asarray(tf(iwasawa_decompose(p.matrix())))
            scale = max(1.0, float(np.abs(f).max()))
            c1, c2 = np.asarray(casimir(1, tf, p)), np.asarray(casimir(2, tf, p))
            eig.append(np.abs(c1 - lambda1(mu) * f).max() / scale)
            eig.append(np.abs(c2 - lambda2(mu) * f).max() / scale)
            b1 = np.asarray(casimir_by_definition(1, tf, p.matrix()))
            b2 = np.asarray(casimir_by_definition(2, tf, p.matrix()))
            defn.append(np.abs(c1 - b1).max() / scale)
            defn.append(np.abs(c2 - b2).max() / scale)
    rec.bound("Delta_1 f = lambda_1 f and Delta_2 f = lambda_2 f, d <= 3, 5 random mu", eig, 1e-6)
    rec.bound("coordinate Casimirs agree with the E_{i,j} definition", defn, 1e-6)
    return rec.checks


# --------------------------------------------------------------------------
# Y^a calculus


def suite_ycalc(rng: np.random.Generator) -> list[Check]:
    from .coefficient_flow import (adjoint_raising_R, adjoint_raising_R_closed_form, adjoint_y, apply_word,
                                   display_consistency, raising_R, raising_R_closed_form, y_action,
                                   y_action_pointwise_check)
    from .lie_operators import IwasawaPoint
    from .minimal_classifier import g_vectors
    from .spectral import random_mu

    rec = _Recorder()
    bad = n = 0
    for mu in ((Fraction(1, 3), Fraction(-2, 5), Fraction(1, 15)), (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))):
        for a in range(-2, 3):
            for d in range(6):
                if d + a < 0:
                    continue
                n += 1
                bad += not display_consistency(a, d, mu)
    rec.exact("explicit three/four-term actions equal the general form (exact)", bad, n)

    mu = random_mu(rng).as_tuple()
    p = IwasawaPoint.random(rng)
    pw = []
    for a in range(-2, 3):
        for d in (2, 3):
            f = rng.normal(size=2 * d + 1) + 1j * rng.normal(size=2 * d + 1)
            pw.append(y_action_pointwise_check(a, d, mu, f, p))
    rec.bound("Y^a acts as X_j on coefficient vectors (pointwise)", pw, 1e-6)

    plus, adj_r = [], []
    for _ in range(20):
        mu = random_mu(rng).as_tuple()
        for var in (1, 2):
            for d in range(1, 4):
                for j in range(-d, d + 1):
                    for s in (1, -1):
                        r = np.asarray(raising_R_closed_form(var, d, mu, j, s))
                        plus.append(_rel(raising_R(var, d, mu, j, s), r) if np.abs(r).max() else
                                    float(np.abs(np.asarray(raising_R(var, d, mu, j, s))).max()))
                        h = np.asarray(adjoint_raising_R_closed_form(var, d, mu, j, s))
                        g = np.asarray(adjoint_raising_R(var, d, mu, j, s))
                        adj_r.append(_rel(g, h) if np.abs(h).max() else float(np.abs(g).max()))
    rec.bound("raising identities R^1, R^2 at 20 random mu", plus, 1e-9)
    rec.bound("adjoint raising identities at 20 random mu", adj_r, 1e-9)

    adj = []
    for _ in range(5):
        mu = random_mu(rng)
        dual = tuple(-x.conjugate() for x in mu.as_tuple())
        for a in range(-2, 3):
            for d in range(2, 5):
                u = rng.normal(size=2 * d + 1) + 1j * rng.normal(size=2 * d + 1)
                v = rng.normal(size=2 * d + 2 * a + 1) + 1j * rng.normal(size=2 * d + 2 * a + 1)
                lhs = np.vdot(v, np.asarray(y_action(a, d, mu.as_tuple(), u)))
                rhs = np.vdot(np.asarray(adjoint_y(a, d, dual, v)), u)
                adj.append(abs(lhs - rhs) / max(1.0, abs(lhs)))
    rec.bound("<Y^a u, v> = <u, hat Y^a v> at the dual parameter", adj, 1e-9)

    ym = []
    for _ in range(5):
        mu = random_mu(rng).as_tuple()
        m1, m2, m3 = mu
        g1 = g_vectors("g1", 2, mu=mu)
        lhs = sqrt(35) * np.asarray(apply_word((0, -2), 2, mu, g1))
        rhs = -8 * sqrt(2) * (m1 - m2 - 1) * (m1 - m3 - 1) * (m2 - m3 - 1)
        ym.append(_rel(lhs, [rhs]))
    rec.bound("sqrt35 Y^{-2} Y^0 g1 = -8 sqrt2 prod (mu_i - mu_j - 1) bu^{0,+}_0", ym, 1e-9)
    return rec.checks


# --------------------------------------------------------------------------
# minimal vectors


def _classifier_configs(d: int):
    from .minimal_classifier import Shifted, Unitary

    t = 0.37
    yield "generic unitary", Unitary(0.3, 0.71)
    if d == 0:
        return
    yield "minimal line", Shifted((d - 1) / 2, t)
    yield "minimal line, t = 0", Shifted((d - 1) / 2, 0.0)
    yield "bad line", Shifted(d - 1, 0.0)
    yield "generic shifted", Shifted(0.23, 0.4)


def suite_minimal(rng: np.random.Generator) -> list[Check]:
    from .coefficient_flow import (generate_minimal_span, gram_adjointness_residual, gram_recursion_check,
                                   multiplicities, span_configuration)
    from .minimal_classifier import classify_minimal, lowering_residual, minimal_nullspace, subspace_angle
    from .wigner import VCharacter

    rec = _Recorder()
    angles, dims, resid = [], 0, []
    n = 0
    for d in range(11):
        for _, std in _classifier_configs(d):
            mu = std.mu()
            cls = classify_minimal(d, std)
            null, basis = minimal_nullspace(d, mu), cls.matrix()
            n += 1
            if null.shape[0] != basis.shape[0]:
                dims += 1
                continue
            angles.append(subspace_angle(null, basis) if basis.shape[0] else 0.0)
            resid.extend(lowering_residual(d, mu, b) for b in basis)
    rec.exact("nullspace dimension equals classified basis size, d <= 10", dims, n)
    rec.bound("subspace angle between nullspace and classified basis", angles, 1e-8)
    rec.bound("classified vectors are annihilated by the lowering maps", resid, 1e-8)

    dev = []
    for chi in (VCharacter(1, 1), VCharacter(1, -1), VCharacter(-1, 1), VCharacter(-1, -1)):
        t1, t2 = rng.uniform(-1, 1, 2)
        mu = (1j * t1, 1j * t2, -1j * (t1 + t2))
        rep = gram_recursion_check(12, mu, chi, 0)
        dev.extend([rep.deviation, rep.consistency, gram_adjointness_residual(rep, mu, chi, 0)])
    rec.bound("going-up Gram recursion gives orthonormality up to d = 12", dev, 1e-10)

    bad = pairs = 0
    for d0 in range(4):
        chi, kappa, mu = span_configuration(d0)
        for d in range(d0, d0 + 5):
            pairs += 1
            bad += generate_minimal_span(d0, chi, kappa, mu, d).rank != multiplicities(d0, d)
    rec.exact("multiplicity formula equals generated-span rank", bad, pairs)
    return rec.checks


# --------------------------------------------------------------------------
# gamma factors and intertwining


def suite_gamma(rng: np.random.Generator) -> list[Check]:
    from .gamma_functional import (_w4_row, case3_anchor_constant, classical_whittaker_matrix, gamma_to_classical_quotient,
                                   gamma_W, t_matrix, verify_gdwhittfes)
    from .spectral import random_mu
    from .wigner import basis_u

    rec = _Recorder()
    quot = []
    for d in range(4):
        for _ in range(3):
            u = complex(rng.uniform(-0.8, 0.8), rng.uniform(-2, 2))
            quot.append(np.abs(gamma_to_classical_quotient(d, u) - 1).max())
    rec.bound("classical-Whittaker form of Gamma_W over Gamma_W equals 1", quot, 1e-10)

    fe = []
    for d in range(4):
        for _ in range(3):
            u = complex(rng.uniform(-0.8, 0.8), rng.uniform(-2, 2))
            y = float(rng.choice([-1, 1]) * rng.uniform(0.3, 2.0))
            left = np.diag(classical_whittaker_matrix(d, y, -u))
            right = (pi * abs(y)) ** (-u) * np.array(gamma_W(d, u, int(np.sign(y))).entries) \
                * np.diag(classical_whittaker_matrix(d, y, u))
            fe.append(_rel(left, right))
    rec.bound("W^d(y, -u) = (pi|y|)^{-u} Gamma_W(u, sgn y) W^d(y, u)", fe, 1e-8)

    paths = []
    for d in range(4):
        for _ in range(3):
            mu = random_mu(rng, scale=0.4).as_tuple()
            a = np.asarray(t_matrix(d, "wl", mu, ("w2", "w3", "w2")))
            b = np.asarray(t_matrix(d, "wl", mu, ("w3", "w2", "w3")))
            paths.append(_rel(a, b))
    rec.bound("T^d(w_l) via w2 w3 w2 equals via w3 w2 w3, d <= 3", paths, 1e-9)

    worst = []
    for case, d, t in ((1, 2, 0.0), (1, 3, 0.4), (1, 4, 0.2), (2, 5, 0.0), (3, 3, 0.0), (3, 7, 0.0),
                       (4, 2, 0.0), (4, 3, 0.0), (4, 4, 0.0)):
        worst.append(verify_gdwhittfes(case, d, t).worst)
    rec.bound("g-vectors proportional to intertwined rows (four families)", worst, 1e-8)

    anchor = []
    for d in (3, 7, 11):
        mu = ((d - 1) / 2, 0.0, -(d - 1) / 2)
        row = _w4_row(d, 1, "d-1", mu)
        b = np.asarray(basis_u(d, (d + 1) // 2, 1))
        c = np.vdot(b, row) / np.vdot(b, b)
        anchor.append(abs(c / case3_anchor_constant(d) - 1))
    rec.bound("case-3 anchor constant, d = 3, 7, 11", anchor, 1e-9)
    return rec.checks


# --------------------------------------------------------------------------
# Whittaker functions


WHITTAKER_SHIFTED_MU = (2 + 0.1j, 0.4, -2.4 - 0.1j)
WHITTAKER_YS = ((1.0, 1.0), (0.7, 1.3))


def _minwhitt_low(rec: _Recorder) -> None:
    from .whittaker_eval import jacquet_oracle, lambda_alpha, w_star
    from .wigner import basis_u, weyl_action

    mu = WHITTAKER_SHIFTED_MU
    d0, d1 = [], []
    for y in WHITTAKER_YS:
        w0, _ = jacquet_oracle(0, y, mu)
        d0.append(_rel(lambda_alpha((0, 0, 0), mu) * w0[0, 0], w_star(0, y, mu).value))
        w1, _ = jacquet_oracle(1, y, mu)
        m = np.asarray(w1.values)
        pairs = [
            (sqrt(2) * lambda_alpha((0, 1, 1), mu) * np.asarray(basis_u(1, 0, -1)) @ m, mu),
            (-2 * lambda_alpha((1, 0, 1), mu) * np.asarray(basis_u(1, 1, -1)) @ m, weyl_action(mu, "w4")),
            (2 * lambda_alpha((1, 1, 0), mu) * np.asarray(basis_u(1, 1, 1)) @ m, weyl_action(mu, "w5")),
        ]
        for lhs, nu in pairs:
            d1.append(_rel(lhs, w_star(1, y, nu).value))
    rec.bound("d = 0: Lambda W^0 (Jacquet) = W^{0*} (Mellin-Barnes)", d0, 1e-4)
    rec.bound("d = 1: three rows Lambda bu W^1 (Jacquet) = W^{1*} (Mellin-Barnes)", d1, 1e-4)


def _minwhitt_central(rec: _Recorder) -> None:
    from .whittaker_eval import jacquet_central_oracle, lambda_star, w_star

    for d, t, y, tol in ((3, 0.3, (1.0, 0.8), 1e-4), (2, 0.3, (1.0, 0.8), 1e-3)):
        mu = ((d - 1) / 2 + 1j * t, -(d - 1) / 2 + 1j * t, -2j * t)
        ws = w_star(d, y, mu, components=[0]).value[0]
        c, _ = jacquet_central_oracle(d, y, t)
        rec.bound(f"d = {d}: Lambda* W^d_{{-d,0}} (Jacquet) = W^{{d*}}_0 (Mellin-Barnes)", _rel(lambda_star(d, mu) * c, ws), tol)


def _vanishing_row(rec: _Recorder) -> None:
    from .gamma_functional import classical_whittaker
    from .whittaker_eval import jacquet_central_oracle

    vals = []
    for d in range(2, 6):
        grid = np.geomspace(0.05, 5, 12)
        top = max(abs(classical_whittaker(d, d, big_y, d - 1)) for big_y in grid)
        bottom = max(abs(classical_whittaker(d, -d, big_y, d - 1)) for big_y in grid)
        vals.append(top / bottom)
        t = 0.3
        c_top, _ = jacquet_central_oracle(d, (1.0, 1.0), t, row=d)
        vals.append(abs(c_top))
    rec.bound("row W^d_{d,.} vanishes on the minimal line, d = 2..5", vals, 1e-6)


def _whittaker_mu(rng: np.random.Generator, d: int) -> tuple:
    """Generic mu at weights 0 and 1, a random point of the minimal line above."""
    from .spectral import minimal_line_mu, random_mu

    if d <= 1:
        return random_mu(rng).as_tuple()
    return minimal_line_mu(d, float(rng.uniform(-1, 1))).as_tuple()


def _right_of_poles(rng: np.random.Generator, d: int, mu, n: int) -> list[tuple[complex, complex]]:
    from .whittaker_eval import resolve_contour

    s1, s2, _ = resolve_contour(d, mu)
    return [(complex(s1 + rng.uniform(0, 2), rng.uniform(-5, 5)), complex(s2 + rng.uniform(0, 2), rng.uniform(-5, 5)))
            for _ in range(n)]


def suite_whittaker(rng: np.random.Generator) -> list[Check]:
    from .whittaker_eval import barnes_second_lemma_check, ladder_check, mellin_pde_residual

    rec = _Recorder()
    barnes = []
    for _ in range(10):
        a, b, c, dd, e = rng.uniform(0.2, 1.5, 5) + 1j * rng.uniform(-1, 1, 5)
        _, closed, diff = barnes_second_lemma_check(a, b, c, dd, e)
        barnes.append(diff / max(1.0, abs(closed)))
    rec.bound("Barnes second lemma: quadrature = closed form, 10 random sets", barnes, 1e-8)

    _minwhitt_low(rec)
    _minwhitt_central(rec)
    _vanishing_row(rec)

    pde = []
    for d in range(6):
        mu = _whittaker_mu(rng, d)
        for s in _right_of_poles(rng, d, mu, 10):
            for mp in range(-d, d + 1):
                for which in (1, 2):
                    r, scale = mellin_pde_residual(d, mp, s, mu, which)
                    pde.append(abs(r) / scale if scale else abs(r))
    rec.bound("transported Casimir equations in Mellin space (residual / scale), d <= 5", pde, 1e-10)

    ladder = []
    for d in range(1, 5):
        mu = _whittaker_mu(rng, d)
        pts = _right_of_poles(rng, d, mu, 3)
        for mp in range(-d, d + 1):
            for sign in (1, -1):
                ladder.append(ladder_check(d, mp, sign, None, mu, pointwise_s=pts))
    mu = _whittaker_mu(rng, 1)
    for sign in (1, -1):
        ladder.append(ladder_check(1, 0, sign, [(1.0, 1.0), (0.7, 1.3)], mu))
    rec.bound("ladder operators S^+- shift m' by one", ladder, 1e-6)
    return rec.checks


# --------------------------------------------------------------------------
# Lambda_x


def _gauss_q(re, im=0):
    return (Fraction(re), Fraction(im))


def _gq_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gq_add(*xs):
    return (sum((x[0] for x in xs), Fraction(0)), sum((x[1] for x in xs), Fraction(0)))


def _gq_scale(c, a):
    return (c * a[0], c * a[1])


def lambda_x_exact(mu, x: Fraction):
    """27 lambda2^2 + 4 (lambda1 + x^2 - 1)(lambda1 + 4x^2 - 1)^2 over Q(i)."""
    m1, m2, m3 = mu
    sq = _gq_add(_gq_mul(m1, m1), _gq_mul(m2, m2), _gq_mul(m3, m3))
    l1 = _gq_add(_gauss_q(1), _gq_scale(Fraction(-1, 2), sq))
    l2 = _gq_mul(_gq_mul(m1, m2), m3)
    a = _gq_add(l1, _gauss_q(x * x - 1))
    b = _gq_add(l1, _gauss_q(4 * x * x - 1))
    return _gq_add(_gq_scale(27, _gq_mul(l2, l2)), _gq_scale(4, _gq_mul(a, _gq_mul(b, b))))


def suite_lambdax(rng: np.random.Generator) -> list[Check]:
    from .lie_operators import lambda_x_eigenvalue, lambda_x_factored_shifted, lambda_x_factored_unitary

    rec = _Recorder()
    uni, sh = [], []
    for _ in range(50):
        t1, t2, x, a, t = rng.uniform(-2, 2, 5)
        mu = (1j * t1, 1j * t2, -1j * (t1 + t2))
        ref = lambda_x_eigenvalue(mu, x)
        uni.append(abs(lambda_x_factored_unitary(t1, t2, x) - ref) / abs(ref))
        mu = (a + 1j * t, -a + 1j * t, -2j * t)
        ref = lambda_x_eigenvalue(mu, x)
        sh.append(abs(lambda_x_factored_shifted(a, t, x) - ref) / abs(ref))
    rec.bound("factored form on the unitary axis, 50 random (mu, x)", uni, 1e-9)
    rec.bound("factored form on the shifted lines, 50 random (mu, x)", sh, 1e-9)

    bad = n = 0
    for d in range(2, 12):
        x = Fraction(d - 1, 2)
        for t in (Fraction(0), Fraction(3, 7), Fraction(-5, 2)):
            mu = (_gauss_q(x, t), _gauss_q(-x, t), _gauss_q(0, -2 * t))
            n += 2
            bad += lambda_x_exact(mu, x) != (0, 0)
            bad += lambda_x_factored_shifted(x, t, x) != 0
    rec.exact("Lambda_x vanishes exactly on the minimal lines x = (d-1)/2", bad, n)
    return rec.checks


# --------------------------------------------------------------------------
# registry


SUITES: dict[str, tuple[Callable[[np.random.Generator], list[Check]], float, int | None]] = {
    # name: (runner, time budget in seconds, acceptance criterion)
    "exact": (suite_exact, 1.0, 1),
    "dmatrix": (suite_dmatrix, 10.0, 2),
    "casimir": (suite_casimir, 120.0, 3),
    "ycalc": (suite_ycalc, 30.0, 4),
    "minimal": (suite_minimal, 60.0, 5),
    "gamma": (suite_gamma, 60.0, 6),
    "whittaker": (suite_whittaker, 600.0, 7),
    "lambdax": (suite_lambdax, 1.0, 8),
    "cg": (suite_cg, 5.0, None),
}

ACCEPTANCE_ORDER = ["exact", "dmatrix", "casimir", "ycalc", "minimal", "gamma", "whittaker", "lambdax"]


def resolve_seed(seed: int | None = None) -> int:
    """GL3_SEED wins over the argument, which wins over the default."""
    env = os.environ.get("GL3_SEED")
    if env is not None and env.strip():
        return int(env)
    return DEFAULT_SEED if seed is None else int(seed)


def run_suite(name: str, seed: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    runner, budget, _ = SUITES[name]
    seed = resolve_seed(seed)
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    checks = runner(rng)
    return SuiteResult(name, seed, checks, time.perf_counter() - start, budget)
