"""Exact Clebsch-Gordan coefficients <k i d m | (d+a) (i+m)> for k = 1, 2."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .surd import ZERO, SurdScalar


def _selection_ok(d: int, k: int, a: int, m: int, i: int) -> bool:
    return (
        abs(m) <= d
        and abs(i) <= k
        and abs(m + i) <= d + a
        and abs(d - k) <= d + a <= d + k
    )


def _common_factor(d: int, k: int, a: int, m: int, i: int) -> SurdScalar:
    """The shared square-root factor of the k = 1, 2 closed forms."""
    base = Fraction(
        (2 * d + 2 * a + 1) * factorial(2 * d + a - k),
        factorial(k - i) * factorial(k + i) * factorial(2 * d + a + k + 1),
    )
    lo = factorial(d - m) * factorial(d + m)
    hi = factorial(d + a - i - m) * factorial(d + a + i + m)
    if a <= 0:
        return SurdScalar.make((-1) ** (i % 2), base * Fraction(lo, hi))
    return SurdScalar.make(1, base * Fraction(hi, lo))


@lru_cache(maxsize=None)
def cg(d: int, k: int, a: int, m: int, i: int) -> SurdScalar:
    """C^{d,k,a}_{m,i}, exactly; zero outside the selection rules."""
    if k not in (1, 2):
        raise ValueError("only k = 1 and k = 2 are supported")
    if abs(a) > k or d < 0 or not _selection_ok(d, k, a, m, i):
        return ZERO
    f = _common_factor(d, k, a, m, i)
    if k == 2:
        if abs(a) == 2:
            poly = 2
        elif a == -1:
            poly = 2 * (i * (d + 1) + 2 * m)
        elif a == 1:
            poly = 2 * (d * i - 2 * m)
        else:
            poly = 2 * (2 * d * d * (i * i - 1) + d * (5 * i * i + 6 * i * m - 2) + 3 * (i + m) * (i + 2 * m))
            return f * poly
        return f * SurdScalar.make(poly, 6)
    if a == -1:
        return f * SurdScalar.make(-1, 2)
    if a == 1:
        return f * SurdScalar.make(1, 2)
    return f * (-2 * (i * (d + 1) + m))


def cg_matrix(d: int, k: int, a: int) -> np.ndarray:
    """Table with rows m = -d..d and columns i = -k..k (object dtype, exact)."""
    out = np.empty((2 * d + 1, 2 * k + 1), dtype=object)
    for m in range(-d, d + 1):
        for i in range(-k, k + 1):
            out[m + d, i + k] = cg(d, k, a, m, i)
    return out


@lru_cache(maxsize=None)
def cg_float(d: int, k: int, a: int) -> np.ndarray:
    """cg_matrix promoted to floats (all entries are real)."""
    return np.array([[float(x) for x in row] for row in cg_matrix(d, k, a)])


def cgb_vector(d: int) -> tuple[SurdScalar, ...]:
    """The vector (sqrt6/3)(-2(d+1), -(d+3), -3, d-2, 2d) indexed a = -2..2."""
    return tuple(SurdScalar.make(Fraction(c, 3), 6) for c in (-2 * (d + 1), -(d + 3), -3, d - 2, 2 * d))


def cg_sum_identity(d: int, m: int, a: int) -> float:
    """Residual of sum_{+-} C_{m-+1, +-1} sqrt(d(d+1)-m(m-+1)) - C_{m,0} B_a."""
    if abs(m) > d:
        return 0.0
    lhs = 0.0
    for s in (1, -1):
        mm = m - s
        if abs(mm) > d:
            continue
        lhs += float(cg(d, 2, a, mm, s)) * (d * (d + 1) - m * (m - s)) ** 0.5
    rhs = float(cg(d, 2, a, m, 0)) * float(cgb_vector(d)[a + 2])
    return abs(lhs - rhs)


def three_j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner 3j symbol through the k = 1, 2 coefficients (one of j1, j2 in {1, 2})."""
    if m1 + m2 + m3 != 0:
        return 0.0
    # (j1 j2 j3; m1 m2 -M) = (-1)^{j1-j2+M} / sqrt(2 j3 + 1) <j1 m1 j2 m2 | j3 M>
    big_m = -m3
    if j1 in (1, 2):
        c = cg(j2, j1, j3 - j2, m2, m1)
    elif j2 in (1, 2):
        # swap the coupling order: <j1 m1 j2 m2|J M> = (-1)^{j1+j2-J} <j2 m2 j1 m1|J M>
        c = cg(j1, j2, j3 - j1, m1, m2) * (-1) ** ((j1 + j2 - j3) % 2)
    else:
        raise ValueError("one of the first two angular momenta must be 1 or 2")
    return (-1) ** ((j1 - j2 + big_m) % 2) / (2 * j3 + 1) ** 0.5 * float(c)
