"""Truncated multivariate Taylor jets with batched coefficients.

A jet stores the Taylor coefficients of a function of ``nvar`` variables
up to total degree ``order``.  Coefficient arrays carry arbitrary leading
batch dimensions, so a 3x3 matrix of jets is a single ``Jet`` with batch
shape ``(3, 3)``.  Arithmetic broadcasts over the batch dimensions.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial

import numpy as np


class JetSpace:
    """Monomial bookkeeping for jets in ``nvar`` variables up to ``order``."""

    def __init__(self, nvar: int, order: int):
        self.nvar = nvar
        self.order = order
        monos: list[tuple[int, ...]] = []
        for deg in range(order + 1):
            block = []
            for combo in combinations_with_replacement(range(nvar), deg):
                e = [0] * nvar
                for v in combo:
                    e[v] += 1
                block.append(tuple(e))
            monos.extend(sorted(block, reverse=True))
        self.monomials = monos
        self.size = len(monos)
        self.index = {m: k for k, m in enumerate(monos)}
        self.degree = np.array([sum(m) for m in monos])
        pi, pj, pk = [], [], []
        for a, ma in enumerate(monos):
            for b, mb in enumerate(monos):
                if self.degree[a] + self.degree[b] > order:
                    continue
                pi.append(a)
                pj.append(b)
                pk.append(self.index[tuple(x + y for x, y in zip(ma, mb))])
        self._pi = np.array(pi)
        self._pj = np.array(pj)
        scatter = np.zeros((len(pk), self.size))
        scatter[np.arange(len(pk)), pk] = 1.0
        self._scatter = scatter
        self._factorials = np.array([np.prod([factorial(e) for e in m]) for m in monos], dtype=float)

    def lower(self) -> "JetSpace":
        return jet_space(self.nvar, self.order - 1)

    def deriv_map(self, var: int) -> tuple[np.ndarray, np.ndarray]:
        """Source positions and weights for d/dvar into the space of order-1."""
        low = self.lower()
        src = np.empty(low.size, dtype=int)
        wt = np.empty(low.size)
        for k, m in enumerate(low.monomials):
            up = list(m)
            up[var] += 1
            src[k] = self.index[tuple(up)]
            wt[k] = up[var]
        return src, wt


@lru_cache(maxsize=None)
def jet_space(nvar: int, order: int) -> JetSpace:
    return JetSpace(nvar, order)


class Jet:
    __array_priority__ = 1000
    __array_ufunc__ = None

    def __init__(self, space: JetSpace, coeffs):
        self.space = space
        c = np.asarray(coeffs, dtype=complex)
        if c.shape[-1] != space.size:
            raise ValueError("coefficient array does not match the jet space")
        self.c = c

    # construction -------------------------------------------------------
    @staticmethod
    def constant(space: JetSpace, value) -> "Jet":
        value = np.asarray(value, dtype=complex)
        c = np.zeros(value.shape + (space.size,), dtype=complex)
        c[..., 0] = value
        return Jet(space, c)

    @staticmethod
    def variable(space: JetSpace, var: int, value) -> "Jet":
        j = Jet.constant(space, value)
        e = [0] * space.nvar
        e[var] = 1
        j.c[..., space.index[tuple(e)]] = 1.0
        return j

    @staticmethod
    def stack(jets, axis: int = 0) -> "Jet":
        space = min((j.space for j in jets), key=lambda s: s.order)
        arrs = [j.truncate(space.order).c for j in jets]
        ax = axis if axis < 0 else axis
        if ax < 0:
            ax -= 1
        return Jet(space, np.stack(arrs, axis=ax))

    # basic properties -----------------------------------------------------
    @property
    def order(self) -> int:
        return self.space.order

    @property
    def shape(self) -> tuple[int, ...]:
        return self.c.shape[:-1]

    @property
    def value(self):
        return self.c[..., 0]

    def partial(self, multi_index) -> np.ndarray:
        """The mixed partial derivative for the given exponent tuple."""
        k = self.space.index[tuple(multi_index)]
        return self.c[..., k] * self.space._factorials[k]

    def truncate(self, order: int) -> "Jet":
        if order == self.order:
            return self
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        sp = jet_space(self.space.nvar, order)
        return Jet(sp, self.c[..., : sp.size])

    def deriv(self, var: int) -> "Jet":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        src, wt = self.space.deriv_map(var)
        return Jet(self.space.lower(), self.c[..., src] * wt)

    # batch manipulation -----------------------------------------------------
    def __getitem__(self, key) -> "Jet":
        if not isinstance(key, tuple):
            key = (key,)
        if any(k is Ellipsis for k in key):
            return Jet(self.space, self.c[key + (slice(None),)])
        return Jet(self.space, self.c[key])

    def sum(self, axis=None) -> "Jet":
        if axis is None:
            axes = tuple(range(self.c.ndim - 1))
        else:
            axes = tuple((a - 1 if a < 0 else a) for a in np.atleast_1d(axis))
        return Jet(self.space, self.c.sum(axis=axes))

    def swapaxes(self, a: int, b: int) -> "Jet":
        a = a - 1 if a < 0 else a
        b = b - 1 if b < 0 else b
        return Jet(self.space, np.swapaxes(self.c, a, b))

    @property
    def T(self) -> "Jet":
        return self.swapaxes(-1, -2)

    def reshape(self, *shape) -> "Jet":
        return Jet(self.space, self.c.reshape(tuple(shape) + (self.space.size,)))

    def expand(self, axis: int) -> "Jet":
        axis = axis - 1 if axis < 0 else axis
        return Jet(self.space, np.expand_dims(self.c, axis))

    # arithmetic -----------------------------------------------------------
    def _align(self, other):
        if isinstance(other, Jet):
            if other.space.nvar != self.space.nvar:
                raise ValueError("jets over different variable sets")
            order = min(self.order, other.order)
            return self.truncate(order), other.truncate(order)
        return self, Jet.constant(self.space, other)

    def __add__(self, other):
        a, b = self._align(other)
        return Jet(a.space, a.c + b.c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.c)

    def __sub__(self, other):
        a, b = self._align(other)
        return Jet(a.space, a.c - b.c)

    def __rsub__(self, other):
        a, b = self._align(other)
        return Jet(a.space, b.c - a.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            other = np.asarray(other)
            return Jet(self.space, self.c * other[..., None])
        a, b = self._align(other)
        sp = a.space
        prod = a.c[..., sp._pi] * b.c[..., sp._pj]
        return Jet(sp, prod @ sp._scatter)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            other = np.asarray(other)
            return Jet(self.space, self.c / other[..., None])
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = Jet.constant(self.space, np.ones(self.shape))
            base = self
            n = int(p)
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        return self.power(p)

    def __matmul__(self, other):
        """Matrix product over the last two batch axes."""
        if isinstance(other, Jet):
            return (self.expand(-1) * other.expand(-3)).sum(axis=-2)
        other = np.asarray(other)
        return (self.expand(-1) * other[..., None, :, :]).sum(axis=-2)

    def __rmatmul__(self, other):
        other = np.asarray(other)
        return (self.expand(-3) * other[..., :, :, None]).sum(axis=-2)

    # elementary functions ---------------------------------------------------
    def _compose(self, derivs: list) -> "Jet":
        """Apply a univariate function given its derivatives at the constant term."""
        h = Jet(self.space, self.c.copy())
        h.c[..., 0] = 0.0
        out = Jet.constant(self.space, derivs[self.order] / factorial(self.order))
        for k in range(self.order - 1, -1, -1):
            out = out * h + derivs[k] / factorial(k)
        return out

    def power(self, p) -> "Jet":
        a0 = self.value
        derivs, coef = [], 1.0 + 0j
        for k in range(self.order + 1):
            derivs.append(coef * a0 ** (p - k))
            coef = coef * (p - k)
        return self._compose(derivs)

    def reciprocal(self) -> "Jet":
        if np.any(self.value == 0):
            raise ZeroDivisionError("jet division by a zero constant term")
        return self.power(-1)

    def sqrt(self) -> "Jet":
        return self.power(0.5)

    def exp(self) -> "Jet":
        e = np.exp(self.value)
        return self._compose([e] * (self.order + 1))

    def log(self) -> "Jet":
        a0 = self.value
        derivs = [np.log(a0)]
        for k in range(1, self.order + 1):
            derivs.append((-1) ** (k - 1) * factorial(k - 1) * a0 ** (-k))
        return self._compose(derivs)

    def sin(self) -> "Jet":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose([[s, c, -s, -c][k % 4] for k in range(self.order + 1)])

    def cos(self) -> "Jet":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose([[c, -s, -c, s][k % 4] for k in range(self.order + 1)])

    def atan(self) -> "Jet":
        # derivatives of atan from the series of 1/(1+x^2)
        x0 = self.value
        h = Jet(self.space, self.c.copy())
        h.c[..., 0] = 0.0
        # atan(x0 + h) = atan(x0) + atan(h / (1 + x0 (x0 + h)))
        t = h / (self * x0 + 1.0)
        out = Jet.constant(self.space, np.arctan(x0))
        pw = t
        for k in range(1, self.order + 1, 2):
            out = out + pw * ((-1) ** ((k - 1) // 2) / k)
            pw = pw * t * t
        return out

    def __repr__(self):
        return f"Jet(nvar={self.space.nvar}, order={self.order}, shape={self.shape})"


def atan2(y: Jet, x: Jet) -> Jet:
    """Branch-continuous atan2 around the base point."""
    y0, x0 = y.value, x.value
    base = np.arctan2(y0.real, x0.real)
    # angle offset relative to the base direction, small for a jet
    num = y * x0 - x * y0
    den = x * x0 + y * y0
    q = num / den
    return q.atan() - np.arctan(q.value) + base


# dispatch helpers so geometry code runs on arrays and jets alike -------------
def xsqrt(a):
    return a.sqrt() if isinstance(a, Jet) else np.sqrt(a)


def xsum(a, axis):
    return a.sum(axis=axis) if isinstance(a, Jet) else np.sum(a, axis=axis)


def xexp(a):
    return a.exp() if isinstance(a, Jet) else np.exp(a)


def xpow(a, p):
    return a.power(p) if isinstance(a, Jet) else np.power(a + 0j, p)


def xcos(a):
    return a.cos() if isinstance(a, Jet) else np.cos(a)


def xsin(a):
    return a.sin() if isinstance(a, Jet) else np.sin(a)


def xstack(items, axis=0):
    if any(isinstance(x, Jet) for x in items):
        space = next(x.space for x in items if isinstance(x, Jet))
        items = [x if isinstance(x, Jet) else Jet.constant(space, x) for x in items]
        return Jet.stack(items, axis=axis)
    return np.stack([np.asarray(x) for x in items], axis=axis)


def value_of(a):
    return a.value if isinstance(a, Jet) else a
