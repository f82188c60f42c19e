"""Vectors and matrices addressed from the central entry, m = -d..d."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _dim_from_length(n: int) -> int:
    if n % 2 != 1:
        raise ValueError(f"center-indexed data needs odd length, got {n}")
    return (n - 1) // 2


def _offset(m: int, d: int) -> int:
    if not -d <= m <= d:
        raise IndexError(f"index {m} outside [-{d}, {d}]")
    return m + d


@dataclass(frozen=True, eq=False)
class CenterIndexedVector:
    """A (2d+1)-vector whose entry m sits at array position m + d."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1:
            raise ValueError("vector data must be one-dimensional")
        _dim_from_length(v.shape[0])
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, d: int, dtype=complex) -> "CenterIndexedVector":
        return cls(np.zeros(2 * d + 1, dtype=dtype))

    @property
    def d(self) -> int:
        return _dim_from_length(self.values.shape[0])

    def __getitem__(self, m: int):
        return self.values[_offset(m, self.d)]

    def indices(self) -> range:
        return range(-self.d, self.d + 1)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __add__(self, other):
        return CenterIndexedVector(self.values + np.asarray(other))

    def __sub__(self, other):
        return CenterIndexedVector(self.values - np.asarray(other))

    def __mul__(self, c):
        return CenterIndexedVector(self.values * c)

    __rmul__ = __mul__

    def __neg__(self):
        return CenterIndexedVector(-self.values)

    def __matmul__(self, other):
        out = self.values @ np.asarray(other)
        return CenterIndexedVector(out) if np.ndim(out) == 1 else out

    def to_complex(self) -> "CenterIndexedVector":
        return CenterIndexedVector(np.array([complex(x) for x in self.values]))

    def __repr__(self):
        return f"CenterIndexedVector(d={self.d}, {self.values!r})"


@dataclass(frozen=True, eq=False)
class CenterIndexedMatrix:
    """A (2d+1)x(2d+1) matrix whose entry (m', m) sits at (m' + d, m + d)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("matrix data must be square")
        _dim_from_length(v.shape[0])
        object.__setattr__(self, "values", v)

    @property
    def d(self) -> int:
        return _dim_from_length(self.values.shape[0])

    def __getitem__(self, key: tuple[int, int]):
        mp, m = key
        return self.values[_offset(mp, self.d), _offset(m, self.d)]

    def row(self, mp: int) -> CenterIndexedVector:
        return CenterIndexedVector(self.values[_offset(mp, self.d)])

    def column(self, m: int) -> CenterIndexedVector:
        return CenterIndexedVector(self.values[:, _offset(m, self.d)])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __matmul__(self, other):
        return CenterIndexedMatrix(self.values @ np.asarray(other))

    def __rmatmul__(self, other):
        out = np.asarray(other) @ self.values
        return CenterIndexedVector(out) if np.ndim(out) == 1 else CenterIndexedMatrix(out)

    def __add__(self, other):
        return CenterIndexedMatrix(self.values + np.asarray(other))

    def __sub__(self, other):
        return CenterIndexedMatrix(self.values - np.asarray(other))

    def __mul__(self, c):
        return CenterIndexedMatrix(self.values * c)

    __rmul__ = __mul__

    def to_complex(self) -> "CenterIndexedMatrix":
        return CenterIndexedMatrix(np.vectorize(complex, otypes=[complex])(self.values))

    def __repr__(self):
        return f"CenterIndexedMatrix(d={self.d}, {self.values!r})"
