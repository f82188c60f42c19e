"""Spectral parameters mu = (mu1, mu2, mu3) with mu1 + mu2 + mu3 = 0."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class SpectralParameter:
    mu1: complex
    mu2: complex
    mu3: complex

    def __post_init__(self):
        s = self.mu1 + self.mu2 + self.mu3
        scale = 1 + abs(self.mu1) + abs(self.mu2) + abs(self.mu3)
        if abs(s) > 1e-12 * scale:
            raise ValueError(f"spectral parameter must sum to zero (sum = {s})")

    @classmethod
    def from_pair(cls, mu1: complex, mu2: complex) -> "SpectralParameter":
        return cls(mu1, mu2, -mu1 - mu2)

    def __iter__(self):
        return iter((self.mu1, self.mu2, self.mu3))

    def __getitem__(self, i: int) -> complex:
        return (self.mu1, self.mu2, self.mu3)[i]

    def __len__(self) -> int:
        return 3

    def __neg__(self) -> "SpectralParameter":
        return SpectralParameter(-self.mu1, -self.mu2, -self.mu3)

    def conjugate(self) -> "SpectralParameter":
        return SpectralParameter(*(complex(m).conjugate() for m in self))

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.mu1, self.mu2, self.mu3)


def as_mu(mu: Sequence[complex] | SpectralParameter) -> SpectralParameter:
    if isinstance(mu, SpectralParameter):
        return mu
    vals = [complex(m) for m in mu]
    if len(vals) == 2:
        vals.append(-vals[0] - vals[1])
    if len(vals) != 3:
        raise ValueError("spectral parameter needs three components")
    return SpectralParameter(*vals)


def lambda1(mu) -> complex:
    """Eigenvalue of the degree-two Casimir: 1 - (mu1^2 + mu2^2 + mu3^2)/2."""
    m = as_mu(mu)
    return 1 - (m.mu1**2 + m.mu2**2 + m.mu3**2) / 2


def lambda2(mu) -> complex:
    """Eigenvalue of the degree-three Casimir: mu1 mu2 mu3."""
    m = as_mu(mu)
    return m.mu1 * m.mu2 * m.mu3


def random_mu(rng: np.random.Generator, scale: float = 1.0, imaginary: bool = False) -> SpectralParameter:
    if imaginary:
        a, b = 1j * rng.uniform(-scale, scale, 2)
    else:
        a, b = rng.uniform(-scale, scale, 2) + 1j * rng.uniform(-scale, scale, 2)
    return SpectralParameter.from_pair(a, b)


def minimal_line_mu(d: int, t: float) -> SpectralParameter:
    """((d-1)/2 + it, -(d-1)/2 + it, -2it)."""
    return SpectralParameter((d - 1) / 2 + 1j * t, -(d - 1) / 2 + 1j * t, -2j * t)
