"""Classify power-function minimal vectors and compare with the brute-force nullspace."""
import numpy as np

from gl3kit.minimal_classifier import (Shifted, classify_minimal, minimal_ktype_parameters, minimal_nullspace,
                                       subspace_angle, whittaker_vanishing)

# one parameter from each of a few cases
samples = [
    (2, (0.3j, 0.71j, -1.01j)),
    (7, Shifted(3, 0.4)),
    (5, (2, 0, -2)),
    (3, Shifted(2)),
]

for d, mu in samples:
    cls = classify_minimal(d, mu)
    null = minimal_nullspace(d, cls.mu)
    angle = subspace_angle(cls.matrix(), null) if len(cls.basis) else 0.0
    print(f"d={d}  case {cls.case}  dim={len(cls.basis)}  nullspace dim={null.shape[0]}  angle={angle:.1e}")
    for b in cls.basis:
        print("   ", b.label, "  Whittaker vanishes:", whittaker_vanishing(d, cls.mu, b.vector))

# minimal K-type data for a few d0
print()
for d0 in range(4):
    print(minimal_ktype_parameters(d0))
