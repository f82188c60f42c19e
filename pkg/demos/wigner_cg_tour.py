"""A short walk through the SO(3) layer: D-matrices, Weyl elements, Clebsch-Gordan tables."""
import numpy as np

from gl3kit.clebsch_gordan import cg, cg_float
from gl3kit.wigner import WEYL, euler_rotation, wigner_D, wigner_D_exact

np.set_printoptions(precision=4, suppress=True)

# D-matrices are indexed from the center: rows and columns run -d..d
k = euler_rotation(0.3, 1.1, -0.4)
D2 = wigner_D(2, k)
print("D^2(k)[-2, 0] =", D2[-2, 0])
print("unitary:", np.allclose(D2.values @ D2.values.conj().T, np.eye(5)))

# at the Weyl elements the entries are exact surds (times powers of i)
print("\nD^1(w3), exact:")
print(wigner_D_exact(1, "w3"))
print("D^1(w3), numeric:")
print(wigner_D(1, WEYL["w3"]).values)

# representation property on two random rotations
rng = np.random.default_rng(0)
a = euler_rotation(*rng.uniform(0, np.pi, 3))
b = euler_rotation(*rng.uniform(0, np.pi, 3))
err = np.abs(wigner_D(3, a).values @ wigner_D(3, b).values - wigner_D(3, a @ b).values).max()
print(f"\nD^3(a) D^3(b) - D^3(ab): {err:.1e}")

# Clebsch-Gordan coefficients for k = 1, exact and as a float table
print("\nC(2, 1, 0; m=1, i=-1) =", cg(2, 1, 0, 1, -1), "~", complex(cg(2, 1, 0, 1, -1)).real)
print("C^{1,1,0} table:")
print(cg_float(1, 1, 0))
