"""The Mellin-Barnes Whittaker function against the direct Jacquet integral at d = 0.

Takes a few seconds per point.
"""
from gl3kit.whittaker_eval import jacquet_oracle, lambda_alpha, w_star

mu = (2 + 0.1j, 0.4, -2.4 - 0.1j)

for y in [(1.0, 1.0), (0.7, 1.3)]:
    mb = w_star(0, y, mu)
    jac, jac_err = jacquet_oracle(0, y, mu)
    lhs = lambda_alpha((0, 0, 0), mu) * jac[0, 0]
    rhs = complex(mb.value[0])
    print(f"y={y}")
    print(f"   Mellin-Barnes  {rhs:.10e}   (quadrature error {mb.error:.1e}, {mb.nodes} nodes)")
    print(f"   Jacquet        {lhs:.10e}   (oracle error {jac_err:.1e})")
    print(f"   relative diff  {abs(lhs - rhs) / abs(rhs):.1e}")
