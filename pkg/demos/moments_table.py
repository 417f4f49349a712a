"""Haar moments of projector overlaps: closed forms, quadrature, MC.

t_moment picks the cheapest exact route first and only falls back to
Monte Carlo when it has to; every estimate carries an error bar and a
method label so you can see which route was taken.
"""
import numpy as np

from fusionframes import jacobi_family, t_matrix, t_moment, t_one

# p = 1 is pure linear algebra: E tr(P V P W) = kl/d
print("kl/d checks, d=5:")
for k in range(1, 5):
    print("  ", [f"{t_moment(k, l, 5, 1).value:.4f}" for l in range(1, 5)])

# one random line against a k-plane has a Pochhammer closed form
print("\nt_one(2, 4, p) for p = 1..4:", [t_one(2, 4, p) for p in (1, 2, 3, 4)])

# the general table mixes methods; errors are zero for the exact routes
table = t_matrix(4, 2)
for k, l, p, value, error, method in table.rows():
    print(f"T_{{{k},{l}}}(2) = {value:.10f}  err={error:.1e}  [{method}]")

# quadrature and Monte Carlo should agree to a few stderr
rng = np.random.default_rng(0)
quad = t_moment(2, 2, 5, 2)
mc = t_moment(2, 2, 5, 2, method="mc", budget=200_000, rng=rng)
print(f"\n(2,2,5,2): quad {quad.value:.8f} vs mc {mc.value:.8f} "
      f"+- {mc.error:.1e}")

# min(k,l) >= 3 with no complement shortcut forces sampling
big = t_moment(3, 3, 7, 2, rng=rng)
print(f"(3,3,7,2): {big.value:.6f} +- {big.error:.1e}  [{big.method}]")

# probe polynomials for cubature checks, with their three-term recurrence
fam = jacobi_family(1, 2, 3)
print("\nzonal family k=1 d=2 (shifted Chebyshev):")
for ell, (a, b, c) in enumerate(fam.recurrence):
    print(f"  y P_{ell} = {a:.4g} P_{ell + 1} + {b:.4g} P_{ell} "
          f"+ {c:.4g} P_{ell - 1}")
ys = np.linspace(0.0, 1.0, 5)
for ell in range(4):
    print(f"  P_{ell}(y) on [0,1]:", np.round(fam.evaluate(ell, ys), 4))
