"""Build a few frames and certify them exactly.

The certifier compares polynomial coefficients, so a verdict here is a
proof up to floating point roundoff, not a sampling statement.
"""
from fusionframes import (
    catalog,
    certify_tight,
    complement_frame,
    ffp,
    reweight_down,
    tightness_constant,
    union,
)


def show(name, frame, p):
    cert = certify_tight(frame, p)
    tag = "tight" if cert.tight else "not tight"
    print(f"{name:28s} p={p}  {tag:10s} residual={cert.residual:.2e} "
          f"A={cert.target_A:.6f}")


merc = catalog("mercedes")
for p in (1, 2, 3):
    show("mercedes", merc, p)

# the forced constant is a rational number, (1/2)_p/(1)_p summed over members
print("A_2 =", tightness_constant(merc, 2), "= 9/8")
print("FFP(2), weights 1/3:", ffp(merc.normalized(), 2), "= 3/8")
print()

mub = catalog("mub-planes-r4")
for p in (1, 2, 3, 4):
    show("mub-planes-r4", mub, p)
print()

# lowering the order: reweight a tight-p frame down to tight-(p-1)
down = reweight_down(mub, 3)
show("reweighted mub (3 -> 2)", down, 2)
down = reweight_down(down, 2)
show("reweighted mub (2 -> 1)", down, 1)
print()

# orthogonal complements of the planes stay tight at the same order
show("complement of mub", complement_frame(mub), 3)

# unions of tight frames in the same ambient space are tight, constants add
both = union(merc, catalog("equispaced-lines(4)"))
show("mercedes + 4 lines", both, 2)
print("A adds:", tightness_constant(merc, 2), "+",
      tightness_constant(catalog("equispaced-lines(4)"), 2), "=",
      tightness_constant(both, 2))
