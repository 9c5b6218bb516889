"""Intersection numbers on a singular toric surface, computed two ways.

The quadric cone P(1,1,2) has one A1 point.  Its ruling lines are Weil
divisors that are not Cartier, so their self-intersection is fractional.
"""

# %% the fan and its resolution model
from nsi import catalog
from nsi.ktheory import frobenius_ch2_limit, self_pair_limit
from nsi.surface import mumford_pullback, pair
from nsi.toric import cartier_index, export_surface_model

fan = catalog.quadric_cone()
model = export_surface_model(fan)
print("basis:", model.basis)
print("exceptional groups:", model.exceptional_groups)

# %% route 1: Mumford pullback to the resolution
ruling = (1, 0, 0)
D = model.weil(ruling)
print("pullback of the ruling:", [str(x) for x in mumford_pullback(model, D)])
print("D.D via Mumford:", pair(model, D, D))
print("Cartier index:", cartier_index(fan, ruling))

# %% route 2: Euler characteristics of O(mD), no intersection form involved
result = self_pair_limit(fan, ruling)
for m, c, ratio in result.convergents():
    print(f"m={m:2d}  chi={c:3d}  2chi/m^2={ratio}")
print("limit:", result.value, "per-residue leading terms:", [str(x) for x in result.residue_leading_coefficients])

# %% the same number along Frobenius powers, halved (ch2 of a line bundle)
for p in (2, 3, 5):
    print(f"p={p}: ch2 =", frobenius_ch2_limit(fan, ruling, p))
