"""Surface intersection numbers inside toric threefolds.

Cutting with a Cartier divisor L turns chi(c1(L).[O(mD)]) into a quadratic
quasi-polynomial in m; twice its leading term is D.D.L.
"""

# %% P(1,1,1,2): the weight-2 divisor is Cartier, the others are not
from nsi import catalog
from nsi.ktheory import cartier_product, pair_limit, self_pair_limit
from nsi.surface import pair
from nsi.toric import cartier_index, export_surface_model, restrict_to_invariant_surface

fan = catalog.weighted_1112()
L = (0, 0, 1, 0)
print("Cartier index of D0:", cartier_index(fan, (1, 0, 0, 0)))
print("D0.D0.L =", self_pair_limit(fan, (1, 0, 0, 0), [L]).value)
print("D0.D3.L =", pair_limit(fan, (1, 0, 0, 0), (0, 0, 0, 1), [L]))
print("L.L.L   =", cartier_product(fan, [L, L, L]))

# %% restriction: D.D.L equals the square of D on the surface L cuts out
D = (1, -1, 0, 2)
quot, restricted = restrict_to_invariant_surface(fan, 2, D)
qm = export_surface_model(quot)
print("on the threefold:", self_pair_limit(fan, D, [L]).value)
print("on V(rho_2):     ", pair(qm, qm.weil(restricted), qm.weil(restricted)))
