"""Where Riemann-Roch fails for Weil divisors, and by how much.

On a normal surface chi(O(D)) differs from the smooth formula by a sum of
local terms, one per singular point.  Each term depends only on the
fractional part of the pullback of D near that point.
"""

# %% a fan with a 1/4 point and an A1 point
from collections import Counter
from itertools import product

from nsi import catalog
from nsi.ledger import defect_values, line_bundle, riemann_roch, rr_defect
from nsi.toric import chi, export_surface_model, singular_cones

fan = catalog.two_point()
model = export_surface_model(fan)
print("singular cones:", singular_cones(fan))

# %% per-point shares for a few divisors
for D in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 1)]:
    report = rr_defect(fan, D)
    predicted = riemann_roch(line_bundle(model, model.weil(D)), model, report)
    print(D, "chi =", chi(fan, D).chi, "RR + defect =", predicted,
          "shares:", {g: str(v) for g, v in report.per_point.items()})

# %% the defect takes finitely many values
tally = Counter(rr_defect(fan, D).total_defect for D in product(range(-2, 3), repeat=4))
print({str(k): n for k, n in sorted(tally.items())})
print("bound 3:", sorted(map(str, defect_values(fan, 3))))
