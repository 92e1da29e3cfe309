"""Right inverses S_n of Phi_n(D) for c_n Phi^n with Phi(z) = z + e^z/9 and c_n = log(n+1).

S_n P is a contour integral on any circle inside the zero-free annulus; the
demo evaluates it on two radii and checks Phi_n(D) S_n P = P along the
contour route and the Taylor route.
"""

import numpy as np

from entireops.borel import QuadratureSpec, radius_invariance_check, right_inverse_eval
from entireops.catalog import CATALOG
from entireops.convergence import verify_condition_iv
from entireops.taylor import TaylorPoly

seq = CATALOG["phi_log"].seq
P = TaylorPoly([1, 0, 1])  # 1 + z^2
z = np.array([0.0, 0.5, 1j, -1 + 0.5j])

for n in (1, 2, 5):
    val = right_inverse_eval(seq, n, P, QuadratureSpec(2.0), z).value
    inv = radius_invariance_check(seq, n, P, (1.0, 2.0), z)
    print(f"n={n}: S_n P(z) = {np.round(val, 6)}  |R=1 vs R=2| = {inv.max_deviation:.1e}")

res = verify_condition_iv(seq, range(0, 11), P, QuadratureSpec(2.0), K=2.0)
print(f"max |Phi_n(D) S_n P - P| over n <= 10, |z| <= 2: contour {res.deviation_contour:.1e}, "
      f"Taylor {res.deviation_taylor:.1e}")
