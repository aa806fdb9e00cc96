"""Realize R_phi by the graph hypersurface y + 1/2 <phi y, y> e and inspect it.

    python3 demos/realization.py
"""

from rank2curv.curvature import make_R_phi
from rank2curv.exactlin import zeros
from rank2curv.fixtures import fixture
from rank2curv.realize import (
    embed,
    gauss_curvature_tensor,
    germ_radius,
    origin_curvature_from_metric,
    verify_realization,
)
from rank2curv.sampling import random_admissible_phi

phi = fixture("8.2", p=4).payload
R = make_R_phi(phi)
for eps in (1, -1):
    imm = embed(phi, eps)
    R0 = gauss_curvature_tensor(imm, zeros(imm.dim))
    print(f"eps = {eps:+d}: Gauss route == eps R_phi: {R0 == R.scaled(eps)}, "
          f"metric route agrees: {origin_curvature_from_metric(imm) == R0}, "
          f"sample radius {germ_radius(imm)}")

rep = verify_realization(R, points=5, planes=10)
print(f"verify_realization(R_phi of 8.2): ok = {rep.ok}, eps = {rep.epsilon}")
for s in rep.rank_samples:
    print(f"  y = [{', '.join(map(str, s['point']))}]  ranks {s['ranks']}")

R2 = make_R_phi(random_admissible_phi(1, 5, 0, seed=6)).scaled(2)
rep = verify_realization(R2, points=3, planes=5)
print(f"2 R_phi: ok = {rep.ok}; sqrt of the scale is irrational, so <e, e> = {rep.epsilon * rep.scale}")
