"""Minimal resolutions, Ext dimensions and the Yoneda ring for small groups,
and the Ext of S3 on its 2-subgroups, which only sees a C2."""

from strata import ext_dims, ext_table, minimal_resolution
from strata.catalog import catalog_scenario
from strata.homology import complexity, ring_structure

for name in ("c2-point", "c2xc2-point", "c3-point"):
    k = catalog_scenario(name).modules["k"]
    R = minimal_resolution(k, 8)
    print(f"{name:12s} ranks {R.ranks()}  complexity {complexity(k, 8, R).s}")

s = catalog_scenario("c2xc2-point")
k = s.modules["k"]
E = ext_table(minimal_resolution(k, 4), k, 3)
ring = ring_structure(E, 3)
print("Ext(k,k) over C2xC2:", E.dims)
for (i, a, j, b), cls in sorted(ring.items()):
    if i == j == 1:
        print(f"  x{a} * x{b} = {cls.tolist()}")

s = catalog_scenario("s3-s2-p2")
for name, M in s.modules.items():
    print(f"Ext^*(k, {name}) over S3 on S_2:", ext_dims(s.modules["k"], M, 6))
