"""Quillen pairs, their classes and Weyl groups, and the dimension
certificate comparing complexity over G∝P with the elementary abelian
subgroups."""

from strata import enumerate_quillen_pairs, stratification_report
from strata.catalog import catalog_scenario

for name in ("s3-s2-p2", "c2xc2-point", "d8-ep"):
    s = catalog_scenario(name)
    pairs, classes = enumerate_quillen_pairs(s.group, s.poset, s.p)
    print(f"{name}: {len(pairs)} pairs in {len(classes)} classes")
    for c in classes:
        q = pairs[c.representative]
        print(f"  rank {c.rank}  |W| = {c.weyl_order}  E = {list(q.E.elements)}  C = {list(q.objects)}")
    rep = stratification_report(s.group, s.poset, s.p, s.modules, 8)
    for m, v in rep.to_dict()["modules"].items():
        print(f"  {m:8s} dimension {v['dimension']} (pair bound {v['certificate']})")
