"""Ext of the trivial module over a category, over its category of
factorizations, and Hochschild-type Ext of kC over the enveloping category."""

from strata.catalog import catalog_group
from strata.gposet import chain_poset
from strata.homology import envelope_and_factorization_dims
from strata.transporter import group_category, poset_category

cases = {
    "C2": (group_category(catalog_group("C2")), 2),
    "chain-2": (poset_category(chain_poset(2)), 2),
    "C3": (group_category(catalog_group("C3")), 3),
}
for label, (C, p) in cases.items():
    out = envelope_and_factorization_dims(C, p, 4)
    print(label, out["morphisms"])
    for key in ("category", "factorization", "hochschild", "hochschild_b0"):
        print(f"  {key:14s} {out[key]}")
