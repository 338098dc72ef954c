import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strata.catalog import CATALOG
from strata.homology import VerificationError, complexity
from strata.quillen import (
    CSV_COLUMNS,
    enumerate_quillen_pairs,
    quillen_subpair,
    stratification_report,
    subgroup_complexity,
    variety_dimension,
)
from strata.rep import tensor_hat
from conftest import scenario
from oracles import brute_quillen_pairs

FAST = ["c2-point", "c3-point", "c2xc2-point", "s3-s2-p2", "s3-s3-p3", "c2-chain", "c2-wedge-swap",
        "s3-s2-cone-p2", "d8-point", "d8-ep"]


@pytest.mark.parametrize("name", FAST)
def test_pairs_and_classes_match_brute_force(name):
    s = scenario(name)
    P = s.category.poset
    pairs, classes = enumerate_quillen_pairs(s.group, P, s.p)
    bp, bc = brute_quillen_pairs(s.group, P.leq.tolist(), P.act.tolist(), s.p)
    assert sorted((tuple(sorted(q.E.elements)), q.objects) for q in pairs) == sorted(bp)
    assert sorted((c.rank, len(c.members), c.weyl_order) for c in classes) == bc
    members = sorted(i for c in classes for i in c.members)
    assert members == list(range(len(pairs)))


# (rank, class size, Weyl order) per class, frozen from the brute-force enumeration
KNOWN = {
    "s3-s2-p2": [(0, 3, 1), (1, 3, 1)],
    "c2xc2-point": [(0, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1), (2, 1, 1)],
    "d8-point": [(0, 1, 1), (1, 1, 1), (1, 2, 1), (1, 2, 1), (2, 1, 2), (2, 1, 2)],
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_known_classes(name):
    s = scenario(name)
    _, classes = enumerate_quillen_pairs(s.group, s.category.poset, s.p)
    assert sorted((c.rank, len(c.members), c.weyl_order) for c in classes) == KNOWN[name]


DIMS = {
    ("s3-s2-p2", "k"): 1, ("s3-s2-p2", "regular"): 0, ("s3-s2-p2", "atomic0"): 1,
    ("c2xc2-point", "k"): 2, ("c2xc2-point", "regular"): 0,
    ("d8-point", "k"): 2, ("d8-point", "regular"): 0,
    ("c2-wedge-swap", "atomic0"): 0, ("s3-s3-p3", "k"): 1,
}


@pytest.mark.parametrize("key", sorted(DIMS))
def test_variety_dimension(key):
    name, mod = key
    s = scenario(name)
    vd = variety_dimension(s.modules[mod], 8)
    assert vd.ok and vd.s == DIMS[key] and vd.certificate == DIMS[key]


def test_variety_dimension_mismatch_raises():
    s = scenario("c2xc2-point")
    pairs, _ = enumerate_quillen_pairs(s.group, s.category.poset, 2)
    rank_le_1 = [q for q in pairs if q.rank <= 1]
    with pytest.raises(VerificationError):
        variety_dimension(s.modules["k"], 8, rank_le_1)


@pytest.mark.parametrize("name", ["c2xc2-point", "d8-ep", "s3-s2-cone-p2"])
def test_subpairs(name):
    s = scenario(name)
    P = s.category.poset
    pairs, _ = enumerate_quillen_pairs(s.group, P, s.p)
    for q in pairs:
        for sub in q.E.subgroups():
            sp = quillen_subpair(P, q, sub, s.p)
            assert set(q.objects) <= set(sp.objects)
            assert sp.rank <= q.rank
            # transitivity through any intermediate subgroup
            for mid in q.E.subgroups():
                if sub.issubset(mid):
                    via = quillen_subpair(P, quillen_subpair(P, q, mid, s.p), sub, s.p)
                    assert via.objects == sp.objects


@settings(max_examples=10)
@given(st.sampled_from(["c2xc2-point", "s3-s2-p2", "d8-point"]), st.data())
def test_subgroup_complexity_monotone(name, data):
    s = scenario(name)
    subs = list(s.group.subgroups)
    K = data.draw(st.sampled_from(subs))
    H = data.draw(st.sampled_from([h for h in subs if h.issubset(K)]))
    M = s.modules["k"]
    assert subgroup_complexity(M, H, 6).s <= subgroup_complexity(M, K, 6).s


@pytest.mark.parametrize("name,a,b", [("s3-s2-p2", "k", "k"), ("s3-s2-p2", "k", "regular"),
                                      ("s3-s2-p2", "atomic0", "k"), ("c2xc2-point", "k", "k"),
                                      ("c2xc2-point", "k", "regular")])
def test_tensor_shadow(name, a, b):
    s = scenario(name)
    M, N = s.modules[a], s.modules[b]
    cm, cn = complexity(M, 8).s, complexity(N, 8).s
    ct = complexity(tensor_hat(M, N), 8).s
    assert ct <= min(cm, cn)
    if a == b == "k":
        assert ct == cm


def test_report_formats():
    s = scenario("s3-s2-p2")
    rep = stratification_report(s.group, s.category.poset, 2, s.modules, 8)
    assert rep.subpair_ok and rep.max_rank == 1
    doc = rep.to_dict()
    assert {m: v["dimension"] for m, v in doc["modules"].items()} == {"k": 1, "regular": 0, "atomic0": 1}
    lines = rep.to_csv().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 1 + len(rep.classes) * len(s.modules)
    assert rep.to_json() == stratification_report(s.group, s.category.poset, 2, s.modules, 8).to_json()


def test_prime_must_divide_order():
    s = scenario("c2-point")
    with pytest.raises(ValueError):
        enumerate_quillen_pairs(s.group, s.category.poset, 3)
