import numpy as np
import pytest
from hypothesis import given, strategies as st

from strata.catalog import GROUPS, catalog_group
from strata.groups import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    elementary_abelian_subgroups,
    pair_stabilizers,
    p_subgroups,
)
from oracles import brute_subgroups

NAMES = sorted(GROUPS)


@pytest.mark.parametrize("name", NAMES)
def test_subgroups_match_subset_enumeration(name):
    G = catalog_group(name)
    assert sorted(tuple(sorted(H.elements)) for H in G.subgroups) == brute_subgroups(G)


# number of elementary abelian p-subgroups including the trivial one, by rank
EA_COUNTS = {
    ("C2", 2): {0: 1, 1: 1},
    ("C3", 3): {0: 1, 1: 1},
    ("C2xC2", 2): {0: 1, 1: 3, 2: 1},
    ("S3", 2): {0: 1, 1: 3},
    ("S3", 3): {0: 1, 1: 1},
    ("D8", 2): {0: 1, 1: 5, 2: 2},
}


@pytest.mark.parametrize("key", sorted(EA_COUNTS))
def test_elementary_abelian_counts(key):
    name, p = key
    G = catalog_group(name)
    got = {}
    for E in elementary_abelian_subgroups(G, p):
        got[E.p_rank(p)] = got.get(E.p_rank(p), 0) + 1
    assert got == EA_COUNTS[key]
    # brute force: abelian subgroups whose nonidentity elements all have order p
    ea = [H for H in brute_subgroups(G)
          if all(G.order_of(g) in (1, p) for g in H)
          and all(G.mul[a, b] == G.mul[b, a] for a in H for b in H)]
    assert len(ea) == sum(EA_COUNTS[key].values())


def test_p_subgroups_d8():
    G = catalog_group("D8")
    assert sorted(len(H) for H in p_subgroups(G, 2)) == [1, 2, 2, 2, 2, 2, 4, 4, 4, 8]


@pytest.mark.parametrize("name", NAMES)
def test_normalizer_centralizer(name):
    G = catalog_group(name)
    for H in G.subgroups:
        N = set(H.normalizer().elements)
        Z = set(H.centralizer().elements)
        S = set(H.elements)
        assert N == {g for g in range(G.n) if {G.conj(g, h) for h in S} == S}
        assert Z == {g for g in range(G.n) if all(G.mul[g, h] == G.mul[h, g] for h in S)}
        assert Z <= N


def test_pair_stabilizers_orbit_stabilizer():
    G = catalog_group("S3")
    act = np.tile(np.arange(1), (G.n, 1))
    for E in elementary_abelian_subgroups(G, 2):
        st_ = pair_stabilizers(G, E, (0,), act)
        assert st_.weyl_order * len(st_.centralizer) == len(st_.normalizer)


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        FiniteGroup(np.zeros((0, 0)))


@given(st.integers(1, 6), st.integers(1, 4))
def test_direct_product_orders(a, b):
    G = direct_product(cyclic_group(a), cyclic_group(b))
    assert G.n == a * b
    assert G.is_abelian()
    assert max(G.order_of(g) for g in range(G.n)) == np.lcm(a, b)


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_permutation_closure_is_subgroup(g, h):
    G = FiniteGroup.from_permutations([g, h])
    assert G.e == 0
    assert 24 % G.n == 0
    assert sorted(tuple(sorted(H.elements)) for H in G.subgroups) == brute_subgroups(G) if G.n <= 8 else True
