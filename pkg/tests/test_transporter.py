import numpy as np
import pytest
from hypothesis import given, strategies as st

from strata.catalog import CATALOG, catalog_group
from strata.gposet import GPoset, build_sp_poset, chain_poset, point_poset
from strata.transporter import (
    CategoryError,
    FiniteCategory,
    Functor,
    build_transporter,
    enveloping_category,
    factorization_category,
    full_subcategory,
    group_category,
    opposite_category,
    poset_category,
    product_category,
    projection_to_group,
    subgroup_inclusion,
)
from conftest import scenario


def _brute_hom_sizes(G, P):
    act = P.act if P.act.shape[0] == G.n else np.tile(P.act, (G.n, 1))
    return [[sum(bool(P.leq[act[g, x], y]) for g in range(G.n)) for y in range(P.m)] for x in range(P.m)]


def _revalidate(C):
    FiniteCategory(C.n_obj, C.src, C.dst, C.comp, C.identities, check=True)


def test_s3_sylow_two_transporter():
    G = catalog_group("S3")
    C = build_transporter(G, build_sp_poset(G, 2))
    assert (C.n_obj, C.n_mor) == (3, 18)
    assert all(len(C.hom[x][y]) == 2 for x in range(3) for y in range(3))
    assert C.is_ei and C.check_invariants()
    assert len(C.iso_classes) == 1


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_hom_sizes_match_brute_force(name):
    s = scenario(name)
    C = s.category
    sizes = [[len(C.hom[x][y]) for y in range(C.n_obj)] for x in range(C.n_obj)]
    assert sizes == _brute_hom_sizes(s.group, C.poset)
    assert C.check_invariants()


def test_composition_rule():
    G = catalog_group("S3")
    C = build_transporter(G, build_sp_poset(G, 2))
    for b, a, ba in C.composable_pairs():
        h, y, z = C.payload[b]
        g, x, y2 = C.payload[a]
        assert y == y2 and C.payload[ba] == (int(G.mul[h, g]), x, z)


def test_derived_categories_are_categories():
    C = group_category(catalog_group("C2"))
    for D in (opposite_category(C), enveloping_category(C), factorization_category(C),
              product_category(C, poset_category(chain_poset(2)))):
        _revalidate(D)


# morphism counts of F(C) and C^e, by triple enumeration
def _brute_factorizations(C):
    n = 0
    for alpha in range(C.n_mor):
        x, y = C.src[alpha], C.dst[alpha]
        n += int((C.dst == x).sum()) * int((C.src == y).sum())
    return n


@pytest.mark.parametrize("make", [lambda: group_category(catalog_group("C2")),
                                  lambda: group_category(catalog_group("C3")),
                                  lambda: poset_category(chain_poset(2)),
                                  lambda: scenario("c2-chain").category])
def test_factorization_and_envelope_sizes(make):
    C = make()
    F = factorization_category(C)
    assert F.n_obj == C.n_mor and F.n_mor == _brute_factorizations(C)
    assert enveloping_category(C).n_mor == C.n_mor ** 2


def test_known_sizes():
    assert factorization_category(group_category(catalog_group("C2"))).n_mor == 8
    assert factorization_category(poset_category(chain_poset(2))).n_mor == 5


def test_functors():
    G = catalog_group("S3")
    C = build_transporter(G, build_sp_poset(G, 2))
    _, pi = projection_to_group(C)
    assert pi.validate()
    for H in G.subgroups:
        _, inc = subgroup_inclusion(C, H)
        assert inc.validate()
    D, inc = full_subcategory(C, [0])
    assert D.n_mor == 2 and inc.validate()
    other = [f for f in C.aut(0) if f != C.identities[0]][0]
    bad = Functor(D, C, [0], [other, other])
    with pytest.raises(CategoryError):
        bad.validate()


def test_connected_components():
    G = catalog_group("C2")
    C = build_transporter(G, GPoset(np.eye(2, dtype=bool), group=G, act=[[0, 1], [0, 1]]))
    assert not C.is_connected and len(C.connected_components) == 2
    assert scenario("c2-swap").category.is_connected


def test_bad_action_table():
    with pytest.raises(CategoryError):
        build_transporter(catalog_group("C2"), GPoset(np.ones((1, 1), dtype=bool), group=catalog_group("C3")))


@given(st.integers(1, 4))
def test_chain_transporter_counts(length):
    G = catalog_group("C2")
    C = build_transporter(G, chain_poset(length, G))
    assert C.n_mor == 2 * length * (length + 1) // 2
    assert C.poset_dimension == length - 1
    assert C.to_json() == build_transporter(G, chain_poset(length, G)).to_json()
