import json

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup

from groupring.catalog import catalog, catalog_list, corpus_names
from groupring.errors import (
    ClosureTooLarge,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    OrderBoundExceeded,
    UnknownName,
)
from groupring.groups import (
    build_from_permutations,
    build_from_table,
    center,
    commutator_subgroup,
    conjugacy_classes,
    cyclic_subgroup_class_count,
    find_isomorphism,
    is_isomorphic,
    is_nilpotent,
    normal_subgroups,
    normalizer,
    subgroups,
)

# (order, classes, subgroups, normal subgroups, d, |Z|, |G'|)
KNOWN = {
    "C6": (6, 6, 4, 4, 4, 6, 1),
    "S3": (6, 3, 6, 3, 3, 1, 3),
    "D8": (8, 5, 10, 6, 5, 2, 2),
    "Q8": (8, 5, 6, 6, 5, 2, 2),
    "A4": (12, 4, 10, 3, 3, 1, 4),
    "Q12": (12, 6, 8, 5, 5, 2, 3),
    "D16": (16, 7, 19, 7, 6, 2, 4),
    "Q16": (16, 7, 11, 7, 6, 2, 4),
    "SD16": (16, 7, 15, 7, 6, 2, 4),
    "P16": (16, 10, 15, 11, 8, 4, 2),
    "S4": (24, 5, 30, 4, 5, 1, 12),
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_known_invariants(name):
    G = catalog(name)
    order, k, nsub, nnorm, d, z, der = KNOWN[name]
    assert G.order == order
    assert conjugacy_classes(G).class_count == k
    assert len(subgroups(G)) == nsub
    assert len(normal_subgroups(G)) == nnorm
    assert cyclic_subgroup_class_count(G) == d
    assert center(G).order == z
    assert commutator_subgroup(G).order == der


@pytest.mark.parametrize("name,oracle", [("S4", SymmetricGroup(4)), ("S3", SymmetricGroup(3)),
                                         ("A4", AlternatingGroup(4))])
def test_classes_against_sympy(name, oracle):
    G = catalog(name)
    sizes = sorted(len(c) for c in oracle.conjugacy_classes())
    cc = conjugacy_classes(G)
    assert cc.class_count == len(sizes)
    assert G.order == oracle.order()


@pytest.mark.parametrize("name", corpus_names(32))
def test_corpus_group_axioms(name):
    G = catalog(name)
    e = G.identity
    for g in G.elements:
        assert G.mul(g, G.inv(g)) == e == G.mul(G.inv(g), g)
        assert G.power(g, G.element_order(g)) == e
        assert G.exponent % G.element_order(g) == 0
    cc = conjugacy_classes(G)
    d = cyclic_subgroup_class_count(G)
    assert cc.real_closed_count <= cc.class_count
    assert d <= (cc.class_count + cc.real_closed_count) // 2
    if G.order & (G.order - 1) == 0 or G.is_abelian:
        assert is_nilpotent(G)


def test_nilpotency():
    assert is_nilpotent(catalog("Q16"))
    assert is_nilpotent(catalog("D8xC3"))
    assert not is_nilpotent(catalog("S3"))
    assert not is_nilpotent(catalog("A4"))


def test_normalizer_and_normality():
    G = catalog("D8")
    b = G.index_of("b")
    N = normalizer(G, G.cyclic(b))
    assert N.order == 4
    assert not G.is_normal_in(G.cyclic(b))
    assert G.is_normal_in(G.cyclic(G.index_of("a")))


def test_isomorphisms():
    assert is_isomorphic(catalog("D4"), catalog("C2xC2"))
    assert is_isomorphic(catalog("S3"), catalog("D6"))
    assert not is_isomorphic(catalog("D8"), catalog("Q8"))
    assert not is_isomorphic(catalog("Q16"), catalog("SD16"))
    iso = find_isomorphism(catalog("C6"), catalog("C2xC3"))
    assert iso is not None


def test_permutation_input():
    G = build_from_permutations(4, [[[0, 1, 2, 3]], [[0, 2]]], name="D8p")
    assert G.order == 8
    assert is_isomorphic(G, catalog("D8"))
    with pytest.raises(ClosureTooLarge):
        build_from_permutations(5, [[[0, 1, 2, 3, 4]], [[0, 1]]], max_order=60)


def test_table_validation():
    with pytest.raises(NotLatinSquare):
        build_from_table(2, [[0, 1], [1, 1]])
    with pytest.raises(NotLatinSquare):
        build_from_table(2, [[0, 1]])
    with pytest.raises(NoIdentity):
        build_from_table(3, [[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1], [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]
    with pytest.raises(NotAssociative):
        build_from_table(5, loop)


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(6)))
def test_relabelled_table_is_isomorphic(perm):
    G = catalog("S3")
    inv = {p: i for i, p in enumerate(perm)}
    table = [[perm[G.mul(inv[a], inv[b])] for b in range(6)] for a in range(6)]
    H = build_from_table(6, table)
    assert is_isomorphic(G, H)
    assert conjugacy_classes(H).class_count == 3


def test_catalog_errors():
    with pytest.raises(UnknownName):
        catalog("X7")
    with pytest.raises(UnknownName):
        catalog("D7")
    with pytest.raises(UnknownName):
        catalog("C4x")
    with pytest.raises(OrderBoundExceeded):
        catalog("C200", max_order=64)


def test_catalog_listing():
    listing = catalog_list()
    assert "D8" in listing["corpus"] and "Q8xC2" in listing["corpus"]
    json.dumps(listing)
    names = corpus_names(16)
    assert all(catalog(n).order <= 16 for n in names)


def test_presentations():
    Q12 = catalog("Q12")
    a, b = Q12.index_of("a"), Q12.index_of("b")
    assert Q12.element_order(a) == 6
    assert Q12.power(b, 2) == Q12.power(a, 3)
    assert Q12.mul(b, a) == Q12.mul(Q12.power(a, 5), b)
    P = catalog("P16")
    a, b = P.index_of("a"), P.index_of("b")
    assert P.element_order(a) == 4 and P.element_order(b) == 4
    assert P.commutator(a, b) in (P.power(a, 2),)
