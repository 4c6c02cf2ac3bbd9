from collections import Counter
from math import gcd

import pytest

from groupring.catalog import catalog
from groupring.exact import euler_phi
from groupring.wedderburn import (
    FIELD,
    MATRIX,
    QUATERNION,
    TYPE2,
    UNRESOLVED,
    FieldDesc,
    component_from_pair,
    decomposition_report,
    decomposition_text,
    field_conductors,
    parse_decomposition,
    perlis_walker,
    perlis_walker_fields,
)

from conftest import pci_of

GOLDEN = {
    "S3": "2Q + M2(Q)",
    "D6": "2Q + M2(Q)",
    "D8": "4Q + M2(Q)",
    "Q8": "4Q + H(Q)",
    "P16": "4Q + 2Q(i) + H(Q) + M2(Q)",
    "Q12": "2Q + Q(i) + (-1,-3/Q) + M2(Q)",
    "D16": "4Q + M2(Q) + M2(Q(sqrt(2)))",
    "Q16": "4Q + M2(Q) + H(Q(sqrt(2)))",
    "SD16": "4Q + M2(Q) + M2(Q(sqrt(-2)))",
    "A4": "Q + Q(sqrt(-3)) + M3(Q)",
    "S4": "2Q + M2(Q) + 2M3(Q)",
    "Q24": "4Q + H(Q) + 2M2(Q) + H(Q(sqrt(3)))",
}


def entries(name):
    return decomposition_report(catalog(name), pci=pci_of(name))


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_decompositions(name):
    assert parse_decomposition(decomposition_text(entries(name))) == \
        parse_decomposition(GOLDEN[name])


def test_q12_abelian_part_is_q_of_i():
    # Q12 / Q12' is cyclic of order 4, so the commutative part is Q C4 = 2Q + Q(i)
    got = parse_decomposition(decomposition_text(entries("Q12")))
    assert got["Q(i)"] == 1 and got["Q(sqrt(-3))"] == 0


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_descriptor_dimensions(name):
    G = catalog(name)
    es = entries(name)
    assert sum(e.descriptor.dimension for e in es) == G.order
    for e in es:
        d = e.descriptor
        assert d.dimension == d.n ** 2 * euler_phi(d.h) * d.quotient_order
        assert d.quotient_order * d.center.degree == euler_phi(d.h) or d.h <= 2
        if d.h > 2:
            assert all(gcd(i, d.h) == 1 for i in d.action.values())


def test_cocycle_identity_on_q16():
    G = catalog("Q16")
    for rec in pci_of("Q16").pairs:
        d = component_from_pair(G, rec.H, rec.K, rec)
        if d.quotient_order == 1:
            continue
        reps = list(d.action)
        assert len(reps) == d.quotient_order
        if d.split_by_complement:
            assert d.twisting_is_zero()


def test_classifications():
    kinds = {e.classification.label: e.classification for e in entries("Q16")}
    assert kinds["H(Q(sqrt(2)))"].kind == QUATERNION
    assert kinds["H(Q(sqrt(2)))"].totally_definite_quaternion
    assert kinds["M2(Q)"].kind == MATRIX and kinds["M2(Q)"].exceptional == TYPE2
    assert kinds["Q"].kind == FIELD
    q12 = {e.classification.label: e.classification for e in entries("Q12")}
    assert q12["(-1,-3/Q)"].division
    assert q12["(-1,-3/Q)"].totally_definite_quaternion


def test_unresolved_component_is_flagged():
    es = entries("Q8xC3")
    unresolved = [e for e in es if e.classification.kind == UNRESOLVED]
    assert len(unresolved) == 1
    assert unresolved[0].descriptor.dimension == 8


@pytest.mark.parametrize("name", ["C5", "C8", "C12", "C2xC4", "C3xC6", "C4xC4", "E8", "C15"])
def test_abelian_against_perlis_walker(name):
    G = catalog(name)
    assert field_conductors(entries(name)) == perlis_walker_fields(G)
    assert sum(k * euler_phi(d) for d, k in perlis_walker(G)) == G.order


def test_field_descriptors():
    assert FieldDesc.fixed_field(8, (1, 7)).label() == "Q(sqrt(2))"
    assert FieldDesc.fixed_field(8, (1, 3)).label() == "Q(sqrt(-2))"
    assert FieldDesc.fixed_field(8, (1, 5)).label() == "Q(i)"
    assert FieldDesc.fixed_field(12, (1, 11)).label() == "Q(sqrt(3))"
    assert FieldDesc.fixed_field(6, (1,)) == FieldDesc.fixed_field(3, (1,))
    assert FieldDesc.fixed_field(5, (1,)).label() == "Q(zeta_5)"
    assert FieldDesc.fixed_field(7, (1, 6)).label() == "Q(zeta_7)^+"
    assert FieldDesc.fixed_field(4, (1, 3)).is_rational


def test_parse_round_trip():
    text = "4Q + 2Q(i) + H(Q) + M2(Q)"
    assert parse_decomposition(text) == Counter({"Q": 4, "Q(i)": 2, "H(Q)": 1, "M2(Q)": 1})
