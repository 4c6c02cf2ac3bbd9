import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from groupring.catalog import catalog
from groupring.errors import (
    BadParameters,
    EvenOrder,
    InvariantError,
    NotSquareZero,
    PreconditionViolation,
    TrivialBicyclic,
)
from groupring.exact import multiplicative_order
from groupring.groups import center, normalizer
from groupring.ring import INT, RAT, GroupRingElement, element_hat, element_order_bruteforce, \
    group_sum_hat, idempotent_record
from groupring.units import (
    APPLIES,
    NOT_APPLICABLE,
    CertifiedUnit,
    alternating_unit,
    bass_is_torsion,
    bass_unit,
    bicyclic_left,
    bicyclic_right,
    find_noncentral_idempotent,
    free_pair_certificate,
    generalized_bicyclic,
    jespers_leal_generators,
    jespers_parmenter_obstruction,
    marciniak_sehgal_pair,
)


def elt(G, coeffs):
    return GroupRingElement(G, INT, {G.index_of(k): v for k, v in coeffs.items()})


def test_bass_c8_example():
    G = catalog("C8")
    u = bass_unit(G, G.index_of("a"), 3, 2)
    assert u.u == elt(G, {"a": 1, "a^2": 2, "a^3": 1, "a^5": -1, "a^6": -1, "a^7": -1})
    assert u.normalized


@pytest.mark.parametrize("n", [3, 5, 7, 8, 9, 12])
def test_bass_at_minus_one_is_trivial(n):
    G = catalog(f"C{n}")
    a = G.index_of("a")
    u = bass_unit(G, a, n - 1, 2)
    assert u.u == GroupRingElement.of(G, G.power(a, -2), INT)
    assert bass_unit(G, a, 1, 3).is_one


def test_bass_bad_parameters():
    G = catalog("C8")
    a = G.index_of("a")
    with pytest.raises(BadParameters):
        bass_unit(G, a, 2, 1)
    with pytest.raises(BadParameters):
        bass_unit(G, a, 3, 1)
    with pytest.raises(BadParameters):
        bass_unit(G, a, 0, 1)


def _bass_instance(rng):
    n = rng.choice([5, 7, 8, 9, 10, 12, 15])
    G = catalog(f"C{n}")
    g = rng.choice([x for x in G.elements if G.element_order(x) == n])
    k = rng.choice([x for x in range(1, n) if gcd(x, n) == 1])
    return G, g, n, k, multiplicative_order(k, n)


def test_bass_identities_randomized():
    rng = random.Random(2024)
    for _ in range(120):
        G, g, n, k, m = _bass_instance(rng)
        m1, m2 = m * rng.randint(1, 2), m * rng.randint(1, 2)
        # m-additivity
        assert bass_unit(G, g, k, m1).u * bass_unit(G, g, k, m2).u == bass_unit(G, g, k, m1 + m2).u
        # k only matters modulo |g|
        assert bass_unit(G, g, k, m).u == bass_unit(G, g, k + n * rng.randint(1, 3), m).u


def test_bass_inverse_is_bass_at_gk():
    G = catalog("C12")
    a = G.index_of("a")
    u = bass_unit(G, a, 5, 2)
    v = bass_unit(G, G.power(a, 5), 5, 2)
    assert u.u * v.u == GroupRingElement.one(G, INT)


@pytest.mark.parametrize("name", ["C5", "C7", "C8", "D10", "Q12", "C2xC6"])
def test_bass_torsion_vs_bruteforce(name):
    G = catalog(name)
    for g in G.elements:
        n = G.element_order(g)
        for k in range(1, n + 1):
            if gcd(k, n) != 1:
                continue
            u = bass_unit(G, g, k, multiplicative_order(k, n))
            brute = element_order_bruteforce(u.u, 4 * G.order, u.u_inv)
            assert bass_is_torsion(G, g, k) == isinstance(brute, int)


def test_alternating_units():
    G = catalog("C5")
    a = G.index_of("a")
    u = alternating_unit(G, a, 3, multiplicative_order(3, 10))
    assert u.normalized or u.u.augmentation() == -1
    with pytest.raises(EvenOrder):
        alternating_unit(catalog("C4"), 1, 3, 2)
    with pytest.raises(BadParameters):
        alternating_unit(G, G.identity, 3, 4)


def test_bicyclic_triviality_matches_normalizer():
    G = catalog("S3")
    for g in G.elements:
        N = normalizer(G, G.cyclic(g))
        for h in G.elements:
            left, right = bicyclic_left(G, h, g), bicyclic_right(G, g, h)
            assert left.is_one == (h in N) == right.is_one
            eta = left.u - 1
            assert (eta * eta).is_zero()


def test_d8_bicyclic_relation():
    G = catalog("D8")
    a = G.index_of("a")
    u1, u2, u3, u4 = (bicyclic_left(G, a, G.index_of(x)) for x in ("b", "ab", "a^2b", "a^3b"))
    assert u4.u == u3.u_inv * u2.u_inv * u1.u_inv


def test_certified_unit_rejects_wrong_inverse():
    G = catalog("C3")
    one = GroupRingElement.one(G, INT)
    with pytest.raises(InvariantError):
        CertifiedUnit(one + one, one, "BASS")


@pytest.mark.parametrize("name", ["S3", "D8"])
def test_marciniak_sehgal_traces(name):
    G = catalog(name)
    count = 0
    for g in G.elements:
        for h in G.elements:
            if g in normalizer(G, G.cyclic(h)):
                with pytest.raises(TrivialBicyclic):
                    marciniak_sehgal_pair(G, g, h)
                continue
            u, ustar, cert = marciniak_sehgal_pair(G, g, h)
            assert cert.trace_value == 2 * G.element_order(h)
            assert ustar.u == u.u.star()
            count += 1
    assert count > 0


def test_free_pair_preconditions():
    G = catalog("S3")
    one = GroupRingElement.one(G, INT)
    with pytest.raises(NotSquareZero):
        free_pair_certificate(one, one)
    zero = GroupRingElement.zero(G, INT)
    with pytest.raises(PreconditionViolation):
        free_pair_certificate(zero, zero)


def test_generalized_bicyclic():
    G = catalog("S3")
    b = next(g for g in G.elements if G.element_order(g) == 2)
    rec = idempotent_record(element_hat(G, b))
    units = [generalized_bicyclic(rec, x, side) for x in G.elements for side in ("left", "right")]
    assert any(not u.is_one for u in units)
    with pytest.raises(BadParameters):
        generalized_bicyclic(rec, 0, "middle")


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "C8", "Q12"])
def test_generator_set_is_certified_and_deduplicated(name):
    G = catalog(name)
    gens = jespers_leal_generators(G)
    assert len({u.u for u in gens}) == len(gens)
    assert not any(u.is_one for u in gens)
    for u in gens:
        assert (u.u * u.u_inv).is_one()


def test_jespers_parmenter():
    assert jespers_parmenter_obstruction(catalog("Q16")).verdict == APPLIES
    assert jespers_parmenter_obstruction(catalog("P16")).verdict == APPLIES
    assert jespers_parmenter_obstruction(catalog("D8")).verdict == NOT_APPLICABLE
    assert jespers_parmenter_obstruction(catalog("S3")).verdict == NOT_APPLICABLE


def test_find_noncentral_idempotent():
    D8 = catalog("D8")
    e = GroupRingElement.one(D8, RAT) - group_sum_hat(D8.subgroup([0, 2]))
    g, f = find_noncentral_idempotent(D8, e)
    assert D8.label(g) == "b"
    assert f.is_idempotent() and not f.is_central()
    Q8 = catalog("Q8")
    e = GroupRingElement.one(Q8, RAT) - group_sum_hat(center(Q8))
    assert find_noncentral_idempotent(Q8, e) is None
    with pytest.raises(PreconditionViolation):
        find_noncentral_idempotent(D8, group_sum_hat(D8.whole))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "D8", "Q12", "D10"]), st.data())
def test_bicyclic_inverse_property(name, data):
    G = catalog(name)
    g = data.draw(st.sampled_from(G.elements))
    h = data.draw(st.sampled_from(G.elements))
    u = bicyclic_left(G, h, g)
    assert (u.u * u.u_inv).is_one() and u.u.augmentation() == 1
