"""Central units of ZG: the rank of Z(U(ZG)), the cut test, and central units
obtained by averaging a Bass unit along a subnormal series.
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import InvalidSeries, InvariantError, NotEligible
from .exact import euler_phi, multiplicative_order
from .groups import (
    conjugacy_classes,
    cyclic_subgroup_class_count,
    cyclic_subgroups,
    is_nilpotent,
    upper_central_series,
)
from .ring import INT, GroupRingElement
from .units import CENTRAL_AVERAGED, CertifiedUnit, bass_unit


@dataclass
class RankBreakdown:
    c: int
    c_prime: int
    d: int
    rank: int
    abelian_formula_rank: Optional[int] = None

    @property
    def r_real(self):
        return (self.c + self.c_prime) // 2

    @property
    def r_rational(self):
        return self.d

    def to_json(self):
        return {"c": self.c, "c_prime": self.c_prime, "d": self.d, "rank": self.rank,
                "r_real": self.r_real, "r_rational": self.r_rational,
                "abelian_formula_rank": self.abelian_formula_rank}


def abelian_rank_formulas(G):
    """The two closed forms for abelian G: sum over d > 2 of k_d (phi(d)/2 - 1), and
    (n + 1 + k_2 - 2c)/2 with c the number of cyclic subgroups."""
    k = Counter(S.order for S in cyclic_subgroups(G))
    by_divisor = sum(kd * (euler_phi(d) // 2 - 1) for d, kd in k.items() if d > 2)
    c = sum(k.values())
    closed = G.order + 1 + k.get(2, 0) - 2 * c
    if closed % 2:
        raise InvariantError("(n + 1 + k_2 - 2c) is odd")
    return by_divisor, closed // 2


def central_rank(G):
    cc = conjugacy_classes(G)
    c, c_prime = cc.class_count, cc.real_closed_count
    d = cyclic_subgroup_class_count(G)
    if (c + c_prime) % 2:
        raise InvariantError("c + c' is odd")
    rank = (c + c_prime) // 2 - d
    if rank < 0:
        raise InvariantError(f"negative central rank {rank}")
    abelian = None
    if G.is_abelian:
        by_divisor, closed = abelian_rank_formulas(G)
        if not by_divisor == closed == rank:
            raise InvariantError(f"abelian rank formulas disagree: {by_divisor}, {closed}, {rank}")
        abelian = by_divisor
    return RankBreakdown(c, c_prime, d, rank, abelian)


def cut_witness(G):
    """(g, m) with g conjugate to neither g^m nor g^-m, or None when G is cut."""
    cc = conjugacy_classes(G)
    n = G.exponent
    for g in G.elements:
        cl = cc.class_of[g]
        for m in range(1, n + 1):
            if gcd(m, n) != 1:
                continue
            if cl not in (cc.class_of[G.power(g, m)], cc.class_of[G.power(g, -m)]):
                return g, m
    return None


def is_cut(G):
    """Every g is conjugate to g^m or g^-m for all m coprime to exp(G); checked against the rank."""
    cut = cut_witness(G) is None
    if cut != (central_rank(G).rank == 0):
        raise InvariantError("cut criterion disagrees with the central rank")
    return cut


@dataclass
class SubnormalSeries:
    chain: list
    transversals: list = field(default_factory=list)

    def labels(self):
        return [[s.parent.label(g) for g in s.members] for s in self.chain]


def _transversal_in(G, S, ambient, rng=None):
    """A right transversal of S inside ambient."""
    index, _ = G.coset_index_map(S)
    buckets = {}
    for g in ambient.members:
        buckets.setdefault(index[g], []).append(g)
    if rng is None:
        return [b[0] for _, b in sorted(buckets.items())]
    return [rng.choice(b) for _, b in sorted(buckets.items())]


def _with_transversals(G, chain):
    trans = [_transversal_in(G, chain[i - 1], chain[i]) for i in range(1, len(chain))]
    return SubnormalSeries(chain, trans)


def subnormal_series(G, g):
    """<g> = N_0 normal in N_1 ... normal in N_m = G, or None if <g> is not subnormal."""
    C = G.cyclic(g)
    chain = [C]
    if is_nilpotent(G):
        for Z in upper_central_series(G)[1:]:
            nxt = G.subgroup(G.closure(list(Z.members) + [g]).members)
            if nxt != chain[-1]:
                chain.append(nxt)
        if chain[-1] != G.whole:
            raise InvariantError("upper central chain does not reach G")
        return _with_transversals(G, chain)
    # descending chain of normal closures: <g> is subnormal iff it reaches <g>
    down = [G.whole]
    while True:
        M = down[-1]
        nxt = G.subgroup([x for x in G.elements if (G.normal_closure_mask([g], M) >> x) & 1])
        if nxt == M:
            break
        down.append(nxt)
    if down[-1] != C:
        return None
    return _with_transversals(G, list(reversed(down)))


def _validate_series(G, series):
    chain = series.chain
    if not chain or chain[-1] != G.whole:
        raise InvalidSeries("series does not end at G")
    for a, b in zip(chain, chain[1:]):
        if not (a <= b and G.is_normal_in(a, b)):
            raise InvalidSeries("consecutive terms are not normal in each other")
    if len(series.transversals) != len(chain) - 1:
        raise InvalidSeries("one transversal per step is needed")


def _average(c, transversals):
    for T in transversals:
        prod = GroupRingElement.one(c.group, INT)
        for h in T:
            prod = prod * c.conjugate_by(h)
        c = prod
    return c


def central_averaged_unit(unit, series, rng=None):
    """c_m(u): repeatedly multiply the conjugates of u over each step's transversal."""
    G = unit.u.group
    _validate_series(G, series)
    base = series.chain[0]
    if any(g not in base for g in unit.u.coeffs) or any(g not in base for g in unit.u_inv.coeffs):
        raise InvalidSeries("the unit is not supported on the first term of the series")
    c = _average(unit.u, series.transversals)
    c_inv = _average(unit.u_inv, series.transversals)
    if not c.is_central():
        raise InvariantError("averaged unit is not central")
    rng = rng or random.Random(0)
    other = [_transversal_in(G, a, b, rng) for a, b in zip(series.chain, series.chain[1:])]
    if _average(unit.u, other) != c:
        raise InvariantError("averaged unit depends on the transversals")
    return CertifiedUnit(c, c_inv, CENTRAL_AVERAGED, (("base", unit.describe()),))


@dataclass
class CentralGenerators:
    units: list
    eligible: bool
    rank: int
    skipped_orders: tuple = (4, 6)

    @property
    def count_at_least_rank(self):
        return len(self.units) >= self.rank


def central_generators(G, seed=0):
    """Averaged Bass units for every g of order not dividing 4 or 6.

    Raises NotEligible when some such <g> is not subnormal in G.
    """
    rng = random.Random(seed)
    series_for = {}
    for S in cyclic_subgroups(G):
        if 4 % S.order == 0 or 6 % S.order == 0:
            continue
        gen = next(x for x in S.members if G.element_order(x) == S.order)
        s = subnormal_series(G, gen)
        if s is None:
            raise NotEligible(f"<{G.label(gen)}> is not subnormal in G")
        series_for[S.mask] = s
    out, seen = [], set()
    for g in G.elements:
        n = G.element_order(g)
        if 4 % n == 0 or 6 % n == 0:
            continue
        series = series_for[G.cyclic(g).mask]
        for k in range(2, n):
            if gcd(k, n) != 1:
                continue
            b = bass_unit(G, g, k, multiplicative_order(k, n))
            c = central_averaged_unit(b, series, rng)
            if c.is_one or c.u in seen:
                continue
            seen.add(c.u)
            out.append(c)
    return CentralGenerators(out, True, central_rank(G).rank)
