"""Primitive central idempotents of QG from (strong) Shoda pairs.

For K normal in H, eps(H, K) is H^ when H = K and otherwise the product of
(K^ - D^) over the minimal normal subgroups D/K of H/K. For a strong Shoda pair
e(G, H, K) sums the G-conjugates of eps(H, K) over a transversal of its
centralizer.
"""

import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

from .errors import InvariantError, NotAbelian, NotNormalInH, NotStrongPair
from .groups import (
    SUBGROUP_BOUND,
    Subgroup,
    check_bound,
    cyclic_subgroup_class_count,
    minimal_normal_subgroups_of_quotient,
    normalizer,
    subgroups,
)
from .ring import RAT, GroupRingElement, group_sum_hat


@dataclass
class ShodaPairRecord:
    H: Subgroup
    K: Subgroup
    s1: Optional[bool] = None
    s2: Optional[bool] = None
    s3: Optional[bool] = None
    ss1: Optional[bool] = None
    ss2: Optional[bool] = None
    ss3: Optional[bool] = None
    epsilon: Optional[GroupRingElement] = None
    e_idem: Optional[GroupRingElement] = None
    centralizer_of_epsilon: Optional[Subgroup] = None
    normalizer_of_K: Optional[Subgroup] = None

    @property
    def is_shoda(self):
        return bool(self.s1 and self.s2 and self.s3)

    @property
    def is_strong(self):
        return bool(self.ss1 and self.ss2 and self.ss3)


@dataclass
class PCISet:
    idempotents: list
    provenance: list
    complete: bool
    certified_strongly_monomial: bool
    pairs: list = field(default_factory=list)

    def __len__(self):
        return len(self.idempotents)


def epsilon(H, K):
    """eps(H, K) in QG for K normal in H."""
    G = H.parent
    if not K <= H or not G.is_normal_in(K, H):
        raise NotNormalInH("eps(H, K) needs K normal in H")
    if H == K:
        return group_sum_hat(H)
    Khat = group_sum_hat(K)
    factors = [Khat - group_sum_hat(D) for D in minimal_normal_subgroups_of_quotient(G, K, H)]
    eps = reduce(lambda a, b: a * b, factors)
    if not eps.is_idempotent():
        raise InvariantError("eps(H, K) is not idempotent")
    return eps


def order_modulo(G, x, K):
    """Least t >= 1 with x^t in K."""
    t, y = 1, x
    while y not in K:
        y = G.table[y][x]
        t += 1
    return t


def quotient_generator(G, H, K):
    """Minimal-index x in H with xK generating H/K, or None if H/K is not cyclic."""
    h = H.order // K.order
    for x in H.members:
        if order_modulo(G, x, K) == h:
            return x
    return None


def is_shoda_pair(G, H, K):
    rec = ShodaPairRecord(H, K)
    rec.s1 = K <= H and G.is_normal_in(K, H)
    rec.s2 = rec.s1 and quotient_generator(G, H, K) is not None
    rec.s3 = all(
        any(G.commutator(h, g) in H and G.commutator(h, g) not in K for h in H.members)
        for g in G.elements if g not in H)
    return rec


def _maximal_abelian_mod(G, H, K, N):
    """No x in N \\ H centralizes H modulo K."""
    for x in N.members:
        if x in H:
            continue
        if all(G.commutator(h, x) in K for h in H.members):
            return False
    return True


def _conjugate_is_orthogonal(eps, g):
    return (eps * eps.conjugate_by(g)).is_zero()


def is_strong_shoda_pair(G, H, K, full=True, N=None):
    """Fill ss1-ss3; with ``full`` also s1-s3 and the centralizer of eps.

    Without ``full`` the checks stop at the first failing condition and the
    remaining flags stay None.
    """
    rec = is_shoda_pair(G, H, K) if full else ShodaPairRecord(H, K)
    N = normalizer(G, K) if N is None else N
    rec.normalizer_of_K = N
    rec.ss1 = H <= N and G.is_normal_in(H, N)
    if not rec.ss1 and not full:
        return rec
    cyclic = K <= H and G.is_normal_in(K, H) and quotient_generator(G, H, K) is not None
    rec.ss2 = cyclic and H <= N and _maximal_abelian_mod(G, H, K, N)
    if not rec.ss2 and not full:
        return rec
    if not (K <= H and G.is_normal_in(K, H)):
        rec.ss3 = False
        return rec
    eps = epsilon(H, K)
    rec.epsilon = eps
    rec.ss3 = all(_conjugate_is_orthogonal(eps, g) for g in G.elements if g not in N)
    if full or rec.is_strong:
        rec.centralizer_of_epsilon = G.subgroup(
            [g for g in G.elements if eps.conjugate_by(g) == eps])
    if rec.is_strong and rec.centralizer_of_epsilon != N:
        raise InvariantError("Cen_G(eps(H,K)) differs from N_G(K) for a strong Shoda pair")
    return rec


def _sum_conjugates(eps, transversal):
    total = GroupRingElement.zero(eps.group, RAT)
    for t in transversal:
        total = total + eps.conjugate_by(t)
    return total


def e_from_rec(G, rec, rng=None):
    cen = rec.centralizer_of_epsilon
    e = _sum_conjugates(rec.epsilon, G.right_transversal(cen))
    if rng is not None:
        other = _sum_conjugates(rec.epsilon, G.right_transversal(cen, rng))
        if other != e:
            raise InvariantError("e(G,H,K) depends on the transversal")
    if not e.is_idempotent() or not e.is_central():
        raise InvariantError("e(G,H,K) is not a central idempotent")
    rec.e_idem = e
    return e


def e_from_pair(G, H, K, seed=0):
    rec = is_strong_shoda_pair(G, H, K, full=False)
    if not rec.is_strong:
        raise NotStrongPair("e(G,H,K) needs a strong Shoda pair")
    return e_from_rec(G, rec, random.Random(seed))


def _verify(G, idems):
    one = GroupRingElement.one(G, RAT)
    for i, a in enumerate(idems):
        for b in idems[i + 1:]:
            if not (a * b).is_zero():
                return False, False
    total = reduce(lambda x, y: x + y, idems, GroupRingElement.zero(G, RAT))
    return True, total == one


def pci_abelian(G, bound=SUBGROUP_BOUND):
    if not G.is_abelian:
        raise NotAbelian("pci_abelian needs an abelian group")
    whole = G.whole
    idems, prov = [], []
    for N in subgroups(G, bound):
        if quotient_generator(G, whole, N) is None:
            continue
        idems.append(epsilon(whole, N))
        prov.append(("ABELIAN_EPSILON", N))
    orthogonal, sums_to_one = _verify(G, idems)
    if not orthogonal:
        raise InvariantError("abelian eps(G,N) are not orthogonal")
    complete = sums_to_one and len(idems) == cyclic_subgroup_class_count(G)
    return PCISet(idems, prov, complete, complete)


def strong_shoda_pairs(G, bound=SUBGROUP_BOUND):
    """Every strong Shoda pair (H, K), sorted by (|H|, |K|, members)."""
    check_bound(G, bound, "Shoda pair enumeration")
    subs = subgroups(G, bound)
    found = []
    for K in subs:
        N = normalizer(G, K)
        for H in subs:
            if H.mask & K.mask != K.mask or H.mask & N.mask != H.mask:
                continue
            if (N.order // K.order) % (H.order // K.order):
                continue
            rec = is_strong_shoda_pair(G, H, K, full=False, N=N)
            if rec.is_strong:
                found.append(rec)
    found.sort(key=lambda r: (r.H.order, r.K.order, r.H.members, r.K.members))
    return found


def pci_strongly_monomial(G, bound=SUBGROUP_BOUND, seed=0):
    """PCIs e(G,H,K) over strong Shoda pairs, deduplicated by idempotent.

    ``complete`` means the idempotents sum to 1; ``certified_strongly_monomial``
    additionally requires their number to equal the Artin count d, which pins
    them down as the full primitive set.
    """
    rng = random.Random(seed)
    seen = {}
    idems, prov, pairs = [], [], []
    for rec in strong_shoda_pairs(G, bound):
        e = e_from_rec(G, rec, rng)
        if e in seen:
            continue
        seen[e] = len(idems)
        idems.append(e)
        prov.append(("STRONG_SHODA", rec.H, rec.K))
        pairs.append(rec)
    orthogonal, sums_to_one = _verify(G, idems)
    if not orthogonal:
        raise InvariantError("distinct e(G,H,K) are not orthogonal")
    d = cyclic_subgroup_class_count(G)
    if len(idems) > d:
        raise InvariantError(f"{len(idems)} orthogonal central idempotents exceed d = {d}")
    return PCISet(idems, prov, sums_to_one, sums_to_one and len(idems) == d, pairs)
