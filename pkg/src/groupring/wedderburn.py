"""Wedderburn components of QG from strong Shoda pairs.

A strong Shoda pair (H, K) with N = N_G(K) gives the component
M_n(Q(zeta_h) * N/H), where n = [G:N], h = [H:K] and the crossed product is
described by an action y x y^-1 = x^i of N/H on a generator x of H/K and a
twisting u_a u_b = x^f(a,b) u_ab, both stored as residues mod h.
"""

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import IncompletePCI, InvariantError, NotAbelian, NotStrongPair
from .exact import Cyclotomic, QuaternionParams, euler_phi, squarefree_part, units_mod
from .groups import SUBGROUP_BOUND, cyclic_subgroups, normalizer, subgroups
from .idempotents import (
    e_from_rec,
    is_strong_shoda_pair,
    pci_strongly_monomial,
    quotient_generator,
)
from .ring import stabilizer


# ---------------------------------------------------------------------------
# subfields of cyclotomic fields


@dataclass(frozen=True)
class FieldDesc:
    """The fixed field of a subgroup S of (Z/m)^x inside Q(zeta_m).

    Always stored with m the least conductor, so equal fields compare equal.
    """
    conductor: int
    fixing: tuple

    @classmethod
    def fixed_field(cls, h, fixing):
        S = sorted({s % h for s in fixing} | {1 % h}) if h > 1 else [0]
        for m in sorted(d for d in range(1, h + 1) if h % d == 0):
            kernel = [u for u in units_mod(h) if (u - 1) % m == 0]
            if all(k % h in S or (h == 1) for k in kernel):
                reduced = sorted({s % m for s in S if gcd(s, h) == 1} or {0})
                if m <= 2:
                    return cls(1, (0,))
                return cls(m, tuple(reduced))
        raise InvariantError("no conductor found")  # unreachable: m = h works

    @property
    def degree(self):
        if self.conductor == 1:
            return 1
        return euler_phi(self.conductor) // len(self.fixing)

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def is_real(self):
        return self.conductor == 1 or (self.conductor - 1) in self.fixing

    @property
    def quadratic_d(self):
        """Squarefree d with this field equal to Q(sqrt(d)), for quadratic fields."""
        if self.degree != 2:
            return None
        # a quadratic field has conductor |disc|, and is real iff -1 is fixed
        disc = self.conductor if self.is_real else -self.conductor
        return squarefree_part(disc)

    @property
    def is_imaginary_quadratic(self):
        return self.degree == 2 and not self.is_real

    def label(self):
        m = self.conductor
        if self.is_rational:
            return "Q"
        d = self.quadratic_d
        if d is not None:
            return "Q(i)" if d == -1 else f"Q(sqrt({d}))"
        if self.fixing == (1,):
            return f"Q(zeta_{m})"
        if self.fixing == (1, m - 1):
            return f"Q(zeta_{m})^+"
        return f"Q(zeta_{m})^<{','.join(map(str, self.fixing))}>"

    def to_json(self):
        return {"conductor": self.conductor, "fixing": list(self.fixing),
                "degree": self.degree, "label": self.label()}


# ---------------------------------------------------------------------------
# component descriptors


@dataclass
class SimpleComponentDescriptor:
    source_pair: tuple
    n: int
    h: int
    quotient_order: int
    coset_reps: list
    action: dict
    twisting: dict
    center: FieldDesc
    dimension: int
    faithful: bool
    idempotent: object = None
    split_by_complement: bool = False

    @property
    def center_degree(self):
        return euler_phi(self.h) // self.quotient_order

    def twisting_is_zero(self):
        return all(v == 0 for v in self.twisting.values())

    def to_json(self):
        G = self.idempotent.group if self.idempotent is not None else None
        lab = (lambda g: G.label(g)) if G is not None else str
        H, K = self.source_pair
        return {
            "pair": {"H": [lab(g) for g in H.members], "K": [lab(g) for g in K.members]},
            "n": self.n,
            "h": self.h,
            "quotient_order": self.quotient_order,
            "action": {lab(a): i for a, i in self.action.items()},
            "twisting": [[lab(a), lab(b), f] for (a, b), f in sorted(self.twisting.items())],
            "center": self.center.to_json(),
            "dimension": self.dimension,
            "faithful": self.faithful,
        }


def _complement(G, H, K, N, q):
    """A subgroup C with K <= C <= N, C meet H = K and |C| = |K| q, if one exists."""
    for C in subgroups(G):
        if C.order == K.order * q and K <= C and C <= N and (C.mask & H.mask) == K.mask:
            return C
    return None


def _power_mod(G, x, K, target, h):
    """The exponent j mod h with x^j K = target K."""
    y = G.identity
    for j in range(h):
        if G.table[y][G.inverse[target]] in K:
            return j
        y = G.table[y][x]
    raise InvariantError("element is not in <x>K")


def component_from_pair(G, H, K, rec=None):
    """Descriptor of the component cut out by e(G, H, K)."""
    if rec is None:
        rec = is_strong_shoda_pair(G, H, K, full=False)
    if not rec.is_strong:
        raise NotStrongPair("component_from_pair needs a strong Shoda pair")
    if rec.e_idem is None:
        e_from_rec(G, rec)
    N = rec.normalizer_of_K or normalizer(G, K)
    if rec.centralizer_of_epsilon is not None and rec.centralizer_of_epsilon != N:
        raise InvariantError("N_G(K) differs from Cen_G(eps)")
    n = G.order // N.order
    h = H.order // K.order
    q = N.order // H.order
    x = quotient_generator(G, H, K)
    t = G.table

    # coset representatives u_a for N/H; the identity coset is represented by 1
    C = _complement(G, H, K, N, q)
    if C is not None:
        pool = C.members
    else:
        pool = N.members
    index, _ = G.coset_index_map(H)
    reps = {}
    for g in pool:
        reps.setdefault(index[g], g)
    reps[index[G.identity]] = G.identity
    if len(reps) != q:
        raise InvariantError("transversal of N/H has the wrong size")
    rep_of = {c: g for c, g in reps.items()}
    order = sorted(rep_of.values())

    action = {}
    for y in order:
        target = t[t[y][x]][G.inverse[y]]
        action[y] = _power_mod(G, x, K, target, h) if h > 1 else 0
    if h > 1:
        image = sorted(action.values())
        if len(set(image)) != q or any(gcd(i, h) != 1 for i in image):
            raise InvariantError("N/H does not act faithfully on H/K")

    twisting = {}
    for a in order:
        for b in order:
            ab = rep_of[index[t[a][b]]]
            target = t[t[a][b]][G.inverse[ab]]
            twisting[(a, b)] = _power_mod(G, x, K, target, h) if h > 1 else 0

    # cocycle identity f(a,b) + f(ab,c) = i_a f(b,c) + f(a,bc) mod h
    for a in order:
        for b in order:
            ab = rep_of[index[t[a][b]]]
            for c in order:
                bc = rep_of[index[t[b][c]]]
                lhs = twisting[(a, b)] + twisting[(ab, c)]
                rhs = action[a] * twisting[(b, c)] + twisting[(a, bc)]
                if h > 1 and (lhs - rhs) % h:
                    raise InvariantError("twisting fails the cocycle identity")

    center = FieldDesc.fixed_field(h, action.values()) if h > 1 else FieldDesc(1, (0,))
    dimension = n * n * q * euler_phi(h)
    e = rec.e_idem
    faithful = stabilizer(e).order == 1
    return SimpleComponentDescriptor((H, K), n, h, q, order, action, twisting, center,
                                     dimension, faithful, e, C is not None)


def perlis_walker(G, bound=SUBGROUP_BOUND):
    """Sorted list of (d, k_d): QG is the product of k_d copies of Q(zeta_d)."""
    if not G.is_abelian:
        raise NotAbelian("Perlis-Walker needs an abelian group")
    counts = Counter(S.order for S in cyclic_subgroups(G))
    out = sorted(counts.items())
    if sum(k * euler_phi(d) for d, k in out) != G.order:
        raise InvariantError("Perlis-Walker dimension count fails")
    return out


# ---------------------------------------------------------------------------
# classification


FIELD = "FIELD"
MATRIX = "MATRIX_OVER_FIELD"
QUATERNION = "QUATERNION"
UNRESOLVED = "CROSSED_UNRESOLVED"

NO, TYPE1, TYPE2, UNKNOWN = "NO", "TYPE1", "TYPE2", "UNKNOWN"

_DEFINITE_RATIONAL = {(-1, -1), (-1, -3), (-2, -5)}


@dataclass
class ComponentClassification:
    kind: str
    exceptional: str
    totally_definite_quaternion: Optional[bool]
    matrix_size: int
    center: FieldDesc
    params: Optional[QuaternionParams] = None
    division: Optional[bool] = None
    label: str = ""
    crossed_degree: int = 1
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {
            "kind": self.kind,
            "matrix_size": self.matrix_size,
            "center": self.center.label(),
            "exceptional": self.exceptional,
            "totally_definite_quaternion": self.totally_definite_quaternion,
            "label": self.label,
        }
        if self.params is not None:
            out["params"] = [str(self.params.a), str(self.params.b)]
            out["division"] = self.division
        return out


def _quadratic_generator(h):
    """alpha with Q(zeta_h) = Q(sqrt(alpha)) for h in {3, 4, 6}."""
    return -1 if h == 4 else -3


def _quaternion_label(a, b, F):
    a, b = sorted((int(a), int(b)), reverse=True)
    if F.is_rational:
        return "H(Q)" if (a, b) == (-1, -1) else f"({a},{b}/Q)"
    return f"H({F.label()})" if (a, b) == (-1, -1) else f"({a},{b}/{F.label()})"


def _matrix_label(m, inner):
    return inner if m == 1 else f"M{m}({inner})"


def _type2_field(F):
    return F.is_rational or F.is_imaginary_quadratic


def classify_component(desc):
    n, q, h, F = desc.n, desc.quotient_order, desc.h, desc.center
    if q == 1:
        kind = FIELD if n == 1 else MATRIX
        exc = TYPE2 if n == 2 and _type2_field(F) else NO
        return ComponentClassification(kind, exc, False, n, F,
                                       label=_matrix_label(n, F.label()))
    if desc.twisting_is_zero():
        # trivial cocycle: Q(zeta_h) * N/H is End_F(Q(zeta_h)) = M_q(F)
        m = n * q
        exc = TYPE2 if m == 2 and _type2_field(F) else NO
        return ComponentClassification(MATRIX, exc, False, m, F,
                                       label=_matrix_label(m, F.label()))
    if q == 2:
        (b,) = [y for y in desc.coset_reps if desc.action[y] != 1]
        f = desc.twisting[(b, b)]
        # u_b^2 = zeta_h^f lies in F, hence is +-1 when F is real and sigma is conjugation
        sigma = desc.action[b]
        if F.is_rational and h in (3, 4, 6):
            a = 1 if f == 0 else -1
            params = QuaternionParams(_quadratic_generator(h), a)
            split = params.splits()
            return _quaternion_result(n, F, params, not split, h)
        if F.is_real and sigma == h - 1 and h % 2 == 0 and f == h // 2:
            # u_b^2 = -1 with complex conjugation over a real center: the algebra is
            # (alpha, -1 / F) with alpha = (zeta_h - zeta_h^-1)^2 negative at every real
            # place, so it is a totally definite division algebra (never exceptional,
            # and M_n of it for n >= 2 has the wrong degree to be exceptional)
            alpha = Cyclotomic.zeta(h, 2) + Cyclotomic.zeta(h, h - 2) - 2
            if h & (h - 1) == 0:
                inner = f"H({F.label()})"
            elif alpha.is_rational():
                inner = _quaternion_label(alpha.to_rational(), -1, F)
            else:
                inner = f"(-1,(zeta_{h}-zeta_{h}^-1)^2/{F.label()})"
            return ComponentClassification(QUATERNION, NO, True, n, F, None, True,
                                           label=_matrix_label(n, inner))
    return _unresolved(desc)


def _quaternion_result(n, F, params, division, h):
    pa, pb = int(params.a), int(params.b)
    definite = division and pa < 0 and pb < 0
    if not division:
        m = 2 * n
        exc = TYPE2 if m == 2 else NO
        return ComponentClassification(QUATERNION, exc, False, m, F, params, False,
                                       label=_matrix_label(m, "Q"))
    key = tuple(sorted((pa, pb), reverse=True))
    if n == 1:
        exc = NO if definite else TYPE1
    elif n == 2:
        exc = TYPE2 if definite and key in _DEFINITE_RATIONAL else NO
    else:
        exc = NO
    return ComponentClassification(QUATERNION, exc, definite, n, F, params, True,
                                   label=_matrix_label(n, _quaternion_label(pa, pb, F)))


def _unresolved(desc):
    n, q, F = desc.n, desc.quotient_order, desc.center
    # an exceptional component has reduced degree at most 2 over Q or an imaginary
    # quadratic field, or is M2 of a rational quaternion algebra; a component of
    # reduced degree n*q beyond those shapes cannot be exceptional
    degree = n * q
    exc = NO if n >= 2 and not (n == 2 and q == 2 and F.is_rational) else UNKNOWN
    inner = f"Q(zeta_{desc.h})*C{q}"
    label = _matrix_label(n, f"[{inner}]")
    cls = ComponentClassification(UNRESOLVED, exc, None, n, F, label=label, crossed_degree=q)
    cls.notes.append(f"reduced degree {degree} over {F.label()}")
    return cls


# ---------------------------------------------------------------------------
# the decomposition


@dataclass
class DecompositionEntry:
    idempotent: object
    descriptor: SimpleComponentDescriptor
    classification: ComponentClassification


def decomposition_report(G, bound=SUBGROUP_BOUND, seed=0, pci=None):
    """One (descriptor, classification) per primitive central idempotent."""
    pci = pci or pci_strongly_monomial(G, bound, seed)
    if not pci.complete:
        raise IncompletePCI(f"{G.name or 'group'}: strong Shoda pairs do not give all PCIs")
    entries = []
    for rec in pci.pairs:
        desc = component_from_pair(G, rec.H, rec.K, rec)
        entries.append(DecompositionEntry(rec.e_idem, desc, classify_component(desc)))
    total = sum(e.descriptor.dimension for e in entries)
    if total != G.order:
        raise InvariantError(f"component dimensions sum to {total}, not |G| = {G.order}")
    entries.sort(key=lambda e: (e.descriptor.dimension, e.classification.label))
    return entries


def decomposition_multiset(entries):
    return Counter(e.classification.label for e in entries)


def decomposition_text(entries):
    """The decomposition in the notation 4Q + 2Q(i) + H(Q) + M2(Q)."""
    seen = []
    counts = Counter()
    for e in entries:
        lab = e.classification.label
        if lab not in counts:
            seen.append(lab)
        counts[lab] += 1
    return " + ".join(lab if counts[lab] == 1 else f"{counts[lab]}{lab}" for lab in seen)


def parse_decomposition(text):
    """Inverse of decomposition_text, as a Counter of labels."""
    out = Counter()
    for part in text.split(" + "):
        part = part.strip()
        k = 0
        while k < len(part) and part[k].isdigit():
            k += 1
        mult = int(part[:k]) if k else 1
        out[part[k:]] += mult
    return out


def dimension_check(entries, G):
    return sum(e.descriptor.dimension for e in entries) == G.order


def perlis_walker_fields(G):
    """perlis_walker with Q(zeta_d) identified with Q(zeta_d/2) for d = 2 mod 4."""
    out = Counter()
    for d, k in perlis_walker(G):
        out[d // 2 if d % 4 == 2 else d] += k
    return sorted(out.items())


def field_conductors(entries):
    """Sorted (conductor, multiplicity) over FIELD components."""
    c = Counter(e.classification.center.conductor for e in entries
                if e.classification.kind == FIELD)
    return sorted(c.items())


__all__ = [
    "FieldDesc", "SimpleComponentDescriptor", "ComponentClassification", "component_from_pair",
    "perlis_walker", "perlis_walker_fields", "classify_component", "decomposition_report", "decomposition_text",
    "parse_decomposition", "field_conductors"
]
