"""Group rings RG for R = Z, Q or a cyclotomic field Q(zeta_n).

Elements are sparse: a dict from element index to a nonzero coefficient.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm

from .errors import NotAUnit, NotIdempotent, NotNormal, RingMismatch
from .exact import Cyclotomic
from .groups import Subgroup, quotient


@dataclass(frozen=True)
class CoeffRing:
    kind: str
    conductor: int = 0

    def __str__(self):
        return f"CYC({self.conductor})" if self.kind == "CYC" else self.kind

    def coerce(self, c):
        if self.kind == "INT":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise RingMismatch(f"{c} is not an integer")
                return c.numerator
            if not isinstance(c, int):
                raise RingMismatch(f"{c!r} is not an integer")
            return c
        if self.kind == "RAT":
            if isinstance(c, Cyclotomic):
                return c.to_rational()
            return Fraction(c)
        if isinstance(c, Cyclotomic):
            if c.conductor != self.conductor:
                raise RingMismatch(f"conductor {c.conductor} in CYC({self.conductor})")
            return c
        return Cyclotomic.rational(self.conductor, c)


INT = CoeffRing("INT")
RAT = CoeffRing("RAT")


def CYC(n):
    return CoeffRing("CYC", n)


def ring_from_tag(tag):
    if tag == "INT":
        return INT
    if tag == "RAT":
        return RAT
    if tag.startswith("CYC(") and tag.endswith(")"):
        return CYC(int(tag[4:-1]))
    raise RingMismatch(f"unknown ring tag {tag!r}")


def _coeff_str(c):
    return str(c) if not isinstance(c, Cyclotomic) else str(c)


class GroupRingElement:
    """An element sum r_g g of RG; never stores zero coefficients."""

    __slots__ = ("group", "ring", "coeffs", "_hash")

    def __init__(self, group, ring, coeffs):
        self.group = group
        self.ring = ring
        clean = {}
        for g, c in coeffs.items():
            c = ring.coerce(c)
            if c != 0:
                clean[g] = c
        self.coeffs = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, G, ring=INT):
        return cls(G, ring, {})

    @classmethod
    def one(cls, G, ring=INT):
        return cls(G, ring, {G.identity: 1})

    @classmethod
    def of(cls, G, g, ring=INT, coeff=1):
        return cls(G, ring, {g: coeff})

    @classmethod
    def from_terms(cls, G, ring, terms):
        acc = {}
        for g, c in terms:
            acc[g] = acc.get(g, 0) + c
        return cls(G, ring, acc)

    def to_ring(self, ring):
        return GroupRingElement(self.group, ring, self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GroupRingElement):
            return False
        if other.group is not self.group:
            raise RingMismatch("elements of different group rings")
        if other.ring != self.ring:
            raise RingMismatch(f"coefficient rings differ: {self.ring} vs {other.ring}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return self + self._scalar(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, self.ring, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        if not self._check(other):
            return self - self._scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scalar(self, c):
        return GroupRingElement(self.group, self.ring, {self.group.identity: c})

    def scalar_mul(self, c):
        c = self.ring.coerce(c)
        return GroupRingElement(self.group, self.ring, {g: c * x for g, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return self.scalar_mul(other)
        self._check(other)
        t = self.group.table
        if self.ring.kind == "RAT":
            return self._mul_rational(other)
        out = {}
        for g, a in self.coeffs.items():
            row = t[g]
            for h, b in other.coeffs.items():
                k = row[h]
                out[k] = out.get(k, 0) + a * b
        return GroupRingElement(self.group, self.ring, out)

    def _mul_rational(self, other):
        # clear denominators so the inner loop runs on ints
        da, db = self.denominator_lcm(), other.denominator_lcm()
        a_items = [(g, int(c * da)) for g, c in self.coeffs.items()]
        b_items = [(h, int(c * db)) for h, c in other.coeffs.items()]
        t = self.group.table
        out = {}
        for g, a in a_items:
            row = t[g]
            for h, b in b_items:
                k = row[h]
                out[k] = out.get(k, 0) + a * b
        d = da * db
        return GroupRingElement(self.group, self.ring,
                                {k: Fraction(v, d) for k, v in out.items() if v})

    def __rmul__(self, c):
        return self.scalar_mul(c)

    def __pow__(self, e):
        if e < 0:
            raise NotAUnit("negative powers need a certified inverse")
        result = GroupRingElement.one(self.group, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate_by(self, g):
        """g^-1 * alpha * g."""
        G = self.group
        return GroupRingElement(G, self.ring, {G.conj(x, g): c for x, c in self.coeffs.items()})

    def star(self):
        """Classical involution sum r_g g -> sum r_g g^-1 (coefficients untouched)."""
        inv = self.group.inverse
        return GroupRingElement(self.group, self.ring, {inv[g]: c for g, c in self.coeffs.items()})

    # -- scalar maps --------------------------------------------------------

    def augmentation(self):
        return sum(self.coeffs.values(), self.ring.coerce(0))

    def trace(self):
        """Coefficient of the identity."""
        return self.coeffs.get(self.group.identity, self.ring.coerce(0))

    def coefficient(self, g):
        return self.coeffs.get(g, self.ring.coerce(0))

    @property
    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == {self.group.identity: 1}

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.group is other.group and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.coeffs == {self.group.identity: other}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"GroupRingElement[{self.ring}]({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        G = self.group
        parts = []
        for g in sorted(self.coeffs):
            c = self.coeffs[g]
            lab = G.label(g)
            if g == G.identity:
                parts.append(f"{_coeff_str(c)}" if not isinstance(c, Cyclotomic) else f"({c})")
            elif isinstance(c, Cyclotomic):
                parts.append(f"({c})*{lab}")
            elif c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts).replace("+ -", "- ")

    def terms(self):
        """Serializable [[index, "coeff"], ...] sorted by index."""
        out = []
        for g in sorted(self.coeffs):
            c = self.coeffs[g]
            out.append([g, c.to_json() if isinstance(c, Cyclotomic) else str(c)])
        return out

    def to_json(self):
        return {"ring": str(self.ring), "terms": self.terms()}

    # -- predicates ---------------------------------------------------------

    def is_idempotent(self):
        return self * self == self

    def is_central(self):
        G = self.group
        return all(self.conjugate_by(g) == self for g in G.elements)

    def denominator_lcm(self):
        """Least n with n*alpha integral (RAT coefficients)."""
        return reduce(lcm, (Fraction(c).denominator for c in self.coeffs.values()), 1)


def element(G, g, ring=INT):
    return GroupRingElement.of(G, g, ring)


def from_json(G, data):
    ring = ring_from_tag(data["ring"])
    acc = {}
    for g, c in data["terms"]:
        if isinstance(c, dict):
            acc[int(g)] = Cyclotomic(int(c["conductor"]), [Fraction(x) for x in c["coeffs"]])
        else:
            acc[int(g)] = Fraction(c) if ring != INT else int(Fraction(c))
    return GroupRingElement(G, ring, acc)


def group_sum_tilde(N):
    G = N.parent
    return GroupRingElement(G, INT, {n: 1 for n in N.members})


def group_sum_hat(N):
    G = N.parent
    c = Fraction(1, N.order)
    return GroupRingElement(G, RAT, {n: c for n in N.members})


def element_tilde(G, g):
    return group_sum_tilde(G.cyclic(g))


def element_hat(G, g):
    return group_sum_hat(G.cyclic(g))


def trace_T(alpha):
    return alpha.trace()


def augmentation(alpha):
    return alpha.augmentation()


def relative_augmentation(alpha, N):
    """Image of alpha under RG -> R(G/N); returns an element of R(G/N) on the quotient group."""
    G = alpha.group
    if not isinstance(N, Subgroup) or not G.is_normal_in(N):
        raise NotNormal("relative augmentation needs a normal subgroup")
    key = ("quotient", N.mask)
    if key not in G._cache:
        G._cache[key] = quotient(G, N)
    Q, proj = G._cache[key]
    acc = {}
    for g, c in alpha.coeffs.items():
        acc[proj[g]] = acc.get(proj[g], 0) + c
    return GroupRingElement(Q, alpha.ring, acc)


@dataclass(frozen=True)
class IdempotentRecord:
    element: GroupRingElement
    is_central: bool
    stabilizer: Subgroup
    n_e: int


def stabilizer(e):
    """S_G(e) = {g : g e = e}."""
    G = e.group
    members = [g for g in G.elements if GroupRingElement.of(G, g, e.ring) * e == e]
    return G.subgroup(members)


def idempotent_record(alpha):
    if alpha.ring != RAT:
        alpha = alpha.to_ring(RAT)
    if not alpha.is_idempotent():
        raise NotIdempotent("element is not idempotent")
    return IdempotentRecord(alpha, alpha.is_central(), stabilizer(alpha), alpha.denominator_lcm())


@dataclass(frozen=True)
class InfiniteWitness:
    """Evidence that no power u^t with t <= max_order equals 1.

    ``certified`` is True when some power u^t (normalized, != 1) has a nonzero
    identity coefficient: a torsion unit cannot have one, so u has infinite order.
    """
    max_order: int
    certified: bool
    berman_exponent: int | None
    coefficient_growth: tuple

    def __str__(self):
        return "INFINITE" if self.certified else f"no order <= {self.max_order}"


def element_order_bruteforce(u, max_order, inverse=None):
    """Least t <= max_order with u^t = 1, else an InfiniteWitness."""
    if inverse is not None and not (u * inverse).is_one():
        raise NotAUnit("claimed inverse does not invert the element")
    aug = u.augmentation()
    if aug not in (1, -1):
        raise NotAUnit(f"augmentation {aug} is not a unit of Z")
    one = GroupRingElement.one(u.group, u.ring)
    power = one
    growth = []
    for t in range(1, max_order + 1):
        power = power * u
        if power.is_one():
            return t
        normalized = power.augmentation() == 1
        if normalized and power.trace() != 0:
            growth.append(max(abs(c) for c in power.coeffs.values()))
            return InfiniteWitness(max_order, True, t, tuple(growth))
        growth.append(max((abs(c) for c in power.coeffs.values()), default=0))
    return InfiniteWitness(max_order, False, None, tuple(growth[-8:]))
