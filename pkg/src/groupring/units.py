"""Units of ZG with certified inverses: Bass, alternating, bicyclic and
generalized bicyclic units, free-pair trace certificates, and the emission of
the Bass plus bicyclic generator set.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import (
    BadParameters,
    EvenOrder,
    InvariantError,
    NotIdempotent,
    NotSquareZero,
    PreconditionViolation,
    TrivialBicyclic,
)
from .exact import multiplicative_order
from .groups import find_epimorphisms_onto_d8, normalizer
from .ring import INT, RAT, GroupRingElement, element_hat, element_tilde

TRIVIAL = "TRIVIAL"
BASS = "BASS"
ALTERNATING = "ALTERNATING"
BICYCLIC_LEFT = "BICYCLIC_LEFT"
BICYCLIC_RIGHT = "BICYCLIC_RIGHT"
GEN_BICYCLIC = "GEN_BICYCLIC"
CENTRAL_AVERAGED = "CENTRAL_AVERAGED"

_KIND_ORDER = [TRIVIAL, BASS, ALTERNATING, BICYCLIC_LEFT, BICYCLIC_RIGHT, GEN_BICYCLIC,
               CENTRAL_AVERAGED]


@dataclass
class CertifiedUnit:
    """A unit u of ZG together with u^-1; construction fails unless u u^-1 = u^-1 u = 1."""
    u: GroupRingElement
    u_inv: GroupRingElement
    kind: str
    params: tuple = ()
    trivial_flag: bool = False
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.u.ring != INT or self.u_inv.ring != INT:
            raise InvariantError("certified units live in ZG")
        if not (self.u * self.u_inv).is_one() or not (self.u_inv * self.u).is_one():
            raise InvariantError(f"{self.kind}{self.params}: claimed inverse is wrong")

    @property
    def normalized(self):
        return self.u.augmentation() == 1

    @property
    def is_one(self):
        return self.u.is_one()

    def is_trivial_unit(self):
        """u = +-g for some g in G."""
        return len(self.u.coeffs) == 1 and next(iter(self.u.coeffs.values())) in (1, -1)

    def describe(self):
        G = self.u.group
        args = ",".join(G.label(p) if tag == "g" else str(p) for tag, p in self.params)
        return f"{self.kind}({args})"

    def sort_key(self):
        return (_KIND_ORDER.index(self.kind), tuple(p for _, p in self.params))

    def to_json(self, terms=True):
        out = {"kind": self.kind, "params": self.describe(), "normalized": self.normalized}
        if terms:
            out["u"] = self.u.to_json()
            out["u_inv"] = self.u_inv.to_json()
        return out


@dataclass
class FreePairCertificate:
    a: GroupRingElement
    b: GroupRingElement
    trace_value: object
    threshold: int = 2

    def to_json(self):
        return {"trace_value": str(self.trace_value), "threshold": str(self.threshold)}


def _geometric(G, x, k):
    """1 + x + ... + x^(k-1) for x a group ring element."""
    total = GroupRingElement.zero(G, INT)
    power = GroupRingElement.one(G, INT)
    for _ in range(k):
        total = total + power
        power = power * x
    return total


def _bass_formula(G, x, n, k, m):
    """u_{k,m}(x) for a unit x of ZG with x^n = 1."""
    base = _geometric(G, x, k) ** m
    num = 1 - k ** m
    if num % n:
        raise BadParameters(f"k^m = {k}^{m} is not 1 mod {n}")
    return base + _geometric(G, x, n).scalar_mul(num // n)


def _check_bass(n, k, m):
    if k < 1 or m < 1:
        raise BadParameters("Bass units need positive k and m")
    if gcd(k, n) != 1:
        raise BadParameters(f"gcd({k}, {n}) != 1")
    if pow(k, m, n) != 1 % n:
        raise BadParameters(f"{k}^{m} is not 1 mod {n}")


def bass_unit(G, g, k, m):
    """u_{k,m}(g) = (1 + g + ... + g^(k-1))^m + ((1 - k^m)/n) g~, inverse u_{l,m}(g^k)."""
    n = G.element_order(g)
    _check_bass(n, k, m)
    x = GroupRingElement.of(G, g, INT)
    u = _bass_formula(G, x, n, k, m)
    l = pow(k, -1, n) if n > 1 else 1
    inv = _bass_formula(G, GroupRingElement.of(G, G.power(g, k), INT), n, l, m)
    return CertifiedUnit(u, inv, BASS, (("g", g), ("k", k), ("m", m)))


def bass_is_torsion(G, g, k):
    n = G.element_order(g)
    if k < 1 or gcd(k, n) != 1:
        raise BadParameters(f"gcd({k}, {n}) != 1")
    return k % n in (1 % n, (n - 1) % n)


def alternating_unit(G, g, k, m):
    """The Bass formula at -g, for g of odd order n (so -g has order 2n)."""
    n = G.element_order(g)
    if n % 2 == 0:
        raise EvenOrder(f"alternating units need odd order, got {n}")
    if n == 1:
        raise BadParameters("g = 1 gives only the trivial unit")
    _check_bass(2 * n, k, m)
    x = -GroupRingElement.of(G, g, INT)
    u = _bass_formula(G, x, 2 * n, k, m)
    l = pow(k, -1, 2 * n)
    inv = _bass_formula(G, x ** k, 2 * n, l, m)
    return CertifiedUnit(u, inv, ALTERNATING, (("g", g), ("k", k), ("m", m)))


def _bicyclic_nilpotent(G, x, y, left):
    g_elt = GroupRingElement.of(G, y, INT)
    h_elt = GroupRingElement.of(G, x, INT)
    one = GroupRingElement.one(G, INT)
    tilde = element_tilde(G, y)
    if left:
        return (one - g_elt) * h_elt * tilde
    return tilde * h_elt * (one - g_elt)


def bicyclic_left(G, h, g):
    """b(h, g~) = 1 + (1 - g) h g~, trivial exactly when h normalizes <g>."""
    eta = _bicyclic_nilpotent(G, h, g, True)
    one = GroupRingElement.one(G, INT)
    flag = h in normalizer(G, G.cyclic(g))
    unit = CertifiedUnit(one + eta, one - eta, BICYCLIC_LEFT, (("g", h), ("g", g)), flag)
    if flag != unit.is_one:
        raise InvariantError("bicyclic triviality disagrees with the normalizer test")
    return unit


def bicyclic_right(G, g, h):
    """b(g~, h) = 1 + g~ h (1 - g)."""
    eta = _bicyclic_nilpotent(G, h, g, False)
    one = GroupRingElement.one(G, INT)
    flag = h in normalizer(G, G.cyclic(g))
    unit = CertifiedUnit(one + eta, one - eta, BICYCLIC_RIGHT, (("g", g), ("g", h)), flag)
    if flag != unit.is_one:
        raise InvariantError("bicyclic triviality disagrees with the normalizer test")
    return unit


def generalized_bicyclic(e_record, x, side="left"):
    """b(x, e) = 1 + n_e^2 (1 - e) x e, or b(e, x) = 1 + n_e^2 e x (1 - e)."""
    e = e_record.element
    G = e.group
    if e.ring != RAT:
        e = e.to_ring(RAT)
    if not e.is_idempotent():
        raise NotIdempotent("generalized bicyclic units need an idempotent")
    ne = e_record.n_e
    one = GroupRingElement.one(G, RAT)
    xe = GroupRingElement.of(G, x, RAT)
    if side == "left":
        eta = ((one - e) * xe * e).scalar_mul(ne * ne)
    elif side == "right":
        eta = (e * xe * (one - e)).scalar_mul(ne * ne)
    else:
        raise BadParameters(f"side must be 'left' or 'right', got {side!r}")
    if not (eta * eta).is_zero():
        raise InvariantError("nilpotent part of a generalized bicyclic unit does not square to 0")
    eta = eta.to_ring(INT)
    one = GroupRingElement.one(G, INT)
    return CertifiedUnit(one + eta, one - eta, GEN_BICYCLIC, (("e", ne), ("g", x), ("side", side)))


def free_pair_certificate(a, b):
    """Certify <1 + a, 1 + b> free of rank 2 via a^2 = b^2 = 0 and |T(ab)| >= 2 T(1)."""
    if not (a * a).is_zero() or not (b * b).is_zero():
        raise NotSquareZero("free-pair certificate needs a^2 = b^2 = 0")
    trace = (a * b).trace()
    threshold = 2
    if abs(trace) < threshold:
        raise PreconditionViolation(f"|T(ab)| = {abs(trace)} is below {threshold}")
    return FreePairCertificate(a, b, trace, threshold)


def marciniak_sehgal_pair(G, g, h):
    """For u = b(g, h~) != 1: (u, u*, certificate) with T(ab) = 2|h|."""
    u = bicyclic_left(G, g, h)
    if u.is_one:
        raise TrivialBicyclic(f"b({G.label(g)}, {G.label(h)}~) is trivial")
    a = u.u - GroupRingElement.one(G, INT)
    b = a.star()
    cert = free_pair_certificate(a, b)
    if cert.trace_value != 2 * G.element_order(h):
        raise InvariantError("T(ab) differs from 2|h|")
    ustar = CertifiedUnit(u.u.star(), u.u_inv.star(), BICYCLIC_RIGHT,
                          (("g", h), ("g", G.inverse[g])))
    return u, ustar, cert


def jespers_leal_generators(G):
    """Bass units u_{k,ord(k)}(g), 1 < k < |g|, and all nontrivial bicyclic units of both types.

    Units equal to 1 are dropped and equal units are emitted once.
    """
    seen = set()
    out = []

    def add(unit):
        if unit.is_one or unit.u in seen:
            return
        seen.add(unit.u)
        out.append(unit)

    for g in G.elements:
        n = G.element_order(g)
        for k in range(2, n):
            if gcd(k, n) == 1:
                add(bass_unit(G, g, k, multiplicative_order(k, n)))
    for g in G.elements:
        N = normalizer(G, G.cyclic(g))
        for h in G.elements:
            if h in N:
                continue
            add(bicyclic_left(G, h, g))
            add(bicyclic_right(G, g, h))
    out.sort(key=CertifiedUnit.sort_key)
    return out


APPLIES = "APPLIES"
NOT_APPLICABLE = "NOT_APPLICABLE"
_REFLECTIONS = ("b", "ab", "a^2b", "a^3b")


@dataclass
class ObstructionResult:
    verdict: str
    kernel: object = None
    lacking: tuple = ()
    reason: str = ""

    def to_json(self):
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.kernel is not None:
            G = self.kernel.parent
            out["kernel"] = [G.label(g) for g in self.kernel.members]
            out["lacking"] = list(self.lacking)
        return out


def jespers_parmenter_obstruction(G):
    """Look for an epimorphism G -> D8 under which two of b, ab, a^2b, a^3b lack involutive preimages."""
    if G.order & (G.order - 1):
        return ObstructionResult(NOT_APPLICABLE, reason="not a 2-group")
    epis = find_epimorphisms_onto_d8(G)
    if not epis:
        return ObstructionResult(NOT_APPLICABLE, reason="no epimorphism onto D8")
    best = None
    for K, labeling in epis:
        lacking = tuple(r for r in _REFLECTIONS
                        if not any(labeling[g] == r and G.element_order(g) == 2 for g in G.elements))
        if len(lacking) >= 2:
            return ObstructionResult(APPLIES, K, lacking, "two reflections lack involutive preimages")
        if best is None:
            best = (K, lacking)
    return ObstructionResult(NOT_APPLICABLE, best[0], best[1],
                             "every epimorphism onto D8 has involutive preimages")


def _component_commutative(e):
    G = e.group
    elems = [GroupRingElement.of(G, g, RAT) * e for g in G.elements]
    return all((x * y) == (y * x) for i, x in enumerate(elems) for y in elems[i + 1:])


def find_noncentral_idempotent(G, e):
    """First g (in index order) with g^ e an idempotent outside {0, e} and not central in QGe."""
    if e.ring != RAT:
        e = e.to_ring(RAT)
    if not e.is_idempotent() or not e.is_central():
        raise PreconditionViolation("e must be a central idempotent")
    if _component_commutative(e):
        raise PreconditionViolation("QGe is commutative, so every idempotent in it is central")
    for g in G.elements:
        f = element_hat(G, g) * e
        if f.is_zero() or f == e:
            continue
        if any(GroupRingElement.of(G, x, RAT) * f != f * GroupRingElement.of(G, x, RAT)
               for x in G.elements):
            return g, f
    return None
