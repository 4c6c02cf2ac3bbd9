"""Structural predicates on U(ZG), read off from the group or from the
Wedderburn components. Component-based answers are tri-state: TRUE, FALSE, or
UNKNOWN when an unresolved crossed product decides the outcome.
"""

from dataclasses import dataclass

from .catalog import catalog
from .central import is_cut
from .errors import InvariantError
from .groups import ISOMORPHISM_BOUND, cyclic_subgroups, find_isomorphism
from .wedderburn import (
    FIELD,
    MATRIX,
    QUATERNION,
    TYPE1,
    TYPE2,
    UNKNOWN as EXC_UNKNOWN,
    UNRESOLVED,
    decomposition_report,
)

TRUE, FALSE, UNKNOWN = "TRUE", "FALSE", "UNKNOWN"


def tri_all(values):
    values = list(values)
    if FALSE in values:
        return FALSE
    return UNKNOWN if UNKNOWN in values else TRUE


def tri_not(v):
    return {TRUE: FALSE, FALSE: TRUE}.get(v, UNKNOWN)


def tri(flag):
    return TRUE if flag else FALSE


def _is_two_group(G):
    return G.order & (G.order - 1) == 0


def is_hamiltonian_two_group(G):
    """Nonabelian 2-group with every subgroup normal, i.e. Q8 x E with E elementary abelian."""
    if G.is_abelian or not _is_two_group(G):
        return False
    return all(G.is_normal_in(S) for S in cyclic_subgroups(G))


def higman_finite_units(G):
    """U(ZG) is finite: G abelian of exponent dividing 4 or 6, or G = Q8 x E."""
    if G.is_abelian:
        return 4 % G.exponent == 0 or 6 % G.exponent == 0
    return is_hamiltonian_two_group(G)


_FREE_PRODUCT_NAMES = ("D6", "D8", "Q12", "P16")
_FREE_PRODUCT_DIVISION = {"(-1,-3/Q)", "H(Q)", "H(Q(sqrt(2)))", "H(Q(sqrt(3)))"}


@dataclass
class PredicateResult:
    value: str
    reason: str = ""

    def to_json(self):
        return {"value": self.value, "reason": self.reason}


def _listed_group(G):
    if G.order > ISOMORPHISM_BOUND:
        return None
    for name in _FREE_PRODUCT_NAMES:
        H = catalog(name)
        if H.order == G.order and find_isomorphism(G, H) is not None:
            return name
    return None


def _finite_units(c):
    """Components whose orders have finite unit groups."""
    if c.kind == FIELD:
        return c.center.is_rational or c.center.is_imaginary_quadratic
    return c.label in ("H(Q)", "(-1,-3/Q)")


def _free_product_shape(entries):
    """Component shapes: fields and division rings (-1,-3/Q), H(K) for K = Q, Q(sqrt 2),
    Q(sqrt 3), plus at most one M2(Q). Next to an M2(Q) every other component must
    have a finite unit group, since a nonabelian free factor cannot sit beside an
    infinite abelian direct factor in a free product of abelian groups."""
    verdicts = []
    m2q = [e for e in entries if e.classification.label == "M2(Q)"]
    if len(m2q) > 1:
        return FALSE
    for e in entries:
        c = e.classification
        if c.label == "M2(Q)":
            continue
        if c.kind == UNRESOLVED:
            verdicts.append(UNKNOWN)
        elif c.kind != FIELD and c.label not in _FREE_PRODUCT_DIVISION:
            verdicts.append(FALSE)
        else:
            verdicts.append(tri(not m2q or _finite_units(c)))
    return tri_all(verdicts)


def virtually_free_product_abelian(G, entries=None):
    """Group-theoretic test: G abelian, Q8 x C2^n, or one of D6, D8, Q12, P16.

    When the components are all resolved the component-shape condition is
    evaluated too, and a disagreement is an invariant failure.
    """
    if G.is_abelian:
        result = PredicateResult(TRUE, "abelian")
    elif is_hamiltonian_two_group(G):
        result = PredicateResult(TRUE, "Q8 x C2^n")
    else:
        name = _listed_group(G)
        result = PredicateResult(tri(name is not None), f"isomorphic to {name}" if name else
                                 "not abelian, not Q8 x C2^n, not in the list")
    if entries is None:
        entries = decomposition_report(G)
    shape = _free_product_shape(entries)
    if shape != UNKNOWN and shape != result.value:
        raise InvariantError(f"free-product criteria disagree for {G.name}: {shape} vs {result.value}")
    return result


_FBF_M2_FIELDS = {"Q", "Q(i)", "Q(sqrt(-2))", "Q(sqrt(-3))"}


def _fbf_component(c):
    if c.kind == FIELD:
        return TRUE
    if c.kind in (MATRIX, QUATERNION) and c.matrix_size == 2 and not c.division:
        return tri(c.center.label() in _FBF_M2_FIELDS)
    if c.kind == QUATERNION and c.division:
        return tri(c.matrix_size == 1 and bool(c.totally_definite_quaternion))
    if c.kind == UNRESOLVED:
        # M_n of a crossed product of degree q: only n = 1, q = 2 can still be a
        # totally definite quaternion algebra
        return UNKNOWN if c.matrix_size == 1 and c.crossed_degree == 2 else FALSE
    return FALSE


def virtually_free_by_free(G, entries=None):
    """Every component is a field, a totally definite quaternion algebra, or M2(K)
    with K one of Q, Q(i), Q(sqrt(-2)), Q(sqrt(-3))."""
    if entries is None:
        entries = decomposition_report(G)
    return PredicateResult(tri_all(_fbf_component(e.classification) for e in entries))


def has_exceptional(G, entries=None):
    if entries is None:
        entries = decomposition_report(G)
    kinds = [e.classification.exceptional for e in entries]
    if TYPE1 in kinds or TYPE2 in kinds:
        labels = sorted({e.classification.label for e in entries
                         if e.classification.exceptional in (TYPE1, TYPE2)})
        return PredicateResult(TRUE, ", ".join(labels))
    if EXC_UNKNOWN in kinds:
        return PredicateResult(UNKNOWN, "unresolved crossed product")
    return PredicateResult(FALSE)


def hfa(G, entries=None):
    """Cut and without exceptional components."""
    if not is_cut(G):
        return PredicateResult(FALSE, "not cut")
    exc = has_exceptional(G, entries)
    value = tri_not(exc.value)
    return PredicateResult(value, "cut" + (f"; exceptional: {exc.reason}" if exc.reason else ""))
