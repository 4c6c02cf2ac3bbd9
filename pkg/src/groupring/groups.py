"""Finite groups given by a full multiplication table.

Elements are the integers ``0..order-1``. Subgroups carry a bitmask of their
members so that containment, intersection and equality are integer operations;
every set-valued result is reported sorted by element index.
"""

import random
from collections import deque
from functools import cached_property
from itertools import product
from math import gcd

from .errors import (
    ClosureTooLarge,
    InputError,
    NoIdentity,
    NotASubgroup,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    OrderBoundExceeded,
)

SUBGROUP_BOUND = 64
CLOSURE_BOUND = 512
ASSOCIATIVITY_BOUND = 64
ISOMORPHISM_BOUND = 16


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Subgroup:
    """A subgroup of ``parent``; equality and hashing go through the member mask."""

    __slots__ = ("parent", "mask", "members")

    def __init__(self, parent, mask):
        self.parent = parent
        self.mask = mask
        self.members = tuple(_bits(mask))

    @property
    def order(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return (self.mask >> g) & 1 == 1

    def __le__(self, other):
        return self.mask & other.mask == self.mask

    def __lt__(self, other):
        return self.mask != other.mask and self <= other

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.mask == other.mask and self.parent is other.parent

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def sort_key(self):
        return (self.order, self.members)

    def labels(self):
        return [self.parent.label(g) for g in self.members]


class FiniteGroup:
    """A finite group from its Cayley table. ``table[i][j]`` is the product i*j."""

    def __init__(self, table, labels=None, name=None, validate=True, seed=0,
                 associativity_bound=ASSOCIATIVITY_BOUND):
        order = len(table)
        if order == 0:
            raise InputError("a group needs at least one element")
        self.order = order
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        if validate:
            self._check_shape()
            self._check_latin()
        self.identity = self._find_identity()
        if validate:
            # before inverses: in a non-associative loop left and right inverses may differ
            self._check_associative(associativity_bound, seed)
        self.inverse = self._compute_inverses()
        self._labels = list(labels) if labels is not None else None
        self._cache = {}

    # -- validation ---------------------------------------------------------

    def _check_shape(self):
        n = self.order
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise NotLatinSquare(f"entry ({i},{j}) = {x} out of range")

    def _check_latin(self):
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}")

    def _find_identity(self):
        t = self.table
        for e in range(self.order):
            if all(t[e][i] == i and t[i][e] == i for i in range(self.order)):
                return e
        raise NoIdentity("no two-sided identity element in the table")

    def _compute_inverses(self):
        inv = []
        for i in range(self.order):
            row = self.table[i]
            try:
                j = row.index(self.identity)
            except ValueError:
                raise NoIdentity(f"element {i} has no right inverse") from None
            if self.table[j][i] != self.identity:
                raise NoIdentity(f"element {i} has no two-sided inverse")
            inv.append(j)
        return tuple(inv)

    def _check_associative(self, bound, seed):
        n = self.order
        t = self.table
        if n <= bound:
            triples = product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    # -- elementwise --------------------------------------------------------

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def elements(self):
        return range(self.order)

    def label(self, g):
        if self._labels is None:
            return f"g{g}"
        return self._labels[g]

    @property
    def labels(self):
        return [self.label(g) for g in self.elements]

    def index_of(self, label):
        return self.labels.index(label)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse[a], -k
        result = self.identity
        for _ in range(k % self.element_order(a)):
            result = self.table[result][a]
        return result

    def conj(self, x, g):
        """x^g = g^-1 x g."""
        t = self.table
        return t[t[self.inverse[g]][x]][g]

    def commutator(self, a, b):
        """(a, b) = a^-1 b^-1 a b."""
        t, inv = self.table, self.inverse
        return t[t[t[inv[a]][inv[b]]][a]][b]

    @cached_property
    def element_orders(self):
        orders = []
        for g in self.elements:
            k, x = 1, g
            while x != self.identity:
                x = self.table[x][g]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, g):
        return self.element_orders[g]

    @cached_property
    def exponent(self):
        e = 1
        for o in self.element_orders:
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    # -- subgroup construction ---------------------------------------------

    def closure_mask(self, gens, start=None):
        """Bitmask of the subgroup generated by ``gens`` (and ``start`` mask, itself a subgroup)."""
        t = self.table
        gens = list(gens)
        if start is not None:
            members = _bits(start)
            mask = start
        else:
            members = [self.identity]
            mask = 1 << self.identity
        queue = deque(members)
        for g in gens:
            if not (mask >> g) & 1:
                mask |= 1 << g
                members.append(g)
                queue.append(g)
        all_gens = gens + ([] if start is None else members[:])
        while queue:
            x = queue.popleft()
            for g in all_gens:
                y = t[x][g]
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    queue.append(y)
        return mask

    def closure(self, gens):
        return Subgroup(self, self.closure_mask(gens))

    def subgroup(self, members):
        """Validate an explicit member set as a subgroup."""
        members = sorted(set(members))
        mask = 0
        for g in members:
            if not 0 <= g < self.order:
                raise NotASubgroup(f"element {g} out of range")
            mask |= 1 << g
        if not (mask >> self.identity) & 1:
            raise NotASubgroup("subgroup must contain the identity")
        t = self.table
        for a in members:
            if not (mask >> self.inverse[a]) & 1:
                raise NotASubgroup(f"not closed under inverse at {a}")
            for b in members:
                if not (mask >> t[a][b]) & 1:
                    raise NotASubgroup(f"not closed under product at ({a},{b})")
        if self.order % len(members):
            raise NotASubgroup("subgroup order does not divide group order")
        return Subgroup(self, mask)

    @property
    def whole(self):
        return Subgroup(self, (1 << self.order) - 1)

    @property
    def trivial(self):
        return Subgroup(self, 1 << self.identity)

    def cyclic(self, g):
        return self.closure([g])

    def is_normal_in(self, S, ambient=None):
        """S normal in ambient (default the whole group); S must lie in ambient."""
        amb = self.whole if ambient is None else ambient
        if not S <= amb:
            return False
        mask = S.mask
        for g in amb.members:
            for s in S.members:
                if not (mask >> self.conj(s, g)) & 1:
                    return False
        return True

    def normal_closure_mask(self, gens, ambient=None):
        amb = self.whole if ambient is None else ambient
        mask = self.closure_mask(gens)
        while True:
            extra = [self.conj(s, g) for s in _bits(mask) for g in amb.members]
            new = self.closure_mask(extra, start=mask) if any(not (mask >> x) & 1 for x in extra) else mask
            if new == mask:
                return mask
            mask = new

    def coset_index_map(self, S):
        """Map element -> index of its right coset S*g, cosets numbered by minimal representative."""
        index = [-1] * self.order
        reps = []
        for g in self.elements:
            if index[g] >= 0:
                continue
            k = len(reps)
            reps.append(g)
            for s in S.members:
                index[self.table[s][g]] = k
        return index, reps

    def right_transversal(self, S, rng=None):
        """A right transversal of S; minimal representatives, or random ones when rng is given."""
        index, reps = self.coset_index_map(S)
        if rng is None:
            return reps
        buckets = [[] for _ in reps]
        for g in self.elements:
            buckets[index[g]].append(g)
        return [rng.choice(b) for b in buckets]


def check_bound(G, bound, what):
    if G.order > bound:
        raise OrderBoundExceeded(f"{what} needs |G| <= {bound}, got {G.order}")


# ---------------------------------------------------------------------------
# construction

def build_from_table(order, table, labels=None, name=None, seed=0):
    if len(table) != order:
        raise NotLatinSquare(f"table has {len(table)} rows, expected {order}")
    return FiniteGroup(table, labels=labels, name=name, seed=seed)


def _perm_mul(p, q):
    """p then q applied as functions on the left: (p*q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def perm_from_cycles(degree, cycles):
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree:
                raise InputError(f"point {x} outside 0..{degree - 1}")
            if x in seen:
                raise InputError(f"point {x} repeated in cycle notation")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def cycle_string(p):
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def build_from_permutations(degree, generators, max_order=CLOSURE_BOUND, name=None):
    """Close a set of permutations (each given as a list of cycles) into a group."""
    gens = []
    for g in generators:
        if g and isinstance(g[0], int):
            g = [g]
        gens.append(perm_from_cycles(degree, [list(c) for c in g]))
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for s in gens:
            q = _perm_mul(p, s)
            if q not in seen:
                seen.add(q)
                if len(seen) > max_order:
                    raise ClosureTooLarge(f"closure exceeds {max_order} elements")
                queue.append(q)
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[_perm_mul(p, q)] for q in elems] for p in elems]
    return FiniteGroup(table, labels=[cycle_string(p) for p in elems], name=name, validate=False)


def direct_product(G, H, name=None):
    n, m = G.order, H.order
    table = [[0] * (n * m) for _ in range(n * m)]
    for a in range(n * m):
        g1, h1 = divmod(a, m)
        for b in range(n * m):
            g2, h2 = divmod(b, m)
            table[a][b] = G.table[g1][g2] * m + H.table[h1][h2]
    labels = []
    for a in range(n * m):
        g, h = divmod(a, m)
        labels.append(f"({G.label(g)},{H.label(h)})")
    return FiniteGroup(table, labels=labels, name=name, validate=False)


# ---------------------------------------------------------------------------
# subgroup lattice

def _cyclic_masks(G):
    seen = {}
    for g in G.elements:
        m = G.closure_mask([g])
        if m not in seen:
            seen[m] = g
    return seen


def subgroups(G, bound=SUBGROUP_BOUND):
    """All subgroups, sorted by (order, members)."""
    key = ("subgroups",)
    if key in G._cache:
        return G._cache[key]
    check_bound(G, bound, "subgroup enumeration")
    cyclic = _cyclic_masks(G)
    cyc_items = sorted(cyclic.items(), key=lambda kv: bin(kv[0]).count("1"))
    found = {m: [g] for m, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        nxt = []
        for m in frontier:
            gens = found[m]
            for cm, cg in cyc_items:
                if cm & m == cm:
                    continue
                j = G.closure_mask(gens + [cg])
                if j not in found:
                    found[j] = gens + [cg]
                    nxt.append(j)
        frontier = nxt
    subs = sorted((Subgroup(G, m) for m in found), key=Subgroup.sort_key)
    G._cache[key] = subs
    G._cache["subgroup_gens"] = found
    return subs


def subgroup_generators(G, S):
    subgroups(G)
    return G._cache["subgroup_gens"][S.mask]


def normal_subgroups(G, bound=SUBGROUP_BOUND):
    key = ("normal",)
    if key not in G._cache:
        G._cache[key] = [S for S in subgroups(G, bound) if G.is_normal_in(S)]
    return G._cache[key]


def center(G):
    t = G.table
    return G.subgroup([z for z in G.elements if all(t[z][g] == t[g][z] for g in G.elements)])


def commutator_subgroup(G, A=None, B=None):
    """[A, B] (default G' = [G, G])."""
    A = G.whole if A is None else A
    B = G.whole if B is None else B
    comms = {G.commutator(a, b) for a in A.members for b in B.members}
    return Subgroup(G, G.closure_mask(sorted(comms)))


def _require_subgroup(G, S):
    if not isinstance(S, Subgroup) or S.parent is not G:
        raise NotASubgroup("argument is not a subgroup of this group")


def normalizer(G, S, ambient=None):
    _require_subgroup(G, S)
    amb = G.whole if ambient is None else ambient
    mask = S.mask
    members = []
    for g in amb.members:
        if all((mask >> G.conj(s, g)) & 1 for s in S.members):
            members.append(g)
    return G.subgroup(members)


def centralizer_of_element_set(G, S):
    elems = list(S)
    t = G.table
    return G.subgroup([g for g in G.elements if all(t[g][s] == t[s][g] for s in elems)])


def quotient(G, N):
    """(G/N, projection). Cosets are numbered by minimal representative."""
    _require_subgroup(G, N)
    if not G.is_normal_in(N):
        raise NotNormal("quotient needs a normal subgroup")
    index, reps = G.coset_index_map(N)
    t = G.table
    table = [[index[t[a][b]] for b in reps] for a in reps]
    labels = [G.label(r) if N.order == 1 else f"{G.label(r)}N" for r in reps]
    Q = FiniteGroup(table, labels=labels, validate=False)
    return Q, tuple(index)


def minimal_normal_subgroups_of_quotient(G, N, ambient=None):
    """Subgroups D with N < D normal in the ambient group and D/N minimal normal there."""
    amb = G.whole if ambient is None else ambient
    _require_subgroup(G, N)
    if not G.is_normal_in(N, amb):
        raise NotNormal("N must be normal in the ambient group")
    candidates = set()
    for x in amb.members:
        if x in N:
            continue
        candidates.add(G.normal_closure_mask([x] + list(N.members), amb))
    minimal = [m for m in candidates
               if not any(o != m and o & m == o for o in candidates)]
    return sorted((Subgroup(G, m) for m in minimal), key=Subgroup.sort_key)


# ---------------------------------------------------------------------------
# classes

class ConjugacyClassSet:
    def __init__(self, classes, n):
        self.classes = classes
        self.class_of = [0] * n
        for k, cl in enumerate(classes):
            for g in cl:
                self.class_of[g] = k

    @property
    def class_count(self):
        return len(self.classes)

    def __len__(self):
        return len(self.classes)


class ConjugacyClasses(ConjugacyClassSet):
    def __init__(self, G, classes):
        super().__init__(classes, G.order)
        self.real_closed_count = sum(
            1 for cl in classes if set(G.inverse[g] for g in cl) == set(cl))


class KClassSet(ConjugacyClassSet):
    def __init__(self, G, field_tag, classes):
        super().__init__(classes, G.order)
        self.field_tag = field_tag


def conjugacy_classes(G):
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = [False] * G.order
    classes = []
    for g in G.elements:
        if seen[g]:
            continue
        cl = sorted({G.conj(g, x) for x in G.elements})
        for y in cl:
            seen[y] = True
        classes.append(tuple(cl))
    cc = ConjugacyClasses(G, classes)
    G._cache["classes"] = cc
    return cc


def k_classes(G, field_tag):
    """RATIONAL: g ~ h iff g is conjugate to h^r, r coprime to exp(G). REAL: g^G with (g^-1)^G."""
    cc = conjugacy_classes(G)
    if field_tag == "RATIONAL":
        exps = [r for r in range(1, G.exponent + 1) if gcd(r, G.exponent) == 1]
    elif field_tag == "REAL":
        exps = [1, -1]
    else:
        raise InputError(f"unknown field tag {field_tag!r}")
    seen = [False] * G.order
    classes = []
    for g in G.elements:
        if seen[g]:
            continue
        members = set()
        for r in exps:
            members.update(cc.classes[cc.class_of[G.power(g, r)]])
        for y in members:
            seen[y] = True
        classes.append(tuple(sorted(members)))
    return KClassSet(G, field_tag, classes)


def cyclic_subgroup_class_count(G):
    """Number of conjugacy classes of cyclic subgroups (the Artin count d)."""
    cyclic = set(_cyclic_masks(G))
    seen = set()
    count = 0
    for m in sorted(cyclic):
        if m in seen:
            continue
        count += 1
        gen = next(x for x in _bits(m) if G.closure_mask([x]) == m)
        for x in G.elements:
            seen.add(G.closure_mask([G.conj(gen, x)]))
    return count


def cyclic_subgroups(G):
    return sorted((Subgroup(G, m) for m in _cyclic_masks(G)), key=Subgroup.sort_key)


def upper_central_series(G):
    """Z_0 = 1 < Z_1 < ... until it stabilizes."""
    series = [G.trivial]
    while True:
        Z = series[-1]
        Q, proj = quotient(G, Z)
        zq = center(Q)
        members = [g for g in G.elements if proj[g] in zq]
        nxt = G.subgroup(members)
        if nxt == Z:
            return series
        series.append(nxt)


def is_nilpotent(G):
    return upper_central_series(G)[-1].order == G.order


# ---------------------------------------------------------------------------
# isomorphism (small orders only)

def _generating_set(G):
    gens = []
    mask = 1 << G.identity
    full = (1 << G.order) - 1
    by_order = sorted(G.elements, key=lambda g: (-G.element_order(g), g))
    while mask != full:
        g = next(x for x in by_order if not (mask >> x) & 1)
        gens.append(g)
        mask = G.closure_mask(gens)
    return gens


def _extend(G, H, gens, images):
    """Extend generator images to a map G -> H; None if not a well-defined homomorphism."""
    phi = {G.identity: H.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, im in zip(gens, images):
            y = G.table[x][g]
            val = H.table[phi[x]][im]
            if y in phi:
                if phi[y] != val:
                    return None
            else:
                phi[y] = val
                queue.append(y)
    return phi


def find_isomorphism(G, H, bound=ISOMORPHISM_BOUND):
    """An isomorphism G -> H as a tuple of images, or None."""
    if G.order != H.order:
        return None
    check_bound(G, bound, "isomorphism testing")
    if sorted(G.element_orders) != sorted(H.element_orders):
        return None
    if G.is_abelian != H.is_abelian:
        return None
    gens = _generating_set(G)
    candidates = [[h for h in H.elements if H.element_order(h) == G.element_order(g)]
                  for g in gens]

    def search(i, images):
        if i == len(gens):
            phi = _extend(G, H, gens, images)
            if phi is None or len(set(phi.values())) != H.order:
                return None
            return tuple(phi[g] for g in G.elements)
        for h in candidates[i]:
            found = search(i + 1, images + [h])
            if found is not None:
                return found
        return None

    return search(0, [])


def is_isomorphic(G, H, bound=ISOMORPHISM_BOUND):
    return find_isomorphism(G, H, bound) is not None


def find_epimorphisms_onto_d8(G, bound=SUBGROUP_BOUND):
    """All normal K with G/K isomorphic to D8, each with an explicit labeling.

    Each entry is ``(K, labeling)`` where ``labeling[g]`` is the label of the
    image of g in D8 = <a, b | a^4 = b^2 = 1, ba = a^3 b>.
    """
    from .catalog import catalog

    check_bound(G, bound, "epimorphism search")
    if G.order % 8:
        return []
    D8 = catalog("D8")
    out = []
    for K in normal_subgroups(G, bound):
        if G.order // K.order != 8:
            continue
        Q, proj = quotient(G, K)
        iso = find_isomorphism(Q, D8)
        if iso is None:
            continue
        out.append((K, tuple(D8.label(iso[proj[g]]) for g in G.elements)))
    return out
