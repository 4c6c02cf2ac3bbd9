"""Named groups.

Grammar: ``C{n}``, ``D{n}`` (dihedral of order n), ``Q{4m}`` (dicyclic of order
4m), ``S{n}``, ``A{n}``, ``E{2^k}``, ``P16``, plus ``SD{2^k}`` and ``M{2^k}``
(semidihedral and modular 2-groups), joined into direct products with ``x``
(e.g. ``Q8xC2xC2``).
"""

import re
from functools import lru_cache, reduce

from .errors import OrderBoundExceeded, UnknownName
from .groups import CLOSURE_BOUND, FiniteGroup, build_from_permutations, direct_product


def _word(i, j):
    a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    b = "" if j == 0 else ("b" if j == 1 else f"b^{j}")
    return (a + b) or "1"


def metacyclic(m, n, t, r, name=None):
    """<a, b | a^m = 1, b^n = a^t, b a b^-1 = a^r>, elements a^i b^j indexed i + m*j."""
    order = m * n
    rpow = [pow(r, j, m) for j in range(n)]
    table = [[0] * order for _ in range(order)]
    for x in range(order):
        j, i = divmod(x, m)
        for y in range(order):
            l, k = divmod(y, m)
            e = i + k * rpow[j]
            jl = j + l
            if jl >= n:
                jl -= n
                e += t
            table[x][y] = (e % m) + m * jl
    labels = [_word(x % m, x // m) for x in range(order)]
    # validation doubles as a consistency check on (m, n, t, r)
    return FiniteGroup(table, labels=labels, name=name)


def _symmetric(n, name):
    if n <= 1:
        return FiniteGroup([[0]], labels=["()"], name=name, validate=False)
    gens = [[[0, 1]], [list(range(n))]]
    return build_from_permutations(n, gens, max_order=10 ** 9, name=name)


def _alternating(n, name):
    if n <= 2:
        return FiniteGroup([[0]], labels=["()"], name=name, validate=False)
    gens = [[[0, 1, i]] for i in range(2, n)]
    return build_from_permutations(n, gens, max_order=10 ** 9, name=name)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _is_pow2(n):
    return n >= 1 and n & (n - 1) == 0


def _factor_order(token):
    m = re.fullmatch(r"(SD|C|D|Q|S|A|E|P|M)(\d+)", token)
    if not m:
        raise UnknownName(f"cannot parse group name {token!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C" and n >= 1:
        return n
    if kind == "D" and n >= 4 and n % 2 == 0:
        return n
    if kind == "Q" and n >= 4 and n % 4 == 0:
        return n
    if kind == "S" and n >= 1:
        return _factorial(n)
    if kind == "A" and n >= 1:
        return max(_factorial(n) // 2, 1)
    if kind == "E" and _is_pow2(n):
        return n
    if kind == "P" and n == 16:
        return 16
    if kind in ("SD", "M") and _is_pow2(n) and n >= 16:
        return n
    raise UnknownName(f"no group named {token!r}")


def _factor(token):
    m = re.fullmatch(r"(SD|C|D|Q|S|A|E|P|M)(\d+)", token)
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return metacyclic(n, 1, 0, 1, name=token)
    if kind == "D":
        return metacyclic(n // 2, 2, 0, -1, name=token)
    if kind == "Q":
        return metacyclic(n // 2, 2, n // 4, -1, name=token)
    if kind == "S":
        return _symmetric(n, token)
    if kind == "A":
        return _alternating(n, token)
    if kind == "E":
        if n == 1:
            return metacyclic(1, 1, 0, 1, name=token)
        c2 = metacyclic(2, 1, 0, 1, name="C2")
        k = n.bit_length() - 1
        return reduce(lambda g, h: direct_product(g, h), [c2] * k) if k > 1 else c2
    if kind == "P":
        # aba^-1b^-1 = a^2 is equivalent to bab^-1 = a^-1
        return metacyclic(4, 4, 0, -1, name=token)
    if kind == "SD":
        return metacyclic(n // 2, 2, 0, n // 4 - 1, name=token)
    return metacyclic(n // 2, 2, 0, n // 4 + 1, name=token)


@lru_cache(maxsize=None)
def _catalog_cached(name):
    tokens = name.split("x")
    groups = [_factor(tok) for tok in tokens]
    G = reduce(lambda g, h: direct_product(g, h), groups)
    G.name = name
    return G


def catalog(name, max_order=CLOSURE_BOUND):
    """The named group; raises UnknownName or OrderBoundExceeded."""
    name = name.strip()
    tokens = name.split("x")
    if not name or any(not tok for tok in tokens):
        raise UnknownName(f"cannot parse group name {name!r}")
    order = 1
    for tok in tokens:
        order *= _factor_order(tok)
    if order > max_order:
        raise OrderBoundExceeded(f"{name} has order {order} > {max_order}")
    return _catalog_cached(name)


_ABELIAN_EXTRA = [
    "C2xC2", "C2xC4", "C2xC6", "C2xC8", "C2xC10", "C2xC12", "C2xC14", "C2xC16",
    "C3xC3", "C3xC6", "C4xC4", "C4xC8", "C5xC5", "C3xC9", "C2xC2xC2", "C2xC2xC4",
    "C2xC2xC6", "C2xC2xC8", "C2xC4xC4", "C2xC2xC2xC4", "C3xC3xC3",
]

_NONABELIAN_EXTRA = [
    "P16", "SD16", "M16", "SD32", "M32",
    "Q8xC2", "Q8xC2xC2", "Q8xC3", "Q8xC4",
    "D8xC2", "D8xC2xC2", "D8xC3", "D8xC4",
    "D6xC2", "D6xC3", "D6xC4", "D6xC5", "D10xC3",
    "Q12xC2", "A4xC2", "D16xC2", "Q16xC2", "P16xC2", "SD16xC2", "M16xC2",
]


def corpus_names(max_order=32):
    """Catalog names used for corpus-wide checks, smallest first."""
    names = [f"C{n}" for n in range(1, 33)]
    names += [f"D{n}" for n in range(4, 33, 2)]
    names += [f"Q{n}" for n in range(8, 33, 4)]
    names += ["S3", "S4", "A4"]
    names += [f"E{2 ** k}" for k in range(1, 6)]
    names += _ABELIAN_EXTRA + _NONABELIAN_EXTRA
    out = []
    for n in names:
        order = 1
        for tok in n.split("x"):
            order *= _factor_order(tok)
        if order <= max_order:
            out.append((order, n))
    return [n for _, n in sorted(out, key=lambda p: (p[0], p[1]))]


def catalog_list():
    """Grammar summary and the corpus names, for the CLI."""
    return {
        "grammar": ["C{n}", "D{n} (n even, >= 4)", "Q{4m}", "S{n}", "A{n}", "E{2^k}",
                    "P16", "SD{2^k} (>= 16)", "M{2^k} (>= 16)", "products joined by 'x'"],
        "corpus": corpus_names(),
    }


__all__ = ["catalog", "catalog_list", "corpus_names", "metacyclic", "OrderBoundExceeded"]
