"""Exact arithmetic: cyclotomic fields in the power basis and Hilbert symbols over Q.

Rationals are plain :class:`fractions.Fraction`. A :class:`Cyclotomic` lives in
``Q(zeta_n)`` for a caller-chosen conductor ``n`` and stores its coordinates on
``1, zeta, ..., zeta^(phi(n)-1)`` after reduction modulo the n-th cyclotomic
polynomial, so equal field elements always have equal coordinates.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import BadGaloisIndex, BadIndex, DivisionByZero, InputError, InvariantError

INFINITY = "inf"


def euler_phi(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def multiplicative_order(k, n):
    """Order of k in (Z/n)^x. Requires gcd(k, n) == 1."""
    if gcd(k, n) != 1:
        raise InputError(f"{k} is not invertible modulo {n}")
    if n == 1:
        return 1
    k %= n
    t, x = 1, k
    while x != 1:
        x = x * k % n
        t += 1
    return t


def units_mod(n):
    return [r for r in range(1, n + 1) if gcd(r, n) == 1] if n > 1 else [1]


def squarefree_part(n):
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise InputError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
    return sign * out


# ---------------------------------------------------------------------------
# integer / rational polynomials, coefficient lists from degree 0 upward

def _trim(poly):
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(num, den):
    """Long division; ``den`` must have an invertible leading coefficient."""
    num = list(num)
    _trim(num)
    lead = den[-1]
    q = [0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        c = num[-1] * lead if lead in (1, -1) else Fraction(num[-1]) / lead
        shift = len(num) - len(den)
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
        _trim(num)
    return _trim(q), num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """The n-th cyclotomic polynomial as a tuple of integer coefficients (low degree first)."""
    if n < 1:
        raise InputError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise InvariantError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(int(c) for c in poly)


def _reduce(poly, n):
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    poly = list(poly)
    for top in range(len(poly) - 1, deg - 1, -1):
        c = poly[top]
        if c == 0:
            continue
        # phi is monic
        for i in range(deg + 1):
            poly[top - deg + i] -= c * phi[i]
    poly = poly[:deg] + [0] * (deg - len(poly))
    return tuple(Fraction(c) for c in poly)


def _poly_ext_gcd_inverse(a, m):
    """Inverse of a modulo m over Q[x] (m irreducible)."""
    r0, r1 = [Fraction(c) for c in m], [Fraction(c) for c in a]
    s0, s1 = [], [Fraction(1)]
    _trim(r1)
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        qs = _poly_mul(q, s1)
        s_new = [0] * max(len(s0), len(qs))
        for i, c in enumerate(s0):
            s_new[i] += c
        for i, c in enumerate(qs):
            s_new[i] -= c
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s_new)
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


class Cyclotomic:
    """An element of Q(zeta_n) in the power basis."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs=()):
        if conductor < 1:
            raise InputError("conductor must be positive")
        self.conductor = conductor
        self.coeffs = _reduce(coeffs, conductor)

    @classmethod
    def zeta(cls, n, k=1):
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def rational(cls, n, q):
        return cls(n, [Fraction(q)])

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.conductor != self.conductor:
                raise InputError(
                    f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic(self.conductor, [Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.conductor, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.conductor, _poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(self.conductor, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        inv = _poly_ext_gcd_inverse(list(self.coeffs), list(cyclotomic_polynomial(self.conductor)))
        return Cyclotomic(self.conductor, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def galois_apply(self, r):
        """Image under the automorphism zeta -> zeta^r."""
        n = self.conductor
        if gcd(r, n) != 1:
            raise BadGaloisIndex(f"gcd({r}, {n}) != 1")
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i * r % n] += c
        return Cyclotomic(n, out)

    def complex_conjugate(self):
        return self.galois_apply(-1 % self.conductor if self.conductor > 1 else 1)

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise InputError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def to_json(self):
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    def in_subfield(self, m):
        """True if the element lies in Q(zeta_m) embedded via zeta_m = zeta_n^(n/m)."""
        n = self.conductor
        if n % m:
            raise InputError(f"{m} does not divide {n}")
        return all(self.galois_apply(r) == self for r in units_mod(n) if r % m == 1 % m)

    def minimal_conductor(self):
        """Smallest m | n with the element in Q(zeta_m); the element itself is not re-encoded."""
        for m in divisors(self.conductor):
            if self.in_subfield(m):
                return m
        return self.conductor


def cyclotomic_unit(n, k):
    """eta_k(zeta_n) = 1 + zeta + ... + zeta^(k-1) together with its inverse eta_l(zeta^k)."""
    if n <= 1 or k < 1 or gcd(k, n) != 1:
        raise BadIndex(f"cyclotomic unit needs n > 1 and k >= 1 coprime to n, got n={n}, k={k}")
    eta = Cyclotomic(n, [1] * k)
    l = pow(k, -1, n)
    if l == 0:
        l = n
    zk = Cyclotomic.zeta(n, k)
    inv = Cyclotomic.rational(n, 0)
    power = Cyclotomic.rational(n, 1)
    for _ in range(l):
        inv = inv + power
        power = power * zk
    if eta * inv != 1:
        raise InvariantError(f"eta_{k}(zeta_{n}) inverse check failed")
    return eta, inv


# ---------------------------------------------------------------------------
# Hilbert symbols over Q

def _as_integer_class(a):
    """An integer in the same square class as the nonzero rational a."""
    a = Fraction(a)
    if a == 0:
        raise InputError("Hilbert symbol arguments must be nonzero")
    return a.numerator * a.denominator


def _valuation(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, p):
    """(a, b)_p for nonzero rationals a, b; ``p`` a prime or ``INFINITY``."""
    a = _as_integer_class(a)
    b = _as_integer_class(b)
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


def relevant_places(a, b):
    ia, ib = _as_integer_class(a), _as_integer_class(b)
    primes = sorted(set([2] + prime_factors(ia) + prime_factors(ib)))
    return primes + [INFINITY]


def quaternion_splits_over_rationals(a, b):
    """True iff (a, b / Q) is M_2(Q), i.e. u^2 = a v^2 + b w^2 has a nonzero solution."""
    return all(hilbert_symbol(a, b, p) == 1 for p in relevant_places(a, b))


class QuaternionParams:
    """Parameters (a, b) of the quaternion algebra i^2 = a, j^2 = b, ij = -ji."""

    __slots__ = ("a", "b", "center_tag")

    def __init__(self, a, b, center_tag="RATIONAL"):
        a, b = Fraction(a), Fraction(b)
        if a == 0 or b == 0:
            raise InputError("quaternion parameters must be nonzero")
        self.a, self.b, self.center_tag = a, b, center_tag

    def splits(self):
        if self.center_tag != "RATIONAL":
            return None
        return quaternion_splits_over_rationals(self.a, self.b)

    def __eq__(self, other):
        return (isinstance(other, QuaternionParams)
                and (self.a, self.b, self.center_tag) == (other.a, other.b, other.center_tag))

    def __hash__(self):
        return hash((self.a, self.b, self.center_tag))

    def __repr__(self):
        return f"QuaternionParams({self.a}, {self.b}, {self.center_tag})"
