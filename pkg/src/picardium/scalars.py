"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as coordinate vectors in the power basis
1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial.  Rationals are
always stored at order 1, so ``0`` and ``1`` have a single representation.
Mixed orders are lifted to the lcm before any binary operation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "CycScalar",
    "RootOfUnity",
    "DivisionByZero",
    "cyclotomic_poly",
    "embed_root",
    "scalar_arith",
    "scalar_eq",
    "ZERO",
    "ONE",
]

_Q0 = mpq(0)
_Q1 = mpq(1)


class DivisionByZero(ZeroDivisionError):
    pass


def _polydivmod(num: list, den: list) -> tuple[list, list]:
    # integer polynomials, den monic; coefficient lists low degree first
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd] if dd > 0 else []
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


class _Field:
    """Precomputed reduction data for Q(zeta_N)."""

    __slots__ = ("n", "deg", "red", "trace")

    def __init__(self, n: int):
        self.n = n
        phi = cyclotomic_poly(n)
        deg = len(phi) - 1
        self.deg = deg
        # red[j] = coordinates of x^j for 0 <= j < max(n, 2*deg)
        top = max(n, 2 * deg)
        red = []
        cur = [0] * deg
        if deg:
            cur[0] = 1
        for j in range(top):
            red.append(tuple(mpq(c) for c in cur))
            # multiply cur by x
            carry = cur[-1] if deg else 0
            cur = [0] + cur[:-1] if deg else []
            if carry:
                for i in range(deg):
                    cur[i] -= carry * phi[i]
        self.red = red
        # normalised trace Tr(x^j)/deg, invariant under lifting
        tr = []
        for j in range(deg):
            d = n // math.gcd(j, n)
            tr.append(mpq(_mobius(d), _totient(d)))
        self.trace = tr


def _totient(n: int) -> int:
    r = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            r -= r // p
        p += 1
    if m > 1:
        r -= r // m
    return r


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    if n > 1:
        res = -res
    return res


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    return mpq(x)


class CycScalar:
    """An element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(_to_mpq(c) for c in coeffs)
        F = _field(order)
        if len(coeffs) != F.deg:
            raise ValueError(f"expected {F.deg} coefficients for order {order}")
        self._set(order, coeffs)

    def _set(self, order, coeffs):
        if order != 1 and not any(coeffs[1:]):
            order, coeffs = 1, (coeffs[0],)
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, order, coeffs) -> "CycScalar":
        obj = cls.__new__(cls)
        obj._set(order, coeffs)
        return obj

    @classmethod
    def rational(cls, x) -> "CycScalar":
        return cls._raw(1, (_to_mpq(x),))

    @classmethod
    def root(cls, n: int, e: int = 1) -> "CycScalar":
        F = _field(n)
        return cls._raw(n, F.red[e % n])

    @classmethod
    def coerce(cls, x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        if isinstance(x, RootOfUnity):
            return x.embed()
        return cls.rational(x)

    # -- structure -------------------------------------------------------

    def lift(self, n: int) -> tuple:
        """Coordinates of self in Q(zeta_n); the order must divide n."""
        if n == self.order:
            return self.coeffs
        if n % self.order:
            raise ValueError(f"cannot lift order {self.order} to {n}")
        k = n // self.order
        F = _field(n)
        out = [_Q0] * F.deg
        for j, c in enumerate(self.coeffs):
            if c:
                for i, r in enumerate(F.red[(j * k) % n]):
                    if r:
                        out[i] += c * r
        return tuple(out)

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def is_one(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 1

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError("not a rational number")
        c = self.coeffs[0]
        return Fraction(int(c.numerator), int(c.denominator))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _co(other)
        if other is NotImplemented:
            return other
        if self.order == other.order:
            return CycScalar._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        n = _lcm(self.order, other.order)
        return CycScalar._raw(n, tuple(a + b for a, b in zip(self.lift(n), other.lift(n))))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = _co(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _co(other)
        if other is NotImplemented:
            return other
        if other.order == 1:
            c = other.coeffs[0]
            if c == 1:
                return self
            return CycScalar._raw(self.order, tuple(a * c for a in self.coeffs))
        if self.order == 1:
            c = self.coeffs[0]
            if c == 1:
                return other
            return CycScalar._raw(other.order, tuple(a * c for a in other.coeffs))
        n = self.order if self.order == other.order else _lcm(self.order, other.order)
        a = self.lift(n)
        b = other.lift(n)
        F = _field(n)
        d = F.deg
        prod = [_Q0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:d])
        red = F.red
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                for i, r in enumerate(red[j]):
                    if r:
                        out[i] += c * r
        return CycScalar._raw(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise DivisionByZero("division by zero in cyclotomic field")
        if self.order == 1:
            return CycScalar._raw(1, (1 / self.coeffs[0],))
        return CycScalar._raw(self.order, _invert(self.order, self.coeffs))

    def __truediv__(self, other):
        other = _co(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _co(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = _co(other)
        if other is NotImplemented:
            return False
        if self.order == other.order:
            return self.coeffs == other.coeffs
        if self.order == 1 or other.order == 1:
            # a non-rational canonical form never equals a rational
            return False
        n = _lcm(self.order, other.order)
        return self.lift(n) == other.lift(n)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        # normalised trace is invariant under lifting, hence compatible with ==
        if self._hash is None:
            if self.order == 1:
                self._hash = hash(self.coeffs[0])
            else:
                tr = _field(self.order).trace
                self._hash = hash(sum((c * t for c, t in zip(self.coeffs, tr)), _Q0))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum(float(c) * z ** j for j, c in enumerate(self.coeffs))

    # -- serialisation ---------------------------------------------------

    def minimal(self) -> "CycScalar":
        """The same element written over the smallest cyclotomic field containing it."""
        n = self.order
        if n == 1:
            return self
        for d in sorted(k for k in range(2, n) if n % k == 0 and k % 4 != 2):
            x = _descend(n, d, self.coeffs)
            if x is not None:
                return CycScalar._raw(d, x)
        return self

    def to_json(self) -> dict:
        m = self.minimal()
        return {"N": m.order, "coeffs": [_fmt(c) for c in m.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycScalar":
        return cls(int(data["N"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        m = self.minimal()
        if m.order == 1:
            return _fmt(m.coeffs[0])
        terms = []
        for j, c in enumerate(m.coeffs):
            if not c:
                continue
            mon = "" if j == 0 else (f"z{m.order}" if j == 1 else f"z{m.order}^{j}")
            if not mon:
                terms.append(_fmt(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{_fmt(c)}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")


def _fmt(c) -> str:
    return str(int(c.numerator)) if c.denominator == 1 else f"{int(c.numerator)}/{int(c.denominator)}"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _co(x):
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(_Q0):
        return CycScalar.rational(x)
    if isinstance(x, RootOfUnity):
        return x.embed()
    return NotImplemented


@lru_cache(maxsize=None)
def _descent_data(n: int, d: int):
    # embedding Q(zeta_d) -> Q(zeta_n) as a phi(n) x phi(d) matrix, plus a left inverse
    F, k = _field(n), n // d
    deg = _field(d).deg
    E = [[F.red[(j * k) % n][i] for j in range(deg)] for i in range(F.deg)]
    M = [list(row) + [_Q1 if r == i else _Q0 for r in range(F.deg)] for i, row in enumerate(E)]
    rows = list(range(F.deg))
    piv = []
    for c in range(deg):
        p = next(r for r in range(len(piv), F.deg) if M[r][c])
        M[len(piv)], M[p] = M[p], M[len(piv)]
        r0 = len(piv)
        inv = 1 / M[r0][c]
        M[r0] = [v * inv for v in M[r0]]
        for r in rows:
            if r != r0 and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[r0])]
        piv.append(c)
    left = [M[i][deg:] for i in range(deg)]
    return E, left


def _descend(n: int, d: int, coeffs: tuple):
    E, left = _descent_data(n, d)
    y = tuple(sum((a * b for a, b in zip(row, coeffs)), _Q0) for row in left)
    back = tuple(sum((a * b for a, b in zip(row, y)), _Q0) for row in E)
    return y if back == tuple(coeffs) else None


@lru_cache(maxsize=8192)
def _invert(n: int, a: tuple) -> tuple:
    # solve (multiplication by a) x = 1 by exact elimination; deg <= phi(n)
    F = _field(n)
    d = F.deg
    # column j of the multiplication matrix is a * x^j
    cols = []
    for j in range(d):
        prod = [_Q0] * (d + j)
        for i, c in enumerate(a):
            prod[i + j] += c
        out = list(prod[:d])
        for k in range(d, len(prod)):
            if prod[k]:
                for i, r in enumerate(F.red[k]):
                    out[i] += prod[k] * r
        cols.append(out)
    M = [[cols[j][i] for j in range(d)] + [_Q1 if i == 0 else _Q0] for i in range(d)]
    for c in range(d):
        p = next(r for r in range(c, d) if M[r][c])
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(d):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][d] for i in range(d))


ZERO = CycScalar._raw(1, (_Q0,))
ONE = CycScalar._raw(1, (_Q1,))


class RootOfUnity:
    """zeta_N^e with the exponent reduced mod N."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int = 1):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.exponent = exponent % order

    def embed(self) -> CycScalar:
        return CycScalar.root(self.order, self.exponent)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = _lcm(self.order, other.order)
        return RootOfUnity(n, self.exponent * (n // self.order) + other.exponent * (n // other.order))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def __eq__(self, other):
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        n = _lcm(self.order, other.order)
        return (self.exponent * (n // self.order) - other.exponent * (n // other.order)) % n == 0

    def __hash__(self):
        g = math.gcd(self.exponent, self.order)
        return hash((self.order // g, self.exponent // g))

    def to_json(self) -> dict:
        return {"N": self.order, "e": self.exponent}

    def __repr__(self):
        return f"RootOfUnity({self.order}, {self.exponent})"


def embed_root(r: RootOfUnity) -> CycScalar:
    return r.embed()


def scalar_arith(a: CycScalar, b: CycScalar, op: str) -> CycScalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_eq(a: CycScalar, b: CycScalar) -> bool:
    return (a - b).is_zero()
