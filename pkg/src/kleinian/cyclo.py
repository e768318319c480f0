"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as integer numerators over a common positive
denominator, in the power basis 1, zeta, ..., zeta^(phi(n)-1), reduced
modulo the n-th cyclotomic polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import numbers

import mpmath


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_divide(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_divide(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    # row k holds x^k mod Phi_n for 0 <= k < 2*phi - 1
    phi = totient(n)
    cp = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for k in range(max(2 * phi - 1, 1)):
        if k:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * cp[j]
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_vector(n: int, k: int) -> tuple[int, ...]:
    """zeta_n^k reduced, for any integer k."""
    k %= n
    phi = totient(n)
    table = _reduction_table(n)
    if k < len(table):
        return table[k]
    vec = [0] * phi
    vec[0] = 1
    for _ in range(k):
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            cp = cyclotomic_poly(n)
            for j in range(phi):
                vec[j] -= top * cp[j]
    return tuple(vec)


@lru_cache(maxsize=None)
def _embedding(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    step = m // n
    return tuple(_power_vector(m, k * step) for k in range(totient(n)))


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # normalized trace of zeta_n^k: Ramanujan sum c_n(k) / phi(n)
    phi = totient(n)
    out = []
    for k in range(phi):
        d = n // gcd(n, k) if k else 1
        c = _mobius(d) * phi // totient(d)
        out.append(Fraction(c, phi))
    return tuple(out)


def _norm(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycloNumber:
    """Element of Q(zeta_order); immutable."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num, den: int = 1, _canonical: bool = False):
        if _canonical:
            self.order, self.num, self.den = order, num, den
        else:
            if not isinstance(order, int) or order < 1:
                raise ValueError(f"cyclotomic order must be a positive integer, got {order!r}")
            phi = totient(order)
            num = list(num)
            if len(num) > phi:
                raise ValueError(f"{len(num)} coefficients exceed phi({order}) = {phi}")
            num += [0] * (phi - len(num))
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            self.order = order
            self.num, self.den = _norm(num, den)
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def make(cls, order: int, coeffs) -> "CycloNumber":
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {order!r}")
        fr = []
        for c in coeffs:
            if isinstance(c, str):
                c = Fraction(c)
            if not isinstance(c, (int, Fraction)):
                raise TypeError(f"coefficient {c!r} is not an exact rational")
            fr.append(Fraction(c))
        if len(fr) > totient(order):
            raise ValueError(f"{len(fr)} coefficients exceed phi({order}) = {totient(order)}")
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(order, [int(c * den) for c in fr], den)

    @classmethod
    def rational(cls, q) -> "CycloNumber":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator, _canonical=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        return cls(n, _power_vector(n, k), 1, _canonical=True)

    # -- basic views ----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def embed(self, m: int) -> "CycloNumber":
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{m})")
        table = _embedding(self.order, m)
        out = [0] * totient(m)
        for c, row in zip(self.num, table):
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloNumber(m, tuple(out), self.den, _canonical=True)

    def trace(self) -> Fraction:
        """Normalized trace, independent of the ambient cyclotomic field."""
        w = _trace_weights(self.order)
        return sum((c * wi for c, wi in zip(self.num, w) if c), Fraction(0)) / self.den

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(other)
        return None

    @staticmethod
    def _common(a: "CycloNumber", b: "CycloNumber"):
        if a.order == b.order:
            return a, b, a.order
        m = lcm(a.order, b.order)
        return a.embed(m), b.embed(m), m

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, m = self._common(self, other)
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            return CycloNumber(m, num, a.den)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycloNumber(m, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, tuple(-c for c in self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNumber(self.order, [c * other for c in self.num], self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.order == 1:
            q = other.num[0]
            return CycloNumber(self.order, [c * q for c in self.num], self.den * other.den)
        if self.order == 1:
            return other * self
        a, b, m = self._common(self, other)
        phi = len(a.num)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        table = _reduction_table(m)
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNumber(m, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(Fraction(self.den, self.num[0]))
        n, phi = self.order, len(self.num)
        # columns: coordinates of self * zeta^j
        cols = []
        for j in range(phi):
            cols.append((self * CycloNumber.zeta(n, j)).coeffs)
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if mat[r][c] != 0)
            mat[c], mat[p] = mat[p], mat[c]
            piv = mat[c][c]
            mat[c] = [x / piv for x in mat[c]]
            for r in range(phi):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return CycloNumber.make(n, [mat[i][phi] for i in range(phi)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.order == other.order:
            return self.num == other.num and self.den == other.den
        a, b, _ = self._common(self, other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash(("cyclo", self.trace()))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- conversion -----------------------------------------------------
    def to_complex(self) -> complex:
        if self.is_rational():
            return complex(Fraction(self.num[0], self.den))
        bits = max(abs(c).bit_length() for c in self.num) + self.den.bit_length()
        with mpmath.workprec(bits + 80):
            z = mpmath.mpf(0)
            for k, c in enumerate(self.num):
                if c:
                    z += c * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
            z /= self.den
            return complex(z)

    def conjugate(self) -> "CycloNumber":
        n = self.order
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                for j, r in enumerate(_power_vector(n, -k)):
                    out[j] += c * r
        return CycloNumber(n, out, self.den)

    def __repr__(self):
        return f"CycloNumber({self.order}, {list(self.coeffs)})"

    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"zeta{self.order}" if k == 1 else f"zeta{self.order}^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"


numbers.Number.register(CycloNumber)

ZERO = CycloNumber.rational(0)
ONE = CycloNumber.rational(1)


def cyclo_make(order: int, coeffs) -> CycloNumber:
    return CycloNumber.make(order, coeffs)


def cyclo_arith(a: CycloNumber, b: CycloNumber, op: str) -> CycloNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_to_float(a: CycloNumber) -> complex:
    return a.to_complex()


def as_cyclo(c) -> CycloNumber:
    if isinstance(c, CycloNumber):
        return c
    if isinstance(c, (int, Fraction)):
        return CycloNumber.rational(c)
    if isinstance(c, str):
        return CycloNumber.rational(Fraction(c))
    raise TypeError(f"cannot interpret {c!r} as an exact scalar")


def zeta(n: int, k: int = 1) -> CycloNumber:
    return CycloNumber.zeta(n, k)


I = zeta(4)


def sqrt2() -> CycloNumber:
    return zeta(8) + zeta(8, -1)


def sqrt3() -> CycloNumber:
    return zeta(12) + zeta(12, -1)


def sqrt5() -> CycloNumber:
    e = zeta(5)
    return e - e ** 2 - e ** 3 + e ** 4
