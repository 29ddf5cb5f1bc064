"""Arithmetic in GF(p^n).

Elements are polynomials of degree < n over GF(p) modulo a monic irreducible.
Internally an element is coded as the integer sum(c_i * p**i); ``FieldSpec``
keeps addition/multiplication tables over these codes so the matrix-group
constructions can work with plain ints.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import DomainError, ParameterError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q == p**n, or raise ParameterError."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise ParameterError(f"{q} is not a prime power")
    return p, n


# polynomials are coefficient tuples, lowest degree first, no trailing zeros


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a, b, p):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] * inv_lead % p
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - f * y) % p
        a = list(_trim(a))
    return _trim(q), tuple(a)


def _is_irreducible(f, p):
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if not _poly_divmod(f, g, p)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, n: int) -> FieldSpec:
    """Smallest monic irreducible of degree ``n`` over GF(p).

    Candidates are ordered by their integer code, i.e. the highest
    non-leading coefficient is the most significant digit. This gives
    x^2+x+1 for (2, 2), x^3+x+1 for (2, 3) and x for (p, 1).
    """
    if not is_prime(p):
        raise ParameterError(f"characteristic {p} is not prime")
    if n < 1:
        raise ParameterError("extension degree must be >= 1")
    for code in range(p**n):
        tail = tuple((code // p**i) % p for i in range(n))
        f = tail + (1,)
        if _is_irreducible(f, p):
            return FieldSpec(p, n, f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise ParameterError("modulus must be monic of degree n")
        if not _is_irreducible(self.modulus, self.p):
            raise ParameterError(f"{self.modulus} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.n

    def encode(self, coeffs) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.p**i) % self.p for i in range(self.n))

    def __call__(self, value) -> FieldElement:
        """Build an element from an int code or a coefficient sequence."""
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise DomainError(f"code {value} outside GF({self.order})")
            return FieldElement(self, self.decode(value))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.n:
            _, coeffs = _poly_divmod(_trim(coeffs), self.modulus, self.p)
        return FieldElement(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    @property
    def gen(self) -> FieldElement:
        """Class of x; a root of the modulus (the prime field's 0 when n == 1)."""
        return self((0, 1))

    def elements(self) -> list[FieldElement]:
        return [self(i) for i in range(self.order)]

    def _mul_codes(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(self.decode(a)), _trim(self.decode(b)), self.p)
        return self.encode(_poly_divmod(prod, self.modulus, self.p)[1])

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.order
        digits = np.array([self.decode(i) for i in range(q)], dtype=np.int64).reshape(q, self.n)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return (s * weights).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.order
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                t[a, b] = t[b, a] = self._mul_codes(a, b)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.argmin(self.add_table, axis=1)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """inv_table[0] is a -1 placeholder."""
        inv = np.full(self.order, -1, dtype=np.int64)
        for a in range(1, self.order):
            inv[a] = int(self(a).inv())
        return inv

    def primitive_element(self) -> FieldElement:
        for g in self.elements()[1:]:
            if g.multiplicative_order() == self.order - 1:
                return g
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def __str__(self):
        terms = [
            ("" if c == 1 and i else str(c)) + ("x" if i == 1 else f"x^{i}" if i else "")
            for i, c in reversed(list(enumerate(self.modulus)))
            if c
        ]
        return f"GF({self.p}^{self.n}) mod " + " + ".join(terms)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, FieldElement):
            other = self.spec(other)
        if other.spec != self.spec:
            raise DomainError("elements belong to different fields")
        return other

    def __int__(self):
        return self.spec.encode(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return self.spec(self.spec._mul_codes(int(self), int(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** -e
        result, base = self.spec.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def inv(self) -> FieldElement:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if not self:
            raise DomainError("zero has no multiplicative inverse")
        p, f = self.spec.p, self.spec.modulus
        r0, r1 = f, _trim(self.coeffs)
        s0, s1 = (), (1,)
        while r1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        # r0 is a nonzero constant since f is irreducible
        c = pow(r0[0], -1, p)
        return self.spec(tuple(x * c % p for x in s0))

    def frobenius(self, power: int = 1) -> FieldElement:
        """x -> x^(p^power)."""
        return self ** (self.spec.p**power)

    def multiplicative_order(self) -> int:
        if not self:
            raise DomainError("zero has no multiplicative order")
        k, x = 1, self
        while x != self.spec.one:
            x, k = x * self, k + 1
        return k

    def __repr__(self):
        return f"{type(self).__name__}({int(self)} in GF({self.spec.order}))"
