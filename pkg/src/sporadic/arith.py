"""Exact and modular arithmetic: rationals, residue symbols, F_p / F_{p^2}
elements, square roots, Cornacchia, valuations and quadratic characters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

# Fractions are kept in lowest terms by construction.
ExactRational = Fraction


def as_rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def kronecker_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; the Legendre symbol when n is prime."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"kronecker_symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for d in range(2, p):
        if kronecker_symbol(d, p) == -1:
            return d
    raise ValueError(f"no quadratic nonresidue mod {p}")


def padic_valuation(x, p: int) -> Union[int, float]:
    """v_p of a rational; ``math.inf`` for zero."""
    x = as_rational(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def reduce_mod(x, m: int) -> int:
    """Image of a rational with denominator prime to m in Z/mZ."""
    x = as_rational(x)
    return x.numerator * pow(x.denominator, -1, m) % m


# --------------------------------------------------------------------------
# field elements


@dataclass(frozen=True)
class PrimeFieldElem:
    residue: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other) -> "PrimeFieldElem":
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return PrimeFieldElem(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return PrimeFieldElem(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return PrimeFieldElem(self.residue - other.residue, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return PrimeFieldElem(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.residue, self.modulus)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElem(pow(self.residue, k, self.modulus), self.modulus)

    def inverse(self) -> "PrimeFieldElem":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return PrimeFieldElem(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.modulus
        if isinstance(other, PrimeFieldElem):
            return (self.residue, self.modulus) == (other.residue, other.modulus)
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    @property
    def order(self) -> int:
        return self.modulus

    def one(self) -> "PrimeFieldElem":
        return PrimeFieldElem(1, self.modulus)

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class QuadExtElem:
    """a + b*w in F_p[w]/(w^2 - d), d a nonresidue mod p."""

    a: int
    b: int
    p: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    @classmethod
    def over(cls, p: int, a: int = 0, b: int = 0) -> "QuadExtElem":
        return cls(a, b, p, smallest_nonresidue(p))

    def _coerce(self, other) -> "QuadExtElem":
        if isinstance(other, QuadExtElem):
            if (other.p, other.d) != (self.p, self.d):
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, PrimeFieldElem):
            return QuadExtElem(other.residue, 0, self.p, self.d)
        if isinstance(other, int):
            return QuadExtElem(other, 0, self.p, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.p, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a - o.a, self.b - o.b, self.p, self.d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExtElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.p,
            self.d,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.p, self.d)

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) % self.p

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.a, -self.b, self.p, self.d)

    def inverse(self) -> "QuadExtElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        ninv = pow(n, -1, self.p)
        return QuadExtElem(self.a * ninv, -self.b * ninv, self.p, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, PrimeFieldElem)):
            other = self._coerce(other)
        if isinstance(other, QuadExtElem):
            return (self.a, self.b, self.p, self.d) == (other.a, other.b, other.p, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.d))

    def __bool__(self):
        return bool(self.a or self.b)

    @property
    def order(self) -> int:
        return self.p * self.p

    def one(self) -> "QuadExtElem":
        return QuadExtElem(1, 0, self.p, self.d)

    def __repr__(self):
        return f"({self.a} + {self.b}w) in F_{self.p}^2"


FieldElem = Union[PrimeFieldElem, QuadExtElem]


def is_square(x: FieldElem) -> bool:
    if not x:
        return True
    return x ** ((x.order - 1) // 2) == 1


def tonelli_shanks(n: int, p: int) -> int | None:
    """Square root of n mod an odd prime p, or None. Deterministic."""
    r = sqrt_in_field(PrimeFieldElem(n, p))
    return None if r is None else r.residue


@lru_cache(maxsize=None)
def _ext_nonresidue(p: int) -> QuadExtElem:
    # first nonsquare of F_{p^2} in (b, a) lexicographic order
    d = smallest_nonresidue(p)
    for b in range(1, p):
        for a in range(p):
            x = QuadExtElem(a, b, p, d)
            if not is_square(x):
                return x
    raise AssertionError("F_{p^2} has nonsquares")


def sqrt_in_field(x: FieldElem) -> FieldElem | None:
    """y with y*y == x, or None when x is not a square.

    Tonelli-Shanks in the cyclic group of the field, with the nonresidue
    fixed deterministically (smallest nonresidue mod p for F_p).
    """
    q = x.order
    if q % 2 == 0:
        raise ValueError("field of odd characteristic required")
    if not x:
        return x
    if not is_square(x):
        return None
    if isinstance(x, PrimeFieldElem):
        z = PrimeFieldElem(smallest_nonresidue(x.modulus), x.modulus)
    else:
        z = _ext_nonresidue(x.p)
        if (z.p, z.d) != (x.p, x.d):
            z = x._coerce(QuadExtElem(z.a, z.b, x.p, x.d))
    s, odd = 0, q - 1
    while odd % 2 == 0:
        odd //= 2
        s += 1
    m = s
    c = z ** odd
    t = x ** odd
    r = x ** ((odd + 1) // 2)
    one = x.one()
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    return r


class RootCount(NamedTuple):
    count: int
    degenerate: bool  # every field element is a root


def count_quadratic_roots(a: FieldElem, b: FieldElem, c: FieldElem) -> RootCount:
    """Distinct roots of a*x^2 + b*x + c in the field of the coefficients."""
    if a:
        disc = b * b - 4 * a * c
        if not disc:
            return RootCount(1, False)
        return RootCount(2 if is_square(disc) else 0, False)
    if b:
        return RootCount(1, False)
    if c:
        return RootCount(0, False)
    return RootCount(a.order, True)


# --------------------------------------------------------------------------
# vectorised field kernel


class FiniteField:
    """F_q for q = p or p^2, with elements encoded as integers 0 <= code < q.

    For q = p^2 the code of a + b*w is a + p*b. The encoded arithmetic is
    numpy-vectorised and is what the point-counting kernels run on.
    """

    def __init__(self, p: int, degree: int = 1):
        if degree not in (1, 2):
            raise ValueError("only F_p and F_{p^2} are supported")
        if p % 2 == 0 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.degree = degree
        self.q = p**degree
        self.d = smallest_nonresidue(p) if degree == 2 else None
        self.codes = np.arange(self.q, dtype=np.int64)
        sq = self.mul(self.codes, self.codes)
        chi = np.full(self.q, -1, dtype=np.int64)
        chi[sq] = 1
        chi[0] = 0
        self.chi = chi

    def __repr__(self):
        return f"FiniteField({self.p}, {self.degree})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self):
        return hash((self.p, self.degree))

    # encoded arithmetic; arguments may be scalars or int64 arrays
    def add(self, x, y):
        if self.degree == 1:
            return (x + y) % self.p
        p = self.p
        return (x % p + y % p) % p + p * ((x // p + y // p) % p)

    def neg(self, x):
        if self.degree == 1:
            return (-x) % self.p
        p = self.p
        return (-(x % p)) % p + p * ((-(x // p)) % p)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x * y) % p
        a1, b1 = x % p, x // p
        a2, b2 = y % p, y // p
        a = (a1 * a2 + self.d * (b1 * b2 % p)) % p
        b = (a1 * b2 + a2 * b1) % p
        return a + p * b

    def from_int(self, n: int) -> int:
        return n % self.p

    def inv(self, x: int) -> int:
        return self.code(self.element(x).inverse())

    def element(self, code: int) -> FieldElem:
        code = int(code)
        if self.degree == 1:
            return PrimeFieldElem(code, self.p)
        return QuadExtElem(code % self.p, code // self.p, self.p, self.d)

    def code(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, PrimeFieldElem):
            return x.residue
        return x.a + self.p * x.b

    def is_square(self, x: int) -> bool:
        return self.chi[int(x)] >= 0

    def sqrt(self, x: int) -> int | None:
        r = sqrt_in_field(self.element(x))
        return None if r is None else self.code(r)

    def elements(self):
        return (self.element(c) for c in range(self.q))


# --------------------------------------------------------------------------
# binary quadratic forms and characters


@dataclass(frozen=True)
class QuadFormRepresentation:
    """p = a^2 + D*b^2 with a, b >= 0."""

    a: int
    b: int
    D: int
    p: int

    def __post_init__(self):
        if self.a * self.a + self.D * self.b * self.b != self.p:
            raise ValueError(f"{self.a}^2 + {self.D}*{self.b}^2 != {self.p}")


def cornacchia(p: int, D: int) -> QuadFormRepresentation | None:
    """Solve p = a^2 + D*b^2 for an odd prime p not dividing D.

    For D = 1 the solution is normalised so that a is odd.
    """
    if p % 2 == 0 or D <= 0 or D % p == 0:
        raise ValueError("need an odd prime p and positive D prime to p")
    if D >= p:
        return None
    r0 = tonelli_shanks(-D, p)
    if r0 is None:
        return None
    if 2 * r0 < p:
        r0 = p - r0
    a, b = p, r0
    while b * b >= p:
        a, b = b, a % b
    rest = p - b * b
    if rest % D:
        return None
    s = math.isqrt(rest // D)
    if s * s != rest // D:
        return None
    if D == 1 and b % 2 == 0:
        b, s = s, b
    return QuadFormRepresentation(b, s, D, p)


_BASIS = (-1, 2, 3)


@dataclass(frozen=True, order=True)
class QuadraticCharacter:
    """Product of (-1/.)^e1 (2/.)^e2 (3/.)^e3; the group law is XOR of exponents."""

    e1: int = 0
    e2: int = 0
    e3: int = 0

    def __post_init__(self):
        for e in self.exponents:
            if e not in (0, 1):
                raise ValueError("character exponents are 0 or 1")

    @property
    def exponents(self) -> tuple[int, int, int]:
        return (self.e1, self.e2, self.e3)

    def __mul__(self, other: "QuadraticCharacter") -> "QuadraticCharacter":
        return QuadraticCharacter(*(x ^ y for x, y in zip(self.exponents, other.exponents)))

    def is_trivial(self) -> bool:
        return self.exponents == (0, 0, 0)

    def __call__(self, p: int) -> int:
        return char_value(self, p)

    def __str__(self):
        return "(" + ",".join(map(str, self.exponents)) + ")"


ALL_CHARACTERS = tuple(
    QuadraticCharacter(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
)


def char_value(chi: QuadraticCharacter, p: int) -> int:
    if math.gcd(p, 6) != 1:
        raise ValueError(f"character value undefined at p={p}")
    value = 1
    for base, e in zip(_BASIS, chi.exponents):
        if e:
            value *= kronecker_symbol(base, p)
    return value


def character_pattern(p: int) -> tuple[int, int, int]:
    """(chi_1(p), chi_2(p), chi_3(p)) for the basis characters."""
    return tuple(kronecker_symbol(b, p) for b in _BASIS)
