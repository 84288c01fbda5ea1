"""Point counts and Frobenius traces for the fibration

    (x+y)(x+z)(y+z) - 8xyz = xyz / t,   t = s^2 (double cover) or t = u^3.

Writing c = 8 + 1/t, every fiber is the plane cubic
(x+y)(x+z)(y+z) = c*xyz; the fiber over t = 0 is the triangle xyz = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .arith import FiniteField, is_prime

INFINITY = "inf"
Param = Union[int, str]  # field code or INFINITY

# Kodaira indices of the singular fibers, by kind of parameter; metadata only
KODAIRA = {
    1: {"t=0": "I6", "t=inf": "I1", "c=0": "I3", "c=-1": "I2"},
    2: {"t=0": "I12", "t=inf": "I2", "c=0": "I3", "c=-1": "I2"},
    3: {"t=0": "I18", "t=inf": "I3", "c=0": "I3", "c=-1": "I2"},
}


class FiberKind(str, Enum):
    SMOOTH = "smooth"
    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class FiberClassification:
    kind: FiberKind
    local_trace: int
    split: bool | None = None
    point_count: int | None = None
    kodaira: str | None = None
    detail: str = ""


@dataclass
class TraceResult:
    q: int
    cover: int
    A: int
    per_fiber: list[tuple[Param, int]] = field(default_factory=list)

    def to_lines(self) -> list[str]:
        lines = [f"{s0} {lt}" for s0, lt in self.per_fiber]
        lines.append(f"A {self.A}")
        return lines


def as_field(q_or_field) -> FiniteField:
    if isinstance(q_or_field, FiniteField):
        return q_or_field
    q = int(q_or_field)
    if q % 2 == 0 or q % 3 == 0:
        raise ValueError(f"q = {q} must be prime to 6")
    if is_prime(q):
        return FiniteField(q)
    r = int(round(q**0.5))
    if r * r == q and is_prime(r):
        return FiniteField(r, 2)
    raise ValueError(f"q = {q} is not p or p^2")


def _inv_table(F: FiniteField) -> np.ndarray:
    table = getattr(F, "_inv", None)
    if table is None:
        # x^(q-2) by square-and-multiply on the whole field at once
        base = F.codes.copy()
        table = np.ones(F.q, dtype=np.int64)
        k = F.q - 2
        while k:
            if k & 1:
                table = F.mul(table, base)
            base = F.mul(base, base)
            k >>= 1
        table[0] = -1
        F._inv = table
    return table


def fiber_constant(F: FiniteField, s0: Param, cover: int = 2):
    """c = 8 + 1/t for t = s0^cover; None for the t = 0 fiber."""
    if s0 == INFINITY:
        return F.from_int(8)
    t = s0
    for _ in range(cover - 1):
        t = int(F.mul(t, s0))
    if t == 0:
        return None
    return int(F.add(F.from_int(8), int(_inv_table(F)[t])))


class _CubicCounter:
    """Projective points of (x+y)(x+z)(y+z) = c*xyz over F, O(q) per c.

    Chart z = 1 is a quadratic in x for each y:
        (y+1) x^2 + ((y+1)^2 - c y) x + y(y+1) = 0.
    The line z = 0 always carries (1:0:0), (0:1:0), (1:-1:0); at y = -1 the
    quadratic degenerates to c*x = 0.
    """

    def __init__(self, F: FiniteField):
        self.F = F
        minus_one = F.neg(1)
        y = F.codes[F.codes != minus_one]
        y1 = F.add(y, 1)
        self.y = y
        self.sq1 = F.mul(y1, y1)
        self.K = F.mul(F.mul(F.from_int(4), y), self.sq1)
        self._cache: dict[int, int] = {}

    def __call__(self, c: int) -> int:
        hit = self._cache.get(c)
        if hit is not None:
            return hit
        F = self.F
        b = F.sub(self.sq1, F.mul(c, self.y))
        disc = F.sub(F.mul(b, b), self.K)
        chi_sum = int(F.chi[disc].sum())
        n = 3 + (F.q - 1) + chi_sum + (1 if c != 0 else F.q)
        self._cache[c] = n
        return n


_COUNTERS: dict[FiniteField, _CubicCounter] = {}


def count_plane_cubic(F: FiniteField, c) -> int:
    """#{(x:y:z) : (x+y)(x+z)(y+z) = c xyz}; c=None means xyz = 0."""
    if c is None:
        return 3 * F.q
    counter = _COUNTERS.get(F)
    if counter is None:
        counter = _COUNTERS[F] = _CubicCounter(F)
    return counter(int(c))


def projective_points(F: FiniteField):
    """Normalised representatives of P^2(F) as field elements."""
    zero, one = F.element(0), F.element(1)
    els = list(F.elements())
    for x in els:
        for y in els:
            yield (x, y, one)
    for x in els:
        yield (x, one, zero)
    yield (one, zero, zero)


def _cubic(x, y, z, c):
    return (x + y) * (x + z) * (y + z) - c * x * y * z


def _gradient(x, y, z, c):
    gx = (x + z) * (y + z) + (x + y) * (y + z) - c * y * z
    gy = (x + z) * (y + z) + (x + y) * (x + z) - c * x * z
    gz = (x + y) * (y + z) + (x + y) * (x + z) - c * x * y
    return gx, gy, gz


def count_plane_cubic_bruteforce(F: FiniteField, c) -> int:
    """O(q^2) scan of P^2(F) with element arithmetic; the oracle for the fast count."""
    if c is None:
        return sum(1 for x, y, z in projective_points(F) if not (x * y * z))
    ce = F.element(c)
    return sum(1 for x, y, z in projective_points(F) if not _cubic(x, y, z, ce))


def singular_points_bruteforce(F: FiniteField, c) -> list[tuple]:
    """Points of the cubic where the gradient vanishes (full scan)."""
    out = []
    if c is None:
        for x, y, z in projective_points(F):
            if not (x * y * z) and not (y * z) and not (x * z) and not (x * y):
                out.append((x, y, z))
        return out
    ce = F.element(c)
    for x, y, z in projective_points(F):
        if not _cubic(x, y, z, ce) and not any(_gradient(x, y, z, ce)):
            out.append((x, y, z))
    return out


def is_singular_param(F: FiniteField, s0: Param, cover: int = 2) -> bool:
    if s0 == INFINITY:
        return True
    c = fiber_constant(F, s0, cover)
    return c is None or c in (0, F.neg(1))


def singular_parameters(F: FiniteField, cover: int = 2) -> list[Param]:
    """0, infinity and the F-rational solutions of t = -1/8, t = -1/9."""
    found = [s for s in range(F.q) if is_singular_param(F, s, cover)]
    return found + [INFINITY]


def count_fiber(F: FiniteField, s0: Param, cover: int = 2) -> int:
    """Points of a smooth fiber over F."""
    if is_singular_param(F, s0, cover):
        raise ValueError(f"fiber at {s0} is singular; use classify_fiber")
    return count_plane_cubic(F, fiber_constant(F, s0, cover))


def _tangent_cone_discriminant(F: FiniteField, point, c) -> int:
    """b^2 - a*e for the Hessian form a u^2 + 2b uv + e v^2 in the chart z = 1."""
    x, y, z = (F.code(v) for v in point)
    s = F.add(F.add(x, y), z)
    two_s = F.add(s, s)
    fxx = F.mul(2, F.add(y, z))
    fyy = F.mul(2, F.add(x, z))
    fxy = F.sub(two_s, F.mul(c, z))
    return int(F.sub(F.mul(fxy, fxy), F.mul(fxx, fyy)))


def classify_fiber(F: FiniteField, s0: Param, cover: int = 2) -> FiberClassification:
    """Reduction type and local Frobenius trace of a singular fiber."""
    if not is_singular_param(F, s0, cover):
        raise ValueError(f"fiber at {s0} is smooth; use count_fiber")
    kod = KODAIRA[cover]
    c = fiber_constant(F, s0, cover)
    if c is None:
        # xyz = 0: three lines defined over the prime field
        return FiberClassification(FiberKind.MULTIPLICATIVE, 1, True, kodaira=kod["t=0"],
                                   detail="triangle xyz=0 of rational lines")
    if c == 0:
        # (x+y)(x+z)(y+z) = 0, vertices (1:-1:-1) etc. are rational
        return FiberClassification(FiberKind.MULTIPLICATIVE, 1, True, kodaira=kod["c=0"],
                                   detail="triangle (x+y)(x+z)(y+z)=0 of rational lines")
    if c == F.neg(1):
        # (x+y)(x+z)(y+z) + xyz = (x+y+z)(xy+yz+zx): line plus conic meeting
        # where x^2 + xy + y^2 = 0, i.e. at rational points iff -3 is a square
        disc = F.neg(3)
        if disc == 0:
            return FiberClassification(FiberKind.ADDITIVE, 0, None, kodaira=kod["c=-1"],
                                       detail="line tangent to conic")
        split = F.is_square(disc)
        return FiberClassification(FiberKind.MULTIPLICATIVE, 1 if split else -1, split,
                                   kodaira=kod["c=-1"],
                                   detail="line x+y+z=0 and conic xy+yz+zx=0")
    # c = 8: irreducible cubic with a node at (1:1:1)
    one = F.element(1)
    ce = F.element(c)
    node = (one, one, one)
    if any(_gradient(*node, ce)):
        raise AssertionError("expected a node at (1:1:1)")
    disc = _tangent_cone_discriminant(F, node, c)
    count = count_plane_cubic(F, c)
    if disc == 0:
        return FiberClassification(FiberKind.ADDITIVE, 0, None, count, kod["t=inf"],
                                   "cuspidal cubic")
    split = F.is_square(disc)
    return FiberClassification(FiberKind.MULTIPLICATIVE, 1 if split else -1, split, count,
                               kod["t=inf"], "nodal cubic, node (1:1:1)")


def local_trace(F: FiniteField, s0: Param, cover: int = 2) -> int:
    if is_singular_param(F, s0, cover):
        return classify_fiber(F, s0, cover).local_trace
    return F.q + 1 - count_fiber(F, s0, cover)


# Optional store for whole-field results, installed by the CLI:
# a callable (q, cover, build) -> TraceResult.
TRACE_STORE = None


def surface_trace(q, cover: int = 2) -> TraceResult:
    """Trace of Frobenius on H^1 of the parameter line: minus the sum of local traces."""
    if cover not in (1, 2, 3):
        raise ValueError("cover exponent must be 1, 2 or 3")
    F = as_field(q)
    if TRACE_STORE is not None:
        return TRACE_STORE(F.q, cover, lambda _q, _c: _surface_trace(F, cover))
    return _surface_trace(F, cover)


def _surface_trace(F: FiniteField, cover: int) -> TraceResult:
    if F.p == 3:
        raise ValueError("q must be prime to 6")
    per_fiber: list[tuple[Param, int]] = []
    for s0 in list(range(F.q)) + [INFINITY]:
        per_fiber.append((s0, local_trace(F, s0, cover)))
    A = -sum(lt for _, lt in per_fiber)
    return TraceResult(F.q, cover, A, per_fiber)


def trace_A(q, cover: int = 2) -> int:
    return surface_trace(q, cover).A


def rho_det(p: int) -> int:
    """(A_p^2 - A_{p^2}) / 2."""
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime > 3")
    a1 = surface_trace(FiniteField(p)).A
    a2 = surface_trace(FiniteField(p, 2)).A
    num = a1 * a1 - a2
    if num % 2:
        raise ArithmeticError(f"A_p^2 - A_p2 is odd at p = {p}")
    return num // 2
