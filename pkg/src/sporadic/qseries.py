"""Truncated power series with exact rational coefficients.

Everything attached to the modular curve is expanded in w = exp(pi i tau);
objects naturally written in q = exp(2 pi i tau) are embedded with q = w^2
(``QSeries.substitute_square``), so s and g only ever carry integer
exponents.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

from .sequences import f_values

Number = Union[int, Fraction]


def _lcm_den(values: Iterable[Fraction]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in values), 1)


class QSeries:
    """Truncated (Laurent) series sum_n a_n x^n + O(x^prec).

    Coefficients live in a sparse dict; exponents at or past ``prec`` are
    unknown and never stored. Arithmetic propagates precision the usual way:
    a product of x^va*(unit) and x^vb*(unit) is known to
    min(prec_a + vb, prec_b + va).
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, Number], prec: int):
        self.prec = prec
        self.coeffs = {
            n: (c if isinstance(c, Fraction) else Fraction(c))
            for n, c in coeffs.items()
            if n < prec and c != 0
        }

    @classmethod
    def from_list(cls, values: Sequence[Number], prec: int | None = None, offset: int = 0):
        prec = offset + len(values) if prec is None else prec
        return cls({offset + i: v for i, v in enumerate(values)}, prec)

    @classmethod
    def monomial(cls, n: int, prec: int, coeff: Number = 1):
        return cls({n: coeff}, prec)

    @classmethod
    def one(cls, prec: int):
        return cls({0: 1}, prec)

    # ---------------------------------------------------------------- access
    def __getitem__(self, n: int) -> Fraction:
        if n >= self.prec:
            raise IndexError(f"coefficient {n} lies beyond precision {self.prec}")
        return self.coeffs.get(n, Fraction(0))

    def valuation(self) -> int:
        """Smallest exponent with a nonzero coefficient (``prec`` if none is known)."""
        return min(self.coeffs) if self.coeffs else self.prec

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisionError("series is zero to its precision")
        return self.coeffs[self.valuation()]

    def coefficient_list(self, start: int = 0, stop: int | None = None) -> list[Fraction]:
        stop = self.prec if stop is None else min(stop, self.prec)
        return [self[n] for n in range(start, stop)]

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def agrees_with(self, other: "QSeries") -> bool:
        """Equal on every exponent both series know."""
        n = min(self.prec, other.prec)
        return self.truncate(n).coeffs == other.truncate(n).coeffs

    def __repr__(self):
        terms = []
        for n, c in self.items()[:8]:
            terms.append(f"{c}*x^{n}")
        more = " + ..." if len(self.coeffs) > 8 else ""
        return " + ".join(terms) + more + f" + O(x^{self.prec})"

    # ------------------------------------------------------------ arithmetic
    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.coeffs, min(prec, self.prec))

    def shift(self, k: int) -> "QSeries":
        """Multiply by x^k."""
        return QSeries({n + k: c for n, c in self.coeffs.items()}, self.prec + k)

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries({0: other}, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return QSeries(out, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> "QSeries":
        c = Fraction(c)
        if c == 0:
            return QSeries({}, self.prec)
        return QSeries({n: c * v for n, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        if not self.coeffs or not other.coeffs:
            return QSeries({}, prec)
        # integer convolution over a common denominator
        da = _lcm_den(self.coeffs.values())
        db = _lcm_den(other.coeffs.values())
        a = [(n, int(c * da)) for n, c in self.items()]
        b = [(n, int(c * db)) for n, c in other.items()]
        acc: dict[int, int] = {}
        for i, ai in a:
            limit = prec - i
            for j, bj in b:
                if j >= limit:
                    break
                acc[i + j] = acc.get(i + j, 0) + ai * bj
        den = da * db
        return QSeries({n: Fraction(v, den) for n, v in acc.items() if v}, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return QSeries.one(self.prec - self.valuation()) / self ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return QSeries.one(self.prec - self.valuation())
        return result

    def _unit_part(self) -> tuple[int, "QSeries"]:
        v = self.valuation()
        if v >= self.prec:
            raise ZeroDivisionError("series is zero to its precision")
        return v, self.shift(-v)

    def inverse(self) -> "QSeries":
        v, u = self._unit_part()
        return _unit_inverse(u).shift(-v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        vb, ub = other._unit_part()
        va = self.valuation()
        rel = min(self.prec - va, ub.prec)
        inv = _unit_inverse(ub.truncate(rel))
        return (self.shift(-vb) * inv).truncate(va - vb + rel)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self) -> "QSeries":
        """Square root with positive leading coefficient."""
        v, u = self._unit_part()
        if v % 2:
            raise ValueError("square root of a series with odd valuation")
        lead = u[0]
        rn, rd = math.isqrt(lead.numerator) if lead > 0 else -1, math.isqrt(lead.denominator)
        if lead <= 0 or rn * rn != lead.numerator or rd * rd != lead.denominator:
            raise ValueError(f"leading coefficient {lead} is not a rational square")
        root = _unit_sqrt(u / lead)
        return root.scale(Fraction(rn, rd)).shift(v // 2)

    def theta(self) -> "QSeries":
        """x d/dx."""
        return QSeries({n: n * c for n, c in self.coeffs.items()}, self.prec)

    def derivative(self) -> "QSeries":
        """d/dx."""
        return QSeries({n - 1: n * c for n, c in self.coeffs.items()}, self.prec - 1)

    def substitute_square(self) -> "QSeries":
        """f(x) -> f(x^2); embeds a q-series as a w-series."""
        return QSeries({2 * n: c for n, c in self.coeffs.items()}, 2 * self.prec)

    compose_with_even = substitute_square

    def compose(self, poly: Sequence[Number]) -> "QSeries":
        """sum_k poly[k] * self^k by Horner; self must have positive valuation."""
        if self.valuation() <= 0:
            raise ValueError("composition needs positive valuation")
        prec = self.prec
        acc = QSeries({}, prec)
        for c in reversed(poly):
            acc = (acc * self + c).truncate(prec)
        return acc


def _stride(s: QSeries) -> int:
    return reduce(math.gcd, s.coeffs.keys(), 0) or 1


def _compress(s: QSeries, g: int) -> tuple[list[Fraction], int]:
    m = (s.prec + g - 1) // g
    dense = [Fraction(0)] * m
    for n, c in s.coeffs.items():
        dense[n // g] = c
    return dense, m


def _expand(dense: list, g: int, prec: int) -> QSeries:
    return QSeries({g * i: c for i, c in enumerate(dense) if c}, prec)


def _unit_inverse(u: QSeries) -> QSeries:
    g = _stride(u)
    a, m = _compress(u, g)
    a0 = a[0]
    nz = [(k, c) for k, c in enumerate(a) if k and c]
    if all(c.denominator == 1 for c in a) and a0 in (1, -1):
        ai = [(k, int(c)) for k, c in nz]
        s0 = int(a0)
        inv = [s0] + [0] * (m - 1)
        for n in range(1, m):
            acc = 0
            for k, c in ai:
                if k > n:
                    break
                acc += c * inv[n - k]
            inv[n] = -s0 * acc
        return _expand(inv, g, u.prec)
    inv = [1 / a0] + [Fraction(0)] * (m - 1)
    for n in range(1, m):
        acc = Fraction(0)
        for k, c in nz:
            if k > n:
                break
            acc += c * inv[n - k]
        inv[n] = -acc / a0
    return _expand(inv, g, u.prec)


def _unit_sqrt(u: QSeries) -> QSeries:
    """sqrt of a series with constant term 1."""
    g = _stride(u)
    a, m = _compress(u, g)
    if all(c.denominator == 1 for c in a):
        # r_n * 4^n is an integer for an integral unit; work with R_n = 4^n r_n
        R = [1] + [0] * (m - 1)
        for n in range(1, m):
            acc = 0
            for k in range(1, n):
                acc += R[k] * R[n - k]
            num = (int(a[n]) << (2 * n)) - acc
            R[n], rem = divmod(num, 2)
            assert rem == 0
        r = [Fraction(R[n], 1 << (2 * n)) for n in range(m)]
        return _expand(r, g, u.prec)
    r = [Fraction(1)] + [Fraction(0)] * (m - 1)
    for n in range(1, m):
        acc = sum((r[k] * r[n - k] for k in range(1, n)), Fraction(0))
        r[n] = (a[n] - acc) / 2
    return _expand(r, g, u.prec)


# ---------------------------------------------------------------------------
# eta quotients and the named series

T_SPEC = ((2, 1), (6, 5), (1, -5), (3, -1))
DELTA_SPEC = ((1, 24),)


def _euler_product(exps: Mapping[int, int], M: int) -> list[int]:
    """prod_{n>=1} (1 - q^n)^{a_n} to q^(M-1), a_n = exps.get(n, 0).

    Uses n f_n = sum_k b_k f_{n-k} with b_k = -sum_{d | k} d a_d.
    """
    b = [0] * M
    for d, e in exps.items():
        if e and d < M:
            for k in range(d, M, d):
                b[k] -= d * e
    f = [1] + [0] * (M - 1) if M else []
    for n in range(1, M):
        acc = 0
        for k in range(1, n + 1):
            if b[k]:
                acc += b[k] * f[n - k]
        f[n], rem = divmod(acc, n)
        assert rem == 0
    return f


def eta_quotient(spec: Iterable[tuple[int, int]], N: int) -> QSeries:
    """prod eta(m tau)^e as a w-series to O(w^N), where q = w^2.

    eta(m tau) = q^(m/24) prod (1 - q^(m n)); the leading w-exponent is
    sum(m e)/12 and must be an integer.
    """
    spec = tuple(spec)
    weight = sum(m * e for m, e in spec)
    if weight % 12:
        raise ValueError(f"eta quotient {spec} has fractional leading exponent {weight}/24 in q")
    lead = weight // 12
    M = max(0, (N - lead + 1) // 2)
    a: dict[int, int] = {}
    for m, e in spec:
        if m <= 0:
            raise ValueError("eta multipliers must be positive")
        for n in range(m, M, m):
            a[n] = a.get(n, 0) + e
    prod = _euler_product(a, M)
    return QSeries({lead + 2 * k: c for k, c in enumerate(prod)}, N)


def eta_quotient_q(spec: Iterable[tuple[int, int]], M: int) -> QSeries:
    """Same eta quotient written in q, to O(q^M)."""
    spec = tuple(spec)
    weight = sum(m * e for m, e in spec)
    if weight % 24:
        raise ValueError(f"eta quotient {spec} has fractional q-exponent {weight}/24")
    w = eta_quotient(spec, 2 * M)
    return QSeries({n // 2: c for n, c in w.coeffs.items()}, M)


def t_series(N: int) -> QSeries:
    """t = eta(2t)eta(6t)^5 / (eta(t)^5 eta(3t)) = w^2 + 5 w^4 + ..."""
    return eta_quotient(T_SPEC, N)


def s_series(N: int) -> QSeries:
    """s = sqrt(t) = w + ..., to O(w^N)."""
    return t_series(N + 1).sqrt()


def _poly_in(t: QSeries, coeffs: Sequence[int]) -> QSeries:
    out = QSeries({}, t.prec)
    power = QSeries.one(t.prec)
    for c in coeffs:
        if c:
            out = out + power * c
        power = (power * t).truncate(t.prec)
    return out


# Picard-Fuchs operator  A(t) th^2 + B(t) th + C(t)  with th = t d/dt
PF_A = (1, 17, 72)
PF_B = (0, 17, 144)
PF_C = (0, 6, 72)


def p_series(N: int, method: str = "ode") -> QSeries:
    """P = sum (-1)^n F(n) t^n as a w-series to O(w^N).

    ``method="ode"`` solves the Picard-Fuchs equation transported to the
    q-line coefficient by coefficient (quadratic time); ``"compose"``
    substitutes t into the power series directly (cubic, kept as a check).
    """
    if method == "compose":
        t = t_series(N)
        F = f_values(N)
        return t.compose([(-1) ** n * F[n] for n in range(N)])
    if method != "ode":
        raise ValueError(f"unknown method {method!r}")
    M = (N + 1) // 2
    tq = eta_quotient_q(T_SPEC, M + 1)
    h = tq / tq.theta()  # th_t = h th_q
    A, B, C = (_poly_in(tq, c) for c in (PF_A, PF_B, PF_C))
    alpha = A * h * h
    beta = A * h * h.theta() + B * h
    gamma = C
    al = [int(alpha[k]) for k in range(M)]
    be = [int(beta[k]) for k in range(M)]
    ga = [int(gamma[k]) for k in range(M)]
    assert al[0] == 1 and be[0] == 0 and ga[0] == 0
    y = [1] + [0] * (M - 1)
    for n in range(1, M):
        acc = 0
        for k in range(1, n + 1):
            j = n - k
            acc += (al[k] * j * j + be[k] * j + ga[k]) * y[j]
        y[n], rem = divmod(-acc, n * n)
        if rem:
            raise ArithmeticError(f"P has a non-integral q^{n} coefficient")
    return QSeries.from_list(y).substitute_square().truncate(N)


def g_series(N: int) -> QSeries:
    """g = P * (w ds/dw) = w + 3/2 w^3 - 9/8 w^5 - ..., to O(w^N)."""
    return p_series(N) * s_series(N).theta()


def picard_fuchs_residual(N: int, reading: str = "theta") -> QSeries:
    """Apply the Picard-Fuchs operator to sum (-1)^n F(n) t^n, to O(t^N).

    ``reading="theta"`` interprets the primes as t d/dt, ``"ordinary"``
    as d/dt.
    """
    F = f_values(N + 2)
    P = QSeries.from_list([(-1) ** n * F[n] for n in range(N + 2)])
    t = QSeries.monomial(1, N + 2)
    A, B, C = (_poly_in(t, c) for c in (PF_A, PF_B, PF_C))
    if reading == "theta":
        d1, d2 = P.theta(), P.theta().theta()
    elif reading == "ordinary":
        d1, d2 = P.derivative(), P.derivative().derivative()
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return (A * d2 + B * d1 + C * P).truncate(N)


verify_picard_fuchs = picard_fuchs_residual


def _sigma3(n: int) -> int:
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


def e4_q(M: int) -> QSeries:
    return QSeries.from_list([1] + [240 * _sigma3(n) for n in range(1, M)])


def j_series(N: int) -> QSeries:
    """j = E4^3 / Delta = w^-2 + 744 + 196884 w^2 + ..., to O(w^N)."""
    M = max(3, (N + 1) // 2 + 2)
    delta = eta_quotient_q(DELTA_SPEC, M)
    j = e4_q(M) ** 3 / delta
    return j.substitute_square().truncate(N)


# ---------------------------------------------------------------------------
# algebraic relation between s and j


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _poly_pow(a: Sequence[Fraction], e: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def eval_poly(poly: Sequence[Number], x: QSeries, prec: int) -> QSeries:
    acc = QSeries({}, prec)
    for c in reversed(poly):
        acc = (acc * x + Fraction(c)).truncate(prec)
    return acc


def _kernel_first_free(rows: list[list[Fraction]], ncols: int) -> tuple[list[Fraction] | None, int]:
    """Kernel vector for the lowest-indexed free column of the RREF, and kernel dimension."""
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pr = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        piv = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None, 0
    f = free[0]
    vec = [Fraction(0)] * ncols
    vec[f] = Fraction(1)
    for i, pc in enumerate(pivots):
        if pc < f:
            vec[pc] = -rows[i][f]
    return vec, len(free)


class SJRelation:
    """sum a[k, l] s^k j^l = 0, stored as {(k, l): a}."""

    def __init__(self, coeffs: dict[tuple[int, int], Fraction], kernel_dim: int):
        self.coeffs = {kl: c for kl, c in coeffs.items() if c}
        self.kernel_dim = kernel_dim

    @property
    def deg_s(self) -> int:
        return max(k for k, _ in self.coeffs)

    @property
    def deg_j(self) -> int:
        return max(l for _, l in self.coeffs)

    def polys(self) -> list[list[Fraction]]:
        """Coefficient lists P_l(s) with relation sum_l P_l(s) j^l."""
        out = [[Fraction(0)] * (self.deg_s + 1) for _ in range(self.deg_j + 1)]
        for (k, l), c in self.coeffs.items():
            out[l][k] = c
        return out

    def evaluate(self, N: int) -> QSeries:
        s, j = s_series(N + 2), j_series(N + 2 * self.deg_j + 2)
        total = QSeries({}, N)
        jl = QSeries.one(j.prec + 2 * self.deg_j)
        for poly in self.polys():
            total = total + (eval_poly(poly, s, N + 2 * self.deg_j + 2) * jl).truncate(N)
            jl = jl * j
        return total.truncate(N)

    def __str__(self):
        parts = []
        for l, poly in enumerate(self.polys()):
            terms = [f"({c})*s^{k}" for k, c in enumerate(poly) if c]
            if terms:
                parts.append("[" + " + ".join(reversed(terms)) + "]" + (f"*j^{l}" if l else ""))
        return " + ".join(parts) + " = 0"


def derive_sj_relation(deg_s: int, deg_j: int, N: int) -> SJRelation | None:
    """Lowest-degree polynomial relation between s and j within the bounds.

    Monomials s^k j^l are ordered by (k, l); the kernel vector of the first
    free column is supported on monomials no larger than it, so it is the
    relation of least s-degree (then least j-degree). Returns None when no
    relation exists in the bounds.
    """
    monos = [(k, l) for k in range(deg_s + 1) for l in range(deg_j + 1)]
    s = s_series(N)
    j = j_series(N)
    spow = [QSeries.one(N)]
    for _ in range(deg_s):
        spow.append(spow[-1] * s)
    jpow = [QSeries.one(N)]
    for _ in range(deg_j):
        jpow.append(jpow[-1] * j)
    series = [spow[k] * jpow[l] for k, l in monos]
    top = min(x.prec for x in series)
    low = -2 * deg_j
    n_eq = top - low
    if n_eq < 2 * len(monos):
        need = N + 2 * len(monos) - n_eq
        raise ValueError(f"insufficient truncation: {n_eq} equations for {len(monos)} unknowns; use N >= {need}")
    matrix = [[x[e] for x in series] for e in range(low, top)]
    vec, dim = _kernel_first_free(matrix, len(monos))
    if vec is None:
        return None
    rel = dict(zip(monos, vec))
    pure = [(k, c) for (k, l), c in rel.items() if l == 0 and c]
    norm = max(pure)[1] if pure else next(c for c in vec if c)
    return SJRelation({kl: c / norm for kl, c in rel.items()}, dim)


def printed_sj_relation() -> SJRelation:
    """The relation as printed, expanded to P0(s) + P1(s) j."""
    F = Fraction
    a = _poly_pow([F(-1, 6), F(0), F(1)], 3)
    b = _poly_pow([F(-1, 24), F(0), F(3, 4), F(0), F(-7, 2), F(0), F(1)], 3)
    p0 = _poly_mul(a, b)
    p1 = [F(1, 72)]
    for factor in ([F(-1, 3), F(1)], [F(-1, 3), F(1)], [F(1, 3), F(1)], [F(1, 3), F(1)]):
        p1 = _poly_mul(p1, factor)
    p1 = _poly_mul(p1, [F(0)] * 12 + [F(1)])
    p1 = _poly_mul(p1, _poly_pow([F(-1, 8), F(0), F(1)], 3))
    coeffs = {(k, 0): c for k, c in enumerate(p0)}
    coeffs.update({(k, 1): c for k, c in enumerate(p1)})
    return SJRelation(coeffs, 1)


def rotated_printed_residual(N: int) -> QSeries:
    """The printed relation evaluated at s -> i*s and j -> j(6 tau).

    The printed polynomials are even in s, so the rotation only flips the
    sign of s^(4k+2). Diagnostic only; nothing downstream uses it.
    """
    P0, P1 = printed_sj_relation().polys()

    def rotate(poly):
        return [c * (-1 if k % 4 == 2 else 1) if k % 2 == 0 else Fraction(0) for k, c in enumerate(poly)]

    s = s_series(N + 2)
    j = j_series(N // 6 + 4)
    j6 = QSeries({6 * n: c for n, c in j.coeffs.items()}, N)
    return (eval_poly(rotate(P0), s, N) + eval_poly(rotate(P1), s, N + 12) * j6).truncate(N - 12)
