"""Apery-like sequences: F(n), Apery's a_n and b_n, Franel numbers, and the
three-term recurrence family

    (n+1)^2 u_{n+1} = (A n^2 + A n + B) u_n - C n^2 u_{n-1},  u_{-1} = 0, u_0 = 1.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, NamedTuple, Union

SPORADIC_TRIPLES = ((0, 0, -16), (7, 2, -8), (9, 3, 27), (10, 3, 9), (12, 4, 32), (17, 6, 72))
APERY_B_TRIPLE = (11, 3, -1)
F_TRIPLE = (17, 6, 72)


class RecurrenceTriple(NamedTuple):
    A: int
    B: int
    C: int

    @property
    def nondegenerate(self) -> bool:
        return self.C * (self.A * self.A - 4 * self.C) != 0


@dataclass(frozen=True)
class SequencePrefix:
    values: tuple[Fraction, ...]
    integral: bool
    triple: Union[RecurrenceTriple, str]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def as_ints(self) -> list[int]:
        if not self.integral:
            raise ValueError("prefix has non-integral terms")
        return [int(v) for v in self.values]


@lru_cache(maxsize=None)
def franel(k: int) -> int:
    return sum(comb(k, j) ** 3 for j in range(k + 1))


def f_closed(n: int) -> int:
    """F(n) from the double binomial sum."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((-1) ** k * 8 ** (n - k) * comb(n, k) * franel(k) for k in range(n + 1))


def apery_b(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def apery_a(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def zagier_u(triple, N: int) -> SequencePrefix:
    """u_0 .. u_N of the recurrence for ``triple`` as exact rationals."""
    A, B, C = triple = RecurrenceTriple(*triple)
    prev, cur = Fraction(0), Fraction(1)
    values = [cur]
    for n in range(N):
        nxt = ((A * n * n + A * n + B) * cur - C * n * n * prev) / ((n + 1) ** 2)
        values.append(nxt)
        prev, cur = cur, nxt
    integral = all(v.denominator == 1 for v in values)
    return SequencePrefix(tuple(values), integral, triple)


def f_values(N: int) -> list[int]:
    """F(0..N) through the (17, 6, 72) recurrence, in integer arithmetic."""
    out = [1]
    prev, cur = 0, 1
    for n in range(N):
        num = (17 * n * n + 17 * n + 6) * cur - 72 * n * n * prev
        nxt, rem = divmod(num, (n + 1) ** 2)
        if rem:
            raise ArithmeticError(f"F({n + 1}) is not integral")
        out.append(nxt)
        prev, cur = cur, nxt
    return out


def integral_depth(triple, N: int) -> int:
    """Largest n <= N such that u_0 .. u_n are all integers (early abort)."""
    A, B, C = triple
    prev, cur = 0, 1
    for n in range(N):
        num = (A * n * n + A * n + B) * cur - C * n * n * prev
        nxt, rem = divmod(num, (n + 1) ** 2)
        if rem:
            return n
        prev, cur = cur, nxt
    return N


class SearchHit(NamedTuple):
    triple: RecurrenceTriple
    nondegenerate: bool
    depth: int


def _search_slice(args):
    A, B_range, C_range, N = args
    hits = []
    for B in range(B_range[0], B_range[1] + 1):
        for C in range(C_range[0], C_range[1] + 1):
            if integral_depth((A, B, C), N) == N:
                t = RecurrenceTriple(A, B, C)
                hits.append(SearchHit(t, t.nondegenerate, N))
    return hits


def search_integral(A_range, B_range, C_range, N: int = 30, workers: int = 1) -> list[SearchHit]:
    """All triples in the inclusive box whose prefix u_0..u_N is integral.

    Ranges are inclusive (lo, hi) pairs. The box is split by A across
    ``workers`` processes; hits come back in lexicographic order.
    """
    if A_range[0] > A_range[1] or B_range[0] > B_range[1] or C_range[0] > C_range[1]:
        return []
    jobs = [(A, tuple(B_range), tuple(C_range), N) for A in range(A_range[0], A_range[1] + 1)]
    if workers > 1:
        from .parallel import parallel_map

        chunks = parallel_map(_search_slice, jobs, workers)
    else:
        chunks = map(_search_slice, jobs)
    return sorted(itertools.chain.from_iterable(chunks))


def hits_to_csv(hits: Iterable[SearchHit]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["A", "B", "C", "nondegenerate", "depth"])
    for h in hits:
        w.writerow([*h.triple, int(h.nondegenerate), h.depth])
    return buf.getvalue()
