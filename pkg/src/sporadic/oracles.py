"""Cross-checks of the fast kernels against slow, obviously-correct scans."""

from __future__ import annotations

from math import isqrt

from .arith import FiniteField, cornacchia, primes_between
from .congruence import CongruenceReport, CongruenceRow
from .pointcount import (
    INFINITY,
    count_plane_cubic,
    count_plane_cubic_bruteforce,
    fiber_constant,
    is_singular_param,
    singular_points_bruteforce,
)


def _fields(p_max: int, with_squares: bool):
    fields = [FiniteField(p) for p in primes_between(5, p_max)]
    if with_squares:
        fields.append(FiniteField(5, 2))
    return fields


def count_mismatches(F: FiniteField, cover: int) -> list:
    bad = []
    for s0 in list(range(F.q)) + [INFINITY]:
        c = fiber_constant(F, s0, cover)
        if count_plane_cubic(F, c) != count_plane_cubic_bruteforce(F, c):
            bad.append(s0)
    return bad


def singular_mismatches(F: FiniteField, cover: int) -> list:
    """Parameters where the geometric gradient scan and is_singular_param disagree.

    The scan runs over F_{p^2}: a line meeting a conic in two conjugate
    points has no F_p-rational singular point.
    """
    if F.degree != 1:
        raise ValueError("scan is over the quadratic extension of a prime field")
    E = FiniteField(F.p, 2)
    bad = []
    for s0 in list(range(F.q)) + [INFINITY]:
        # prime-field codes embed unchanged into F_{p^2}
        scan = bool(singular_points_bruteforce(E, fiber_constant(F, s0, cover)))
        if scan != is_singular_param(F, s0, cover):
            bad.append(s0)
    return bad


def two_squares_bruteforce(p: int, D: int):
    """All (a, b) with a, b >= 0 and a^2 + D b^2 = p."""
    out = []
    b = 0
    while D * b * b <= p:
        r = p - D * b * b
        a = isqrt(r)
        if a * a == r:
            out.append((a, b))
        b += 1
    return out


def cornacchia_mismatches(p_max: int, D: int) -> list[int]:
    bad = []
    for p in primes_between(3, p_max):
        if D % p == 0:
            continue
        found = cornacchia(p, D)
        brute = two_squares_bruteforce(p, D)
        if found is None:
            if brute:
                bad.append(p)
        elif (abs(found.a), abs(found.b)) not in brute:
            bad.append(p)
    return bad


def oracle_report(p_max: int = 13, cornacchia_max: int = 10_000) -> CongruenceReport:
    """Fast counts, singular detection and Cornacchia against brute force."""
    report = CongruenceReport("oracles")
    for F in _fields(p_max, with_squares=True):
        for cover in (2, 3):
            bad = count_mismatches(F, cover)
            report.rows.append(CongruenceRow("oracle-count", F.q, None, cover, 0, len(bad), not bad,
                                             f"fibers differing: {bad}" if bad else ""))
    for F in _fields(p_max, with_squares=False):
        for cover in (2, 3):
            bad = singular_mismatches(F, cover)
            report.rows.append(CongruenceRow("oracle-singular", F.q, None, cover, 0, len(bad), not bad,
                                             f"fibers differing: {bad}" if bad else ""))
    for D in (1, 6):
        bad = cornacchia_mismatches(cornacchia_max - 1, D)
        report.rows.append(CongruenceRow("oracle-cornacchia", cornacchia_max, D, None, 0, len(bad), not bad,
                                         f"D = {D}" + (f", primes differing: {bad[:10]}" if bad else "")))
    return report
