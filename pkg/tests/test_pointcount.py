import pytest
from hypothesis import given
from hypothesis import strategies as st

from sporadic.arith import FiniteField, kronecker_symbol
from sporadic.pointcount import (
    INFINITY,
    KODAIRA,
    FiberKind,
    as_field,
    classify_fiber,
    count_fiber,
    count_plane_cubic,
    count_plane_cubic_bruteforce,
    fiber_constant,
    is_singular_param,
    local_trace,
    rho_det,
    singular_parameters,
    surface_trace,
    trace_A,
)

# computed once with the brute-force scan below, then frozen
A_VALUES = {5: 2, 7: 10, 11: 10, 13: 0, 17: 0, 19: 0, 23: 0, 29: 50, 31: -38, 37: 0}


def brute_trace(q, cover):
    F = as_field(q)
    total = 0
    for s0 in list(range(F.q)) + [INFINITY]:
        if is_singular_param(F, s0, cover):
            total += classify_fiber(F, s0, cover).local_trace
        else:
            total += F.q + 1 - count_plane_cubic_bruteforce(F, fiber_constant(F, s0, cover))
    return -total


@pytest.mark.parametrize("p, A", sorted(A_VALUES.items()))
def test_frozen_traces(p, A):
    assert trace_A(p) == A


@pytest.mark.parametrize("q, cover", [(5, 2), (7, 2), (11, 2), (7, 3), (13, 3), (25, 2)])
def test_fast_trace_equals_bruteforce(q, cover):
    assert trace_A(q, cover) == brute_trace(q, cover)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 25])
def test_fast_count_equals_bruteforce_every_c(q):
    F = as_field(q)
    for c in range(F.q):
        assert count_plane_cubic(F, c) == count_plane_cubic_bruteforce(F, c)
    assert count_plane_cubic(F, None) == count_plane_cubic_bruteforce(F, None) == 3 * F.q


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
def test_trace_matches_twisted_gamma_sign(p):
    # (-1/p) A_p vanishes exactly on the primes inert in Q(sqrt -6)
    assert (trace_A(p) == 0) == (kronecker_symbol(-6, p) == -1)


def test_hasse_bound_on_smooth_fibers():
    F = FiniteField(13)
    for s0 in range(13):
        if not is_singular_param(F, s0):
            assert abs(local_trace(F, s0)) <= 2 * 13**0.5


@pytest.mark.parametrize("p, det", [(5, 25), (7, 49), (11, 121), (13, -169)])
def test_rho_det(p, det):
    assert rho_det(p) == det
    assert det == kronecker_symbol(-24, p) * p * p


def test_rho_det_rejects():
    with pytest.raises(ValueError):
        rho_det(3)
    with pytest.raises(ValueError):
        rho_det(9)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 25, 49])
def test_singular_fiber_counts_match_classification(q):
    F = as_field(q)
    for cover in (2, 3):
        for s0 in singular_parameters(F, cover):
            cls = classify_fiber(F, s0, cover)
            c = fiber_constant(F, s0, cover)
            n = count_plane_cubic_bruteforce(F, c) if F.q <= 25 else count_plane_cubic(F, c)
            if c is None or c == 0:
                assert cls.split and n == 3 * F.q
            elif c == F.neg(1):
                # line and conic: two rational meeting points or a conjugate pair
                assert n == (2 * F.q if cls.split else 2 * F.q + 2)
            else:
                assert c == F.from_int(8)
                assert cls.point_count == n == F.q + 1 - cls.local_trace


def test_nodal_fiber_split_iff_minus3_square():
    for p in (5, 7, 11, 13, 17, 19, 31, 37):
        cls = classify_fiber(FiniteField(p), INFINITY)
        assert cls.split == (kronecker_symbol(-3, p) == 1)
        assert cls.kind is FiberKind.MULTIPLICATIVE
        assert cls.kodaira == KODAIRA[2]["t=inf"]


def test_fiber_api_errors():
    F = FiniteField(7)
    with pytest.raises(ValueError):
        count_fiber(F, 0)
    with pytest.raises(ValueError):
        classify_fiber(F, 1)
    with pytest.raises(ValueError):
        as_field(9)
    with pytest.raises(ValueError):
        as_field(35)
    with pytest.raises(ValueError):
        surface_trace(7, 4)


@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 200))
def test_fiber_constant_matches_definition(p, s):
    F = FiniteField(p)
    s0 = s % p
    c = fiber_constant(F, s0, 2)
    t = s0 * s0 % p
    if t == 0:
        assert c is None
    else:
        assert (c - 8) * t % p == 1


def test_trace_result_lines():
    res = surface_trace(7)
    lines = res.to_lines()
    assert lines[-1] == "A 10"
    assert lines[0] == "0 1" and lines[-2] == "inf 1"
    assert len(lines) == 7 + 2
