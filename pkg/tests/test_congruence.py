import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sporadic.arith import ALL_CHARACTERS, QuadraticCharacter, kronecker_symbol, primes_between
from sporadic.congruence import (
    FAMILY_COLUMNS,
    CongruenceReport,
    CongruenceRow,
    GammaExtractionError,
    beukers_sequence,
    beukers_transfer,
    check_three_term,
    cubic_inert_check,
    dim_cusp_forms,
    eigenpiece_traces,
    gamma_all_sources,
    gamma_cm,
    gamma_extract,
    gamma_report,
    gamma_value,
    three_term_grid,
    vanishing_readings,
    serre_faltings_table,
    twist_elimination,
    twist_report,
    verify_stienstra_beukers,
    verify_theorem1,
    verify_three_cover,
    verify_three_cover_eigenpiece,
)
from sporadic.qseries import QSeries
from sporadic.sequences import f_values

GAMMA = {5: 2, 7: -10, 11: -10, 13: 0, 17: 0, 19: 0, 23: 0, 29: 50, 31: 38, 37: 0, 41: 0, 43: 0,
         47: 0, 53: -94, 59: -10, 61: 0, 67: 0, 71: 0, 73: 50, 79: -58, 83: 134, 89: 0, 97: -190}


@pytest.mark.parametrize("p", sorted(GAMMA))
def test_gamma_extraction_frozen(g200, p):
    assert gamma_extract(p, g200).value == GAMMA[p]
    assert abs(GAMMA[p]) <= 2 * p


@pytest.mark.parametrize("p", sorted(GAMMA))
def test_gamma_cm_agrees_where_defined(p):
    cm = gamma_cm(p)
    if p % 24 in (5, 11):
        assert cm is None
    else:
        assert cm == GAMMA[p]


def test_gamma_sources_agree(g200):
    for p in (5, 7, 11, 13, 29, 31):
        gv, problems = gamma_all_sources(p, g200)
        assert not problems
        assert "extraction" in gv.sources and "pointcount" in gv.sources


def test_gamma_small_and_errors(g200):
    assert gamma_value(2) == -2 and gamma_value(3) == 3
    assert gamma_value(7, g200) == -10
    with pytest.raises(ValueError):
        gamma_extract(3, g200)
    with pytest.raises(ValueError):
        gamma_extract(211, g200)
    # a coefficient far from any small integer mod p^2
    bogus = QSeries({5: Fraction(12)}, 10)
    with pytest.raises(GammaExtractionError):
        gamma_extract(5, bogus)


def test_gamma_report_and_vanishing_readings(g200):
    rep = gamma_report(5, 50, g200)
    assert rep.ok and len(rep.rows) == len(primes_between(5, 50))
    rem = vanishing_readings(5, 97, g200)
    assert rem.ok
    assert any("5 (gamma=2)" in n for n in rem.notes)


def test_theorem1(g200):
    rep = verify_theorem1(199, g200)
    assert rep.ok
    assert [r.p for r in rep.rows][:3] == [3, 5, 7]
    assert len(rep.rows) == 45
    # p = 5: F(2) = 42 = 2 mod 5
    row5 = rep.rows[1]
    assert (row5.required, row5.achieved) == (2, 2)


def test_three_term_insufficient_is_not_a_pass():
    rep = check_three_term(QSeries.from_list([0, 1], 10), 5, 2, 25, [1], [1, 2])
    by_r = {r.r: r for r in rep.rows}
    assert by_r[1].passed is not None
    assert by_r[2].achieved == "insufficient" and not by_r[2].passed


def test_three_term_negative_valuation_fails():
    coeffs = QSeries({1: Fraction(1), 5: Fraction(1, 5)}, 30)
    rep = check_three_term(coeffs, 5, 0, 0, [1], [1])
    assert not rep.ok


def test_three_term_grid(g1600):
    rep = three_term_grid(g1600, (5, 7, 11, 13), 9, 2, 1600)
    assert rep.ok
    assert all(r.achieved == "inf" or r.achieved >= r.required for r in rep.rows if isinstance(r.achieved, int))
    # every admissible (m, r) appears
    want = sum(1 for p in (5, 7, 11, 13) for m in range(1, 10, 2) for r in (1, 2) if m * p**r <= 1600)
    assert len(rep.rows) == want == 40


def test_beukers_sequence_and_transfer(g200):
    b = beukers_sequence(11)
    F = f_values(5)
    assert b[1::2] == [F[0], -F[1], F[2], -F[3], F[4], -F[5]]
    assert b[2::2] == [0] * 5
    assert beukers_transfer(g=g200).ok


def test_stienstra_beukers():
    rep = verify_stienstra_beukers(100)
    assert rep.ok and len(rep.rows) == len(primes_between(5, 100))


def test_serre_faltings_small_range(g200):
    rep = serre_faltings_table(31, 47, g200)
    # a short range cannot cover all eight sign patterns; trace and det must still hold
    assert all(r.passed for r in rep.rows if r.family != "sf-characters")
    trace_rows = [r for r in rep.rows if r.family == "sf-trace"]
    assert {r.p: r.achieved for r in trace_rows}[31] == -38


def test_twist_witnesses(g200):
    found = {str(t.chi): t for t in twist_elimination(g200, 100)}
    assert len(found) == 7
    assert found["(0,1,0)"].witness == (5, 1, 1)
    assert found["(1,0,0)"].witness == (7, 1, 1)
    assert found["(1,1,1)"].outcome == "self-twist"
    assert sum(t.outcome == "witness" for t in found.values()) == 6
    assert twist_report(g200).ok


@pytest.mark.parametrize("chi", [c for c in ALL_CHARACTERS if not c.is_trivial()])
def test_self_twist_only_for_minus6(chi):
    # chi(p) = -1 forces gamma(p) = 0 only when chi is (-6/.)
    forced = all(GAMMA[p] == 0 for p in GAMMA if chi(p) == -1)
    assert forced == (chi == QuadraticCharacter(1, 1, 1))


def test_three_cover_eigenpiece():
    assert verify_three_cover_eigenpiece(79).ok


def test_three_cover_full_trace_recorded_discrepancy():
    rep = verify_three_cover(31)
    by_p = {r.p: r for r in rep.rows}
    assert by_p[7].passed
    # the full four-dimensional trace disagrees at p = 13: 8 vs F(4) = 2 mod 13
    assert (by_p[13].required, by_p[13].achieved) == (8, 2)


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37])
def test_eigenpieces_sum_to_full_trace(p):
    from sporadic.pointcount import trace_A

    one, two = eigenpiece_traces(p)
    assert (one + two) % p == trace_A(p, 3) % p


@pytest.mark.parametrize("args, d", [((3, 0, 6, 0), 1), ((3, 1, 0, 0), 0), ((5, 0, 6, 0), 5), ((3, 0, 4, 2), Fraction(2))])
def test_dim_cusp_forms(args, d):
    assert dim_cusp_forms(*args) == d


@given(st.integers(1, 6).map(lambda k: 2 * k + 1), st.integers(0, 4), st.integers(0, 6), st.integers(0, 6))
def test_dim_cusp_forms_is_linear_in_cusps(k, genus, r1, r2):
    base = dim_cusp_forms(k, genus, r1, r2)
    assert dim_cusp_forms(k, genus, r1 + 1, r2) - base == Fraction(k - 2, 2)
    assert dim_cusp_forms(k, genus, r1, r2 + 1) - base == Fraction(k - 1, 2)


def test_dim_rejects_even_weight():
    with pytest.raises(ValueError):
        dim_cusp_forms(4, 0, 6, 0)


@pytest.mark.parametrize("p, inert", [(7, True), (2, False), (3, False)])
def test_cubic_inert(p, inert):
    assert cubic_inert_check(p) is inert


def _sample_report():
    rep = CongruenceReport("demo")
    rep.rows.append(CongruenceRow("demo", 5, 1, 2, 4, float("inf"), True))
    rep.rows.append(CongruenceRow("demo", 7, None, None, 3, 1, False, "note"))
    return rep


def test_report_serialisations():
    rep = _sample_report()
    assert not rep.ok and len(rep.failures()) == 1
    recs = [json.loads(line) for line in rep.to_records().splitlines()]
    assert list(recs[0]) == list(FAMILY_COLUMNS)
    assert recs[0]["achieved"] == "inf" and recs[1]["m"] is None and recs[1]["pass"] is False
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0]) == FAMILY_COLUMNS and rows[2][2] == ""
    text = rep.to_text()
    assert "result: FAIL (2 rows)" in text and "# note" in text


def test_anomaly_fails_report():
    rep = CongruenceReport("x")
    assert rep.ok
    rep.anomalies.append("something odd")
    assert not rep.ok


@given(st.sampled_from(primes_between(5, 97)))
def test_trace_sign_relation(p):
    # (-1/p) gamma(p) is the point-count trace; it vanishes iff p is inert in Q(sqrt -6)
    assert (GAMMA[p] == 0) == (kronecker_symbol(-6, p) == -1)
