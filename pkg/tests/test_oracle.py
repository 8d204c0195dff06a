import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmverify.arith import is_prime
from gmverify.classifier import BsQuadruple, VerdictKind
from gmverify.oracle import (
    EXCEPTIONAL_VALUES,
    GmnEquation,
    SolutionSet,
    mersenne_scan,
    satisfies,
    solve_bs_bounded,
    solve_gmn_bounded,
    verify_theorem,
)

from reference import gmn_bruteforce

PRIMES_50 = [p for p in range(2, 51) if is_prime(p)]


def test_solve_bs_examples():
    assert solve_bs_bounded(BsQuadruple(4, 7, 25, 2), 20).solutions == ((1, 3), (17, 9))
    assert solve_bs_bounded(BsQuadruple(1, 1, 2, 3), 50).solutions == ((1, 1), (5, 3))
    assert solve_bs_bounded(BsQuadruple(1, 1, 4, 5), 50).solutions == ((1, 1), (11, 3))


def test_solve_bs_golden_values_resubstitute():
    assert 7 * 1**2 + 25 == 4 * 2**3
    assert 7 * 17**2 + 25 == 4 * 2**9
    assert 5**2 + 2 == 3**3
    assert 11**2 + 4 == 5**3


def test_solve_bs_requires_positive_bound():
    with pytest.raises(ValueError):
        solve_bs_bounded(BsQuadruple(1, 1, 2, 3), 0)


# counts frozen from an independent scan over x < 10^5
F_TRIPLE_COUNTS = {(1, 7, 2): 5, (5, 3, 2): 2, (1, 11, 3): 1, (13, 7, 5): 0}


def test_f_triple_solution_counts_are_stable():
    for triple, count in F_TRIPLE_COUNTS.items():
        q = BsQuadruple(1, *triple)
        assert len(solve_bs_bounded(q, 40).solutions) == count
        assert solve_bs_bounded(q, 40) == solve_bs_bounded(q, 40)


def test_solution_set_rejects_bad_entries():
    with pytest.raises(ArithmeticError):
        SolutionSet(GmnEquation(1, 3), 10, ((2, 3),))
    with pytest.raises(ValueError):
        SolutionSet(GmnEquation(1, 3), 10, ((5, 3), (1, 1)))
    assert not satisfies(GmnEquation(1, 3), 0, 1)


def test_solve_gmn_examples():
    assert solve_gmn_bounded(1, 3, 100).solutions == ((1, 1), (5, 3))
    assert solve_gmn_bounded(1, 5, 100).solutions == ((1, 1), (11, 3))
    assert solve_gmn_bounded(7, 2, 100).solutions[0] == (1, 3)


def test_solve_gmn_7_2_has_two_solutions():
    # 2^3 - 1 = 7 * 1^2 and 2^6 - 1 = 63 = 7 * 3^2
    assert solve_gmn_bounded(7, 2, 100).solutions == ((1, 3), (3, 6))
    assert gmn_bruteforce(7, 2, 100) == [(1, 3), (3, 6)]


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=1, max_value=300), st.sampled_from(PRIMES_50))
def test_solve_gmn_matches_bruteforce(c, p):
    assert list(solve_gmn_bounded(c, p, 40).solutions) == gmn_bruteforce(c, p, 40)


@given(
    st.integers(min_value=1, max_value=200),
    st.sampled_from(PRIMES_50),
    st.integers(min_value=1, max_value=60),
    st.integers(min_value=1, max_value=60),
)
def test_solve_gmn_monotone_in_bound(c, p, a, b):
    a, b = min(a, b), max(a, b)
    small = set(solve_gmn_bounded(c, p, a).solutions)
    large = set(solve_gmn_bounded(c, p, b).solutions)
    assert small <= large


@given(
    st.sampled_from(sorted([(1, 1, 2, 3), (1, 1, 4, 5), (4, 7, 25, 2), (2, 1, 1, 13), (1, 1, 7, 2)])),
    st.integers(min_value=1, max_value=40),
    st.integers(min_value=1, max_value=40),
)
def test_solve_bs_monotone_in_bound(quad, a, b):
    a, b = min(a, b), max(a, b)
    q = BsQuadruple(*quad)
    assert set(solve_bs_bounded(q, a).solutions) <= set(solve_bs_bounded(q, b).solutions)


def test_even_c_never_solves():
    for c in range(2, 101, 2):
        for p in PRIMES_50:
            assert solve_gmn_bounded(c, p, 100).solutions == ()


def test_verify_theorem_small_grid():
    report = verify_theorem(10, 10, 50)
    # 2^3 - 1 = 7 and 2^6 - 1 = 7 * 3^2 are both in the grid
    assert report.violations == [(7, 2)]
    assert report.classifier_mismatches == [(7, 2)]
    assert report.pair(1, 3).solutions == ((1, 1), (5, 3))
    assert report.pair(1, 5).solutions == ((1, 1), (11, 3))
    assert report.pair(1, 3).verdict.kind is VerdictKind.EXCEPTIONAL_P3
    assert report.failed


def test_verify_theorem_single_pair():
    report = verify_theorem(1, 2, 50)
    assert [(r.c, r.p) for r in report.per_pair] == [(1, 2)]
    assert report.pair(1, 2).solutions == ((1, 1),)
    assert not report.failed


def test_verify_theorem_even_rows_empty():
    report = verify_theorem(2, 7, 50)
    assert all(r.solutions == () for r in report.per_pair if r.c == 2)
    assert report.violations == [] and report.classifier_mismatches == []
    assert report.warnings == []


def test_verify_theorem_exempts_values_by_value():
    report = verify_theorem(25, 3, 20)
    row = report.pair(25, 3)
    assert row.solutions == ((1, 3),)
    assert 25 in EXCEPTIONAL_VALUES and row.nontrivial == ()


def test_verify_theorem_parallel_matches_serial():
    serial = verify_theorem(30, 20, 40)
    parallel = verify_theorem(30, 20, 40, workers=3)
    assert serial.per_pair == parallel.per_pair
    assert serial.violations == parallel.violations
    assert serial.nontrivial_hits == parallel.nontrivial_hits


def test_verify_theorem_bounds():
    with pytest.raises(ValueError):
        verify_theorem(0, 10, 10)


def test_mersenne_examples():
    report = mersenne_scan(20, 100)
    assert report.pair(1, 2).solutions == ((1, 1),)
    assert report.pair(3, 2).solutions == ((1, 2),)
    assert (3, 1, 2) in report.small_n_hits
    assert report.pair(7, 2).solutions == ((1, 3), (3, 6))
    assert report.violations == []
    assert report.residue_table[(7, 3)] == 1


def test_mersenne_c_23_has_no_hit():
    report = mersenne_scan(23, 200)
    assert report.pair(23, 2).solutions == ()
    assert 23 % 8 == 7
