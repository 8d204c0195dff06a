"""Brute-force enumeration over bounded exponents, and grid scans built on it.

Nothing here consults the classifier's reasoning; the scans only compare
their own counts against the verdicts afterwards.
"""
from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .arith import is_square, primes_up_to
from .classifier import BsQuadruple, Verdict, classify_pair
from .gmn import MAX_EXPONENT, GmNumber, gmn_value, represent_as

log = logging.getLogger(__name__)

EXCEPTIONAL_VALUES = frozenset({1, 25, 121})


@dataclass(frozen=True)
class GmnEquation:
    """c*x**2 + p - 1 = p**n."""

    c: int
    p: int


@dataclass(frozen=True)
class SolutionSet:
    equation: Union[BsQuadruple, GmnEquation]
    bound: int
    solutions: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for x, e in self.solutions:
            if not satisfies(self.equation, x, e):
                raise ArithmeticError(f"({x}, {e}) does not satisfy {self.equation}")
        exps = [e for _, e in self.solutions]
        if exps != sorted(set(exps)):
            raise ValueError("solutions must be sorted by exponent without repeats")


def satisfies(eq: Union[BsQuadruple, GmnEquation], x: int, e: int) -> bool:
    if x < 1 or e < 1:
        return False
    if isinstance(eq, BsQuadruple):
        return eq.d1 * x * x + eq.d2 == eq.lambda_sq * eq.p**e
    return eq.c * x * x + eq.p - 1 == eq.p**e


def solve_bs_bounded(q: BsQuadruple, y_max: int) -> SolutionSet:
    """All (x, y), 1 <= y <= y_max, with D1 x^2 + D2 = lambda^2 p^y."""
    if y_max < 1:
        raise ValueError("y_max must be >= 1")
    sols = []
    power = q.p
    for y in range(1, y_max + 1):
        rhs = q.lambda_sq * power - q.d2
        power *= q.p
        if rhs <= 0 or rhs % q.d1:
            continue
        x = is_square(rhs // q.d1)
        if x:
            sols.append((x, y))
    return SolutionSet(q, y_max, tuple(sols))


@lru_cache(maxsize=256)
def _gmn_series(p: int, n_max: int) -> tuple[GmNumber, ...]:
    return tuple(gmn_value(p, n) for n in range(1, n_max + 1))


def solve_gmn_bounded(c: int, p: int, n_max: int) -> SolutionSet:
    """All (x, n), n <= n_max, with p**n - p + 1 == c * x**2."""
    if c < 1 or not 1 <= n_max <= MAX_EXPONENT:
        raise ValueError(f"need c >= 1 and 1 <= n_max <= {MAX_EXPONENT}")
    sols = []
    for gm in _gmn_series(p, n_max):
        x = represent_as(gm, c)
        if x is not None:
            sols.append((x, gm.n))
    return SolutionSet(GmnEquation(c, p), n_max, tuple(sols))


# --- scans ------------------------------------------------------------------

@dataclass(frozen=True)
class PairResult:
    c: int
    p: int
    verdict: Verdict
    solutions: tuple[tuple[int, int], ...]

    @property
    def nontrivial(self) -> tuple[tuple[int, int], ...]:
        return tuple(s for s in self.solutions if self.c * s[0] ** 2 not in EXCEPTIONAL_VALUES)


@dataclass
class ScanReport:
    command: str
    c_range: tuple[int, int]
    p_range: tuple[int, int]
    n_max: int
    per_pair: list[PairResult] = field(default_factory=list)
    violations: list[tuple[int, int]] = field(default_factory=list)
    nontrivial_hits: list[tuple[int, int]] = field(default_factory=list)
    classifier_mismatches: list[tuple[int, int]] = field(default_factory=list)
    # mersenne_scan only
    small_n_hits: list[tuple[int, int, int]] = field(default_factory=list)
    residue_table: dict[tuple[int, int], int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    elapsed_ms: Optional[int] = None

    @property
    def failed(self) -> bool:
        return bool(self.violations or self.classifier_mismatches)

    def pair(self, c: int, p: int) -> PairResult:
        for row in self.per_pair:
            if (row.c, row.p) == (c, p):
                return row
        raise KeyError((c, p))


def agrees(result: PairResult, n_max: int) -> bool:
    """Does the oracle's solution list fit the classifier's verdict?"""
    kind = result.verdict.kind
    if kind.is_no_solution:
        return not result.solutions
    if kind.is_exceptional:
        expected = tuple(s for s in result.verdict.predicted_solutions if s[1] <= n_max)
        return result.solutions == expected
    return len(result.nontrivial) <= 1


def _scan_chunk(cs: tuple[int, ...], primes: tuple[int, ...], n_max: int) -> list[PairResult]:
    return [
        PairResult(c, p, classify_pair(c, p), solve_gmn_bounded(c, p, n_max).solutions)
        for c in cs
        for p in primes
    ]


def _run_pairs(cs: list[int], primes: tuple[int, ...], n_max: int, workers: int) -> list[PairResult]:
    if workers <= 1 or len(cs) < 2:
        rows = _scan_chunk(tuple(cs), primes, n_max)
    else:
        shards = [tuple(cs[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan_chunk, shards, [primes] * workers, [n_max] * workers)
            rows = [r for part in parts for r in part]
    rows.sort(key=lambda r: (r.c, r.p))
    return rows


def _tally(report: ScanReport) -> None:
    for row in report.per_pair:
        nontrivial = row.nontrivial
        if len(nontrivial) >= 2:
            report.violations.append((row.c, row.p))
        elif len(nontrivial) == 1:
            report.nontrivial_hits.append((row.c, row.p))
        if not agrees(row, report.n_max):
            report.classifier_mismatches.append((row.c, row.p))
    if report.violations:
        log.error("pairs with two or more nontrivial solutions: %s", report.violations)


def verify_theorem(c_max: int, p_max: int, n_max: int, workers: int = 1) -> ScanReport:
    """Every c in [1, c_max] against every prime p <= p_max, exponents up to n_max."""
    if min(c_max, p_max, n_max) < 1:
        raise ValueError("bounds must be >= 1")
    start = time.perf_counter()
    primes = primes_up_to(p_max)
    report = ScanReport("verify-theorem", (1, c_max), (2, p_max), n_max)
    report.per_pair = _run_pairs(list(range(1, c_max + 1)), primes, n_max, workers)
    _tally(report)
    even_rows = [r for r in report.per_pair if r.c % 2 == 0 and r.solutions]
    if even_rows:
        report.warnings.append(f"even c with solutions: {[(r.c, r.p) for r in even_rows]}")
    report.elapsed_ms = round((time.perf_counter() - start) * 1000)
    return report


def mersenne_scan(c_max: int, n_max: int) -> ScanReport:
    """Solutions of 2**n - 1 == c * x**2 for c <= c_max, n <= n_max.

    Hits with n >= 3 and c not 7 mod 8 are violations; hits with n <= 2 are
    only collected in ``small_n_hits``.
    """
    if min(c_max, n_max) < 1:
        raise ValueError("bounds must be >= 1")
    start = time.perf_counter()
    report = ScanReport("mersenne-scan", (1, c_max), (2, 2), n_max)
    report.per_pair = _scan_chunk(tuple(range(1, c_max + 1)), (2,), n_max)
    residues: Counter[tuple[int, int]] = Counter()
    for row in report.per_pair:
        nontrivial = row.nontrivial
        if len(nontrivial) == 1:
            report.nontrivial_hits.append((row.c, 2))
        if not agrees(row, n_max):
            report.classifier_mismatches.append((row.c, 2))
        for x, n in row.solutions:
            residues[(row.c % 8, n)] += 1
            if n <= 2:
                report.small_n_hits.append((row.c, x, n))
            elif row.c % 8 != 7 and (row.c, 2) not in report.violations:
                report.violations.append((row.c, 2))
    report.residue_table = dict(sorted(residues.items()))
    report.elapsed_ms = round((time.perf_counter() - start) * 1000)
    return report
