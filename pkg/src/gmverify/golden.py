"""Golden checks behind ``gmverify self-test``: the published values, recomputed."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .arith import is_square, lucas_identity_holds, squarefree_decompose
from .classifier import BsQuadruple, VerdictKind, check_h_bounded, check_omega, classify_pair
from .gmn import gmn_decompose, gmn_value, represent_as
from .oracle import solve_bs_bounded, solve_gmn_bounded


@dataclass(frozen=True)
class GoldenCase:
    name: str
    check: Callable[[], bool]


def _bs(lam, d1, d2, p, y_max):
    return solve_bs_bounded(BsQuadruple(lam, d1, d2, p), y_max).solutions


CASES = (
    GoldenCase("121 is a square", lambda: is_square(121) == 11),
    GoldenCase("121 decomposes as 1*11^2", lambda: squarefree_decompose(121).root == 11),
    GoldenCase("M(3,3) = 25", lambda: gmn_value(3, 3).value == 25),
    GoldenCase("M(3,3) = 1*5^2", lambda: represent_as(gmn_value(3, 3), 1) == 5),
    GoldenCase("M(5,3) = 1*11^2", lambda: represent_as(gmn_value(5, 3), 1) == 11),
    GoldenCase("M(5,3) canonical form (1, 11)",
               lambda: (gmn_decompose(gmn_value(5, 3)).squarefree_part,
                        gmn_decompose(gmn_value(5, 3)).root) == (1, 11)),
    GoldenCase("(2,13,3,2) in Omega", lambda: check_omega(BsQuadruple(4, 13, 3, 2))),
    GoldenCase("(2,7,25,2) in Omega", lambda: check_omega(BsQuadruple(4, 7, 25, 2))),
    GoldenCase("7x^2+25 = 4*2^y: (1,3), (17,9)",
               lambda: _bs(4, 7, 25, 2, 40) == ((1, 3), (17, 9))),
    GoldenCase("x^2+2 = 3^n: (1,1), (5,3)", lambda: _bs(1, 1, 2, 3, 60) == ((1, 1), (5, 3))),
    GoldenCase("x^2+4 = 5^n: (1,1), (11,3)", lambda: _bs(1, 1, 4, 5, 60) == ((1, 1), (11, 3))),
    GoldenCase("4F_k - F_(k-2e) = L_(k+e), k <= 200",
               lambda: all(lucas_identity_holds(k, e)
                           for k in range(2, 201) for e in (1, -1) if k - 2 * e >= 0)),
    GoldenCase("H witness (1,2,3): s=1, r=1",
               lambda: check_h_bounded(BsQuadruple(1, 1, 2, 3)) == (1, 1)),
    GoldenCase("H witness (1,4,5): s=1, r=1",
               lambda: check_h_bounded(BsQuadruple(1, 1, 4, 5)) == (1, 1)),
    GoldenCase("(c,p)=(1,3) is exceptional with (1,1), (5,3)",
               lambda: classify_pair(1, 3).kind is VerdictKind.EXCEPTIONAL_P3
               and classify_pair(1, 3).predicted_solutions == ((1, 1), (5, 3))),
    GoldenCase("(c,p)=(1,5) is exceptional with (1,1), (11,3)",
               lambda: classify_pair(1, 5).kind is VerdictKind.EXCEPTIONAL_P5
               and classify_pair(1, 5).predicted_solutions == ((1, 1), (11, 3))),
    GoldenCase("M(3,n) = x^2 only at n = 1, 3 (n <= 100)",
               lambda: solve_gmn_bounded(1, 3, 100).solutions == ((1, 1), (5, 3))),
    GoldenCase("M(5,n) = x^2 only at n = 1, 3 (n <= 100)",
               lambda: solve_gmn_bounded(1, 5, 100).solutions == ((1, 1), (11, 3))),
)


def run_golden() -> list[tuple[str, bool, str]]:
    out = []
    for case in CASES:
        try:
            out.append((case.name, bool(case.check()), ""))
        except Exception as exc:  # a crash is a failed check, not a crashed run
            out.append((case.name, False, f"{type(exc).__name__}: {exc}"))
    return out
