"""Verification toolkit for generalized Mersenne numbers p**n - p + 1 of the form c*x**2."""
from .arith import (
    Budget,
    Factorization,
    SquareDecomposition,
    factorize,
    fibonacci,
    fibonacci_index,
    is_prime,
    is_square,
    isqrt,
    lucas,
    lucas_identity_holds,
    squarefree_decompose,
)
from .classifier import (
    OMEGA,
    BsQuadruple,
    Verdict,
    VerdictKind,
    check_f,
    check_g,
    check_h_bounded,
    check_omega,
    classify_pair,
)
from .errors import IncompleteFactorization, InvalidInput, NotPrime
from .gmn import GmNumber, gmn_decompose, gmn_value, represent_as
from .oracle import ScanReport, SolutionSet, mersenne_scan, solve_bs_bounded, solve_gmn_bounded, verify_theorem

__version__ = "0.1.0"
