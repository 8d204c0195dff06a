"""Generalized Mersenne numbers p**n - p + 1 and their c*x**2 representations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import DEFAULT_BUDGET, Budget, SquareDecomposition, is_prime, is_square, squarefree_decompose
from .errors import NotPrime

MAX_EXPONENT = 10_000
# gmn_decompose is only expected to succeed reliably below this size
DECOMPOSE_ADVISORY_BITS = 512


@dataclass(frozen=True)
class GmNumber:
    p: int
    n: int
    value: int


@dataclass(frozen=True)
class Representation:
    c: int
    x: int
    gm: GmNumber


def gmn_value(p: int, n: int, max_exponent: int = MAX_EXPONENT) -> GmNumber:
    if not 1 <= n <= max_exponent:
        raise ValueError(f"exponent n={n} outside [1, {max_exponent}]")
    if not is_prime(p):
        raise NotPrime(p)
    return GmNumber(p, n, p**n - p + 1)


def represent_as(gm: GmNumber, c: int) -> Optional[int]:
    """x with gm.value == c * x**2, or None.

    Only a divisibility test and a perfect-square test; no factoring, so this
    stays cheap for values with thousands of bits.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    q, r = divmod(gm.value, c)
    if r:
        return None
    return is_square(q)


def representation(gm: GmNumber, c: int) -> Optional[Representation]:
    x = represent_as(gm, c)
    return None if x is None else Representation(c, x, gm)


def gmn_decompose(gm: GmNumber, budget: Budget = DEFAULT_BUDGET) -> SquareDecomposition:
    """Canonical (squarefree c, x) for gm.value.

    May raise IncompleteFactorization, typically once the value is well past
    DECOMPOSE_ADVISORY_BITS.
    """
    return squarefree_decompose(gm.value, budget)
