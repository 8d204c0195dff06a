"""Exceptional-set machinery for D1*x**2 + D2 = lambda**2 * p**y and the (c, p) descent.

lambda is carried as its square, lambda_sq in {1, 2, 4}, so everything stays
integral.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .arith import fibonacci, fibonacci_index, is_prime, is_square, lucas
from .errors import InvalidInput

LAMBDA_SQUARES = (1, 2, 4)

# (lambda_sq, D1, D2, p). The last entry has two solutions, (1, 3) and (17, 9),
# and is missing from the originally published list.
OMEGA = frozenset({
    (4, 13, 3, 2),
    (2, 7, 11, 3),
    (1, 2, 1, 3),
    (4, 7, 1, 2),
    (2, 1, 1, 5),
    (2, 1, 1, 13),
    (4, 1, 3, 7),
    (4, 7, 25, 2),
})

DEFAULT_R_MAX = 64
DEFAULT_S_MAX = 10**6


@dataclass(frozen=True)
class BsQuadruple:
    lambda_sq: int
    d1: int
    d2: int
    p: int

    def __post_init__(self):
        if self.lambda_sq not in LAMBDA_SQUARES:
            raise ValueError(f"lambda_sq must be one of {LAMBDA_SQUARES}")
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("D1 and D2 must be positive")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if gcd(self.d1, self.d2) != 1 or gcd(self.d1 * self.d2, self.p) != 1:
            raise ValueError(f"{self} violates gcd(D1, D2) = gcd(D1*D2, p) = 1")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.lambda_sq, self.d1, self.d2, self.p)


class VerdictKind(str, enum.Enum):
    INVALID_INPUT = "InvalidInput"
    NO_SOLUTION_EVEN_C = "NoSolutionEvenC"
    NO_SOLUTION_GCD = "NoSolutionGcd"
    NO_SOLUTION_P_DIVIDES_C = "NoSolutionPDividesC"
    EXCEPTIONAL_P3 = "ExceptionalP3"
    EXCEPTIONAL_P5 = "ExceptionalP5"
    AT_MOST_ONE_GENERIC = "AtMostOneGeneric"

    @property
    def is_no_solution(self) -> bool:
        return self.value.startswith("NoSolution")

    @property
    def is_exceptional(self) -> bool:
        return self.value.startswith("Exceptional")


@dataclass(frozen=True)
class Evidence:
    """Outcome of one membership test.

    ``witness`` is (k, eps) for F, (r,) for G, (s, r) for H, () for Omega,
    or None when the triple is not a member.
    """

    set_name: str
    lambda_sq: int
    triple: tuple[int, int, int]
    witness: Optional[tuple[int, ...]]

    @property
    def member(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class Verdict:
    c: int
    p: int
    kind: VerdictKind
    details: tuple[Evidence, ...] = ()
    predicted_solutions: tuple[tuple[int, int], ...] = ()
    notes: tuple[str, ...] = field(default=())


EXCEPTIONAL = {
    (1, 3): (VerdictKind.EXCEPTIONAL_P3, ((1, 1), (5, 3))),
    (1, 5): (VerdictKind.EXCEPTIONAL_P5, ((1, 1), (11, 3))),
}


def check_omega(q: BsQuadruple) -> bool:
    return q.as_tuple() in OMEGA


def check_f(d1: int, d2: int, p: int) -> Optional[tuple[int, int]]:
    """(k, eps) with (d1, d2, p) == (F_{k-2eps}, L_{k+eps}, F_k), or None."""
    k = fibonacci_index(p)
    if k is None:
        return None
    for eps in (1, -1):
        if k - 2 * eps < 0:
            continue
        if d1 == fibonacci(k - 2 * eps) and d2 == lucas(k + eps):
            # 4 F_k - F_{k-2eps} = L_{k+eps}
            if 4 * p - d1 != d2:
                raise ArithmeticError(f"Fibonacci/Lucas identity failed at k={k}, eps={eps}")
            return k, eps
    return None


def check_g(d1: int, d2: int, p: int, r_max: int = DEFAULT_R_MAX) -> Optional[int]:
    """r in [1, r_max] with (d1, d2) == (1, 4*p**r - 1), or None. p must be an odd prime."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"G membership needs an odd prime, got p={p}")
    if d1 != 1:
        return None
    target = d2 + 1
    r, power = 1, p
    while r <= r_max and 4 * power <= target:
        if 4 * power == target:
            return r
        r += 1
        power *= p
    return None


def _exact_log(v: int, p: int) -> Optional[int]:
    # r >= 1 with p**r == v
    r = 0
    while v > 1 and v % p == 0:
        v //= p
        r += 1
    return r if v == 1 and r >= 1 else None


def check_h_bounded(
    q: BsQuadruple, s_max: int = DEFAULT_S_MAX, r_max: int = DEFAULT_R_MAX
) -> Optional[tuple[int, int]]:
    """Lexicographically first (s, r), s <= s_max, r <= r_max, with

        D1 s^2 + D2 = lambda^2 p^r   and   3 D1 s^2 - D2 = +-lambda^2.

    The second equation pins 3 D1 s^2 to D2 +- lambda^2, so at most two values
    of s need checking and r follows from the first equation.
    """
    lam = q.lambda_sq
    if lam != 4 and q.p == 2:
        raise ValueError("H membership needs an odd prime unless lambda = 2")
    # mutual coprimality of D1, D2, p is guaranteed by BsQuadruple
    found = []
    for target in (q.d2 - lam, q.d2 + lam):
        if target <= 0 or target % (3 * q.d1):
            continue
        s = is_square(target // (3 * q.d1))
        if not s or s > s_max:
            continue
        lhs = q.d1 * s * s + q.d2
        if lhs % lam:
            continue
        r = _exact_log(lhs // lam, q.p)
        if r is not None and r <= r_max:
            found.append((s, r))
    return min(found) if found else None


def classify_pair(
    c: int, p: int, r_max: int = DEFAULT_R_MAX, s_max: int = DEFAULT_S_MAX
) -> Verdict:
    """Decide how many n can give p**n - p + 1 == c * x**2.

    Checks run in a fixed order: even c, p | c, gcd(c, p - 1) > 1, the two
    closed-form exceptional pairs (1, 3) and (1, 5), and otherwise the
    generic at-most-one verdict with its membership evidence attached.
    """
    if c < 1:
        raise InvalidInput(f"c must be >= 1, got {c}")
    if not is_prime(p):
        raise InvalidInput(f"p={p} is not prime")

    d2 = p - 1
    evidence = []
    # F membership needs no coprimality, so it is recorded for every pair
    f_witness = check_f(c, d2, p)
    evidence.append(Evidence("F", 1, (c, d2, p), f_witness))

    if c % 2 == 0:
        return Verdict(c, p, VerdictKind.NO_SOLUTION_EVEN_C, tuple(evidence),
                       notes=("p**n - p + 1 is always odd",))
    if c % p == 0:
        return Verdict(c, p, VerdictKind.NO_SOLUTION_P_DIVIDES_C, tuple(evidence),
                       notes=("c*x**2 + p - 1 is -1 mod p but p**n is 0 mod p",))
    g = gcd(c, d2)
    if g > 1:
        return Verdict(c, p, VerdictKind.NO_SOLUTION_GCD, tuple(evidence),
                       notes=(f"gcd(c, p - 1) = {g}: a common prime would divide p**n",))

    q = BsQuadruple(1, c, d2, p)
    evidence.append(Evidence("Omega", 1, (c, d2, p), () if check_omega(q) else None))
    notes = []
    if p == 2:
        # c x^2 + 1 = 2^n is also the lambda = 2 equation c x^2 + 1 = 4 * 2^(n-2)
        q4 = BsQuadruple(4, c, d2, p)
        evidence.append(Evidence("Omega", 4, (c, d2, p), () if check_omega(q4) else None))
        evidence.append(Evidence("H", 4, (c, d2, p), check_h_bounded(q4, s_max, r_max)))
        notes.append("p = 2: G and lambda = 1 H tests need an odd prime; skipped")
    else:
        r = check_g(c, d2, p, r_max)
        evidence.append(Evidence("G", 1, (c, d2, p), None if r is None else (r,)))
        evidence.append(Evidence("H", 1, (c, d2, p), check_h_bounded(q, s_max, r_max)))

    if (c, p) in EXCEPTIONAL:
        kind, predicted = EXCEPTIONAL[(c, p)]
        return Verdict(c, p, kind, tuple(evidence), predicted)

    if c == 1:
        notes.append("n = 1 gives the trivial solution x = 1")
    if any(e.member for e in evidence):
        names = ", ".join(f"{e.set_name}(lambda^2={e.lambda_sq})" for e in evidence if e.member)
        notes.append(f"formal membership in {names}; at-most-one is not guaranteed")
    return Verdict(c, p, VerdictKind.AT_MOST_ONE_GENERIC, tuple(evidence), (), tuple(notes))
