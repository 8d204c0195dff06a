"""Exact integer arithmetic: square roots, primality, factoring, Fibonacci/Lucas.

Everything here works on Python ints and never touches floating point.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Optional

from .errors import IncompleteFactorization

# Miller-Rabin with these bases is exact for every n below this bound.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_LIMIT = 3317044064679887385961981
RANDOM_ROUNDS = 40


# --- square roots ---------------------------------------------------------

def isqrt(n: int) -> int:
    """Largest r with r*r <= n, by integer Newton iteration."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)  # x >= sqrt(n)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    if not x * x <= n < (x + 1) * (x + 1):
        raise ArithmeticError(f"isqrt failed to converge for {n}")
    return x


def _residues(m: int) -> frozenset:
    return frozenset(i * i % m for i in range(m))


_QR_FILTERS = tuple((m, _residues(m)) for m in (64, 63, 65, 11))


def is_square(n: int) -> Optional[int]:
    """Return r with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    for m, residues in _QR_FILTERS:
        if n % m not in residues:
            return None
    r = isqrt(n)
    return r if r * r == n else None


# --- primality ------------------------------------------------------------

@lru_cache(maxsize=4)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime_deterministic(n: int) -> bool:
    """True when is_prime(n) is exact rather than probabilistic."""
    return n < DETERMINISTIC_LIMIT


def is_prime(n: int, seed: Optional[int] = None) -> bool:
    """Primality test.

    Exact below DETERMINISTIC_LIMIT. Above it, the fixed bases are followed by
    RANDOM_ROUNDS random bases drawn from a generator seeded with ``seed`` (or
    with n itself when no seed is given), so results are reproducible.
    """
    if n < 2:
        return False
    for q in DETERMINISTIC_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in DETERMINISTIC_BASES):
        return False
    if n < DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n if seed is None else seed)
    return all(
        _strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
        for _ in range(RANDOM_ROUNDS)
    )


# --- factorization --------------------------------------------------------

@dataclass(frozen=True)
class Budget:
    """How hard factorize() tries before giving up."""

    trial_limit: int = 10**6
    rho_iterations: int = 200_000
    rho_attempts: int = 6


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Factorization:
    """Prime powers in increasing order.

    ``cofactor`` is the part that could not be split within budget (1 when
    the factorization is complete); it is composite or of unknown status.
    """

    n: int
    prime_powers: tuple[tuple[int, int], ...]
    cofactor: int = 1
    probabilistic: bool = False

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        return prod(p**e for p, e in self.prime_powers) * self.cofactor


def _brent_rho(n: int, c: int, max_iter: int) -> Optional[int]:
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    f = lambda v: (v * v + c) % n  # noqa: E731
    done = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = f(y)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = f(y)
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += 128
        done += r
        r *= 2
        if done > max_iter and g == 1:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = f(ys)
            g = gcd(abs(x - ys), n)
    return g if 1 < g < n else None


def _split(n: int, budget: Budget) -> Optional[int]:
    if n % 2 == 0:
        return 2
    root = is_square(n)
    if root is not None:
        return root
    for c in range(1, budget.rho_attempts + 1):
        d = _brent_rho(n, c, budget.rho_iterations)
        if d is not None:
            return d
    return None


def factorize(n: int, budget: Budget = DEFAULT_BUDGET) -> Factorization:
    """Trial division up to budget.trial_limit, then Pollard-Brent rho.

    Never loops forever: whatever rho cannot split inside its iteration cap
    ends up in ``cofactor``.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    counts: Counter[int] = Counter()
    rest = n
    exhausted = True
    for q in primes_up_to(budget.trial_limit):
        if q * q > rest:
            exhausted = False
            break
        while rest % q == 0:
            rest //= q
            counts[q] += 1
    unresolved = 1
    probabilistic = False
    if rest > 1 and not exhausted:
        counts[rest] += 1
    elif rest > 1:
        stack = [rest]
        while stack:
            m = stack.pop()
            if is_prime(m):
                counts[m] += 1
                probabilistic |= not is_prime_deterministic(m)
                continue
            d = _split(m, budget)
            if d is None:
                unresolved *= m
            else:
                stack.extend((d, m // d))
    return Factorization(
        n=n,
        prime_powers=tuple(sorted(counts.items())),
        cofactor=unresolved,
        probabilistic=probabilistic,
    )


@dataclass(frozen=True)
class SquareDecomposition:
    """n = squarefree_part * root**2 with squarefree_part squarefree."""

    squarefree_part: int
    root: int

    @property
    def value(self) -> int:
        return self.squarefree_part * self.root**2


def squarefree_decompose(n: int, budget: Budget = DEFAULT_BUDGET) -> SquareDecomposition:
    fac = factorize(n, budget)
    if not fac.complete:
        raise IncompleteFactorization(n, fac.cofactor)
    c = prod(p for p, e in fac.prime_powers if e % 2)
    x = prod(p ** (e // 2) for p, e in fac.prime_powers)
    return SquareDecomposition(c, x)


# --- Fibonacci and Lucas ----------------------------------------------------

def _fib_pair(k: int) -> tuple[int, int]:
    # (F_k, F_{k+1}) by fast doubling
    if k == 0:
        return 0, 1
    a, b = _fib_pair(k >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if k & 1 else (c, d)


def fibonacci(k: int) -> int:
    if k < 0:
        raise ValueError("Fibonacci index must be >= 0")
    return _fib_pair(k)[0]


def lucas(k: int) -> int:
    if k < 0:
        raise ValueError("Lucas index must be >= 0")
    f, g = _fib_pair(k)
    return 2 * g - f


def fibonacci_index(m: int) -> Optional[int]:
    """Smallest k >= 2 with F_k == m, or None.

    F_1 = F_2 = 1, so m = 1 maps to k = 2.
    """
    if m < 1:
        return None
    a, b, k = 1, 2, 2
    while a < m:
        a, b = b, a + b
        k += 1
    return k if a == m else None


def lucas_identity_holds(k: int, eps: int) -> bool:
    """Check 4*F_k - F_{k-2*eps} == L_{k+eps}."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if k < 2 or k - 2 * eps < 0:
        raise ValueError(f"identity undefined for k={k}, eps={eps}")
    return 4 * fibonacci(k) - fibonacci(k - 2 * eps) == lucas(k + eps)
