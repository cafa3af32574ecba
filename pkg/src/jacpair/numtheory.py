"""Primality, degree-set membership and the bounded searches for L.

The searches scan L upward from ``L_min + 1`` so the returned witness is the
smallest admissible one.  Existence is guaranteed by Dirichlet-type theorems
but no bound is known, hence the explicit ``L_max`` cap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .errors import NoWitness, Overflow, PreconditionViolated, SearchExhausted

__all__ = [
    "DEFAULT_L_MAX",
    "DegreeSet",
    "LemmaWitness",
    "classify",
    "find_L",
    "find_prime_in_progression",
    "is_prime",
    "lemma_obstructed",
    "next_prime_above",
]

DEFAULT_L_MAX = 10**7

_U64 = 1 << 64
# Deterministic for every n < 3.3e24 (Sorenson & Webster), so for all of u64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = _MR_BASES


def is_prime(t: int) -> bool:
    """Deterministic Miller-Rabin for ``0 <= t < 2**64``."""
    if t < 0:
        raise ValueError("is_prime expects a natural number")
    if t >= _U64:
        raise Overflow(f"{t} does not fit in 64 bits")
    if t < 2:
        return False
    for sp in _SMALL_PRIMES:
        if t % sp == 0:
            return t == sp
    d, s = t - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        z = pow(a, d, t)
        if z == 1 or z == t - 1:
            continue
        for _ in range(s - 1):
            z = z * z % t
            if z == t - 1:
                break
        else:
            return False
    return True


def _is_semiprime(t: int) -> bool:
    if t < 4 or is_prime(t):
        return False
    f = 2
    while f * f * f <= t:
        if t % f == 0:
            return is_prime(t // f)
        f += 1 if f == 2 else 2
    # no factor up to the cube root: t is a product of at most two primes
    return True


class DegreeSet(enum.Enum):
    ONE_8_P_2P = "{1,8} u P u 2P"
    ONE_4_P = "{1,4} u P"
    P_SET = "P"
    P2_SET = "P^2"
    TWO_P = "2P"
    FOUR_P = "4P"


def _in_multiple_of_prime(t: int, k: int) -> bool:
    return t > 0 and t % k == 0 and is_prime(t // k)


def classify(t: int, which: DegreeSet) -> bool:
    """Exact membership of ``t`` in one of the degree sets."""
    if t < 0:
        raise ValueError("degrees are natural numbers")
    if which is DegreeSet.P_SET:
        return is_prime(t)
    if which is DegreeSet.TWO_P:
        return _in_multiple_of_prime(t, 2)
    if which is DegreeSet.FOUR_P:
        return _in_multiple_of_prime(t, 4)
    if which is DegreeSet.P2_SET:
        return _is_semiprime(t)
    if which is DegreeSet.ONE_4_P:
        return t in (1, 4) or is_prime(t)
    if which is DegreeSet.ONE_8_P_2P:
        return t in (1, 8) or is_prime(t) or _in_multiple_of_prime(t, 2)
    raise ValueError(f"unknown degree set {which!r}")


@dataclass(frozen=True)
class LemmaWitness:
    """An L making ``max(a + L*b, c + L*d)`` prime with both values coprime to eps."""

    L: int
    valA: int
    valC: int
    prime_max: int
    eps: int

    def verify(self) -> bool:
        return (
            max(self.valA, self.valC) == self.prime_max
            and is_prime(self.prime_max)
            and gcd(self.eps, self.valA) == 1
            and gcd(self.eps, self.valC) == 1
        )


def _check_window(L_min: int, L_max: int):
    if L_min < 0:
        raise PreconditionViolated("L_min must be >= 0")
    if L_min >= L_max:
        raise PreconditionViolated(f"empty search window ({L_min}, {L_max}]")


def lemma_obstructed(a: int, b: int, c: int, d: int, eps: int) -> bool:
    """True when no L makes both ``a + L*b`` and ``c + L*d`` coprime to ``eps``.

    With b and d odd and a + c odd the two values always have opposite
    parity, so an even eps divides into one of them.  This is the only
    obstruction: an odd prime l | eps forbids at most two of its l >= 3
    residues, and Dirichlet supplies primes in any surviving class.
    """
    return eps % 2 == 0 and b % 2 == 1 and d % 2 == 1 and (a + c) % 2 == 1


def find_L(a: int, b: int, c: int, d: int, eps: int,
           L_min: int = 0, L_max: int = DEFAULT_L_MAX) -> LemmaWitness:
    """Smallest ``L_min < L <= L_max`` satisfying both conditions of the lemma.

    Raises NoWitness up front when :func:`lemma_obstructed` holds.
    """
    if min(a, b, c, d) < 0 or b < 1 or d < 1 or eps < 1:
        raise PreconditionViolated(f"need a,c >= 0 and b,d,eps >= 1, got {(a, b, c, d, eps)}")
    if gcd(a, b) != 1 or gcd(c, d) != 1:
        raise PreconditionViolated(f"progressions must be coprime: gcd({a},{b}), gcd({c},{d})")
    _check_window(L_min, L_max)
    if lemma_obstructed(a, b, c, d, eps):
        raise NoWitness(f"{a}+L*{b} and {c}+L*{d} have opposite parity for every L, "
                        f"so one of them shares the factor 2 with eps={eps}")
    for L in range(L_min + 1, L_max + 1):
        va, vc = a + L * b, c + L * d
        if gcd(eps, va) != 1 or gcd(eps, vc) != 1:
            continue
        top = max(va, vc)
        if is_prime(top):
            return LemmaWitness(L=L, valA=va, valC=vc, prime_max=top, eps=eps)
    raise SearchExhausted(L_max, "lemma witness")


def find_prime_in_progression(a: int, b: int, L_min: int = 0,
                              L_max: int = DEFAULT_L_MAX) -> int:
    """Smallest ``L_min < L <= L_max`` with ``a + L*b`` prime."""
    if a < 0 or b < 1:
        raise PreconditionViolated(f"need a >= 0 and b >= 1, got {(a, b)}")
    if gcd(a, b) != 1:
        raise PreconditionViolated(f"gcd({a}, {b}) != 1")
    _check_window(L_min, L_max)
    for L in range(L_min + 1, L_max + 1):
        if is_prime(a + L * b):
            return L
    raise SearchExhausted(L_max, "prime in progression")


def next_prime_above(L_min: int) -> int:
    """Smallest prime strictly greater than ``L_min``."""
    if L_min >= 1 << 63:
        raise Overflow(f"{L_min} is too large")
    t = max(L_min + 1, 2)
    while not is_prime(t):
        t += 1
    return t
