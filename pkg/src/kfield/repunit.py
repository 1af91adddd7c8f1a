"""Arithmetic of base-q repunits Q^f = (q^f - 1)/(q - 1) = 1 + q + ... + q^(f-1).

Everything here is exact big-integer arithmetic.  Factorization is
deterministic: trial division by all primes below 10**6, then a
Miller-Rabin test (deterministic below ``MR_DETERMINISTIC_BOUND``, BPSW
above it), then Brent's variant of Pollard rho with the fixed polynomial
x^2 + c, start value 2 and c = 1, 2, 3, ... tried in order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache
from itertools import combinations

from .errors import ZeroArgument

TRIAL_BOUND = 10**6

# Miller-Rabin with the first 13 prime bases is exact below this bound.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Repunit:
    q: int
    f: int
    value: int

    def __post_init__(self):
        if self.value * (self.q - 1) != self.q**self.f - 1:
            raise ValueError("value is not (q^f - 1)/(q - 1)")


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs.

    ``probable`` is set when some factor above the deterministic
    Miller-Rabin range was certified only by BPSW.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    probable: bool = False

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)


def repunit_value(q: int, f: int) -> int:
    """Q^f, computed by the geometric sum and cross-checked by division."""
    if q < 2 or f < 1:
        raise ValueError(f"need q >= 2 and f >= 1, got q={q}, f={f}")
    total, power = 0, 1
    for _ in range(f):
        total += power
        power *= q
    quotient, rem = divmod(q**f - 1, q - 1)
    assert rem == 0 and quotient == total
    return total


def repunit(q: int, f: int) -> Repunit:
    return Repunit(q, f, repunit_value(q, f))


def valuation(prime: int, x: int) -> int:
    """Largest nu with prime**nu dividing x."""
    if x == 0:
        raise ZeroArgument("valuation of 0 is infinite")
    x = abs(x)
    nu = 0
    while x % prime == 0:
        x //= prime
        nu += 1
    return nu


def base_digits(e: int, base: int) -> list[int]:
    """Digits of e in the given base, least significant first."""
    digits = []
    while e:
        e, d = divmod(e, base)
        digits.append(d)
    return digits


def legendre_valuation(prime: int, e: int) -> int:
    """v_prime(e!) from the base-prime digits a_k of e.

    Uses v(e!) = sum_k (prime^k - 1) * a_k / (prime - 1), which equals
    (e - digit_sum(e)) / (prime - 1).
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    digits = base_digits(e, prime)
    numerator = sum((prime**k - 1) * a for k, a in enumerate(digits))
    v, rem = divmod(numerator, prime - 1)
    assert rem == 0
    return v


# -- primality --------------------------------------------------------------


@cache
def small_primes(bound: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return tuple(i for i in range(bound) if sieve[i])


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def halve(x):
        return (x + n if x % 2 else x) // 2 % n

    U, V, Qk = 0, 2, 1  # U_0, V_0, Q^0
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = halve(P * U + V), halve(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Exact below MR_DETERMINISTIC_BOUND; BPSW (probable) above it."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, b) for b in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


# -- factorization -------------------------------------------------------------


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard rho failed on {n}")


def _split_large(n: int, out: dict[int, int]) -> bool:
    """Factor n (no prime factors below TRIAL_BOUND) into out; return probable flag."""
    if n == 1:
        return False
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return n >= MR_DETERMINISTIC_BOUND
    d = _pollard_brent(n)
    a = _split_large(d, out)
    b = _split_large(n // d, out)
    return a or b


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    m = n
    out: dict[int, int] = {}
    if m > 1 and not is_prime(m):
        for p in small_primes():
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out[p] = e
                if m == 1 or is_prime(m):
                    break
    probable = _split_large(m, out)
    return Factorization(n, tuple(sorted(out.items())), probable)


def prime_support(x: int) -> frozenset[int]:
    """Set of primes dividing x; empty for x = 1."""
    if x < 1:
        raise ValueError("prime_support needs a positive integer")
    return frozenset(factorize(x).primes)


# -- the repunit identities -------------------------------------------------------


@dataclass(frozen=True)
class GcdCheck:
    lhs: int
    rhs: int
    equal: bool


def gcd_identity_check(q: int, f1: int, f2: int) -> GcdCheck:
    """gcd(Q^f1, Q^f2) against Q^gcd(f1, f2)."""
    lhs = math.gcd(repunit_value(q, f1), repunit_value(q, f2))
    rhs = repunit_value(q, math.gcd(f1, f2))
    return GcdCheck(lhs, rhs, lhs == rhs)


def congruence_check(q: int, f: int) -> bool:
    """Q^f == f (mod q - 1)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    return (repunit_value(q, f) - f) % (q - 1) == 0


def support_lemma_sweep(q_max: int, f_max: int) -> list[tuple[int, int, int]]:
    """All (q, f1, f2) with f1 < f2 whose repunits share a prime support.

    Covers 2 <= q <= q_max and 1 <= f1 < f2 <= f_max.  Expected result: [].
    """
    found = []
    for q in range(2, q_max + 1):
        supports = [prime_support(repunit_value(q, f)) for f in range(1, f_max + 1)]
        for (i, s1), (j, s2) in combinations(enumerate(supports, start=1), 2):
            if s1 == s2:
                found.append((q, i, j))
    return sorted(found)
