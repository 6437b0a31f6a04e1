"""Exact integer utilities: radicals, squarefree parts, quadratic symbols, primes."""

from __future__ import annotations

import enum
import math
import random
from functools import lru_cache

import numpy as np

__all__ = [
    "SquareClass",
    "factorize",
    "is_prime",
    "iter_primes",
    "kronecker",
    "multiplicative_order",
    "primes_between",
    "primes_up_to",
    "radical",
    "sqrt_mod",
    "square_class_mod",
    "squarefree_part",
]

_SEGMENT_THRESHOLD = 10**7
_SEGMENT_SIZE = 1 << 22
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 1 << 16


class SquareClass(enum.Enum):
    ZERO = "zero"
    SQUARE = "square"
    NONSQUARE = "nonsquare"


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_between(lo: int, hi: int) -> np.ndarray:
    """Primes in the half-open range [lo, hi), via a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    base = _simple_sieve(math.isqrt(hi - 1) + 1)
    out = []
    for start in range(lo, hi, _SEGMENT_SIZE):
        stop = min(start + _SEGMENT_SIZE, hi)
        flags = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            flags[first - start :: q] = False
        out.append(np.flatnonzero(flags).astype(np.int64) + start)
    return np.concatenate(out)


@lru_cache(maxsize=8)
def _cached_primes(limit: int) -> tuple[int, ...]:
    if limit <= _SEGMENT_THRESHOLD:
        arr = _simple_sieve(limit)
    else:
        arr = primes_between(2, limit + 1)
    return tuple(int(p) for p in arr)


def primes_up_to(x: int) -> tuple[int, ...]:
    """All primes ``<= x`` in increasing order, as an immutable tuple.

    Uses a plain sieve up to 10**7 and a segmented sieve beyond that, so
    memory stays bounded by the segment size plus the output.
    """
    if x < 2:
        return ()
    return _cached_primes(int(x))


def iter_primes(hi: int, lo: int = 2, segment: int = 1 << 20):
    """Lazily yield the primes in [lo, hi] in increasing order."""
    for start in range(max(lo, 2), hi + 1, segment):
        yield from (int(p) for p in primes_between(start, min(start + segment, hi + 1)))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24; overwhelming beyond)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        sub: dict[int, int] = {}
        _split(r, sub)
        for q, e in sub.items():
            out[q] = out.get(q, 0) + 2 * e
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    Trial division by sieved primes, then Miller-Rabin on the cofactor and
    Pollard-Brent if it is still composite.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for q in primes_up_to(_TRIAL_LIMIT):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out[q] = e
    if n > 1:
        _split(n, out)
    return dict(sorted(out.items()))


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``; ``radical(±1) == 1``."""
    if n == 0:
        raise ValueError("radical of 0 is undefined")
    return math.prod(factorize(n))


def squarefree_part(n: int) -> int:
    """The squarefree ``d`` with ``n == d * m**2``, carrying the sign of ``n``."""
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    d = math.prod(q for q, e in factorize(n).items() if e % 2)
    return d if n > 0 else -d


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D|p) for a prime ``p``.

    Odd ``p`` gives the Legendre symbol. At ``p == 2``: 0 for even ``D``,
    1 for ``D = ±1 mod 8``, -1 for ``D = ±3 mod 8``.
    """
    if not is_prime(p):
        raise ValueError(f"kronecker: {p} is not prime")
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    a, n = D % p, p
    if a == 0:
        return 0
    # binary Jacobi algorithm
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


def square_class_mod(a: int, ell: int) -> SquareClass:
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"square_class_mod: {ell} is not an odd prime")
    a %= ell
    if a == 0:
        return SquareClass.ZERO
    if pow(a, (ell - 1) // 2, ell) == 1:
        return SquareClass.SQUARE
    return SquareClass.NONSQUARE


def sqrt_mod(a: int, p: int) -> int:
    """A square root of ``a`` modulo an odd prime ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def multiplicative_order(a: int, p: int, group_factors: dict[int, int] | None = None) -> int:
    """Order of ``a`` in (Z/p)^x for prime ``p``; ``group_factors`` factors p - 1."""
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    if group_factors is None:
        group_factors = factorize(p - 1) if p > 2 else {}
    order = p - 1
    for q, e in group_factors.items():
        for _ in range(e):
            if pow(a, order // q, p) == 1:
                order //= q
            else:
                break
    return order
