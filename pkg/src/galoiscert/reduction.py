"""Frobenius traces a_p of good reductions, with an on-disk cache."""

from __future__ import annotations

import enum
import hashlib
import logging
import math
import os
import random
import tempfile
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .arith import factorize, primes_up_to, sqrt_mod
from .curve import CurveProfile

__all__ = [
    "AmbiguousOrderError",
    "BadReductionError",
    "Strategy",
    "TraceCache",
    "TraceRecord",
    "TraceTable",
    "ap",
    "ap_bsgs",
    "ap_naive",
    "batch_traces",
    "good_reduction",
]

log = logging.getLogger(__name__)

NAIVE_CUTOFF = 1 << 20
FALLBACK_CUTOFF = 1 << 26
BSGS_MAX_POINTS = 40
_CHUNK = 1 << 22


class Strategy(enum.Enum):
    AUTO = "auto"
    NAIVE = "naive"
    BSGS = "bsgs"


class BadReductionError(ValueError):
    pass


class AmbiguousOrderError(ArithmeticError):
    """BSGS could not pin down #E(F_p) and p is too large for naive counting."""


@dataclass(frozen=True, order=True)
class TraceRecord:
    p: int
    ap: int

    def __post_init__(self):
        if self.ap * self.ap > 4 * self.p:
            raise AssertionError(f"Hasse bound violated: a_{self.p} = {self.ap}")


def good_reduction(profile: CurveProfile, p: int) -> bool:
    return profile.delta_min % p != 0


def _count_p2(coeffs) -> int:
    a1, a2, a3, a4, a6 = coeffs
    n = 1
    for x in range(2):
        for y in range(2):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                n += 1
    return n


def ap_naive(profile: CurveProfile, p: int) -> int:
    """a_p by summing quadratic-character values of 4x^3 + b2x^2 + 2b4x + b6."""
    if p == 2:
        return 3 - _count_p2(profile.curve.coefficients)
    inv = profile.invariants
    c3, c2, c1, c0 = 4 % p, inv.b2 % p, (2 * inv.b4) % p, inv.b6 % p
    chi = np.full(p, -1, dtype=np.int8)
    for lo in range(0, p, _CHUNK):
        x = np.arange(lo, min(lo + _CHUNK, p), dtype=np.int64)
        chi[x * x % p] = 1
    chi[0] = 0
    total = 0
    for lo in range(0, p, _CHUNK):
        x = np.arange(lo, min(lo + _CHUNK, p), dtype=np.int64)
        g = (c3 * x + c2) % p
        g = (g * x + c1) % p
        g = (g * x + c0) % p
        total += int(chi[g].sum(dtype=np.int64))
    return -total


# --- group law on y^2 = x^3 + A x + B over F_p; None is the identity ---


def _add(P, Q, A, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def _neg(P, p):
    return None if P is None else (P[0], (-P[1]) % p)


def _mul(k, P, A, p):
    if k < 0:
        return _mul(-k, _neg(P, p), A, p)
    R = None
    while k:
        if k & 1:
            R = _add(R, P, A, p)
        P = _add(P, P, A, p)
        k >>= 1
    return R


def _point_order(P, multiple, A, p):
    n = multiple
    for q in factorize(multiple):
        while n % q == 0 and _mul(n // q, P, A, p) is None:
            n //= q
    return n


def _annihilator_in_interval(P, lo, width, A, p):
    """Some N in [lo, lo + width] with N*P = O, by baby-step giant-step."""
    m = math.isqrt(width) + 1
    baby = {}
    R = None
    for j in range(m):
        baby.setdefault(R, j)
        R = _add(R, P, A, p)
    step = _neg(R, p)  # -m*P
    G = _neg(_mul(lo, P, A, p), p)
    for i in range(width // m + 2):
        j = baby.get(G)
        if j is not None:
            k = i * m + j
            if k <= width:
                return lo + k
        G = _add(G, step, A, p)
    raise ArithmeticError("no annihilator found in the Hasse interval")


def ap_bsgs(profile: CurveProfile, p: int, rng: random.Random | None = None) -> int | None:
    """a_p from the group order, or None if 40 random points leave it ambiguous."""
    if p < 5:
        raise ValueError("BSGS point counting needs p >= 5")
    inv = profile.invariants
    # y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic to the reduction for p > 3
    A, B = (-27 * inv.c4) % p, (-54 * inv.c6) % p
    rng = rng or random.Random(p)
    lo = p + 1 - math.isqrt(4 * p)
    hi = p + 1 + math.isqrt(4 * p)
    acc = 1
    for _ in range(BSGS_MAX_POINTS):
        while True:
            x = rng.randrange(p)
            rhs = (x * x * x + A * x + B) % p
            if rhs == 0 or pow(rhs, (p - 1) // 2, p) == 1:
                break
        P = (x, sqrt_mod(rhs, p))
        N = _annihilator_in_interval(P, lo, hi - lo, A, p)
        acc = math.lcm(acc, _point_order(P, N, A, p))
        first = -(-lo // acc) * acc
        if first + acc > hi:
            return p + 1 - first
    return None


def ap(profile: CurveProfile, p: int, strategy: Strategy = Strategy.AUTO) -> int:
    """Exact trace of Frobenius a_p = p + 1 - #E(F_p) at a good prime ``p``."""
    if not good_reduction(profile, p):
        raise BadReductionError(f"p = {p} divides the minimal discriminant")
    strategy = Strategy(strategy)
    if strategy is Strategy.AUTO:
        strategy = Strategy.NAIVE if p < NAIVE_CUTOFF else Strategy.BSGS
    if strategy is Strategy.NAIVE or p < 5:
        return ap_naive(profile, p)
    t = ap_bsgs(profile, p)
    if t is None:
        if p < FALLBACK_CUTOFF:
            log.debug("BSGS ambiguous at p=%d, falling back to naive count", p)
            return ap_naive(profile, p)
        raise AmbiguousOrderError(f"group order at p = {p} not determined by BSGS")
    return t


class TraceCache:
    """One text file per curve, named by the digest of its minimal model.

    Layout: ``curve a1,a2,a3,a4,a6`` header, ``p<TAB>ap`` lines in increasing
    ``p``, then ``sha256 <hex>`` over everything above it. Files that fail the
    checksum are ignored and rewritten.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path_for(self, profile: CurveProfile) -> Path:
        key = str(profile.curve).encode()
        return self.directory / hashlib.sha256(key).hexdigest()

    @staticmethod
    def _body(profile: CurveProfile, records) -> str:
        lines = [f"curve {profile.curve}"]
        lines += [f"{r.p}\t{r.ap}" for r in records]
        return "\n".join(lines) + "\n"

    def read(self, profile: CurveProfile) -> list[TraceRecord]:
        path = self.path_for(profile)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return []
        except OSError as exc:
            raise OSError(f"trace cache {path}: {exc}") from exc
        body, sep, trailer = text.rstrip("\n").rpartition("\n")
        body += "\n"
        digest = hashlib.sha256(body.encode()).hexdigest()
        lines = body.splitlines()
        if not sep or trailer != f"sha256 {digest}" or lines[0] != f"curve {profile.curve}":
            log.warning("discarding corrupt trace cache %s", path)
            return []
        records = []
        for line in lines[1:]:
            p, t = line.split("\t")
            records.append(TraceRecord(int(p), int(t)))
        return records

    def write(self, profile: CurveProfile, records) -> Path:
        path = self.path_for(profile)
        body = self._body(profile, records)
        digest = hashlib.sha256(body.encode()).hexdigest()
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-")
            with os.fdopen(fd, "w") as fh:
                fh.write(body + f"sha256 {digest}\n")
            os.replace(tmp, path)
        except OSError as exc:
            raise OSError(f"trace cache {path}: {exc}") from exc
        return path


class TraceTable:
    """Lazily extended table of a_p over the good primes of one curve."""

    def __init__(self, profile: CurveProfile, cache: TraceCache | None = None,
                 strategy: Strategy = Strategy.AUTO):
        self.profile = profile
        self.cache = cache
        self.strategy = strategy
        self._ps: list[int] = []
        self._aps: list[int] = []
        self._limit = 1
        if cache is not None:
            for r in cache.read(profile):
                self._ps.append(r.p)
                self._aps.append(r.ap)
            if self._ps:
                self._limit = self._ps[-1]

    @property
    def limit(self) -> int:
        return self._limit

    def extend(self, pmax: int) -> None:
        if pmax <= self._limit:
            return
        new = [
            p for p in primes_up_to(pmax)
            if p > self._limit and good_reduction(self.profile, p)
        ]
        for p in new:
            self._ps.append(p)
            self._aps.append(ap(self.profile, p, self.strategy))
        self._limit = pmax
        if self.cache is not None and new:
            self.cache.write(self.profile, self.records(pmax))

    def records(self, pmax: int) -> list[TraceRecord]:
        self.extend(pmax)
        k = bisect_right(self._ps, pmax)
        return [TraceRecord(p, t) for p, t in zip(self._ps[:k], self._aps[:k])]

    def iter_upto(self, pmax: int, chunk: int = 512):
        """Yield (p, a_p) in increasing p, extending the table on demand."""
        i = 0
        bound = min(pmax, max(chunk, 2))
        while True:
            self.extend(bound)
            while i < len(self._ps) and self._ps[i] <= bound:
                yield self._ps[i], self._aps[i]
                i += 1
            if bound >= pmax:
                return
            bound = min(pmax, 2 * bound)


def batch_traces(profile: CurveProfile, pmax: int, cache: TraceCache | None = None,
                 strategy: Strategy = Strategy.AUTO) -> list[TraceRecord]:
    """TraceRecords for all good primes ``p <= pmax``, increasing."""
    if pmax < 2:
        return []
    return TraceTable(profile, cache, strategy).records(pmax)
