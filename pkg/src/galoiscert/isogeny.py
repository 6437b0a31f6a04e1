"""Least distinguishing primes between curves, checked against the isogeny bound."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .arith import iter_primes, radical, squarefree_part
from .bounds import BoundReport, isogeny_bound
from .curve import CurveProfile, WeierstrassCurve, profile, quadratic_twist
from .galois_image import CMCurveError
from .reduction import Strategy, ap

__all__ = ["DistinguishResult", "distinguishing_prime", "joint_radical", "twist_pair"]

log = logging.getLogger(__name__)

DEFAULT_PCAP = 10**8


@dataclass(frozen=True)
class DistinguishResult:
    p: int
    ap1: int
    ap2: int
    bound: BoundReport
    within_bound: bool


def joint_radical(prof1: CurveProfile, prof2: CurveProfile) -> int:
    """rad(2 N_1 N_2), read off the minimal discriminants."""
    return radical(2 * prof1.conductor_radical * prof2.conductor_radical)


def distinguishing_prime(prof1: CurveProfile, prof2: CurveProfile, pcap: int | None = None,
                         strategy: Strategy = Strategy.AUTO) -> DistinguishResult | None:
    """Least prime p <= pcap, good for both curves, with a_p(E1) != a_p(E2).

    ``pcap`` defaults to min(isogeny bound, 10**8). Returns None if no such
    prime exists up to the cap; that is "no witness found", not a proof of
    isogeny.
    """
    if prof1.cm or prof2.cm:
        log.warning("distinguishing_prime: CM curve supplied; the isogeny bound assumes non-CM")
    bound = isogeny_bound(joint_radical(prof1, prof2))
    if pcap is None:
        pcap = min(bound.integer_bound, DEFAULT_PCAP)
    bad = prof1.delta_min * prof2.delta_min
    for i, p in enumerate(iter_primes(pcap)):
        if bad % p == 0:
            continue
        if i and i % 100_000 == 0:
            log.info("distinguishing scan at p = %d", p)
        t1, t2 = ap(prof1, p, strategy), ap(prof2, p, strategy)
        if t1 != t2:
            return DistinguishResult(p, t1, t2, bound, p <= bound.integer_bound)
    return None


def twist_pair(E: WeierstrassCurve, D: int) -> tuple[CurveProfile, CurveProfile]:
    """Profiles of E and its quadratic twist E_D, which are never isogenous for D != 1."""
    if D in (0, 1) or squarefree_part(D) != D:
        raise ValueError(f"twist parameter must be squarefree and not 0 or 1, got {D}")
    prof = profile(E)
    if prof.cm:
        raise CMCurveError("twist pairs of CM curves are outside the theorem's hypotheses")
    twisted = profile(quadratic_twist(E, D))
    return prof, twisted
