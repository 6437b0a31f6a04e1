"""Certify surjectivity of mod-ell Galois representations from Frobenius data.

For odd ``ell >= 5`` a Frobenius element with trace ``t`` and determinant
``d`` can prove that the image lies in no conjugate of a maximal proper
subgroup class of GL_2(F_ell):

========================  ==============================================
obstruction eliminated    witness condition on (t, d) mod ell
========================  ==============================================
Borel                     t^2 - 4d is a nonsquare
split Cartan normalizer   t^2 - 4d is a nonsquare and t != 0
nonsplit Cartan normal.   t^2 - 4d is a nonzero square and t != 0
exceptional (A4/S4/A5)    u = t^2/d not in {0,1,2,4}, u^2 - 3u + 1 != 0
========================  ==============================================

Together with determinants generating (Z/ell)^x this forces the image to be
all of GL_2(F_ell). ``ell = 2`` and ``ell = 3`` are decided from the Galois
groups of the 2- and 3-division polynomials instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import mpmath

from .arith import SquareClass, factorize, is_prime, multiplicative_order, square_class_mod
from .curve import CurveProfile, three_division_quartic, two_division_cubic
from .reduction import TraceTable

__all__ = [
    "CMCurveError",
    "CertifyOutcome",
    "ElementClassification",
    "FrobeniusClassModL",
    "Mode",
    "OBSTRUCTIONS",
    "ObstructionLedger",
    "Status",
    "audit_ledger",
    "certify",
    "classify_element",
    "excludes",
    "mod2_surjective",
    "mod3_surjective",
    "update_ledger",
]

SMBPR_THRESHOLD = 37
OBSTRUCTIONS = ("borel", "split", "nonsplit", "exceptional", "det")


class CMCurveError(ValueError):
    """The certifier only applies to curves without complex multiplication."""


class Mode(enum.Enum):
    FULL = "full"
    SMBPR = "smbpr"


class Status(enum.Enum):
    CERTIFIED = "certified"
    INCONCLUSIVE = "unresolved"
    SMALL_PRIME = "small_prime"


@dataclass(frozen=True)
class FrobeniusClassModL:
    p: int
    t: int
    d: int

    @classmethod
    def from_trace(cls, p: int, ap: int, ell: int) -> "FrobeniusClassModL":
        return cls(p, ap % ell, p % ell)


@dataclass(frozen=True)
class ElementClassification:
    disc_class: SquareClass
    trace_zero: bool
    u: int


def classify_element(t: int, d: int, ell: int) -> ElementClassification:
    if d % ell == 0:
        raise ValueError("determinant must be a unit mod ell (skip p = ell)")
    t, d = t % ell, d % ell
    u = t * t * pow(d, -1, ell) % ell
    return ElementClassification(square_class_mod(t * t - 4 * d, ell), t == 0, u)


def excludes(obstruction: str, c: ElementClassification, ell: int) -> bool:
    """Whether an element with classification ``c`` rules out ``obstruction``."""
    if obstruction == "borel":
        return c.disc_class is SquareClass.NONSQUARE
    if obstruction == "split":
        return c.disc_class is SquareClass.NONSQUARE and not c.trace_zero
    if obstruction == "nonsplit":
        return c.disc_class is SquareClass.SQUARE and not c.trace_zero
    if obstruction == "exceptional":
        return c.u not in (0, 1, 2, 4 % ell) and (c.u * c.u - 3 * c.u + 1) % ell != 0
    raise ValueError(f"unknown obstruction {obstruction!r}")


@lru_cache(maxsize=4096)
def _unit_group_factors(ell: int) -> dict[int, int]:
    return factorize(ell - 1) if ell > 2 else {}


@dataclass(frozen=True)
class ObstructionLedger:
    ell: int
    borel: int | None = None
    split: int | None = None
    nonsplit: int | None = None
    exceptional: int | None = None
    det_order: int = 1
    det_witnesses: tuple[int, ...] = ()

    @property
    def det_full(self) -> bool:
        return self.det_order == self.ell - 1

    def missing(self) -> list[str]:
        out = [k for k in OBSTRUCTIONS[:4] if getattr(self, k) is None]
        if not self.det_full:
            out.append("det")
        return out

    @property
    def complete(self) -> bool:
        return not self.missing()


def update_ledger(ledger: ObstructionLedger, datum: FrobeniusClassModL, ell: int) -> ObstructionLedger:
    if ell != ledger.ell or ell < 3 or not is_prime(ell):
        raise ValueError(f"ledger for ell = {ledger.ell} cannot take ell = {ell}")
    if datum.p == ell or datum.d % ell == 0:
        raise ValueError(f"p = {datum.p} must differ from ell = {ell}")
    c = classify_element(datum.t, datum.d, ell)
    changes = {}
    for name in OBSTRUCTIONS[:4]:
        if getattr(ledger, name) is None and excludes(name, c, ell):
            changes[name] = datum.p
    if not ledger.det_full:
        order = math.lcm(ledger.det_order,
                         multiplicative_order(datum.d, ell, _unit_group_factors(ell)))
        if order != ledger.det_order:
            changes["det_order"] = order
            changes["det_witnesses"] = ledger.det_witnesses + (datum.p,)
    return replace(ledger, **changes) if changes else ledger


def audit_ledger(ledger: ObstructionLedger, traces: dict[int, int]) -> bool:
    """Recompute every stored witness from scratch; ``traces`` maps p -> a_p."""
    ell = ledger.ell
    for name in OBSTRUCTIONS[:4]:
        p = getattr(ledger, name)
        if p is not None and not excludes(name, classify_element(traces[p], p, ell), ell):
            return False
    order = 1
    for p in ledger.det_witnesses:
        order = math.lcm(order, multiplicative_order(p, ell))
    return order == ledger.det_order


# --- ell = 2, 3 via division polynomials ---


def _eval(coeffs, x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _has_integer_root(coeffs) -> bool:
    """Integer-root test for a monic integer polynomial with distinct roots."""
    if coeffs[-1] == 0:
        return True
    digits = max(len(str(abs(c))) for c in coeffs)
    with mpmath.workdps(2 * digits + 30):
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * digits + 60)
        cands = set()
        for z in roots:
            re = mpmath.re(z)
            cands.update((int(mpmath.floor(re)), int(mpmath.ceil(re))))
    return any(_eval(coeffs, r) == 0 for r in cands)


def _cubic_disc(p: int, q: int, r: int) -> int:
    # x^3 + p x^2 + q x + r
    return p * p * q * q - 4 * q**3 - 4 * p**3 * r - 27 * r * r + 18 * p * q * r


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def mod2_surjective(profile: CurveProfile) -> bool:
    """GL_2(F_2) = S_3: surjective iff the 2-division cubic has Galois group S_3."""
    _, b2, b4x2, b6 = two_division_cubic(profile.curve)
    # x = X/4 makes 4x^3 + b2 x^2 + 2b4 x + b6 monic and integral
    monic = (1, b2, 4 * b4x2, 16 * b6)
    if _has_integer_root(monic):
        return False
    return not _is_square(_cubic_disc(*monic[1:]))


def mod3_surjective(profile: CurveProfile) -> bool:
    """Surjective iff psi_3 has Galois group S_4 (the image in PGL_2(F_3) = S_4)."""
    _, b2, b4x3, b6x3, b8 = three_division_quartic(profile.curve)
    # x = X/3 makes psi_3 monic and integral
    a, b, c, d = b2, 3 * b4x3, 9 * b6x3, 27 * b8
    if _has_integer_root((1, a, b, c, d)):
        return False
    res = (1, -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c))
    if _has_integer_root(res):
        return False
    return not _is_square(_cubic_disc(*res[1:]))


@dataclass(frozen=True)
class CertifyOutcome:
    ell: int
    status: Status
    pmax: int
    mode: Mode
    ledger: ObstructionLedger | None = None
    missing: tuple[str, ...] = ()
    method: str = "frobenius"
    special_result: bool | None = None
    scanned_to: int = 0

    @property
    def certified(self) -> bool:
        if self.status is Status.SMALL_PRIME:
            return bool(self.special_result)
        return self.status is Status.CERTIFIED

    @property
    def label(self) -> str:
        if self.status is Status.SMALL_PRIME:
            return "certified" if self.special_result else "nonsurjective"
        return self.status.value

    def witnesses(self) -> dict:
        lg = self.ledger
        if lg is None:
            return {k: None for k in OBSTRUCTIONS}
        return {
            "borel": lg.borel,
            "split": lg.split,
            "nonsplit": lg.nonsplit,
            "exceptional": lg.exceptional,
            "det": list(lg.det_witnesses) if lg.det_full else None,
        }


def certify(profile: CurveProfile, ell: int, pmax: int = 10**5, mode: Mode = Mode.FULL,
            traces: TraceTable | None = None) -> CertifyOutcome:
    """Try to prove that the mod-``ell`` representation is surjective.

    Scans good primes ``p <= pmax`` (``p != ell``) in increasing order and
    stops as soon as every obstruction is eliminated. In SMBPR mode and for
    ``ell > 37`` only the nonsplit-normalizer obstruction can occur, so one
    witness for it suffices.
    """
    if profile.cm:
        raise CMCurveError("curve has complex multiplication; the certifier assumes non-CM")
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    mode = Mode(mode)
    if ell == 2:
        return CertifyOutcome(ell, Status.SMALL_PRIME, pmax, mode,
                              method="two_division_cubic", special_result=mod2_surjective(profile))
    if ell == 3:
        return CertifyOutcome(ell, Status.SMALL_PRIME, pmax, mode,
                              method="three_division_quartic", special_result=mod3_surjective(profile))

    traces = traces or TraceTable(profile)
    fast = mode is Mode.SMBPR and ell > SMBPR_THRESHOLD
    ledger = ObstructionLedger(ell)
    last = 0
    for p, t in traces.iter_upto(pmax):
        if p == ell:
            continue
        last = p
        ledger = update_ledger(ledger, FrobeniusClassModL.from_trace(p, t, ell), ell)
        if (fast and ledger.nonsplit is not None) or ledger.complete:
            return CertifyOutcome(ell, Status.CERTIFIED, pmax, mode, ledger,
                                  method="smbpr" if fast else "frobenius", scanned_to=p)
    missing = ("nonsplit",) if fast else tuple(ledger.missing())
    return CertifyOutcome(ell, Status.INCONCLUSIVE, pmax, mode, ledger, missing,
                          method="smbpr" if fast else "frobenius", scanned_to=last)
