"""Closed-form GRH-conditional bounds, evaluated with certified rounding.

Every real quantity is computed as an mpmath interval at >= 128 bits and its
endpoints are converted exactly to ``Fraction``; a reported ceiling is only
returned when both endpoints agree on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext

from .arith import is_prime, radical

__all__ = [
    "ADMITTED_CONSTANTS",
    "BoundReport",
    "ChebotarevParams",
    "UncertifiedCeilingError",
    "chebotarev_prime_bound",
    "discriminant_log_bounds",
    "group_order_bound",
    "isogeny_bound",
    "serre_bound",
    "verify_isogeny_constants",
]

DEFAULT_PRECISION = 128

# Bach-Sorenson (a, b, c): the generic set and the two improved sets used
# when bounding the least distinguishing prime.
ADMITTED_CONSTANTS = {
    "generic": ("4", "2.5", "5"),
    "log_disc_100_1000": ("1.755", "0", "5.7"),
    "log_disc_over_1000": ("1.257", "0", "7.3"),
}


class UncertifiedCeilingError(ArithmeticError):
    """The enclosing interval straddles an integer at the working precision."""


def _ctx(prec: int) -> MPIntervalContext:
    if prec < DEFAULT_PRECISION:
        raise ValueError(f"precision must be at least {DEFAULT_PRECISION} bits")
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def _endpoint(raw) -> Fraction:
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _enclosure(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return _endpoint(lo), _endpoint(hi)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class BoundReport:
    formula_id: str
    input_radical: int
    raw_lower: Fraction
    raw_upper: Fraction
    integer_bound: int
    precision_bits: int

    @property
    def raw_value(self) -> float:
        return float((self.raw_lower + self.raw_upper) / 2)

    def raw_string(self, digits: int = 30) -> str:
        """Decimal rendering of the enclosure midpoint (for reports)."""
        mid = (self.raw_lower + self.raw_upper) / 2
        whole = math.floor(mid)
        frac = mid - whole
        return f"{whole}.{math.floor(frac * 10**digits):0{digits}d}"

    def contains(self, value) -> bool:
        return self.raw_lower <= Fraction(value) <= self.raw_upper


def _report(formula_id: str, radical_in: int, x, prec: int) -> BoundReport:
    lo, hi = _enclosure(x)
    c_lo, c_hi = _ceil(lo), _ceil(hi)
    if c_lo != c_hi:
        raise UncertifiedCeilingError(
            f"{formula_id}: enclosure [{float(lo)}, {float(hi)}] straddles an integer")
    return BoundReport(formula_id, radical_in, lo, hi, c_hi, prec)


def _check_radical(r: int) -> None:
    if r < 2:
        raise ValueError(f"radical argument must be >= 2, got {r}")
    if radical(r) != r or r % 2:
        raise ValueError(f"{r} is not an even squarefree integer, i.e. not of the form rad(2N)")


def serre_bound(rad2NE: int, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """964 log rad(2 N_E) + 5760, with certified ceiling."""
    _check_radical(rad2NE)
    iv = _ctx(prec)
    return _report("serre", rad2NE, 964 * iv.log(rad2NE) + 5760, prec)


def isogeny_bound(rad2N1N2: int, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """(482 log rad(2 N_1 N_2) + 2880)^2, with certified ceiling."""
    _check_radical(rad2N1N2)
    iv = _ctx(prec)
    return _report("isogeny", rad2N1N2, (482 * iv.log(rad2N1N2) + 2880) ** 2, prec)


@dataclass(frozen=True)
class ChebotarevParams:
    a_const: str | int | float
    b_const: str | int | float
    c_const: str | int | float
    log_disc: str | int | float
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        for v in (self.a_const, self.b_const, self.c_const, self.log_disc):
            if Fraction(str(v)) < 0:
                raise ValueError("Chebotarev constants and log_disc must be nonnegative")

    @property
    def admitted(self) -> bool:
        consts = tuple(Fraction(str(v)) for v in (self.a_const, self.b_const, self.c_const))
        return any(consts == tuple(map(Fraction, s)) for s in ADMITTED_CONSTANTS.values())


def chebotarev_prime_bound(params: ChebotarevParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """(a log d_K + b [K:Q] + c)^2 for given constants and log-discriminant.

    All inputs are rational (decimal strings are read exactly, so ``"1.755"``
    is 1755/1000, not the nearest double) and the value is computed exactly.
    """
    _ctx(prec)
    a, b, c, L = (Fraction(str(v)) for v in
                  (params.a_const, params.b_const, params.c_const, params.log_disc))
    x = (a * L + b * params.degree + c) ** 2
    return BoundReport("chebotarev", 0, x, x, _ceil(x), prec)


def discriminant_log_bounds(degree: int, rad_dK: int,
                            prec: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Outward-rounded (lower, upper) bounds for log d_K of a Galois field.

    lower = (log 3 / 2) * degree, upper = (degree - 1) log rad(d_K) + degree log degree.
    """
    if degree < 2:
        raise ValueError("the discriminant bounds need a nontrivial extension (degree >= 2)")
    if rad_dK < 2:
        raise ValueError("rad(d_K) must be >= 2")
    iv = _ctx(prec)
    lower = iv.log(3) / 2 * degree
    upper = (degree - 1) * iv.log(rad_dK) + degree * iv.log(degree)
    return _enclosure(lower)[0], _enclosure(upper)[1]


def group_order_bound(ell: int, r: int) -> int:
    """(ell^(2 r^2) - 1) / (ell - 1), exactly."""
    if not is_prime(ell) or r < 1:
        raise ValueError("need a prime ell and r >= 1")
    return (ell ** (2 * r * r) - 1) // (ell - 1)


def _max_divisor_at_most(n: int, cap: int) -> int:
    return max(d for d in range(1, cap + 1) if n % d == 0)


def verify_isogeny_constants(prec: int = DEFAULT_PRECISION, n_max: int = 6) -> bool:
    """Re-derive the constants behind the isogeny bound; True iff every check passes.

    * (ell^(2r^2)-1)/(ell-1) = 255 at ell = r = 2;
    * no divisor of (6 * 16^(n-1))^2 = 2^(8n-6) * 3^2 lies in (192, 255], and
      192 itself divides it for every n >= 2 (brute force for n <= n_max; the
      divisor set below 256 is the same for all n >= 2 since 2^(8n-6) >= 2^10);
    * 2 * 192 = 384;
    * (4*100 + 2.5*384 + 5)^2 = 1863225 and (1.755*1000 + 0*384 + 5.7)^2 = 3100064.49 exactly;
    * (1.257 (383 log 2 + 384 log 384) + 7.3)^2 >= 3100064.49;
    * 1.257 * 383 <= 482 and 1.257 * 384 log 384 + 7.3 <= 2880;
    * 2 (482 x + 2880) = 964 x + 5760 as polynomials.
    """
    checks = []
    checks.append(group_order_bound(2, 2) == 255)

    cap = group_order_bound(2, 2)
    best = 0
    for n in range(1, n_max + 1):
        m = (6 * 16 ** (n - 1)) ** 2
        d = _max_divisor_at_most(m, cap)
        best = max(best, d)
        checks.append(d <= 192)
        if n >= 2:
            checks.append(d == 192)
    checks.append(best == 192)
    checks.append(2 * 192 == 384)

    F = Fraction
    checks.append((4 * 100 + F("2.5") * 384 + 5) ** 2 == 1863225)
    checks.append((F("1.755") * 1000 + 0 * 384 + F("5.7")) ** 2 == F("3100064.49"))

    iv = _ctx(prec)
    a, c = iv.mpf(1257) / 1000, iv.mpf(73) / 10
    tc3 = (a * (383 * iv.log(2) + 384 * iv.log(384)) + c) ** 2
    checks.append(_enclosure(tc3)[0] >= F("3100064.49"))
    checks.append(F("1.257") * 383 <= 482)
    const = a * 384 * iv.log(384) + c
    checks.append(_enclosure(const)[1] <= 2880)

    # polynomial identity: compare coefficient vectors
    checks.append((2 * 482, 2 * 2880) == (964, 5760))
    return all(checks)

