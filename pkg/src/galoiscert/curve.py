"""Weierstrass models over Q: invariants, global minimal models, twists."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize, radical, squarefree_part

__all__ = [
    "CM_J_INVARIANTS",
    "CurveInvariants",
    "CurveProfile",
    "MinimalModel",
    "SingularCurveError",
    "WeierstrassCurve",
    "apply_transform",
    "conductor_radical",
    "invariants",
    "is_cm",
    "minimal_model",
    "parse_curve",
    "profile",
    "quadratic_twist",
    "three_division_quartic",
    "two_division_cubic",
]

# j-invariants of the 13 imaginary quadratic orders of class number one
CM_J_INVARIANTS: dict[int, int] = {
    -3: 0,
    -4: 1728,
    -7: -3375,
    -8: 8000,
    -11: -32768,
    -12: 54000,
    -16: 287496,
    -19: -884736,
    -27: -12288000,
    -28: 16581375,
    -43: -884736000,
    -67: -147197952000,
    -163: -262537412640768000,
}
_CM_J = frozenset(CM_J_INVARIANTS.values())


class SingularCurveError(ValueError):
    """Raised for Weierstrass equations with zero discriminant."""


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for v in self.coefficients:
            if not isinstance(v, int):
                raise TypeError("Weierstrass coefficients must be integers")
        if invariants(self, check=False).discriminant == 0:
            raise SingularCurveError(f"singular curve {self}")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coefficients)


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    discriminant: int
    j: Fraction


@dataclass(frozen=True)
class MinimalModel:
    curve: WeierstrassCurve
    transform: tuple[Fraction, Fraction, Fraction, Fraction]  # (u, r, s, t)
    discriminant: int


@dataclass(frozen=True)
class CurveProfile:
    minimal: MinimalModel
    invariants: CurveInvariants
    bad_primes: tuple[int, ...]
    conductor_radical: int
    cm: bool
    original: WeierstrassCurve = field(compare=False)

    @property
    def curve(self) -> WeierstrassCurve:
        return self.minimal.curve

    @property
    def delta_min(self) -> int:
        return self.minimal.discriminant


def parse_curve(text: str) -> WeierstrassCurve:
    """Parse ``"a1,a2,a3,a4,a6"`` (base-10 signed integers, whitespace ignored)."""
    parts = [s.strip() for s in text.strip().strip("[]").split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected 5 comma-separated coefficients, got {text!r}")
    try:
        coeffs = [int(s, 10) for s in parts]
    except ValueError:
        raise ValueError(f"non-integer coefficient in {text!r}") from None
    return WeierstrassCurve(*coeffs)


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def invariants(E: WeierstrassCurve, check: bool = True) -> CurveInvariants:
    b2, b4, b6, b8 = _b_invariants(*E.coefficients)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        if check:
            raise SingularCurveError(f"singular curve {E}")
        return CurveInvariants(b2, b4, b6, b8, c4, c6, 0, Fraction(0))
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, Fraction(c4**3, disc))


def apply_transform(E: WeierstrassCurve, u, r, s, t) -> tuple[Fraction, ...]:
    """Coefficients of the model obtained by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    a1, a2, a3, a4, a6 = (Fraction(a) for a in E.coefficients)
    u, r, s, t = (Fraction(v) for v in (u, r, s, t))
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    na3 = (a3 + r * a1 + 2 * t) / u**3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    return (na1, na2, na3, na4, na6)


def _kraus_ok(c4: int, c6: int) -> bool:
    # Kraus: (c4, c6) come from an integral model iff these local conditions hold
    if (c4**3 - c6 * c6) % 1728:
        return False
    if c6 % 27 == 0 or c6 % 3 != 0:
        ok3 = True
    else:
        ok3 = c6 % 9 != 0  # v3(c6) == 1
    if not ok3:
        return False
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def _model_from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    b4, rem4 = divmod(b2 * b2 - c4, 24)
    b6, rem6 = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    a3 = b6 % 2
    a4, rem_a4 = divmod(b4 - a1 * a3, 2)
    a6, rem_a6 = divmod(b6 - a3, 4)
    if rem4 or rem6 or rem_a4 or rem_a6:
        raise ArithmeticError(f"(c4, c6) = ({c4}, {c6}) admits no integral model")
    E = WeierstrassCurve(a1, a2, a3, a4, a6)
    inv = invariants(E)
    if (inv.c4, inv.c6) != (c4, c6):
        raise ArithmeticError("integral model reconstruction failed")
    return E


def _transform_between(E: WeierstrassCurve, F: WeierstrassCurve, u: int):
    a1, a2, a3, _, _ = E.coefficients
    s = Fraction(u * F.a1 - a1, 2)
    r = (u * u * F.a2 - a2 + s * a1 + s * s) / 3
    t = (u**3 * F.a3 - a3 - r * a1) / 2
    if apply_transform(E, u, r, s, t) != tuple(Fraction(a) for a in F.coefficients):
        raise ArithmeticError("could not recover the minimalizing transform")
    return (Fraction(u), r, s, t)


def minimal_model(E: WeierstrassCurve) -> MinimalModel:
    """Global minimal model (Laska-Kraus-Connell with Kraus's conditions at 2, 3).

    If the input is already minimal it is returned unchanged with the
    identity transform; otherwise the output is in reduced form
    (a1, a3 in {0, 1}, a2 in {-1, 0, 1}).
    """
    inv = invariants(E)
    c4, c6, disc = inv.c4, inv.c6, inv.discriminant
    g = math.gcd(c6 * c6, disc)
    u = 1
    for p, e in factorize(g).items() if g > 1 else ():
        d = e // 12
        while d > 0:
            q = p**d
            if c4 % q**4 == 0 and c6 % q**6 == 0:
                if p >= 5 or _kraus_ok(c4 // q**4, c6 // q**6):
                    break
            d -= 1
        u *= p**d
    # Kraus at 2 and 3 must hold jointly for the combined scaling
    if u > 1 and not _kraus_ok(c4 // u**4, c6 // u**6):
        raise ArithmeticError("inconsistent local minimalization")
    if u == 1:
        one, zero = Fraction(1), Fraction(0)
        return MinimalModel(E, (one, zero, zero, zero), disc)
    F = _model_from_c4c6(c4 // u**4, c6 // u**6)
    transform = _transform_between(E, F, u)
    return MinimalModel(F, transform, disc // u**12)


def conductor_radical(E: WeierstrassCurve) -> int:
    """rad(N_E): the product of primes dividing the minimal discriminant."""
    return radical(minimal_model(E).discriminant)


def is_cm(E: WeierstrassCurve) -> bool:
    j = invariants(E).j
    return j.denominator == 1 and j.numerator in _CM_J


def profile(E: WeierstrassCurve) -> CurveProfile:
    mm = minimal_model(E)
    bad = tuple(factorize(mm.discriminant))
    return CurveProfile(
        minimal=mm,
        invariants=invariants(mm.curve),
        bad_primes=bad,
        conductor_radical=math.prod(bad),
        cm=is_cm(E),
        original=E,
    )


def quadratic_twist(E: WeierstrassCurve, D: int) -> WeierstrassCurve:
    """A model of the quadratic twist E_D.

    With a1 = a3 = 0 this is y^2 = x^3 + a2 D x^2 + a4 D^2 x + a6 D^3;
    otherwise the short model y^2 = x^3 - 27 c4 D^2 x - 54 c6 D^3.
    """
    if D == 0 or squarefree_part(D) != D:
        raise ValueError(f"twist parameter {D} must be a nonzero squarefree integer")
    if E.a1 == 0 and E.a3 == 0:
        return WeierstrassCurve(0, E.a2 * D, 0, E.a4 * D * D, E.a6 * D**3)
    inv = invariants(E)
    return WeierstrassCurve(0, 0, 0, -27 * inv.c4 * D * D, -54 * inv.c6 * D**3)


def two_division_cubic(E: WeierstrassCurve) -> tuple[int, int, int, int]:
    """Coefficients (leading first) of 4x^3 + b2 x^2 + 2 b4 x + b6."""
    inv = invariants(E)
    return (4, inv.b2, 2 * inv.b4, inv.b6)


def three_division_quartic(E: WeierstrassCurve) -> tuple[int, int, int, int, int]:
    """Coefficients (leading first) of psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8."""
    inv = invariants(E)
    return (3, inv.b2, 3 * inv.b4, 3 * inv.b6, inv.b8)
