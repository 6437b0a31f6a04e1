from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from galoiscert.arith import primes_up_to, radical
from galoiscert.bounds import (
    ChebotarevParams,
    chebotarev_prime_bound,
    discriminant_log_bounds,
    group_order_bound,
    isogeny_bound,
    serre_bound,
    verify_isogeny_constants,
)

even_radicals = st.lists(st.sampled_from(primes_up_to(200)[1:]), max_size=6, unique=True).map(
    lambda ps: 2 * int(sympy.prod(ps)))


def oracle(expr, dps=100):
    with mpmath.workdps(dps):
        return expr()


def test_serre_bound_example():
    rep = serre_bound(210)
    assert rep.integer_bound == 10915
    assert rep.raw_lower <= rep.raw_upper
    assert 10914.6 < rep.raw_value < 10914.7


def test_serre_bound_at_2():
    expected = oracle(lambda: 964 * mpmath.log(2) + 5760)
    assert serre_bound(2).integer_bound == 6429 == int(mpmath.ceil(expected))


def test_serre_bound_monotone():
    assert serre_bound(2310).raw_lower > serre_bound(210).raw_upper


@pytest.mark.parametrize("r, expected", [(2, 10330420), (210, 29782187)])
def test_isogeny_bound_values(r, expected):
    # frozen from a 100-digit evaluation of (482 log r + 2880)^2
    assert isogeny_bound(r).integer_bound == expected
    assert int(oracle(lambda: mpmath.ceil((482 * mpmath.log(r) + 2880) ** 2))) == expected


@pytest.mark.parametrize("bad", [1, 0, 3, 12, 105])
def test_bound_domain_errors(bad):
    with pytest.raises(ValueError):
        serre_bound(bad)
    with pytest.raises(ValueError):
        isogeny_bound(bad)


def test_precision_floor():
    with pytest.raises(ValueError):
        serre_bound(210, prec=64)


@settings(max_examples=100)
@given(even_radicals)
def test_isogeny_serre_identity(r):
    iso, ser = isogeny_bound(r, prec=160), serre_bound(r, prec=160)
    with mpmath.workprec(200):
        lo = 2 * mpmath.sqrt(mpmath.mpf(iso.raw_lower.numerator) / iso.raw_lower.denominator)
        hi = 2 * mpmath.sqrt(mpmath.mpf(iso.raw_upper.numerator) / iso.raw_upper.denominator)
        s = mpmath.mpf(ser.raw_lower.numerator) / ser.raw_lower.denominator
        assert abs(lo - s) / s < mpmath.mpf(2) ** -60
        assert abs(hi - s) / s < mpmath.mpf(2) ** -60


@given(even_radicals)
def test_ceiling_is_certified(r):
    for rep in (serre_bound(r), isogeny_bound(r)):
        ceil_lo = -((-rep.raw_lower.numerator) // rep.raw_lower.denominator)
        ceil_hi = -((-rep.raw_upper.numerator) // rep.raw_upper.denominator)
        assert ceil_lo == ceil_hi == rep.integer_bound
        assert rep.raw_upper - rep.raw_lower < Fraction(1, 2**80) * rep.raw_upper


def test_chebotarev_reference_values():
    rep = chebotarev_prime_bound(ChebotarevParams("4", "2.5", "5", 100, 384))
    assert rep.contains(1863225) and rep.integer_bound == 1863225
    rep = chebotarev_prime_bound(ChebotarevParams("1.755", "0", "5.7", 1000, 384))
    assert rep.raw_lower == rep.raw_upper == Fraction("3100064.49")
    assert rep.integer_bound == 3100065


def test_chebotarev_exact_integer_value():
    # 2.6 * 305 = 793 exactly; an interval evaluation could not certify this ceiling
    assert chebotarev_prime_bound(ChebotarevParams(0, "2.6", 0, 0, 305)).integer_bound == 793**2


def test_chebotarev_constant_only():
    assert chebotarev_prime_bound(ChebotarevParams(0, 0, 7, 12345, 9)).contains(49)


def test_chebotarev_admitted_sets():
    assert ChebotarevParams("4", "2.5", "5", 1, 2).admitted
    assert ChebotarevParams("1.257", "0", "7.3", 1, 2).admitted
    assert not ChebotarevParams(1, 1, 1, 1, 2).admitted


@given(st.integers(0, 5000), st.integers(1, 500), st.integers(0, 10), st.integers(0, 10))
def test_chebotarev_monotone(log_disc, degree, a, c):
    base = chebotarev_prime_bound(ChebotarevParams(a, "2.5", c, log_disc, degree))
    for bumped in (
        ChebotarevParams(a, "2.5", c, log_disc + 1, degree),
        ChebotarevParams(a, "2.5", c, log_disc, degree + 1),
        ChebotarevParams(a + 1, "2.5", c, log_disc, degree),
        ChebotarevParams(a, "2.6", c, log_disc, degree),
        ChebotarevParams(a, "2.5", c + 1, log_disc, degree),
    ):
        assert chebotarev_prime_bound(bumped).raw_upper >= base.raw_lower


def _field_disc(poly):
    x = sympy.Symbol("x")
    return abs(int(sympy.discriminant(poly(x), x)))


@pytest.mark.parametrize("poly, degree", [
    (lambda x: x**2 + 1, 2),                      # Q(i), d = 4
    (lambda x: x**2 - 2, 2),                      # Q(sqrt 2), d = 8
    (lambda x: x**4 + x**3 + x**2 + x + 1, 4),    # Q(zeta_5), d = 125
])
def test_discriminant_sandwich(poly, degree):
    # power bases are maximal for these three fields, so disc(poly) = d_K
    d = _field_disc(poly)
    lower, upper = discriminant_log_bounds(degree, radical(d))
    log_d = Fraction(mpmath.nstr(oracle(lambda: mpmath.log(d), 50), 45))
    assert lower <= log_d <= upper


def test_discriminant_bounds_values():
    lower, upper = discriminant_log_bounds(2, 2)
    assert abs(float(lower) - 1.0986122886681098) < 1e-15
    assert abs(float(upper) - 2.0794415416798357) < 1e-15
    lower, upper = discriminant_log_bounds(384, 210)
    expected = oracle(lambda: 383 * mpmath.log(210) + 384 * mpmath.log(384))
    assert abs(upper - Fraction(mpmath.nstr(expected, 60))) < Fraction(1, 10**30)
    assert lower < upper


def test_discriminant_bounds_need_nontrivial_extension():
    with pytest.raises(ValueError):
        discriminant_log_bounds(1, 2)


@pytest.mark.parametrize("ell, r, expected", [(2, 2, 255), (2, 1, 3), (3, 1, 4)])
def test_group_order_bound(ell, r, expected):
    assert group_order_bound(ell, r) == expected


def test_divisor_claim_brute_force():
    def best(n):
        m = (6 * 16 ** (n - 1)) ** 2
        return max(d for d in sympy.divisors(m) if d <= 255)
    assert best(1) == 36
    assert [best(n) for n in range(2, 6)] == [192] * 4


def test_verify_isogeny_constants():
    assert verify_isogeny_constants() is True
