import math
from decimal import Decimal
from fractions import Fraction

import pytest

from binomial_roots.arith import (
    LogSign,
    compare_magnitude,
    div,
    from_real,
    mul,
    neg,
    pow_by_squaring,
    pow_int,
    precision_context,
    root_positive,
)
from binomial_roots.arith.precision import PrecisionBudget
from binomial_roots.utils.counters import counting
from binomial_roots.utils.errors import NegativeEvenRootError, NonFiniteError, ZeroValueError


@pytest.mark.parametrize(
    "value, sign, logabs",
    [
        (1, 1, 0.0),
        (-math.e, -1, 1.0),
        (8, 1, 2.0794415416798357),
        (Decimal("0.5"), 1, -math.log(2)),
        (Fraction(-1, 3), -1, -math.log(3)),
        ("1e-300", 1, -300 * math.log(10)),
    ],
)
def test_from_real(value, sign, logabs):
    x = from_real(value)
    assert x.sign == sign
    assert float(x.logabs) == pytest.approx(logabs, rel=1e-15, abs=1e-15)


def test_from_real_rejects_zero_and_non_finite():
    with pytest.raises(ZeroValueError):
        from_real(0)
    with pytest.raises(ZeroValueError):
        from_real(Decimal("0.000"))
    with pytest.raises(NonFiniteError):
        from_real(float("inf"))
    with pytest.raises(NonFiniteError):
        from_real(Decimal("NaN"))


def test_logsign_validates_sign():
    with pytest.raises(ValueError):
        LogSign(0, 1)


@pytest.mark.parametrize("value", [1.5, -3.25e10, 7e-200, -1e300, 0.1])
def test_to_real_within_one_ulp(value):
    assert abs(from_real(value).to_real() - value) <= math.ulp(value)


def test_to_real_overflow():
    huge = LogSign(1, 1000)
    assert not huge.fits_native
    with pytest.raises(OverflowError):
        huge.to_real()


def test_mul_and_div():
    product = mul(LogSign(1, 1), LogSign(1, 2))
    assert (product.sign, float(product.logabs)) == (1, 3.0)

    quotient = div(LogSign(-1, 1), LogSign(1, 2))
    assert (quotient.sign, float(quotient.logabs)) == (-1, -1.0)

    assert (LogSign(1, 1) * LogSign(-1, 1)).sign == -1
    assert neg(LogSign(1, 5)).sign == -1
    assert (-LogSign(-1, 5)).sign == 1


def test_mixed_precision_promotes():
    a = LogSign(1, 1, precision=64)
    b = LogSign(1, 1, precision=160)
    assert mul(a, b).precision == 160
    assert div(b, a).precision == 160


def test_root_positive():
    root = root_positive(from_real(8), 3)
    assert root.sign == 1
    assert float(root.logabs) == pytest.approx(math.log(2), rel=1e-15)

    cube_root = root_positive(from_real(-8), 3)
    assert cube_root.sign == -1

    with pytest.raises(NegativeEvenRootError):
        root_positive(LogSign(-1, 0), 2)


def test_pow_int_sign_parity():
    cube = pow_int(from_real(-2), 3)
    assert cube.sign == -1
    assert float(cube.logabs) == pytest.approx(3 * math.log(2), rel=1e-15)

    assert pow_int(from_real(-2), 4).sign == 1
    inverse = from_real(-2) ** -1
    assert (inverse.sign, float(inverse.logabs)) == (-1, pytest.approx(-math.log(2), rel=1e-15))


@pytest.mark.parametrize("k", [1, 2, 3, 7, 16, 255])
def test_pow_by_squaring_matches_pow_int(k):
    x = from_real(-1.7)
    by_squaring = pow_by_squaring(x, k)
    direct = pow_int(x, k)
    assert by_squaring.sign == direct.sign
    assert float(by_squaring.logabs) == pytest.approx(float(direct.logabs), rel=1e-20, abs=1e-20)


def test_pow_by_squaring_counts_logarithmic_products():
    with counting() as ops:
        pow_by_squaring(from_real(3), 1024)
    assert ops.logsign_ops == 10


def test_compare_magnitude():
    assert compare_magnitude(from_real(-5), from_real(3)) == 1
    assert compare_magnitude(from_real(2), from_real(-2)) == 0
    assert compare_magnitude(from_real(0.5), from_real(4)) == -1


def test_precision_contexts_are_shared_and_fixed():
    ctx = precision_context(80)
    assert precision_context(80) is ctx
    from_real(3, 80) * from_real(7, 80)
    assert ctx.prec == 80


def test_json_form_keeps_full_precision():
    x = from_real(2, precision=200).with_precision(200)
    document = x.to_json()
    assert document["sign"] == 1
    assert isinstance(document["log_abs"], str)
    assert len(document["log_abs"].replace(".", "")) > 40

    assert abs(x.context.mpf(document["log_abs"]) - x.logabs) < x.context.ldexp(1, -190)


GROUP_SAMPLES = [
    (LogSign(1, 0.5), LogSign(-1, -2.25), LogSign(-1, 40)),
    (from_real(3), from_real(-7), from_real("1e-300")),
    (LogSign(-1, 1e4), LogSign(1, -1e4), LogSign(1, 123.456)),
]


@pytest.mark.parametrize("a, b, c", GROUP_SAMPLES)
def test_multiplicative_group_laws(a, b, c):
    one = LogSign(1, 0)

    def same(x: LogSign, y: LogSign) -> bool:
        return x.sign == y.sign and abs(x.logabs - y.logabs) <= x.context.ldexp(1, -70)

    assert same(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert same(mul(a, b), mul(b, a))
    assert same(mul(a, one), a)
    assert same(mul(a, div(one, a)), one)
    assert same(div(mul(a, b), b), a)
    assert same(neg(mul(a, b)), mul(neg(a), b))
    assert same(pow_int(mul(a, b), 3), mul(pow_int(a, 3), pow_int(b, 3)))


@pytest.mark.parametrize("logabs", [-0.3, 1.0, 12345.678, -40000.5])
@pytest.mark.parametrize("s", [1, 2, 3, 7, 64, 1001])
def test_root_then_power_returns_the_input(logabs, s):
    budget = PrecisionBudget(integer_bits=16, fraction_bits=80)
    sign = 1 if s % 2 == 0 else -1
    a = LogSign(sign, logabs, budget.total)
    back = pow_int(root_positive(a, s), s)
    assert back.sign == sign
    assert abs(back.logabs - a.logabs) <= a.context.ldexp(1, -budget.fraction_bits + 2)
