from fractions import Fraction as F

import mpmath
import pytest

from abelsweep import PrecisionConfig, RootOfUnityError, format_scalar, parse_rational
from abelsweep.scalars import as_fraction, binomial, check_not_root_of_unity, gen_binomial


class TestParseRational:
    @pytest.mark.parametrize(
        "text,want",
        [
            ("3/4", F(3, 4)),
            ("-7/2", F(-7, 2)),
            ("0.25", F(1, 4)),
            ("2", F(2)),
            (5, F(5)),
            (F(1, 3), F(1, 3)),
        ],
    )
    def test_literals(self, text, want):
        assert parse_rational(text) == want

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("zebra")
        with pytest.raises(ValueError):
            parse_rational(None)


class TestPrecisionConfig:
    def test_modes_convert(self):
        assert PrecisionConfig("exact").scalar("1/3") == F(1, 3)
        assert PrecisionConfig("machine").scalar("1/4") == 0.25
        v = PrecisionConfig("bigfloat", bits=64).scalar("1/3")
        assert isinstance(v, mpmath.mpf)

    def test_bigfloat_needs_24_bits(self):
        with pytest.raises(ValueError):
            PrecisionConfig("bigfloat", bits=16)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            PrecisionConfig("quantum")

    def test_negative_guard_rejected(self):
        with pytest.raises(ValueError):
            PrecisionConfig("exact", guard_bits=-1)


class TestFormatting:
    def test_fraction(self):
        assert format_scalar(F(4, 3)) == "4/3"
        assert format_scalar(F(6, 3)) == "2"

    def test_float_round_trips(self):
        x = 0.1 + 0.2
        assert float(format_scalar(x)) == x

    def test_mpf_uses_requested_digits(self):
        with mpmath.mp.workprec(128):
            x = mpmath.mpf(1) / 3
            text = format_scalar(x, dps=40)
        assert text.startswith("0.3333333333333333333333333333333")


class TestBinomials:
    def test_matches_pascal(self):
        assert [binomial(5, k) for k in range(6)] == [1, 5, 10, 10, 5, 1]
        assert binomial(10, -1) == 0
        assert binomial(10, 11) == 0

    def test_generalized_fraction(self):
        assert gen_binomial(F(1, 2), 2) == F(-1, 8)
        assert gen_binomial(F(1, 2), 0) == 1


class TestRootOfUnity:
    def test_exact_detection(self):
        with pytest.raises(RootOfUnityError):
            check_not_root_of_unity(F(1), 1)
        check_not_root_of_unity(F(2), 50)

    def test_complex_roots(self):
        with pytest.raises(RootOfUnityError):
            check_not_root_of_unity(1j, 4)
        check_not_root_of_unity(1j, 3)


class TestAsFraction:
    def test_mpf_is_lossless(self):
        with mpmath.mp.workprec(80):
            x = mpmath.mpf(1) / 7
        q = as_fraction(x)
        with mpmath.mp.workprec(80):
            assert mpmath.mpf(q.numerator) / q.denominator == x
