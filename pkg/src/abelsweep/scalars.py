"""Scalar abstraction: one code path, three kinds of numbers.

Every algorithm in this package is written against plain arithmetic
(``+ - * /``) so that it runs unchanged over

* ``fractions.Fraction`` -- the exact mode, used as test oracle,
* ``mpmath.mpf`` -- configurable-precision floats, the workhorse,
* ``float`` -- machine precision, for quick looks at small sizes.

``PrecisionConfig`` picks the mode and carries the working-precision policy;
``parse_rational`` accepts the "p/q"-or-decimal literals used by the CLI and
the series file format.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

Scalar = Union[int, float, complex, Fraction, mpmath.mpf, mpmath.mpc]

MODES = ("machine", "bigfloat", "exact")

#: |b**k - 1| below this counts as a root of unity in the float modes.
ROOT_OF_UNITY_TOL = 1e-12


@dataclass(frozen=True)
class PrecisionConfig:
    """Scalar mode plus working-precision policy.

    ``bits`` is the mantissa size used in bigfloat mode (ignored otherwise);
    ``guard_bits`` is added on top of any computed working precision to absorb
    cancellation.
    """

    mode: str = "bigfloat"
    bits: int = 128
    guard_bits: int = 64

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown precision mode {self.mode!r}")
        if self.mode == "bigfloat" and self.bits < 24:
            raise ValueError("bigfloat mode needs at least 24 mantissa bits")
        if self.guard_bits < 0:
            raise ValueError("guard_bits must be nonnegative")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def workprec(self, bits: int | None = None):
        """Context manager setting mpmath precision; a no-op outside bigfloat mode."""
        if self.mode != "bigfloat":
            return contextlib.nullcontext()
        return mp.workprec(max(self.bits, bits or 0))

    def scalar(self, value) -> Scalar:
        """Convert a literal (int, float, Fraction, or string) into this mode's scalar."""
        q = value if isinstance(value, Fraction) else parse_rational(value)
        if self.mode == "exact":
            return q
        if self.mode == "machine":
            return q.numerator / q.denominator
        with mp.workprec(self.bits):
            return mpmath.mpf(q.numerator) / q.denominator

    def as_dict(self) -> dict:
        d = {"mode": self.mode, "guard_bits": self.guard_bits}
        if self.mode == "bigfloat":
            d["bits"] = self.bits
        return d

    @property
    def dps(self) -> int:
        """Decimal digits that round-trip this mode's floats."""
        if self.mode == "bigfloat":
            return int(self.bits * 0.30103) + 3
        return 17


def parse_rational(text) -> Fraction:
    """Parse "p/q", decimal, or integer literals into an exact Fraction.

    ints, floats, and Fractions pass through (floats convert exactly, i.e.
    to their binary value).
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"cannot parse {text!r} as a rational literal")


def as_fraction(x) -> Fraction:
    """Exact conversion of any real scalar to Fraction (mpf converts losslessly)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"cannot convert non-finite value {x}")
        p, q = mpmath.libmp.to_rational(x._mpf_)
        return Fraction(int(p), int(q))
    raise ValueError(f"cannot convert {type(x).__name__} to Fraction")


def is_finite(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, float):
        return math.isfinite(x)
    if isinstance(x, complex):
        return math.isfinite(x.real) and math.isfinite(x.imag)
    return bool(mpmath.isfinite(x))


def binomial(n: int, k: int) -> int:
    """C(n, k) for integer n >= 0 by the multiplicative recurrence, exact."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def gen_binomial(x, k: int):
    """Generalized C(x, k) for scalar x via the falling-factorial product.

    Exact when x is a Fraction; otherwise computed in x's arithmetic at the
    ambient precision.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    for i in range(k):
        num = num * (x - i)
    return num / math.factorial(k)


def check_not_root_of_unity(b, max_k: int) -> None:
    """Raise RootOfUnityError if b**k == 1 for some 1 <= k <= max_k.

    Exact scalars compare exactly; float scalars use |b**k - 1| < 1e-12 so
    the failure is reproducible rather than precision-dependent.
    """
    from .errors import RootOfUnityError

    exact = isinstance(b, (int, Fraction))
    p = b
    for k in range(1, max_k + 1):
        if exact:
            if p == 1:
                raise RootOfUnityError(b, k)
        elif abs(p - 1) < ROOT_OF_UNITY_TOL:
            raise RootOfUnityError(b, k)
        p = p * b


def format_scalar(x, dps: int | None = None) -> str:
    """Lossless, deterministic text for report files.

    Fractions render as "p/q" (plain integer when q == 1), floats with
    shortest round-trip repr, mpf with ``dps`` significant digits.
    """
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, bool)):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(x, dps or mp.dps, strip_zeros=True)
    return str(x)
