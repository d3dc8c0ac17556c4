"""Truncated formal power series.

A series is stored as its coefficient list c_0..c_K (coefficient of x**m is
c_m) together with a development point. All operations truncate to the stored
order; since the coefficient of x**m in a product depends only on coefficients
up to index m, truncation commutes with the arithmetic up to that order.

Operations are pure; instances are immutable and safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .scalars import PrecisionConfig, Scalar, format_scalar, is_finite, parse_rational


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_K of a series developed at ``center``.

    The order K is implied by the coefficient count. Coefficients must be
    finite scalars; NaN and infinity are construction errors, not sentinels.
    """

    coeffs: tuple
    center: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        for c in self.coeffs:
            if not is_finite(c):
                raise ValueError(f"non-finite coefficient {c!r}")
        if not is_finite(self.center):
            raise ValueError(f"non-finite center {self.center!r}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> Scalar:
        return self.coeffs[m]

    def to_json_dict(self, dps: int | None = None) -> dict:
        return {
            "center": format_scalar(self.center, dps),
            "coeffs": [format_scalar(c, dps) for c in self.coeffs],
        }


def from_json_dict(data: dict, cfg: PrecisionConfig) -> TruncatedSeries:
    """Read the series file format: {"center": ..., "coeffs": [...]}.

    Values may be JSON numbers or strings holding decimal or "p/q" literals;
    they are converted into ``cfg``'s scalar mode.
    """
    try:
        coeffs = tuple(cfg.scalar(c) for c in data["coeffs"])
        center = cfg.scalar(data.get("center", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad series object: {exc}") from exc
    return TruncatedSeries(coeffs, center)


def constant(value, order: int, center: Scalar = 0) -> TruncatedSeries:
    zero = value * 0
    return TruncatedSeries((value,) + (zero,) * order, center)


def pad(f: TruncatedSeries, order: int) -> TruncatedSeries:
    """Extend with zero coefficients (exact for polynomials) or truncate."""
    if order == f.order:
        return f
    if order < f.order:
        return TruncatedSeries(f.coeffs[: order + 1], f.center)
    zero = f.coeffs[0] * 0
    return TruncatedSeries(f.coeffs + (zero,) * (order - f.order), f.center)


def _common_order(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.center != b.center:
        raise ValueError(
            f"centers differ ({a.center} vs {b.center}); recenter first"
        )
    return min(a.order, b.order)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    k = _common_order(a, b)
    return TruncatedSeries(
        tuple(a.coeffs[m] + b.coeffs[m] for m in range(k + 1)), a.center
    )


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    k = _common_order(a, b)
    return TruncatedSeries(
        tuple(a.coeffs[m] - b.coeffs[m] for m in range(k + 1)), a.center
    )


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product (fg)_n = sum_k f_{n-k} g_k, truncated to the common order."""
    k = _common_order(a, b)
    coeffs = []
    for n in range(k + 1):
        acc = a.coeffs[0] * b.coeffs[n]
        for i in range(1, n + 1):
            acc = acc + a.coeffs[i] * b.coeffs[n - i]
        coeffs.append(acc)
    return TruncatedSeries(tuple(coeffs), a.center)


def series_pow(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """f**n truncated to f.order; n-1 repeated truncated multiplications.

    Repeated multiplication (rather than binary powering) keeps the rounding
    history identical across runs and modes.
    """
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    one = 1 if isinstance(f.coeffs[0], (int, Fraction)) else f.coeffs[0] * 0 + 1
    out = constant(one, f.order, f.center)
    for _ in range(n):
        out = series_mul(out, f)
    return out


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """outer(inner(x)) truncated to ``order`` (default: inner.order).

    The stored coefficients of ``outer`` are treated as a polynomial and
    substituted by Horner's rule. This is exact for polynomial ``outer``
    even when inner's constant term is nonzero (the situation of the Abel
    systems, whose unknown is a polynomial).
    """
    k = order if order is not None else inner.order
    inner = pad(inner, k)
    acc = constant(outer.coeffs[-1], k, inner.center)
    for m in range(outer.order - 1, -1, -1):
        acc = series_mul(acc, inner)
        acc = TruncatedSeries(
            (acc.coeffs[0] + outer.coeffs[m],) + acc.coeffs[1:], acc.center
        )
    return acc


def recenter(f: TruncatedSeries, s: Scalar) -> TruncatedSeries:
    """Shift conjugation g(x) = f(x+s) - s, developed at 0.

    Horner substitution of (x+s) into the stored polynomial: O(K^2) scalar
    operations, exact in rational mode.
    """
    shift = TruncatedSeries((s * 1, s * 0 + 1) + (s * 0,) * max(0, f.order - 1), f.center)
    g = series_compose(f, pad(shift, f.order), order=f.order)
    coeffs = (g.coeffs[0] - s,) + g.coeffs[1:]
    return TruncatedSeries(coeffs, 0)


def exp_shift_series(s, order: int, cfg: PrecisionConfig) -> TruncatedSeries:
    """Series of g(x) = e**(x+s) - s at 0: c_0 = e**s - s, c_m = e**s / m!.

    Exact mode is only possible for s == 0 (coefficients 1/m!); any other s
    makes e**s irrational and raises.
    """
    s_q = parse_rational(s)
    if cfg.exact:
        if s_q != 0:
            raise ValueError("exact mode supports the exponential only at s=0")
        coeffs = tuple(Fraction(1, math.factorial(m)) for m in range(order + 1))
        return TruncatedSeries(coeffs, 0)
    if cfg.mode == "machine":
        es = math.exp(s_q.numerator / s_q.denominator)
        coeffs = [es - float(s_q)]
        coeffs += [es / math.factorial(m) for m in range(1, order + 1)]
        return TruncatedSeries(tuple(coeffs), 0.0)
    with cfg.workprec():
        es = mpmath.exp(mpmath.mpf(s_q.numerator) / s_q.denominator)
        coeffs = [es - cfg.scalar(s_q)]
        coeffs += [es / math.factorial(m) for m in range(1, order + 1)]
        return TruncatedSeries(tuple(coeffs), cfg.scalar(0))
