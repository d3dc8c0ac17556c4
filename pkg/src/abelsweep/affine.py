"""Closed forms and convergence diagnostics for g(x) = b*(x+s) - s.

For this family the truncated Abel systems admit closed-form solutions: a
recurrence obtained by triangularizing the system, and a direct alternating
binomial sum. Summing the solution polynomial against powers of x/s yields an
s-free polynomial sequence that approximates log_b; the helpers below expose
that sequence together with the remainder quantities controlling its
convergence.

The alternating sums lose roughly one bit per degree to cancellation, so all
coefficients are carried exactly (integers over rational bases) and rounding
happens only at evaluation time, at a working precision that grows with the
degree.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import ZeroShiftError
from .powerseries import TruncatedSeries
from .scalars import (
    PrecisionConfig,
    Scalar,
    as_fraction,
    binomial,
    check_not_root_of_unity,
    gen_binomial,
)


def _normalize(b):
    return Fraction(b) if isinstance(b, int) else b


@dataclass(frozen=True)
class AffineParams:
    """Base b and development point s of the conjugated map b*(x+s) - s.

    s must be nonzero (the map developed at its fixpoint has an unsolvable
    first equation). b must not be a root of unity; that is checked lazily,
    up to whatever order an operation actually uses.
    """

    b: Scalar
    s: Scalar

    def __post_init__(self):
        object.__setattr__(self, "b", _normalize(self.b))
        object.__setattr__(self, "s", _normalize(self.s))
        if self.s == 0:
            raise ZeroShiftError()

    @property
    def d(self) -> Scalar:
        return self.s * (self.b - 1)

    def ensure_order(self, order: int) -> None:
        check_not_root_of_unity(self.b, order)

    def apply(self, z):
        return self.b * (z + self.s) - self.s


def affine_series(p: AffineParams, order: int) -> TruncatedSeries:
    """The map as a truncated series at 0: d + b*x, zero-padded to ``order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    zero = p.d * 0
    return TruncatedSeries((p.d, p.b) + (zero,) * (order - 1), 0)


# ---------------------------------------------------------------------------
# solution coefficients

# keyed (b, m) -> {k: value}; fills are idempotent and values immutable, so
# concurrent callers at worst recompute an entry
_REC_CACHE: dict = {}


def _scaled_beta(b, n: int, m: int):
    """s**m * beta^(n)_m, which is s-free; filled iteratively over n and memoized."""
    cache = _REC_CACHE.setdefault((b, m), {})
    for k in range(m, n + 1):
        if k in cache:
            continue
        acc = (-1) ** m if k == m else 0
        for i in range(m, k):
            acc = acc + cache[i] * binomial(k, i) * (1 - b) ** (k - i) * b**i
        if isinstance(acc, int):
            acc = Fraction(acc)
        cache[k] = acc / (1 - b**k)
    return cache[n]


def beta_recurrence(p: AffineParams, n: int, m: int) -> Scalar:
    """beta^(n)_m via the triangular recursion, memoized over the lower degrees."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    p.ensure_order(n)
    return _scaled_beta(p.b, n, m) / p.s**m


def beta_direct(p: AffineParams, n: int, m: int) -> Scalar:
    """beta^(n)_m by the direct alternating sum over binomial products."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    p.ensure_order(n)
    b = p.b
    acc = 0
    for k in range(m, n + 1):
        term = binomial(n, k) * binomial(k, m)
        acc = acc + (term if k % 2 == 0 else -term) / (1 - b**k)
    return acc / p.s**m


def beta_polynomial(p: AffineParams, n: int, method: str = "direct") -> TruncatedSeries:
    """The degree-n solution polynomial beta^(n) as a truncated series at 0."""
    fn = beta_direct if method == "direct" else beta_recurrence
    coeffs = (p.d * 0,) + tuple(fn(p, n, m) for m in range(1, n + 1))
    return TruncatedSeries(coeffs, 0)


# ---------------------------------------------------------------------------
# the s-free log approximation

@dataclass(frozen=True)
class LogApproxPoly:
    """Degree-n polynomial approximating log_b, in the monomial basis.

    Its value at 1 is exactly 0 (every building block vanishes there), and at
    b it is exactly 1.
    """

    n: int
    b: Scalar
    coeffs: tuple  # c_0..c_n


def log_poly(b, n: int) -> LogApproxPoly:
    """Coefficients of sum_k C(n,k) (-1)^(k+1) (1 - x**k) / (1 - b**k).

    Exact (Fraction) when b is rational; the constant term collects all the
    k-terms and the x**k coefficient is the negated k-term.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    b = _normalize(b)
    check_not_root_of_unity(b, n)
    weights = []
    for k in range(1, n + 1):
        c = binomial(n, k)
        w = (c if k % 2 == 1 else -c) / (1 - b**k)
        weights.append(w)
    c0 = weights[0]
    for w in weights[1:]:
        c0 = c0 + w
    coeffs = (c0,) + tuple(-w for w in weights)
    return LogApproxPoly(n, b, coeffs)


def eval_log_poly(pL: LogApproxPoly, x, cfg: PrecisionConfig) -> Scalar:
    """Horner evaluation at precision covering the alternating-sum blowup.

    The term magnitudes are bounded by (1+|x|)**n, so bigfloat mode works at
    ceil(n*log2(1+|x|)) + guard bits (at least the configured bits); inside
    the unit interval this is the degree plus the guard. Exact mode needs a
    rational x and returns a Fraction.
    """
    if cfg.exact:
        xq = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(pL.coeffs):
            acc = acc * xq + c
        return acc
    if cfg.mode == "machine":
        xf = float(x)
        acc = 0.0
        for c in reversed(pL.coeffs):
            acc = acc * xf + float(c)
        return acc
    # term growth is (1+|x|)**n, i.e. at most n bits inside the unit interval
    growth = max(1.0, math.log2(1.0 + abs(float(x))))
    needed = int(math.ceil(pL.n * growth)) + cfg.guard_bits
    with mp.workprec(max(cfg.bits, needed)):
        xm = _to_mpf(x)
        acc = mpmath.mpf(0)
        for c in reversed(pL.coeffs):
            acc = acc * xm + _to_mpf(c)
        return acc


def _to_mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def reference_log(b, x, bits: int = 256):
    """log_b(x) from mpmath's logarithm, for use as an independent reference."""
    bq, xq = as_fraction(b), as_fraction(x)
    with mp.workprec(bits):
        num = mpmath.log(mpmath.mpf(xq.numerator) / xq.denominator)
        den = mpmath.log(mpmath.mpf(bq.numerator) / bq.denominator)
        return num / den


# ---------------------------------------------------------------------------
# identities and remainder diagnostics

def onpow_identity(n: int, y) -> tuple:
    """Both sides of sum_k C(n,k)(-1)^(k+1) y**k == 1 - (1-y)**n."""
    y = _normalize(y)
    lhs = 0
    for k in range(1, n + 1):
        c = binomial(n, k)
        lhs = lhs + (c if k % 2 == 1 else -c) * y**k
    rhs = 1 - (1 - y) ** n
    return lhs, rhs


def remainder(n: int, j: int, b) -> Scalar:
    """R^(n)_j = sum_i C(j,i) (-1)^(j-i) (1 - b**i)**n."""
    b = _normalize(b)
    acc = 0
    for i in range(j + 1):
        c = binomial(j, i)
        term = c * (1 - b**i) ** n
        acc = acc + (term if (j - i) % 2 == 0 else -term)
    return acc


def remainder_bound(j: int, n: int, b) -> Scalar:
    """d_{j,n} = sum_i C(j,i) |1 - b**i|**n, the majorant of |R^(n)_j|."""
    b = _normalize(b)
    acc = 0
    for i in range(j + 1):
        acc = acc + binomial(j, i) * abs(1 - b**i) ** n
    return acc


def binom_tail(kappa, J: int) -> tuple:
    """Partial sum of sum_{j>=1} |C(kappa, j+1)| plus a tail estimate.

    The terms follow the ratio recurrence C(k, j+1) = C(k, j)*(k-j)/(j+1);
    the tail estimate integrates the per-term bound
    e**(kappa**2 + kappa) / k**(1+kappa) past the cutoff.
    """
    kappa = float(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    partial = 0.0
    c = kappa  # C(kappa, 1)
    for j in range(1, J + 1):
        c = c * (kappa - j) / (j + 1)  # C(kappa, j+1)
        partial += abs(c)
    tail = math.exp(kappa * kappa + kappa) * (J + 1) ** (-kappa) / kappa
    return partial, tail


@dataclass(frozen=True)
class GapReport:
    """Deviation-from-constant of the difference of two developments.

    ``gaps[i]`` is the difference of the degree-n approximants developed at
    p2.s and p1.s, evaluated at xs[i]; as n grows the gaps approach the
    constant log_b(p1.s) - log_b(p2.s).
    """

    deviation: Scalar
    median_gap: Scalar
    xs: tuple
    gaps: tuple


def s_invariance_gap(
    p1: AffineParams, p2: AffineParams, n: int, xs, cfg: PrecisionConfig
) -> GapReport:
    """Measure how far the two developments differ from a constant shift.

    Evaluates the same degree-n polynomial at x/p2.s and x/p1.s over the
    grid, takes the pointwise difference, and reports the median together
    with the maximum deviation from that median.
    """
    if p1.b != p2.b:
        raise ValueError("both parameter sets must share the base b")
    poly = log_poly(p1.b, n)
    with cfg.workprec(n + cfg.guard_bits):
        gaps = []
        for x in xs:
            x = _normalize(x)
            g = eval_log_poly(poly, x / p2.s, cfg) - eval_log_poly(poly, x / p1.s, cfg)
            gaps.append(g)
        med = statistics.median(gaps)
        deviation = max(abs(g - med) for g in gaps)
    return GapReport(deviation, med, tuple(xs), tuple(gaps))
