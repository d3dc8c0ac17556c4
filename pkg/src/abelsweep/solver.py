"""Solving the truncated Abel systems and detecting coefficient stabilization.

``solve_truncated`` inverts one N-by-N truncation; ``intuitive_sweep`` runs
it over increasing N and classifies each coefficient trajectory, because the
per-coefficient limits over N (when they exist) are what defines the method's
selected solution. ``abel_residual`` checks any candidate series against the
Abel equation itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .carleman import AbelSystem, abel_system
from .errors import SingularSystemError
from .powerseries import TruncatedSeries, pad, series_compose
from .scalars import PrecisionConfig, Scalar, format_scalar


# ---------------------------------------------------------------------------
# direct solves


def solve_truncated(sys: AbelSystem) -> tuple:
    """Solve A x = u; component k of the result is alpha^(N)_{k+1}.

    Rational entries go through fraction-free Gaussian elimination (exact);
    float and mpf entries go through dense LU with partial pivoting plus one
    step of iterative refinement, at the ambient mpmath precision for mpf.

    Raises SingularSystemError (carrying N and a condition estimate) for
    singular or numerically rank-deficient matrices.
    """
    exact = all(
        isinstance(x, (int, Fraction)) for row in sys.A for x in row
    ) and all(isinstance(x, (int, Fraction)) for x in sys.rhs)
    if exact:
        return _solve_exact(sys.A, sys.rhs, sys.N)
    return _solve_lu(sys.A, sys.rhs, sys.N)


def _solve_exact(A, rhs, n: int) -> tuple:
    """Bareiss elimination over integers after clearing row denominators."""
    M = []
    for i in range(n):
        row = [Fraction(x) for x in A[i]] + [Fraction(rhs[i])]
        scale = math.lcm(*(x.denominator for x in row))
        M.append([int(x * scale) for x in row])

    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            raise SingularSystemError(n)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return tuple(x)


def _solve_lu(A, rhs, n: int) -> tuple:
    """LU with partial pivoting and one iterative-refinement step."""
    lu = [list(row) for row in A]
    perm = list(range(n))
    scale = max((abs(x) for row in A for x in row), default=0)
    uses_mpf = any(isinstance(x, mpmath.mpf) for row in A for x in row)
    eps = mpmath.mp.eps if uses_mpf else 2.220446049250313e-16
    tiny = n * eps * scale

    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(lu[r][k]))
        if abs(lu[piv][k]) <= tiny:
            cond = _cond_estimate(lu, k)
            raise SingularSystemError(n, cond)
        if piv != k:
            lu[k], lu[piv] = lu[piv], lu[k]
            perm[k], perm[piv] = perm[piv], perm[k]
        for i in range(k + 1, n):
            m = lu[i][k] / lu[k][k]
            lu[i][k] = m
            for j in range(k + 1, n):
                lu[i][j] = lu[i][j] - m * lu[k][j]

    x = _lu_solve(lu, perm, rhs, n)
    # one refinement step: residual in working precision, correction reuses the LU
    r = []
    for i in range(n):
        acc = rhs[i]
        for j in range(n):
            acc = acc - A[i][j] * x[j]
        r.append(acc)
    d = _lu_solve(lu, perm, r, n)
    return tuple(x[i] + d[i] for i in range(n))


def _lu_solve(lu, perm, b, n: int):
    y = [b[perm[i]] for i in range(n)]
    for i in range(n):
        for j in range(i):
            y[i] = y[i] - lu[i][j] * y[j]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            y[i] = y[i] - lu[i][j] * y[j]
        y[i] = y[i] / lu[i][i]
    return y


def _cond_estimate(lu, upto: int):
    """Cheap proxy: max/min absolute U diagonal among the pivots found so far."""
    diag = [abs(lu[i][i]) for i in range(upto) if abs(lu[i][i]) != 0]
    if not diag:
        return None
    return float(max(diag) / min(diag))


# ---------------------------------------------------------------------------
# stabilization sweep


@dataclass(frozen=True)
class StabilizationConfig:
    """Thresholds turning per-coefficient trajectories into verdicts.

    A coefficient stabilizes when its last ``window`` consecutive steps all
    move by at most tol_abs + tol_rel*|last value|; it oscillates when those
    steps alternate sign with non-decreasing magnitude.
    """

    tol_abs: float = 1e-9
    tol_rel: float = 1e-9
    window: int = 3

    def as_dict(self) -> dict:
        return {
            "tol_abs": self.tol_abs,
            "tol_rel": self.tol_rel,
            "window": self.window,
        }


@dataclass(frozen=True)
class Verdict:
    kind: str  # "stabilized" | "drifting" | "oscillating" | "singular-at"
    limit: Scalar | None = None
    last_delta: Scalar | None = None
    singular_Ns: tuple = ()

    def as_dict(self, dps: int | None = None) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "stabilized":
            d["limit"] = format_scalar(self.limit, dps)
            d["last_delta"] = format_scalar(self.last_delta, dps)
        if self.kind == "singular-at":
            d["Ns"] = list(self.singular_Ns)
        return d


@dataclass(frozen=True)
class SweepReport:
    """Trajectories alpha^(N)_n over the solved truncations, with verdicts.

    ``trajectories[n]`` is aligned with the sublist of Ns satisfying N >= n;
    entries are None where that truncation was singular. The report is
    deterministic: it depends only on the inputs, not on solve order.
    """

    Ns: tuple
    trajectories: dict
    verdicts: dict
    singular_Ns: tuple
    precision: PrecisionConfig
    stab: StabilizationConfig

    def to_json_dict(self, dps: int | None = None) -> dict:
        dps = dps or self.precision.dps
        coefficients = {}
        for n in sorted(self.trajectories):
            values = [
                None if v is None else format_scalar(v, dps)
                for v in self.trajectories[n]
            ]
            coefficients[str(n)] = {
                "values": values,
                "verdict": self.verdicts[n].as_dict(dps),
            }
        cfg = dict(self.precision.as_dict())
        cfg.update(self.stab.as_dict())
        return {"Ns": list(self.Ns), "coefficients": coefficients, "config": cfg}


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def classify_trajectory(values: Sequence, stab: StabilizationConfig) -> Verdict:
    """Apply the stabilization rules to one coefficient's value sequence."""
    w = stab.window
    if len(values) < w + 1:
        return Verdict("drifting")
    tail = list(values[-(w + 1):])
    deltas = [tail[i + 1] - tail[i] for i in range(w)]
    v = tail[-1]
    if isinstance(v, Fraction):  # keep the comparison exact in rational mode
        tol = Fraction(stab.tol_abs) + Fraction(stab.tol_rel) * abs(v)
    else:
        tol = stab.tol_abs + stab.tol_rel * abs(v)
    if all(abs(d) <= tol for d in deltas):
        return Verdict("stabilized", limit=v, last_delta=abs(deltas[-1]))
    alternating = all(
        _sign(deltas[i]) != 0 and _sign(deltas[i + 1]) == -_sign(deltas[i])
        for i in range(w - 1)
    )
    growing = all(abs(deltas[i + 1]) >= abs(deltas[i]) for i in range(w - 1))
    if w >= 2 and alternating and growing:
        return Verdict("oscillating")
    return Verdict("drifting")


def intuitive_sweep(
    f: TruncatedSeries,
    Ns: Sequence[int],
    cfg: PrecisionConfig,
    stab: StabilizationConfig | None = None,
) -> SweepReport:
    """Solve the truncations A|_N x = u|_N for each N and classify coefficients.

    Singular truncations are recorded and skipped, never aborting the sweep.
    A coefficient index with no successful solve at all gets the singular-at
    verdict listing the failed truncation sizes.
    """
    stab = stab or StabilizationConfig()
    Ns = list(Ns)
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("truncation sizes must be strictly increasing")
    if not Ns or Ns[0] < 1:
        raise ValueError("need at least one positive truncation size")
    if f.order < max(Ns) - 1:
        raise ValueError(
            f"series order {f.order} too small for N={max(Ns)}"
        )

    solutions: dict[int, tuple | None] = {}
    singular: list[int] = []
    with cfg.workprec():
        for N in Ns:
            try:
                solutions[N] = solve_truncated(abel_system(f, N))
            except SingularSystemError:
                solutions[N] = None
                singular.append(N)

    trajectories: dict[int, tuple] = {}
    verdicts: dict[int, Verdict] = {}
    for n in range(1, max(Ns) + 1):
        relevant = [N for N in Ns if N >= n]
        traj = [
            None if solutions[N] is None else solutions[N][n - 1] for N in relevant
        ]
        trajectories[n] = tuple(traj)
        good = [v for v in traj if v is not None]
        if not good:
            verdicts[n] = Verdict(
                "singular-at", singular_Ns=tuple(N for N in relevant if solutions[N] is None)
            )
        else:
            verdicts[n] = classify_trajectory(good, stab)
    return SweepReport(
        tuple(Ns), trajectories, verdicts, tuple(singular), cfg, stab
    )


# ---------------------------------------------------------------------------
# residual check


def abel_residual(alpha: TruncatedSeries, f: TruncatedSeries, K: int) -> TruncatedSeries:
    """Coefficients of alpha(f(x)) - alpha(x) - 1 up to degree K.

    Both inputs are treated as the polynomials they store (zero-padded to K
    where shorter, which is exact for polynomial data); the composition is
    truncated at K.
    """
    if alpha.center != 0 or f.center != 0:
        raise ValueError("residual check expects both series developed at 0")
    composed = series_compose(alpha, pad(f, K), order=K)
    at = pad(alpha, K)
    coeffs = list(composed.coeffs)
    for m in range(K + 1):
        coeffs[m] = coeffs[m] - at.coeffs[m]
    coeffs[0] = coeffs[0] - 1
    return TruncatedSeries(tuple(coeffs), 0)
