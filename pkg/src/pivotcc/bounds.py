"""Approximation bounds for Pivot run on a sample of the input clusterings.

An edge whose true similarity is ``p < 1/2`` is misread by an ``R``-column
sample when more than half the sampled columns agree. With the binomial
count replaced by a normal, that happens with probability
``Err(R, p) = 1 - Phi(sqrt(R) (1/2 - p) / sqrt(p (1 - p)))``. The expected
edge cost then grows from ``p`` to ``p (1 - Err) + (1 - p) Err``, and
``g(R)`` is the worst multiplicative growth over ``p``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .errors import InvalidArgumentError

# full-input guarantee of best-of(Pivot, random input)
FULL_INPUT_BOUND = 11 / 7
TIGHT_POINT = (0.5, 0.75, 0.75)

_GRID_POINTS = 100_000
_P_MIN = 1e-6


def normal_cdf(x):
    """Standard normal CDF, ``0.5 * erfc(-x / sqrt(2))``.

    Accepts scalars or arrays; non-finite input raises.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("normal_cdf needs finite input")
    out = 0.5 * special.erfc(-arr / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def _check_R(R):
    if R < 1:
        raise InvalidArgumentError(f"sample size R must be >= 1, got {R}")


def _reflect(p):
    p = np.asarray(p, dtype=np.float64)
    if np.any((p < 0) | (p > 1)):
        raise InvalidArgumentError("probabilities must lie in [0, 1]")
    return np.where(p > 0.5, 1.0 - p, p)


def _err(R, p):
    # p already reflected into [0, 1/2]
    with np.errstate(divide="ignore", invalid="ignore"):
        z = math.sqrt(R) * (0.5 - p) / np.sqrt(p * (1.0 - p))
    tail = 0.5 * special.erfc(z / math.sqrt(2.0))
    return np.where(p == 0, 0.0, tail)


def sampling_error(R, p):
    """Normal-approximation probability that an R-column sample misreads ``p``.

    ``p > 1/2`` is reflected to ``1 - p``; ``p = 0`` gives 0.
    """
    _check_R(R)
    out = _err(R, _reflect(p))
    return float(out) if out.ndim == 0 else out


def expected_cost_ratio(R, p):
    """Expected cost of a sampled edge relative to its true cost ``p``.

    ``[p (1 - Err) + (1 - p) Err] / p``, with value 1 at ``p = 0`` (the
    Gaussian tail vanishes faster than ``p``).
    """
    _check_R(R)
    q = _reflect(p)
    e = _err(R, q)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (q * (1.0 - e) + (1.0 - q) * e) / q
    out = np.where(q == 0, 1.0, ratio)
    return float(out) if out.ndim == 0 else out


def g(R):
    """Worst-case expected cost inflation of Pivot on an R-column sample.

    Maximizes :func:`expected_cost_ratio` over ``p`` in (0, 1/2]: a dense
    grid of 10**5 points on ``[1e-6, 1/2]`` locates the peak, then a bounded
    scalar search refines it inside the neighbouring grid cells.
    """
    _check_R(R)
    grid = np.linspace(_P_MIN, 0.5, _GRID_POINTS)
    vals = expected_cost_ratio(R, grid)
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(
        lambda p: -expected_cost_ratio(R, p),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(float(vals[i]), -float(res.fun), 1.0)


def consensus_bound(R):
    """Approximation factor ``(6/7) g(R) + 5/7`` of best-of(sampled Pivot, random input)."""
    return 6.0 / 7.0 * g(R) + 5.0 / 7.0


@dataclass(frozen=True)
class BoundRow:
    R: int
    g: float
    bound: float


@dataclass(frozen=True)
class BoundTable:
    """Rows of ``(R, g(R), consensus_bound(R))`` sorted by ``R``."""

    rows: tuple

    def to_csv(self):
        lines = ["R,g,bound"]
        lines += [f"{r.R},{r.g:.6f},{r.bound:.6f}" for r in self.rows]
        return "\n".join(lines) + "\n"


def bound_table(R_values):
    rows = []
    for R in sorted(set(int(r) for r in R_values)):
        gR = g(R)
        rows.append(BoundRow(R, gR, 6.0 / 7.0 * gR + 5.0 / 7.0))
    return BoundTable(tuple(rows))


@dataclass(frozen=True)
class Triangle:
    """Similarities of a bad triangle, smallest first."""

    w1: float
    w2: float
    w3: float

    def in_region(self, tol=1e-12):
        w1, w2, w3 = self.w1, self.w2, self.w3
        return (
            0.5 - tol <= w1 <= min(w2, w3) + tol
            and max(w2, w3) <= 1 + tol
            and w1 + w2 + w3 <= 2 + tol
        )


def triangle_gap_values(w1, w2, w3, multiplier=1.0, gamma=FULL_INPUT_BOUND):
    """Vectorised gap ``(3/7) m w + (4/7) z - gamma c*`` without region checks.

    ``w = w1 + w2 + w3`` is Pivot's worst-case triangle cost, ``z`` the
    expected cost of a random input clustering and ``c* = w1 + 2 - w2 - w3``
    the optimum. ``multiplier`` inflates Pivot's term for sampled inputs.
    """
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    w3 = np.asarray(w3, dtype=np.float64)
    w = w1 + w2 + w3
    z = 2 * w1 * (1 - w1) + 2 * w2 * (1 - w2) + 2 * w3 * (1 - w3)
    c_star = w1 + 1 - w2 + 1 - w3
    return 3.0 / 7.0 * multiplier * w + 4.0 / 7.0 * z - gamma * c_star


def triangle_gap(t, multiplier=1.0, gamma=FULL_INPUT_BOUND):
    """Gap of the best-of inequality on one triangle; non-positive on the region.

    ``t`` is a :class:`Triangle` or a 3-tuple. Pass ``multiplier=g(R)`` and
    ``gamma=consensus_bound(R)`` for the sampled variant.
    """
    if not isinstance(t, Triangle):
        t = Triangle(*t)
    if not t.in_region():
        raise InvalidArgumentError(f"{t} lies outside 1/2 <= w1 <= w2, w3 <= 1, w1 + w2 + w3 <= 2")
    return float(triangle_gap_values(t.w1, t.w2, t.w3, multiplier, gamma))


def max_triangle_gap(step=1e-3, multiplier=1.0, gamma=FULL_INPUT_BOUND):
    """Grid maximum of the gap over the constraint region.

    Grid coordinates are ``i * step`` for integer ``i`` so points such as
    (1/2, 3/4, 3/4) are hit exactly. Returns ``(max_value, argmax, n_points)``.
    """
    ticks = np.arange(round(0.5 / step), round(1.0 / step) + 1) * step
    best = -np.inf
    arg = None
    count = 0
    for w1 in ticks:
        if 3 * w1 > 2 + 1e-12:
            break
        t = ticks[ticks >= w1 - 1e-12]
        W2, W3 = np.meshgrid(t, t, indexing="ij")
        ok = w1 + W2 + W3 <= 2 + 1e-12
        if not ok.any():
            continue
        vals = triangle_gap_values(w1, W2[ok], W3[ok], multiplier, gamma)
        count += vals.size
        j = int(np.argmax(vals))
        if vals[j] > best:
            best = float(vals[j])
            arg = (float(w1), float(W2[ok][j]), float(W3[ok][j]))
    return best, arg, count
