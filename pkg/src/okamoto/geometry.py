"""Geometry of the graph of F_a: arc length, cover areas and box counts,

dimension regression, and the weighted chaos game with its mass-bound check.

The level-i polyline has 3^i affine pieces of width 3^-i; its total
variation drives both the arc-length bounds (finite iff a <= 1/2) and the
column-cover area A_i = TV_i * 3^-i whose box count N_i = A_i / delta^2
obeys the closed form (12a-3)^i for a > 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError, UnsupportedRegionError
from .function import DEFAULT_LEVEL_CAP, Parameter, construct_iteration, refine, level_zero

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class LengthProfile:
    """Per-level polyline lengths of the iterations f_0..f_imax."""

    a: Parameter
    levels: tuple[int, ...]
    euclidean: tuple[float, ...]
    manhattan: tuple[float, ...]  # sum of |dx| + |dy| = 1 + total variation
    total_variation: tuple[float, ...]


@dataclass(frozen=True)
class CoverProfile:
    """Column-cover areas and box counts per level, delta = 3^-i."""

    a: Parameter
    levels: tuple[int, ...]
    delta: tuple[float, ...]
    area: tuple[float, ...]
    boxes: tuple[float, ...]


@dataclass(frozen=True)
class DimensionEstimate:
    """Least-squares slope of log N against log(1/delta)."""

    slope: float
    intercept: float
    max_residual: float
    reference: float  # log3(12a-3) for a > 1/2, else 1
    method: str


@dataclass(frozen=True)
class MassSample:
    """Chaos-game point cloud distributed per the natural measure on the graph."""

    a: Parameter
    points: np.ndarray  # shape (n, 2)
    weights: tuple[float, float, float]
    seed: int
    burn_in: int


@dataclass(frozen=True)
class MassBoundReport:
    """Empirical cell masses versus the (12a-3)|U|^s bound, s = log3(12a-3)."""

    grid_level: int
    bound: float
    slack: float
    ratios: np.ndarray  # shape (3^i, 3^i): mu(cell) / bound
    flagged: tuple[tuple[int, int], ...]
    max_ratio: float


def _per_level_geometry(a: Parameter, i_max: int, level_cap: int):
    """Yield (level, float vertex array) for levels 0..i_max incrementally."""
    if i_max < 0:
        raise DomainError("i_max must be >= 0")
    if i_max > level_cap:
        raise ResourceError(f"level {i_max} exceeds cap {level_cap}")
    fa = Parameter(a.as_float())
    g = level_zero(fa)
    yield 0, np.asarray(g.vertices, dtype=float)
    for i in range(1, i_max + 1):
        g = refine(g, fa)
        yield i, np.asarray(g.vertices)


def arc_length_profile(
    a: Parameter, i_max: int, level_cap: int = DEFAULT_LEVEL_CAP
) -> LengthProfile:
    """Euclidean and Manhattan polyline lengths of f_i for i = 0..i_max."""
    levels, euclid, manhattan, tv = [], [], [], []
    for i, v in _per_level_geometry(a, i_max, level_cap):
        dy = np.diff(v)
        dx = 3.0**-i
        t = float(np.sum(np.abs(dy)))
        levels.append(i)
        tv.append(t)
        manhattan.append(1.0 + t)
        euclid.append(float(np.sum(np.sqrt(dx * dx + dy * dy))))
    return LengthProfile(a, tuple(levels), tuple(euclid), tuple(manhattan), tuple(tv))


def cover_profile(a: Parameter, i_max: int, level_cap: int = DEFAULT_LEVEL_CAP) -> CoverProfile:
    """Column-cover area A_i = TV_i * 3^-i and box count N_i = A_i / 9^-i.

    The oscillation of an affine piece is |dy|, so the minimal width-delta
    rectangle cover of f_i has total area sum(|dy|) * delta."""
    levels, delta, area, boxes = [], [], [], []
    for i, v in _per_level_geometry(a, i_max, level_cap):
        t = float(np.sum(np.abs(np.diff(v))))
        d = 3.0**-i
        levels.append(i)
        delta.append(d)
        area.append(t * d)
        boxes.append(t * 3.0**i)
    return CoverProfile(a, tuple(levels), tuple(delta), tuple(area), tuple(boxes))


def square_grid_counts(
    a: Parameter,
    i_min: int,
    i_max: int,
    refine_extra: int = 3,
    level_cap: int = DEFAULT_LEVEL_CAP,
) -> list[tuple[int, int]]:
    """Conventional box counting: occupied delta-squares per level.

    Column extrema are read off a polyline refined ``refine_extra`` levels
    past i_max; each column of width delta contributes the grid cells between
    floor(min/delta) and floor(max/delta)."""
    fine = i_max + refine_extra
    v = np.asarray(construct_iteration(Parameter(a.as_float()), fine, level_cap).vertices)
    out = []
    for i in range(i_min, i_max + 1):
        cols = 3**i
        seg = 3 ** (fine - i)
        left = v[:-1].reshape(cols, seg)
        right = v[seg::seg]
        cmin = np.minimum(left.min(axis=1), right)
        cmax = np.maximum(left.max(axis=1), right)
        scale = 3.0**i
        lo = np.floor(cmin * scale)
        hi = np.minimum(np.floor(cmax * scale), scale - 1)
        out.append((i, int(np.sum(hi - lo + 1))))
    return out


def dimension_reference(a: Parameter) -> float:
    """Closed-form box dimension: log3(12a-3) for a > 1/2, else 1."""
    af = a.as_float()
    if af > 0.5:
        return math.log(12 * af - 3) / math.log(3)
    return 1.0


def dimension_estimate(
    a: Parameter,
    i_min: int,
    i_max: int,
    method: str = "column",
    level_cap: int = DEFAULT_LEVEL_CAP,
) -> DimensionEstimate:
    """Slope of log N versus log(1/delta) over levels i_min..i_max."""
    if not i_max > i_min >= 1:
        raise DomainError("need i_max > i_min >= 1 for a two-point fit")
    if method == "column":
        prof = cover_profile(a, i_max, level_cap)
        pairs = [(i, prof.boxes[i]) for i in range(i_min, i_max + 1)]
    elif method == "square":
        pairs = square_grid_counts(a, i_min, i_max, level_cap=level_cap)
    else:
        raise DomainError(f"unknown box-counting method {method!r}")
    x = np.array([i * math.log(3) for i, _ in pairs])
    y = np.array([math.log(n) for _, n in pairs])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.max(np.abs(y - (slope * x + intercept))))
    return DimensionEstimate(
        slope=float(slope),
        intercept=float(intercept),
        max_residual=resid,
        reference=dimension_reference(a),
        method=method,
    )


def chaos_weights(a: Parameter) -> tuple[float, float, float]:
    """Map probabilities proportional to the area factors (a, 2a-1, a)."""
    af = a.as_float()
    if af <= 0.5:
        raise UnsupportedRegionError(
            f"chaos-game weights need a > 1/2 (got a = {a}): weight 2a-1 must be positive"
        )
    total = 4 * af - 1
    return (af / total, (2 * af - 1) / total, af / total)


def chaos_game(a: Parameter, n: int, burn_in: int = 30, seed: int = 0) -> MassSample:
    """Random IFS iteration from (0,0), keeping points after burn_in steps.

    Maps are drawn with the natural-measure weights; the orbit is within
    3^-burn_in (horizontally) of the attractor when recording starts."""
    if n < 1:
        raise DomainError("need n >= 1 points")
    if burn_in < 0:
        raise DomainError("burn_in must be >= 0")
    w = chaos_weights(a)
    af = a.as_float()
    xs = (1 / 3, -1 / 3, 1 / 3)
    xo = (0.0, 2 / 3, 2 / 3)
    ys = (af, 2 * af - 1, af)
    yo = (0.0, 1 - af, 1 - af)
    rng = np.random.default_rng(seed)
    idx = rng.choice(3, size=burn_in + n, p=w)
    pts = np.empty((n, 2))
    x = y = 0.0
    for t, j in enumerate(idx):
        x = xs[j] * x + xo[j]
        y = ys[j] * y + yo[j]
        if t >= burn_in:
            pts[t - burn_in, 0] = x
            pts[t - burn_in, 1] = y
    return MassSample(a=a, points=pts, weights=w, seed=seed, burn_in=burn_in)


def mass_bound_check(sample: MassSample, grid_level: int, slack: float = 0.2) -> MassBoundReport:
    """Empirical mass per 3^-i grid cell against (12a-3)|U|^s, s = log3(12a-3).

    |U| is the cell diameter sqrt(2) * 3^-i.  Cells whose empirical mass
    exceeds (1 + slack) times the bound are flagged; the check is
    statistical, so a small slack absorbs sampling noise."""
    if grid_level < 1:
        raise DomainError("grid_level must be >= 1")
    if len(sample.points) == 0:
        raise DomainError("sample is empty")
    af = sample.a.as_float()
    m = 3**grid_level
    edges = np.linspace(0.0, 1.0, m + 1)
    hist, _, _ = np.histogram2d(sample.points[:, 0], sample.points[:, 1], bins=(edges, edges))
    mu = hist / len(sample.points)
    s = math.log(12 * af - 3) / math.log(3)
    bound = (12 * af - 3) * (SQRT2 * 3.0**-grid_level) ** s
    ratios = mu / bound
    flagged = tuple(
        (int(ix), int(iy)) for ix, iy in np.argwhere(ratios > 1 + slack)
    )
    return MassBoundReport(
        grid_level=grid_level,
        bound=bound,
        slack=slack,
        ratios=ratios,
        flagged=flagged,
        max_ratio=float(ratios.max()),
    )
