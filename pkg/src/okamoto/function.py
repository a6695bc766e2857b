"""Construction and evaluation of the Okamoto function family F_a.

Three equivalent views of the same object:
  * the inductive piecewise-affine iterations f_i on the grids k/3^i,
  * a digit series over the ternary expansion of x, evaluated with a
    certified tail bound,
  * the iterated function system of three plane contractions whose unique
    invariant set is the graph of F_a.

Everything runs in one of two arithmetic modes: exact rationals (Fraction)
or floats (numpy for bulk vertex work).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PrecisionError, ResourceError
from .ternary import TernaryExpansion

#: Largest construction level materialised by default (3^16 + 1 vertices).
DEFAULT_LEVEL_CAP = 16


@dataclass(frozen=True)
class Parameter:
    """The family parameter a in (0,1), carrying its arithmetic mode."""

    value: Fraction | float

    def __post_init__(self):
        if not 0 < self.value < 1:
            raise DomainError(f"parameter a = {self.value} must lie strictly inside (0, 1)")

    @property
    def mode(self) -> str:
        return "exact" if isinstance(self.value, Fraction) else "float"

    @property
    def a(self) -> Fraction | float:
        return self.value

    def as_float(self) -> float:
        return float(self.value)

    def is_exactly(self, p: int, q: int) -> bool:
        """Whether a equals p/q in this parameter's own arithmetic."""
        if self.mode == "exact":
            return self.value == Fraction(p, q)
        return self.value == p / q

    @classmethod
    def parse(cls, text: str, exact: bool = False) -> "Parameter":
        """Parse 'p/q' (always exact) or a decimal (exact only on request)."""
        text = text.strip()
        if "/" in text or exact:
            return cls(Fraction(text))
        return cls(float(text))

    def __str__(self) -> str:
        if self.mode == "exact":
            return f"{self.value.numerator}/{self.value.denominator}"
        return f"{self.value:.17g}"


@dataclass(frozen=True)
class IterationGraph:
    """Level-i approximant: vertex[k] = f_i(k / 3**i), 3**i + 1 vertices."""

    level: int
    vertices: Sequence
    a: Parameter

    def __post_init__(self):
        if len(self.vertices) != 3**self.level + 1:
            raise DomainError(
                f"level {self.level} graph needs {3**self.level + 1} vertices, "
                f"got {len(self.vertices)}"
            )


@dataclass(frozen=True)
class AffineMap2D:
    """One plane contraction w(x, y) = (sx*x + tx, sy*y + ty)."""

    index: int
    x_scale: Fraction | float
    x_offset: Fraction | float
    y_scale: Fraction | float
    y_offset: Fraction | float

    def __call__(self, x, y):
        return (self.x_scale * x + self.x_offset, self.y_scale * y + self.y_offset)


@dataclass(frozen=True)
class EvalResult:
    """A function value together with its certified error bound."""

    value: Fraction | float
    error_bound: Fraction | float
    digits_used: int


def level_zero(a: Parameter) -> IterationGraph:
    """f_0 is the identity: vertices [0, 1]."""
    if a.mode == "exact":
        return IterationGraph(0, [Fraction(0), Fraction(1)], a)
    return IterationGraph(0, np.array([0.0, 1.0]), a)


def refine(g: IterationGraph, a: Parameter) -> IterationGraph:
    """One inductive step: each affine segment (yL, yR) is replaced by three,

    with new interior vertices yL + a*(yR-yL) and yL + (1-a)*(yR-yL); all
    existing grid values are preserved exactly.
    """
    if a != g.a:
        raise DomainError("refine called with a different parameter than the graph's")
    if a.mode == "float":
        v = np.asarray(g.vertices, dtype=float)
        af = a.as_float()
        d = np.diff(v)
        out = np.empty(3 * (len(v) - 1) + 1)
        out[0::3] = v
        out[1::3] = v[:-1] + af * d
        out[2::3] = v[:-1] + (1 - af) * d
        return IterationGraph(g.level + 1, out, a)
    av = a.value
    out = []
    v = g.vertices
    for yl, yr in zip(v[:-1], v[1:]):
        delta = yr - yl
        out.extend((yl, yl + av * delta, yl + (1 - av) * delta))
    out.append(v[-1])
    return IterationGraph(g.level + 1, out, a)


def construct_iteration(a: Parameter, i: int, level_cap: int = DEFAULT_LEVEL_CAP) -> IterationGraph:
    """i-fold refinement of the identity graph."""
    if i < 0:
        raise DomainError("level must be >= 0")
    if i > level_cap:
        raise ResourceError(f"level {i} exceeds cap {level_cap} (3^{i}+1 vertices)")
    g = level_zero(a)
    for _ in range(i):
        g = refine(g, a)
    return g


def sample_graph(a: Parameter, i: int, level_cap: int = DEFAULT_LEVEL_CAP) -> list[tuple]:
    """Polyline of f_i: the 3**i + 1 points (k/3**i, vertex[k]) in x order."""
    g = construct_iteration(a, i, level_cap)
    n = 3**i
    if a.mode == "exact":
        return [(Fraction(k, n), y) for k, y in enumerate(g.vertices)]
    return [(k / n, float(y)) for k, y in enumerate(g.vertices)]


def eval_digit_series(a: Parameter, x: TernaryExpansion, tol) -> EvalResult:
    """Evaluate F_a at x from its ternary digits, with a certified bound.

    F_a(0.d1 d2 ...) = sum over p of o(d_p) * prod_{q<p} m(d_q), where
    o(0)=0, o(1)=a, o(2)=1-a and m(0)=m(2)=a, m(1)=1-2a.  The tail after p
    digits is bounded by |prod| * max(a,1-a) / (1 - max(a,|1-2a|)); the sum
    stops as soon as that certificate drops below tol.  Terminating
    expansions (and the all-2s expansion of 1) are evaluated exactly.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    av = a.value
    zero = av * 0
    one = zero + 1
    if x.is_one:
        return EvalResult(one, zero, 0)
    offsets = (zero, av, 1 - av)
    mults = (av, 1 - 2 * av, av)
    tail_coeff = max(av, 1 - av) / (1 - max(av, abs(1 - 2 * av)))
    digits = x.digits
    if not x.is_truncation:
        # trailing zeros contribute nothing; stop at the last nonzero digit
        last = 0
        for p, d in enumerate(digits, start=1):
            if d:
                last = p
        digits = digits[:last]
    value = zero
    prod = one
    bound = abs(prod) * tail_coeff
    used = 0
    for d in digits:
        value += prod * offsets[d]
        prod *= mults[d]
        used += 1
        bound = abs(prod) * tail_coeff
        if prod == 0:
            return EvalResult(value, zero, used)
        if bound < tol:
            return EvalResult(value, bound, used)
    if not x.is_truncation:
        # trailing zeros contribute nothing: the value is exact
        return EvalResult(value, zero, used)
    raise PrecisionError(
        f"{used} digits certify only {float(bound):.3g}, above tol {float(tol):.3g}",
        achievable=float(bound),
    )


def ifs_maps(a: Parameter) -> tuple[AffineMap2D, AffineMap2D, AffineMap2D]:
    """The three contractions whose invariant set is the graph of F_a.

    w1(x,y) = (x/3, a y)
    w2(x,y) = ((2-x)/3, (2a-1) y + (1-a))
    w3(x,y) = ((2+x)/3, a y + (1-a))
    """
    av = a.value
    if a.mode == "exact":
        third, two_thirds = Fraction(1, 3), Fraction(2, 3)
        zero = Fraction(0)
    else:
        third, two_thirds, zero = 1 / 3, 2 / 3, 0.0
    return (
        AffineMap2D(1, third, zero, av, zero),
        AffineMap2D(2, -third, two_thirds, 2 * av - 1, 1 - av),
        AffineMap2D(3, third, two_thirds, av, 1 - av),
    )
