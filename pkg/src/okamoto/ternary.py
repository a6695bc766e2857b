"""Base-3 digit machinery: expansions, canonical conventions, digit statistics.

Points of [0,1] are addressed by their ternary expansion x = 0.d1 d2 d3...
Two conventions are fixed once and for all: expansions of ternary rationals
terminate (trailing zeros), and x = 1 is written with every digit equal to 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

# Snap thresholds for float digit extraction.  The remainder is scaled by 3
# at every step, so the guard that recognises "this float really encodes a
# ternary rational" must grow with the depth p: we snap when the remainder is
# within min(3^p * 2^-48, 1e-9) of an integer.  The first term tracks the
# worst-case amplification of the half-ulp representation error, the cap
# keeps false snaps at genuinely irrational points negligible.
_SNAP_SHIFT = 48
_SNAP_CAP_NUM = 1
_SNAP_CAP_DEN = 10**9


@dataclass(frozen=True)
class TernaryExpansion:
    """A finite run of base-3 digits, with flags describing what it stands for.

    ``is_truncation`` is True when the digits are merely a prefix of a longer
    expansion; when False, the trailing digits are all zero by convention and
    the expansion pins down its value exactly.  ``source`` optionally records
    an exact rational origin (k, i) meaning k / 3**i.
    """

    digits: tuple[int, ...]
    is_truncation: bool = True
    source: tuple[int, int] | None = None

    def __post_init__(self):
        if any(d not in (0, 1, 2) for d in self.digits):
            raise DomainError("ternary digits must be 0, 1 or 2")
        if self.source is not None:
            k, i = self.source
            if i < 0 or not 0 <= k <= 3**i:
                raise DomainError(f"source ({k}, {i}) is not a point of [0,1]")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_one(self) -> bool:
        """True when the expansion is known to represent x = 1."""
        return self.source is not None and self.source[0] == 3 ** self.source[1]

    def padded(self, n: int) -> "TernaryExpansion":
        """Extend to n digits using the expansion's known tail.

        Terminating expansions gain zeros; the x = 1 expansion gains 2s.
        A bare truncation has no known tail and cannot be padded.
        """
        if n <= len(self.digits):
            return self
        if self.is_one:
            fill = 2
        elif not self.is_truncation:
            fill = 0
        else:
            raise DomainError("cannot pad a truncated expansion: tail unknown")
        return TernaryExpansion(
            self.digits + (fill,) * (n - len(self.digits)),
            is_truncation=self.is_truncation,
            source=self.source,
        )

    def partial_value(self) -> Fraction:
        """Exact value of the digit prefix, sum of d_p / 3^p."""
        acc = 0
        for d in self.digits:
            acc = 3 * acc + d
        return Fraction(acc, 3 ** len(self.digits))


@dataclass(frozen=True)
class DigitStats:
    """Running count of 1-digits over a prefix of an expansion."""

    n: int
    ones_count: int
    ratio: Fraction
    gamma_estimate: Fraction

    def __post_init__(self):
        if not 0 <= self.ones_count <= self.n:
            raise DomainError("ones_count out of range")


def _extract_digits(num: int, den: int, n: int, snap: bool):
    """Digits of num/den by repeated multiply-by-3, optionally snapping."""
    digits = []
    for p in range(1, n + 1):
        num *= 3
        if snap and num % den:
            m = (2 * num + den) // (2 * den)  # round(num/den)
            diff = abs(num - m * den)
            if (diff << _SNAP_SHIFT) < den * 3**p and diff * _SNAP_CAP_DEN < den * _SNAP_CAP_NUM:
                num = m * den
        d = num // den
        if d > 2:  # float input snapped up to 1.0 mid-stream
            d = 2
        digits.append(d)
        num -= d * den
        if num == 0:
            digits.extend([0] * (n - p))
            return digits, True
    return digits, False


def to_ternary(x, n: int) -> TernaryExpansion:
    """First n ternary digits of x in [0,1].

    Exact inputs (Fraction/int) are expanded exactly; floats go through the
    snap guard so that binary representations of ternary rationals come out
    terminating.  x = 1 yields all 2s.
    """
    if n < 1:
        raise DomainError("digit count must be >= 1")
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} outside [0, 1]")
    if x == 1:
        return TernaryExpansion((2,) * n, is_truncation=True, source=(3**n, n))
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
        snap = False
    elif isinstance(x, int):
        num, den, snap = x, 1, False
    else:
        num, den = float(x).as_integer_ratio()
        snap = True
    digits, terminated = _extract_digits(num, den, n, snap)
    source = None
    if terminated:
        k = 0
        depth = 0
        for p, d in enumerate(digits, start=1):
            k = 3 * k + d
            if d:
                depth = p
        source = (k // 3 ** (n - depth), depth)
    return TernaryExpansion(tuple(digits), is_truncation=not terminated, source=source)


def ternary_rational(k: int, i: int) -> TernaryExpansion:
    """Canonical expansion of k / 3**i with i digits.

    k = 3**i stands for x = 1 and comes out as all 2s (a truncation of the
    infinite all-2s expansion, tagged with its exact source).
    """
    if i < 0 or not 0 <= k <= 3**i:
        raise DomainError(f"k = {k} out of range for level i = {i}")
    if k == 3**i:
        return TernaryExpansion((2,) * i, is_truncation=True, source=(k, i))
    ds = []
    kk = k
    for _ in range(i):
        kk, r = divmod(kk, 3)
        ds.append(r)
    ds.reverse()
    return TernaryExpansion(tuple(ds), is_truncation=False, source=(k, i))


def digit_stats(e: TernaryExpansion, n: int) -> DigitStats:
    """Count of 1-digits among the first n digits, with a liminf proxy.

    gamma_estimate is min over m in [ceil(n/2), n] of ones(m)/m: a finite
    stand-in for liminf ones(n)/n that ignores early-digit noise.
    """
    if n == 0:
        raise DomainError("prefix length must be >= 1")
    if n > len(e.digits):
        raise DomainError(f"prefix length {n} exceeds expansion length {len(e.digits)}")
    ones = 0
    gamma = None
    lo = math.ceil(n / 2)
    for m, d in enumerate(e.digits[:n], start=1):
        if d == 1:
            ones += 1
        if m >= lo:
            r = Fraction(ones, m)
            if gamma is None or r < gamma:
                gamma = r
    return DigitStats(n=n, ones_count=ones, ratio=Fraction(ones, n), gamma_estimate=gamma)
