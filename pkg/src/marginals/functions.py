"""
Piecewise-linear marginal functions and their integrals.

A MarginalFn stores breakpoints ``x`` (starting at 0) and, per segment,
the values at its left and right ends. Values at adjacent segment ends
may differ, which is how jump discontinuities are represented. Link cost
derivatives, announced price derivatives, competitor aggregates and node
forwarding marginals all use this one type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.errors import DomainError

FloatArray = NDArray[np.float64]
Scalar = Union[float, np.floating]

DOMAIN_RTOL = 1e-12
SHAPE_SLACK = 1e-9


def _frozen(values: ArrayLike) -> FloatArray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def _as_output(values: FloatArray, scalar: bool):
    return float(values) if scalar else values


def merge_breakpoints(*grids: ArrayLike, upper: float) -> FloatArray:
    """Sorted union of breakpoint grids cut at ``upper``, near-duplicates dropped."""
    points = np.union1d(
        np.concatenate([np.asarray(g, dtype=float) for g in grids]), [0.0, upper]
    )
    points = points[(points >= 0.0) & (points <= upper)]
    tol = DOMAIN_RTOL * max(1.0, upper)
    keep = np.concatenate([[True], np.diff(points) > tol])
    points = points[keep]
    points[-1] = upper
    if len(points) > 2 and points[-1] - points[-2] <= tol:
        points = np.delete(points, -2)
    return points


@dataclass(frozen=True, eq=False)
class MarginalFn:
    """
    Piecewise-linear function on [0, domain_hi], jumps allowed at breakpoints.

    Segment k covers [x[k], x[k+1]] and runs linearly from y_lo[k] to
    y_hi[k]. Evaluation at a breakpoint returns the right limit, and the
    left limit at domain_hi.
    """

    x: FloatArray
    y_lo: FloatArray
    y_hi: FloatArray

    def __post_init__(self) -> None:
        x = _frozen(self.x)
        y_lo = _frozen(self.y_lo)
        y_hi = _frozen(self.y_hi)
        if x.ndim != 1 or len(x) < 2:
            raise ValueError("A marginal function needs at least one segment")
        if y_lo.shape != (len(x) - 1,) or y_hi.shape != (len(x) - 1,):
            raise ValueError("Expected one (y_lo, y_hi) pair per segment")
        if x[0] != 0.0:
            raise ValueError(f"Breakpoints must start at 0, got {x[0]}")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("Breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(y_lo)) and np.all(np.isfinite(y_hi))):
            raise ValueError("Marginal values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y_lo", y_lo)
        object.__setattr__(self, "y_hi", y_hi)

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def constant(cls, value: float, domain_hi: float) -> MarginalFn:
        return cls([0.0, domain_hi], [value], [value])

    @classmethod
    def linear(cls, intercept: float, slope: float, domain_hi: float) -> MarginalFn:
        """f(r) = intercept + slope * r."""
        return cls([0.0, domain_hi], [intercept], [intercept + slope * domain_hi])

    @classmethod
    def from_points(cls, xs: Sequence[float], ys: Sequence[float]) -> MarginalFn:
        """Continuous interpolant through (xs, ys); xs must start at 0."""
        ys = np.asarray(ys, dtype=float)
        return cls(xs, ys[:-1], ys[1:])

    @classmethod
    def from_segments(
        cls, segments: Iterable[Sequence[float]]
    ) -> MarginalFn:
        """Build from (x_lo, x_hi, y_lo, y_hi) rows that tile [0, x_hi_last]."""
        rows = np.asarray(list(segments), dtype=float)
        if rows.ndim != 2 or rows.shape[1] != 4 or len(rows) == 0:
            raise ValueError("Segments must be rows of (x_lo, x_hi, y_lo, y_hi)")
        gaps = np.abs(rows[1:, 0] - rows[:-1, 1])
        if np.any(gaps > DOMAIN_RTOL * max(1.0, rows[-1, 1])):
            raise ValueError("Segments must be contiguous")
        x = np.concatenate([rows[:, 0], rows[-1:, 1]])
        return cls(x, rows[:, 2], rows[:, 3])

    @classmethod
    def sample(
        cls,
        func: Callable[[FloatArray], ArrayLike],
        domain_hi: float,
        segments: int,
    ) -> MarginalFn:
        """Continuous piecewise-linear interpolant of ``func`` on a uniform grid."""
        xs = np.linspace(0.0, domain_hi, segments + 1)
        return cls.from_points(xs, np.asarray(func(xs), dtype=float))

    # ------------------------------------------------------------------
    # structure

    @property
    def domain_hi(self) -> float:
        return float(self.x[-1])

    @property
    def n_segments(self) -> int:
        return len(self.y_lo)

    @property
    def widths(self) -> FloatArray:
        return np.diff(self.x)

    @property
    def slopes(self) -> FloatArray:
        return (self.y_hi - self.y_lo) / self.widths

    @property
    def jumps(self) -> FloatArray:
        """Right limit minus left limit at each interior breakpoint."""
        return self.y_lo[1:] - self.y_hi[:-1]

    def segments(self) -> list[tuple[float, float, float, float]]:
        return [
            (float(a), float(b), float(lo), float(hi))
            for a, b, lo, hi in zip(self.x[:-1], self.x[1:], self.y_lo, self.y_hi)
        ]

    @cached_property
    def integral(self) -> CostIntegral:
        return CostIntegral(self)

    # ------------------------------------------------------------------
    # evaluation

    def _domain_tol(self) -> float:
        return DOMAIN_RTOL * max(1.0, self.domain_hi)

    def _checked(self, t: ArrayLike) -> FloatArray:
        t = np.asarray(t, dtype=float)
        tol = self._domain_tol()
        if np.any(t < -tol) or np.any(t > self.domain_hi + tol):
            raise DomainError(
                f"Evaluation outside [0, {self.domain_hi}]: "
                f"min={np.min(t)}, max={np.max(t)}"
            )
        return np.clip(t, 0.0, self.domain_hi)

    def segment_index(self, t: ArrayLike, side: str = "right") -> NDArray[np.intp]:
        """Index of the segment that supplies the ``side`` limit at t."""
        idx = np.searchsorted(self.x, t, side=side) - 1
        return np.clip(idx, 0, self.n_segments - 1)

    def _line(self, k: NDArray[np.intp], t: FloatArray) -> FloatArray:
        x0 = self.x[k]
        return self.y_lo[k] + (self.y_hi[k] - self.y_lo[k]) * (t - x0) / (
            self.x[k + 1] - x0
        )

    def __call__(self, t: ArrayLike):
        scalar = np.ndim(t) == 0
        t = self._checked(t)
        return _as_output(self._line(self.segment_index(t, "right"), t), scalar)

    def left_limit(self, t: ArrayLike):
        scalar = np.ndim(t) == 0
        t = self._checked(t)
        if np.any(t <= 0.0):
            raise DomainError("Left limit requires t > 0")
        return _as_output(self._line(self.segment_index(t, "left"), t), scalar)

    def right_limit(self, t: ArrayLike):
        scalar = np.ndim(t) == 0
        t = self._checked(t)
        if np.any(t >= self.domain_hi):
            raise DomainError(f"Right limit requires t < {self.domain_hi}")
        return _as_output(self._line(self.segment_index(t, "right"), t), scalar)

    def values_on(self, xs: ArrayLike) -> tuple[FloatArray, FloatArray]:
        """
        Segment end values over a refinement ``xs`` of the breakpoints.

        Each new segment takes the line of the original segment containing
        its midpoint, so jumps stay at their original positions.
        """
        xs = np.asarray(xs, dtype=float)
        mids = 0.5 * (xs[:-1] + xs[1:])
        k = self.segment_index(mids, "right")
        return self._line(k, xs[:-1]), self._line(k, xs[1:])

    def refined(self, xs: ArrayLike) -> MarginalFn:
        xs = merge_breakpoints(xs, self.x, upper=self.domain_hi)
        lo, hi = self.values_on(xs)
        return MarginalFn(xs, lo, hi)

    def integrate(self, a: float, b: float) -> float:
        """Exact integral over [a, b]."""
        if a > b:
            raise DomainError(f"Integration bounds out of order: {a} > {b}")
        return self.integral(b) - self.integral(a)

    # ------------------------------------------------------------------
    # transformations

    def restrict(self, upper: float) -> MarginalFn:
        """The same function on [0, upper]."""
        tol = self._domain_tol()
        if upper <= 0.0 or upper > self.domain_hi + tol:
            raise DomainError(
                f"Cannot restrict [0, {self.domain_hi}] to [0, {upper}]"
            )
        if upper >= self.domain_hi - tol:
            return self
        k = int(self.segment_index(upper, "left"))
        x = np.concatenate([self.x[: k + 1], [upper]])
        y_hi = np.concatenate(
            [self.y_hi[:k], [self._line(np.array([k]), np.array([upper]))[0]]]
        )
        return MarginalFn(x, self.y_lo[: k + 1], y_hi)

    def extend(self, upper: float) -> MarginalFn:
        """Continue with the left limit at domain_hi as a constant up to ``upper``."""
        if upper <= self.domain_hi + self._domain_tol():
            return self
        last = self.y_hi[-1]
        return MarginalFn(
            np.append(self.x, upper),
            np.append(self.y_lo, last),
            np.append(self.y_hi, last),
        )

    def shift(self, offset: float) -> MarginalFn:
        """g(t) = f(t + offset) on [0, domain_hi - offset]."""
        if offset <= 0.0:
            return self
        if offset >= self.domain_hi - self._domain_tol():
            raise DomainError(
                f"Shift {offset} leaves nothing of [0, {self.domain_hi}]"
            )
        k = int(self.segment_index(offset, "right"))
        first = self._line(np.array([k]), np.array([offset]))[0]
        x = np.concatenate([[offset], self.x[k + 1 :]]) - offset
        x[0] = 0.0
        return MarginalFn(
            x, np.concatenate([[first], self.y_lo[k + 1 :]]), self.y_hi[k:]
        )

    def reflect(self, upper: float) -> MarginalFn:
        """g(r) = f(upper - r) on [0, upper]."""
        part = self.restrict(upper)
        x = part.domain_hi - part.x[::-1]
        x[0] = 0.0
        return MarginalFn(x, part.y_hi[::-1], part.y_lo[::-1])

    def add(self, other: MarginalFn) -> MarginalFn:
        """Pointwise sum on the common domain."""
        upper = min(self.domain_hi, other.domain_hi)
        xs = merge_breakpoints(self.x, other.x, upper=upper)
        lo_a, hi_a = self.values_on(xs)
        lo_b, hi_b = other.values_on(xs)
        return MarginalFn(xs, lo_a + lo_b, hi_a + hi_b)

    def plus_constant(self, value: float) -> MarginalFn:
        return MarginalFn(self.x, self.y_lo + value, self.y_hi + value)

    # ------------------------------------------------------------------
    # shape

    def min_value(self) -> float:
        return float(min(self.y_lo.min(), self.y_hi.min()))

    def max_value(self) -> float:
        return float(max(self.y_lo.max(), self.y_hi.max()))

    def _slack(self, slack: float) -> float:
        return slack * max(1.0, float(np.max(np.abs(self.y_lo))), float(np.max(np.abs(self.y_hi))))

    def is_continuous(self, slack: float = SHAPE_SLACK) -> bool:
        return bool(np.all(np.abs(self.jumps) <= self._slack(slack)))

    def is_nondecreasing(self, slack: float = SHAPE_SLACK) -> bool:
        s = self._slack(slack)
        return bool(np.all(self.y_hi - self.y_lo >= -s) and np.all(self.jumps >= -s))

    def is_strictly_increasing(self) -> bool:
        return bool(np.all(self.y_hi > self.y_lo) and np.all(self.jumps >= 0.0))

    def is_strictly_decreasing(self) -> bool:
        return bool(np.all(self.y_hi < self.y_lo) and np.all(self.jumps <= 0.0))

    def _slope_slack(self, slack: float) -> float:
        return slack * max(1.0, float(np.max(np.abs(self.slopes))))

    def is_concave(self, slack: float = SHAPE_SLACK) -> bool:
        """Continuous with nonincreasing segment slopes."""
        return self.is_continuous(slack) and bool(
            np.all(np.diff(self.slopes) <= self._slope_slack(slack))
        )

    def is_convex(self, slack: float = SHAPE_SLACK) -> bool:
        """Continuous with nondecreasing segment slopes."""
        return self.is_continuous(slack) and bool(
            np.all(np.diff(self.slopes) >= -self._slope_slack(slack))
        )

    def allclose(self, other: MarginalFn, atol: float) -> bool:
        """Both one-sided values agree on every refined segment."""
        if abs(self.domain_hi - other.domain_hi) > atol:
            return False
        xs = merge_breakpoints(self.x, other.x, upper=min(self.domain_hi, other.domain_hi))
        lo_a, hi_a = self.values_on(xs)
        lo_b, hi_b = other.values_on(xs)
        return bool(
            np.all(np.abs(lo_a - lo_b) <= atol) and np.all(np.abs(hi_a - hi_b) <= atol)
        )

    def __repr__(self) -> str:
        return (
            f"MarginalFn(domain_hi={self.domain_hi:.6g}, "
            f"segments={self.n_segments}, range=[{self.min_value():.6g}, "
            f"{self.max_value():.6g}])"
        )


@dataclass(frozen=True, eq=False)
class CostIntegral:
    """
    B(t) = ∫₀ᵗ β(r) dr for a marginal β, with cumulative values cached at
    the breakpoints so each evaluation is one trapezoid.
    """

    marginal: MarginalFn

    @cached_property
    def cumulative(self) -> FloatArray:
        m = self.marginal
        return _frozen(
            np.concatenate([[0.0], np.cumsum(0.5 * (m.y_lo + m.y_hi) * m.widths)])
        )

    @property
    def domain_hi(self) -> float:
        return self.marginal.domain_hi

    def __call__(self, t: ArrayLike):
        scalar = np.ndim(t) == 0
        m = self.marginal
        t = m._checked(t)
        k = m.segment_index(t, "right")
        value_at_t = m._line(k, t)
        out = self.cumulative[k] + 0.5 * (t - m.x[k]) * (m.y_lo[k] + value_at_t)
        return _as_output(out, scalar)

    def total(self) -> float:
        return float(self.cumulative[-1])

    def __repr__(self) -> str:
        return f"CostIntegral({self.marginal!r})"


def integrate(f: MarginalFn, a: float, b: float) -> float:
    return f.integrate(a, b)


def left_limit(f: MarginalFn, x: Scalar) -> float:
    return f.left_limit(x)


def right_limit(f: MarginalFn, x: Scalar) -> float:
    return f.right_limit(x)


def reflect(f: MarginalFn, upper: float) -> MarginalFn:
    return f.reflect(upper)
