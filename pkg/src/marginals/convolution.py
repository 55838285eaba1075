"""
Infimal convolution of cost integrals with argmin recovery.

B̂(t) = min over x_1 + ... + x_n = t, x_j >= 0 of Σ_j B_j(x_j).

When every marginal is nondecreasing the convolution is computed exactly by
merging marginal segments in increasing order of level. Otherwise a dynamic
program on a uniform grid is used and the result is piecewise constant on
that grid. Both paths break ties toward the lexicographically smallest
allocation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from src.errors import ConvolutionError
from src.logging import get_logger
from src.marginals.functions import (
    DOMAIN_RTOL,
    CostIntegral,
    FloatArray,
    MarginalFn,
)

logger = get_logger(__name__)

DEFAULT_GRID_STEPS = 2000
_TIE_RTOL = 1e-12


def _check_inputs(costs: Sequence[CostIntegral], t_max: float) -> None:
    if not costs:
        raise ConvolutionError("Infimal convolution needs at least one function")
    if t_max <= 0.0:
        raise ConvolutionError(f"Convolution range must be positive, got {t_max}")
    capacity = sum(c.domain_hi for c in costs)
    if t_max > capacity * (1.0 + DOMAIN_RTOL) + DOMAIN_RTOL:
        raise ConvolutionError(
            f"t_max={t_max} exceeds the combined domain {capacity} of "
            f"{len(costs)} functions"
        )


def _clip_total(t: float, t_max: float) -> float:
    tol = DOMAIN_RTOL * max(1.0, t_max)
    if t < -tol or t > t_max + tol:
        raise ConvolutionError(f"Split requested at {t}, outside [0, {t_max}]")
    return min(max(t, 0.0), t_max)


def _settle(alloc: FloatArray, t: float, caps: FloatArray) -> FloatArray:
    """Push rounding residue onto the last member with room for it."""
    residue = t - float(alloc.sum())
    for j in reversed(range(len(alloc))):
        if residue == 0.0:
            break
        moved = min(max(residue, -alloc[j]), caps[j] - alloc[j])
        alloc[j] += moved
        residue -= moved
    return np.clip(alloc, 0.0, caps)


@dataclass(frozen=True, eq=False)
class Convolution(ABC):
    """Result of an infimal convolution: the aggregate cost plus its splits."""

    members: tuple[CostIntegral, ...]
    t_max: float

    @property
    @abstractmethod
    def marginal(self) -> MarginalFn:
        """Derivative of B̂ on [0, t_max]."""

    @cached_property
    def cost(self) -> CostIntegral:
        return self.marginal.integral

    @property
    def exact(self) -> bool:
        return True

    @cached_property
    def caps(self) -> FloatArray:
        return np.array([m.domain_hi for m in self.members])

    @abstractmethod
    def allocate(self, t: float) -> FloatArray:
        """Minimizing split of t across the members, lexicographically smallest."""


@dataclass(frozen=True, eq=False)
class SingleConvolution(Convolution):
    @cached_property
    def marginal(self) -> MarginalFn:
        return self.members[0].marginal.restrict(self.t_max)

    def allocate(self, t: float) -> FloatArray:
        return np.array([_clip_total(t, self.t_max)])


def _below(fn: MarginalFn, levels: FloatArray, inclusive: bool) -> FloatArray:
    """
    Measure of {r : fn(r) < level} (or <= level when inclusive) for a
    nondecreasing fn, per level.
    """
    y_lo = np.maximum.accumulate(fn.y_lo)
    y_hi = np.maximum.accumulate(np.maximum(fn.y_hi, y_lo))
    side = "right" if inclusive else "left"
    k = np.searchsorted(y_hi, levels, side=side)
    full = k >= fn.n_segments
    kc = np.minimum(k, fn.n_segments - 1)
    lo = y_lo[kc]
    rise = y_hi[kc] - lo
    start = fn.x[kc]
    reached = levels >= lo if inclusive else levels > lo
    ramp = np.where(rise > 0.0, (levels - lo) / np.where(rise > 0.0, rise, 1.0), 0.0)
    partial = start + np.where(reached, np.clip(ramp, 0.0, 1.0), 0.0) * fn.widths[kc]
    return np.where(full, fn.domain_hi, partial)


@dataclass(frozen=True, eq=False)
class MergeConvolution(Convolution):
    """Exact convolution of convex costs by level merging."""

    @cached_property
    def levels(self) -> FloatArray:
        return np.unique(
            np.concatenate(
                [np.concatenate([m.marginal.y_lo, m.marginal.y_hi]) for m in self.members]
            )
        )

    @cached_property
    def _measures(self) -> tuple[FloatArray, FloatArray]:
        below = sum(_below(m.marginal, self.levels, False) for m in self.members)
        upto = sum(_below(m.marginal, self.levels, True) for m in self.members)
        below = np.maximum.accumulate(below)
        upto = np.maximum.accumulate(np.maximum(upto, below))
        return below, upto

    @cached_property
    def marginal(self) -> MarginalFn:
        levels = self.levels
        below, upto = self._measures
        n = len(levels)
        # Flat piece at level k spans [below_k, upto_k]; the ramp to level
        # k+1 spans [upto_k, below_{k+1}].
        starts = np.empty(2 * n - 1)
        ends = np.empty(2 * n - 1)
        lo = np.empty(2 * n - 1)
        hi = np.empty(2 * n - 1)
        starts[0::2], ends[0::2] = below, upto
        lo[0::2] = hi[0::2] = levels
        starts[1::2], ends[1::2] = upto[:-1], below[1:]
        lo[1::2], hi[1::2] = levels[:-1], levels[1:]

        total = float(upto[-1])
        keep = ends - starts > DOMAIN_RTOL * max(1.0, total)
        ends, lo, hi = ends[keep], lo[keep], hi[keep]
        x = np.concatenate([[0.0], ends])
        return MarginalFn(x, lo, hi).restrict(self.t_max)

    def level_at(self, t: float) -> float:
        """The marginal level λ at which the aggregate measure reaches t."""
        levels = self.levels
        below, upto = self._measures
        k = int(np.searchsorted(upto, t, side="left"))
        if k >= len(levels):
            return float(levels[-1])
        if below[k] <= t or k == 0:
            return float(levels[k])
        span = below[k] - upto[k - 1]
        frac = (t - upto[k - 1]) / span if span > 0.0 else 1.0
        return float(levels[k - 1] + frac * (levels[k] - levels[k - 1]))

    def allocate(self, t: float) -> FloatArray:
        t = _clip_total(t, self.t_max)
        level = np.array([self.level_at(t)])
        base = np.array([_below(m.marginal, level, False)[0] for m in self.members])
        room = (
            np.array([_below(m.marginal, level, True)[0] for m in self.members]) - base
        )
        alloc = base.copy()
        remainder = t - float(base.sum())
        for j in reversed(range(len(alloc))):
            if remainder <= 0.0:
                break
            take = min(room[j], remainder)
            alloc[j] += take
            remainder -= take
        return _settle(alloc, t, self.caps)


@dataclass(frozen=True, eq=False)
class GridConvolution(Convolution):
    """Dynamic program over a uniform grid of ``steps`` cells on [0, t_max]."""

    steps: int = DEFAULT_GRID_STEPS
    _choices: list = field(default_factory=list, init=False, repr=False)

    @property
    def exact(self) -> bool:
        return False

    @cached_property
    def grid(self) -> FloatArray:
        return np.linspace(0.0, self.t_max, self.steps + 1)

    @cached_property
    def step(self) -> float:
        return self.t_max / self.steps

    def _tabulate(self, cost: CostIntegral) -> FloatArray:
        reach = self.grid <= cost.domain_hi * (1.0 + DOMAIN_RTOL)
        values = np.full(len(self.grid), np.inf)
        values[reach] = cost(np.minimum(self.grid[reach], cost.domain_hi))
        return values

    @cached_property
    def values(self) -> FloatArray:
        """B̂ at the grid points."""
        tables = [self._tabulate(m) for m in self.members]
        best_tail = tables[-1]
        choices: list[np.ndarray] = [None] * (len(tables) - 1)
        for j in range(len(tables) - 2, -1, -1):
            head = tables[j]
            best = np.full_like(best_tail, np.inf)
            arg = np.zeros(len(best_tail), dtype=np.intp)
            for s in range(len(head)):
                if not np.isfinite(head[s]):
                    break
                cand = head[s] + best_tail[: len(head) - s]
                target = best[s:]
                bar = np.full_like(target, np.inf)
                known = np.isfinite(target)
                bar[known] = target[known] - _TIE_RTOL * (1.0 + np.abs(target[known]))
                better = cand < bar
                target[better] = cand[better]
                arg[s:][better] = s
            choices[j] = arg
            best_tail = best
        self._choices[:] = choices
        if not np.all(np.isfinite(best_tail)):
            raise ConvolutionError("Grid convolution left unreachable totals")
        return best_tail

    @cached_property
    def marginal(self) -> MarginalFn:
        slopes = np.diff(self.values) / self.step
        return MarginalFn(self.grid, slopes, slopes)

    def allocate(self, t: float) -> FloatArray:
        t = _clip_total(t, self.t_max)
        _ = self.values
        remaining = int(round(t / self.step))
        alloc = np.zeros(len(self.members))
        for j, arg in enumerate(self._choices):
            s = int(arg[remaining])
            alloc[j] = s * self.step
            remaining -= s
        alloc[-1] = remaining * self.step
        return _settle(np.minimum(alloc, self.caps), t, self.caps)


def convolve(
    costs: Sequence[CostIntegral],
    t_max: float,
    grid_steps: Optional[int] = None,
    force_grid: bool = False,
) -> Convolution:
    """
    Infimal convolution of ``costs`` over [0, t_max].

    Args:
        costs: Member cost integrals, each starting at 0.
        t_max: Largest total to split; at most the sum of member domains.
        grid_steps: Cells of the grid used when some marginal decreases.
        force_grid: Use the grid program even for convex members.

    Returns:
        A Convolution exposing the aggregate cost, its marginal and splits.

    Raises:
        ConvolutionError: On an empty list or a t_max beyond the domains.
    """
    costs = tuple(costs)
    _check_inputs(costs, t_max)
    steps = grid_steps or DEFAULT_GRID_STEPS
    if len(costs) == 1 and not force_grid:
        return SingleConvolution(costs, t_max)
    if not force_grid and all(c.marginal.is_nondecreasing() for c in costs):
        return MergeConvolution(costs, t_max)
    logger.debug(
        "Grid convolution of %s functions on [0, %s] with %s steps",
        len(costs),
        t_max,
        steps,
    )
    return GridConvolution(costs, t_max, steps)


def inf_convolve(
    costs: Sequence[CostIntegral],
    t_max: float,
    grid_steps: Optional[int] = None,
) -> CostIntegral:
    """B̂ = min over splits of Σ_j B_j, as a cost integral on [0, t_max]."""
    return convolve(costs, t_max, grid_steps).cost
