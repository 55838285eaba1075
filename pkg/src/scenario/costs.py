"""Cost specs to marginal functions and back."""

from __future__ import annotations

import numpy as np

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.marginals import (
    MarginalFn,
    affine_shifted_marginal,
    exponential_marginal,
    linear_marginal,
    mm1_marginal,
    power_marginal,
)
from src.scenario.models import (
    AffineShiftedCost,
    BreakpointCost,
    ConstantCost,
    CostSpec,
    ExponentialCost,
    LinearCost,
    MM1Cost,
    PowerCost,
    SegmentCost,
)


def fit_linearly(fn: MarginalFn, upper: float) -> MarginalFn:
    """Cut ``fn`` at ``upper`` or continue its last segment's line up to it."""
    if upper <= fn.domain_hi:
        return fn.restrict(upper)
    x_lo, x_hi, y_lo, y_hi = fn.segments()[-1]
    slope = (y_hi - y_lo) / (x_hi - x_lo)
    tail = (x_hi, upper, y_hi, y_hi + slope * (upper - x_hi))
    return MarginalFn.from_segments([*fn.segments(), tail])


def build_marginal(
    spec: CostSpec, upper: float, config: Configuration = DEFAULT_CONFIGURATION
) -> MarginalFn:
    """
    Materialize a cost spec on [0, upper].

    M/M/1 marginals ignore ``upper`` and stop at the utilization cap instead.

    Raises:
        ValueError: If the description names no valid function.
    """
    if isinstance(spec, LinearCost):
        return linear_marginal(spec.a, spec.b, upper)
    if isinstance(spec, AffineShiftedCost):
        return affine_shifted_marginal(spec.a, spec.b, spec.shift, upper)
    if isinstance(spec, BreakpointCost):
        xs, ys = zip(*spec.points)
        return fit_linearly(MarginalFn.from_points(xs, ys), upper)
    if isinstance(spec, SegmentCost):
        return fit_linearly(MarginalFn.from_segments(spec.segments), upper)
    if isinstance(spec, MM1Cost):
        cap = spec.utilization_cap or config.utilization_cap
        return mm1_marginal(spec.capacity, cap, config.samples)
    if isinstance(spec, ExponentialCost):
        return exponential_marginal(spec.W, spec.K, upper, config.samples)
    if isinstance(spec, PowerCost):
        return power_marginal(spec.a, spec.b, spec.p, upper, config.samples)
    if isinstance(spec, ConstantCost):
        return MarginalFn.constant(spec.value, upper)
    raise ValueError(f"Unsupported cost kind {getattr(spec, 'kind', spec)!r}")


def to_spec(fn: MarginalFn) -> CostSpec:
    """The smallest spec that rebuilds ``fn`` exactly on its own domain."""
    if fn.n_segments == 1:
        lo, hi = float(fn.y_lo[0]), float(fn.y_hi[0])
        if lo == hi:
            return ConstantCost(value=lo)
        return LinearCost(a=lo, b=(hi - lo) / fn.domain_hi)
    if np.all(fn.jumps == 0.0):
        ys = np.append(fn.y_lo, fn.y_hi[-1])
        return BreakpointCost(points=[(float(x), float(y)) for x, y in zip(fn.x, ys)])
    return SegmentCost(segments=fn.segments())
