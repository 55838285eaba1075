"""Link cost families turned into piecewise-linear marginals."""

from __future__ import annotations

import math

import numpy as np

from src.marginals.functions import MarginalFn


def linear_marginal(a: float, b: float, domain_hi: float) -> MarginalFn:
    """d(f) = a + b·f."""
    return MarginalFn.linear(a, b, domain_hi)


def affine_shifted_marginal(
    a: float, b: float, shift: float, domain_hi: float
) -> MarginalFn:
    """d(f) = a + b·(f - shift); negative intercepts are the caller's problem."""
    return MarginalFn.linear(a - b * shift, b, domain_hi)


def power_marginal(
    a: float, b: float, p: float, domain_hi: float, segments: int
) -> MarginalFn:
    """d(f) = a + b·f^p sampled on a uniform grid (exact for p in {0, 1})."""
    if p == 1.0:
        return MarginalFn.linear(a, b, domain_hi)
    if p == 0.0:
        return MarginalFn.constant(a + b, domain_hi)
    return MarginalFn.sample(lambda f: a + b * np.power(f, p), domain_hi, segments)


def mm1_marginal(
    capacity: float, utilization_cap: float, segments: int
) -> MarginalFn:
    """
    Marginal of the M/M/1 occupancy cost f / (c - f), which is c / (c - f)².

    The pole at f = c is kept out of the domain by stopping at
    utilization_cap·c.
    """
    upper = utilization_cap * capacity
    return MarginalFn.sample(
        lambda f: capacity / np.square(capacity - f), upper, segments
    )


def exponential_marginal(
    bandwidth: float, gain: float, domain_hi: float, segments: int
) -> MarginalFn:
    """
    Marginal of the transmit power (2^(f/W) - 1) / K needed to push rate f
    through a channel of bandwidth W and gain K.
    """
    scale = math.log(2.0) / (gain * bandwidth)
    return MarginalFn.sample(
        lambda f: scale * np.exp2(f / bandwidth), domain_hi, segments
    )
