from src.marginals.convolution import (
    Convolution,
    GridConvolution,
    MergeConvolution,
    SingleConvolution,
    convolve,
    inf_convolve,
)
from src.marginals.functions import (
    CostIntegral,
    MarginalFn,
    integrate,
    left_limit,
    merge_breakpoints,
    reflect,
    right_limit,
)
from src.marginals.sampling import (
    affine_shifted_marginal,
    exponential_marginal,
    linear_marginal,
    mm1_marginal,
    power_marginal,
)

__all__ = [
    "Convolution",
    "CostIntegral",
    "GridConvolution",
    "MarginalFn",
    "MergeConvolution",
    "SingleConvolution",
    "affine_shifted_marginal",
    "convolve",
    "exponential_marginal",
    "inf_convolve",
    "integrate",
    "left_limit",
    "linear_marginal",
    "merge_breakpoints",
    "mm1_marginal",
    "power_marginal",
    "reflect",
    "right_limit",
]
