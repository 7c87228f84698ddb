"""Kernels on the circle equal to 1 on [-1/4, 1/4] and their Fourier tails."""

from .autoconv import DENSITIES, Density, autoconvolution_norms, self_convolution
from .core import (
    KernelPL,
    KernelStep,
    kernel_from_json,
    mix_with_constant,
    pl_fourier_coeff,
    pl_tail_norm,
    step_tail_norm,
)
from .families import PRESETS, ClosedFormKernel, k1_bound, preset, sample_closed_form
from .optimize import LOWER_BARRIER, OptimizeConfig, OptimizeResult, optimize_kernel
from .zeta import hurwitz_zeta

__all__ = [
    "ClosedFormKernel",
    "DENSITIES",
    "Density",
    "KernelPL",
    "KernelStep",
    "LOWER_BARRIER",
    "OptimizeConfig",
    "OptimizeResult",
    "PRESETS",
    "autoconvolution_norms",
    "hurwitz_zeta",
    "k1_bound",
    "kernel_from_json",
    "mix_with_constant",
    "optimize_kernel",
    "pl_fourier_coeff",
    "pl_tail_norm",
    "preset",
    "sample_closed_form",
    "self_convolution",
    "step_tail_norm",
]
