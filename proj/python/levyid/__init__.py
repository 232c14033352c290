"""Identify drift, diffusion and stable-jump parameters of SDEs from sample pairs."""

from ._core import (
    StageError,
    bias_correction,
    builtin_models,
    estimate_jump,
    example_dictionary,
    identify,
    levy_kernel_constant,
    sample_stable,
    simulate,
)

__all__ = [
    "StageError",
    "bias_correction",
    "builtin_models",
    "estimate_jump",
    "example_dictionary",
    "identify",
    "levy_kernel_constant",
    "sample_stable",
    "simulate",
]
