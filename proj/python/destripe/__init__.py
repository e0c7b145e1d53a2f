"""Column-stripe removal for grayscale images.

Thin Python layer over the C++ core: a nonconvex SCAD-regularized
difference-of-convex model solved by proximal majorization-minimization with
a dual ADMM inner solver, plus convex dADMM/pADMM baselines, an exact 1-D TV
prox, image-quality metrics and seeded synthetic stripe degradation.

All functions accept and return NumPy ``float64`` arrays (2-D images, except
``tv1d_prox`` which is 1-D).
"""

from ._core import (
    ConfigError,
    DimensionError,
    degrade,
    destripe,
    generate_stripes,
    mse,
    objective,
    psnr,
    ssim,
    synthetic_scene,
    tv1d_prox,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "degrade",
    "destripe",
    "generate_stripes",
    "mse",
    "objective",
    "psnr",
    "ssim",
    "synthetic_scene",
    "tv1d_prox",
]

__version__ = "1.0.0"
