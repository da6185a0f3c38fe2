# path: dunkl/__init__.py
"""Numerical Dunkl harmonic analysis: kernels, transforms, translations, Riesz transforms and BMO."""
__version__ = "0.1.0"

from .errors import DunklError  # noqa: E402
from .grid import GridFunction, GridSpec, RadialProfile  # noqa: E402
from .kernel import KernelEvaluator, forward_transform, inverse_transform  # noqa: E402
from .roots import WeightContext, catalog_root_system, generate_group  # noqa: E402

__all__ = [
    "DunklError",
    "GridFunction",
    "GridSpec",
    "KernelEvaluator",
    "RadialProfile",
    "WeightContext",
    "catalog_root_system",
    "forward_transform",
    "generate_group",
    "inverse_transform",
]
