"""Propagator of a free particle on a segment, computed from eigenmodes and
from phase-weighted sums over reflected classical paths."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BoundaryKind,
    ConfigError,
    EvolutionTime,
    KernelResult,
    NumericPolicy,
    SegmentConfig,
    SeriesTruncationError,
    make_euclidean,
    validate_config,
)
from .kernels import compare_kernels, free_kernel, image_kernel  # noqa: E402
from .spectral import spectral_kernel, trace  # noqa: E402
