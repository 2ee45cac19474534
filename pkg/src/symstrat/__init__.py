"""Multiplicity strata of symmetric powers and their homological stability."""

from .graded import GradedDim
from .manifolds import ManifoldModel, euclidean, load_manifold
from .partitions import Partition, collapses_by_depth

__all__ = ["GradedDim", "ManifoldModel", "Partition", "collapses_by_depth", "euclidean", "load_manifold"]
__version__ = "0.1.0"
