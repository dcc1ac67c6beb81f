"""Biased graphs, frame/lift matroids, and exhaustive base-exchange
verification with machine-checkable certificates."""

from .biased import BiasedGraph, LinearClass, bicircular_bias, from_group_labelling, graphic_bias, linear_completion
from .graph import MultiGraph
from .matroid import FrameMatroid, frame_matroid, lift_matroid

__version__ = "0.1.0"

__all__ = [
    "BiasedGraph",
    "FrameMatroid",
    "LinearClass",
    "MultiGraph",
    "bicircular_bias",
    "frame_matroid",
    "from_group_labelling",
    "graphic_bias",
    "lift_matroid",
    "linear_completion",
    "__version__",
]
