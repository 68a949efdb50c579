"""Generic rigidity matroids over prime fields, and checks of theorems about them."""

__version__ = "0.1.0"

from .graph import Graph, construct_family
from .graph6 import graph6_decode, graph6_encode
from .rigidity import GenericConfig, RankOracle

__all__ = [
    "GenericConfig",
    "Graph",
    "RankOracle",
    "__version__",
    "construct_family",
    "graph6_decode",
    "graph6_encode",
]
