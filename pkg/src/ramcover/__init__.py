"""Matchings and covers in edge-colored complete graphs."""

from ramcover.errors import Inapplicable, InvariantError, LimitExceeded, RamcoverError
from ramcover.graph import (
    DeficiencyWitness,
    Graph,
    Matching,
    berge_witness,
    brute_force_max_matching,
    deficiency,
    matching_number,
    max_matching,
    odd_components,
)
from ramcover.colorings import (
    EdgeColoring,
    cockayne_lorimer_coloring,
    extremal_main_coloring,
    nb_coloring,
    partition_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "DeficiencyWitness",
    "EdgeColoring",
    "Graph",
    "Inapplicable",
    "InvariantError",
    "LimitExceeded",
    "Matching",
    "RamcoverError",
    "berge_witness",
    "brute_force_max_matching",
    "cockayne_lorimer_coloring",
    "deficiency",
    "extremal_main_coloring",
    "matching_number",
    "max_matching",
    "nb_coloring",
    "odd_components",
    "partition_coloring",
]
