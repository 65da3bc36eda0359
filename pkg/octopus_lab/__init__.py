"""octopus-lab: group-algebra Laplacians and spectral gaps on S_n."""

from .algebra import AlgebraElement, TranspositionWeights
from .config import RunConfig
from .kazhdan import KazhdanConfig, KazhdanEstimate
from .reptheory import UnitaryRep, defining_rep, irrep, regular_rep, standard_rep
from .spectral import gap_min, gap_rep, gamma_member
from .symgroup import Partition, Permutation
from .verify import ExperimentReport

__all__ = [
    "AlgebraElement",
    "TranspositionWeights",
    "RunConfig",
    "KazhdanConfig",
    "KazhdanEstimate",
    "UnitaryRep",
    "defining_rep",
    "irrep",
    "regular_rep",
    "standard_rep",
    "gap_min",
    "gap_rep",
    "gamma_member",
    "Partition",
    "Permutation",
    "ExperimentReport",
]
