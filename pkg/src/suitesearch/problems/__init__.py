"""Benchmark problems: artificial fitness landscapes and instrumented
numerical functions with statement/branch coverage targets."""

from .artificial import (
    ARTIFICIAL_KINDS,
    DECEPTIVE,
    GRADIENT,
    INFEASIBLE,
    PLATEAU,
    ArtificialProblem,
    rho,
)
from .suts import SUT_NAMES, SutFault, SutProblem, branch_distances

__all__ = [
    "ARTIFICIAL_KINDS",
    "GRADIENT",
    "PLATEAU",
    "DECEPTIVE",
    "INFEASIBLE",
    "ArtificialProblem",
    "rho",
    "SUT_NAMES",
    "SutProblem",
    "SutFault",
    "branch_distances",
    "InputSpec",
]

from .base import InputSpec
