"""Numerical Picard iteration for ODE initial value problems.

Three solvers share one set of building blocks: a fixed reference set solved
by collocation and successive substitution, a growing set of orthogonal
polynomial roots, and a damped (stabilised) iteration for stiff problems.
"""

from .core import (
    EndpointVariant,
    EvalCounter,
    Method,
    OdeProblem,
    SolutionTrace,
    SolverConfig,
    max_error,
)
from .errors import ConfigError, DivergenceError, InvalidNodesError, PicardError
from .families import Family
from .fixed import solve_fixed
from .harness import run_experiment, solve
from .problems import get_problem
from .refset import ReferenceSet, build_reference_set, map_to_interval
from .stiff import solve_stiff
from .variable import solve_variable

__all__ = [
    "ConfigError",
    "DivergenceError",
    "EndpointVariant",
    "EvalCounter",
    "Family",
    "InvalidNodesError",
    "Method",
    "OdeProblem",
    "PicardError",
    "ReferenceSet",
    "SolutionTrace",
    "SolverConfig",
    "build_reference_set",
    "get_problem",
    "map_to_interval",
    "max_error",
    "run_experiment",
    "solve",
    "solve_fixed",
    "solve_stiff",
    "solve_variable",
]

__version__ = "0.1.0"
