"""Exact matching in red/blue edge-colored graphs via parity-constrained matching."""

from .bcpm import solve_bcpm_bipartite, solve_bcpm_bruteforce
from .colorcoding import color_coding_search
from .cpm import decide_cpm, solve_cpm
from .errors import BudgetExceeded, InputError, NegativeCycleError
from .graph import AlternatingCycle, AlternatingCycleSet, Color, ColoredGraph, PerfectMatching
from .mocp import WeightedDigraph, solve_mocp
from .solver import SolverConfig, SolverOutcome, solve_em, solve_em_approx

__version__ = "0.1.0"

__all__ = [
    "AlternatingCycle",
    "AlternatingCycleSet",
    "BudgetExceeded",
    "Color",
    "ColoredGraph",
    "InputError",
    "NegativeCycleError",
    "PerfectMatching",
    "SolverConfig",
    "SolverOutcome",
    "WeightedDigraph",
    "color_coding_search",
    "decide_cpm",
    "solve_bcpm_bipartite",
    "solve_bcpm_bruteforce",
    "solve_cpm",
    "solve_em",
    "solve_em_approx",
    "solve_mocp",
]
