"""Two-stage safety regulation game: equilibrium solver, grid oracle, sweeps,
bargaining over the revenue share, and Pareto analysis."""

from .game import CostMatrix, EquilibriumOutcome, GameParams, Regulation, Strategy
from .solver import solve_spe, solve_unregulated

__all__ = ["CostMatrix", "EquilibriumOutcome", "GameParams", "Regulation", "Strategy",
           "solve_spe", "solve_unregulated"]
__version__ = "0.1.0"
