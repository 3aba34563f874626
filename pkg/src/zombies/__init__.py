"""Exact solver and strategy checker for the Zombies-and-Survivor pursuit game."""
from .graph import Graph, GraphError, ParseError
from .rules import COP_RULES, ZOMBIE_RULES, GameState, PursuerKind, Rules, Side, TurnOrder
from .solver import (BudgetExceeded, PositionalStrategy, SolveResult, cop_number, extract_strategies,
                     is_dismantlable, pursuit_number, solve_fixed, zombie_number)

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "ParseError",
    "COP_RULES", "ZOMBIE_RULES", "GameState", "PursuerKind", "Rules", "Side", "TurnOrder",
    "BudgetExceeded", "PositionalStrategy", "SolveResult", "cop_number", "extract_strategies",
    "is_dismantlable", "pursuit_number", "solve_fixed", "zombie_number",
]
