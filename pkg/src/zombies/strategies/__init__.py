"""Constructive strategies, simulation and exhaustive policy verification."""
from .petal import PetalMemory, PetalSurvivorPolicy, petal_survivor_policy
from .policy import (GreedyZombiePolicy, PassingSurvivorPolicy, Policy, PolicyError,
                     PositionalPursuerPolicy, PositionalSurvivorPolicy, solver_policies)
from .product import ProductMemory, ProductZombiePolicy, product_zombie_policy
from .simulate import (CAPTURED, CUTOFF, SURVIVES_FOREVER, Ply, SimulationError, SimulationTrace,
                       replay, simulate, trace_from_text)
from .verify import PursuerReport, SurvivorReport, verify_pursuer_policy, verify_survivor_policy

__all__ = [
    "PetalMemory", "PetalSurvivorPolicy", "petal_survivor_policy",
    "GreedyZombiePolicy", "PassingSurvivorPolicy", "Policy", "PolicyError",
    "PositionalPursuerPolicy", "PositionalSurvivorPolicy", "solver_policies",
    "ProductMemory", "ProductZombiePolicy", "product_zombie_policy",
    "CAPTURED", "CUTOFF", "SURVIVES_FOREVER", "Ply", "SimulationError", "SimulationTrace",
    "replay", "simulate", "trace_from_text",
    "PursuerReport", "SurvivorReport", "verify_pursuer_policy", "verify_survivor_policy",
]
