"""Counting solutions of ternary quadratic congruences modulo prime powers."""
from .conic import TernaryForm, enumerate_all, find_base_point
from .modarith import PrimePowerModulus

__version__ = "0.1.0"
MASTER_SEED = 20240917

__all__ = ["TernaryForm", "PrimePowerModulus", "enumerate_all", "find_base_point", "MASTER_SEED", "__version__"]
