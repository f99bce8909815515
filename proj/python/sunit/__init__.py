"""S-unit harvests, character sums and the exponent algebra."""

from ._core import *  # noqa: F401,F403
from ._core import ConstraintViolation, EmptyHarvest, Error, ResourceLimit, run

__all__ = [
    "ConstraintViolation",
    "EmptyHarvest",
    "Error",
    "ResourceLimit",
    "run",
    "is_prime",
    "primes_in_range",
    "factorize",
    "mod_inverse",
    "squarefree_smooth",
    "lambda0",
    "lambda1",
    "feasible",
    "regime_exponents",
    "siegel_small_solution",
    "brute_sunit_pairs",
    "verify_sunit_solution",
    "gauss_sums",
    "kloosterman_sum",
]
