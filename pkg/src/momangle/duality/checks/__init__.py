"""Checks package for duality decision procedures.

This package contains one handler per duality check.
"""

from momangle.duality.checks.alexander import AlexanderDualityCheck
from momangle.duality.checks.ghs import GHSCheck
from momangle.duality.checks.gorenstein import GorensteinCheck
from momangle.duality.checks.poincare import PoincareDualityCheck

__all__ = [
    "AlexanderDualityCheck",
    "GHSCheck",
    "GorensteinCheck",
    "PoincareDualityCheck",
]
