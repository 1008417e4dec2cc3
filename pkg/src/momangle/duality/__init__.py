"""Duality module for momangle.

This module decides Alexander, Poincaré and Gorenstein duality for a simplicial complex and its
moment-angle complex.
"""

import logging

from momangle.complexes import SimplicialComplex
from momangle.config import DEFAULT_CONFIG, MomangleConfig
from momangle.duality.base import DualityCheck, DualityReport, Verdict
from momangle.duality.checks import AlexanderDualityCheck, GHSCheck, GorensteinCheck, PoincareDualityCheck
from momangle.duality.controller import Classification, DualityController
from momangle.duality.poincare import PDCertificate, fundamental_class, pd_certify

logger = logging.getLogger(__name__)


def alexander_duality_check(
    K: SimplicialComplex, d: int, config: MomangleConfig = DEFAULT_CONFIG
) -> DualityReport:
    """H̃^l(K_J) ≅ H̃_{d-l-1}(K_{[m]\\J}) for every J ⊆ [m] and every l."""
    return AlexanderDualityCheck(config).run(K, dimension=d)


def ghs_check(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> DualityReport:
    return GHSCheck(config).run(K)


def poincare_duality_check(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> DualityReport:
    return PoincareDualityCheck(config).run(K)


def gorenstein_check(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> DualityReport:
    return GorensteinCheck(config).run(K)


def classify(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> Classification:
    return DualityController(config).classify(K)


# Export the controller as the main interface
__all__ = [
    "Classification",
    "DualityCheck",
    "DualityController",
    "DualityReport",
    "PDCertificate",
    "Verdict",
    "alexander_duality_check",
    "classify",
    "fundamental_class",
    "ghs_check",
    "gorenstein_check",
    "pd_certify",
    "poincare_duality_check",
]
