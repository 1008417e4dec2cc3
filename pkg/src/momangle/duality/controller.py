"""Duality controller module.

This module provides the controller that runs duality checks and cross-validates their verdicts.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, ClassVar

from momangle.complexes import SimplicialComplex
from momangle.config import DEFAULT_CONFIG, CheckName, MomangleConfig
from momangle.duality.base import DualityCheck, DualityReport, Verdict
from momangle.duality.checks.alexander import AlexanderDualityCheck
from momangle.duality.checks.ghs import GHSCheck
from momangle.duality.checks.gorenstein import GorensteinCheck
from momangle.duality.checks.poincare import PoincareDualityCheck
from momangle.exceptions import CheckerDisagreementError, VoidComplexError
from momangle.homology import homology_from_cohomology, reduced_cohomology
from momangle.moment_angle import zk_cohomology_groups

logger = logging.getLogger(__name__)


@dataclass
class Classification:
    """Joint verdict of all checks on one complex.

    Attributes:
        dimension: dim K.
        inferred_dimension: D - m - 1 for the top degree D of H_*(Z_K).
        hypothesis_met: Whether K has non-trivial reduced cohomology.
        reports: Individual reports; "alexander_inferred" is the Alexander check at the inferred dimension.
        notes: Remarks such as a dimension mismatch.
    """

    dimension: int
    inferred_dimension: int
    hypothesis_met: bool
    reports: dict[str, DualityReport] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        if not self.hypothesis_met:
            return Verdict.INAPPLICABLE
        return Verdict.PASS if all(r.passed for r in self.reports.values()) else Verdict.FAIL

    @property
    def gorenstein(self) -> DualityReport:
        return self.reports[CheckName.GORENSTEIN.value]

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension": self.dimension,
            "inferred_dimension": self.inferred_dimension,
            "hypothesis_met": self.hypothesis_met,
            "verdict": self.verdict.value,
            "reports": {name: report.to_dict() for name, report in self.reports.items()},
            "notes": self.notes,
        }


class DualityController:
    """Controller for managing duality checks.

    This class keeps one handler per enabled check and provides the joint classification.
    """

    # Supported checks and their handler classes
    SUPPORTED_CHECKS: ClassVar[dict[CheckName, type[DualityCheck]]] = {
        CheckName.ALEXANDER: AlexanderDualityCheck,
        CheckName.GHS: GHSCheck,
        CheckName.PD: PoincareDualityCheck,
        CheckName.GORENSTEIN: GorensteinCheck,
    }

    # Default enabled checks
    DEFAULT_CHECKS: ClassVar[list[CheckName]] = list(CheckName)

    def __init__(self, config: MomangleConfig = DEFAULT_CONFIG, checks: list[CheckName] | None = None):
        """Initialize the controller.

        Args:
            config: Configuration handed to every check.
            checks: Checks to enable. If None, the configured checks are used.
        """
        self.config = config
        self.checks: dict[CheckName, DualityCheck] = {}

        enabled = checks if checks is not None else (config.checks or self.DEFAULT_CHECKS)
        for name in enabled:
            self.register_check(name, self.SUPPORTED_CHECKS[CheckName(name)](config))

    def register_check(self, name: CheckName, check: DualityCheck) -> None:
        """Register a check handler.

        Args:
            name: Name of the check.
            check: The handler.
        """
        self.checks[CheckName(name)] = check
        logger.debug(f"Registered check handler for {CheckName(name).value}")

    def get_check(self, name: CheckName) -> DualityCheck | None:
        """Get the handler for a check.

        Args:
            name: Name of the check.

        Returns:
            The handler, or None when the check is not enabled.
        """
        return self.checks.get(CheckName(name))

    def run(self, K: SimplicialComplex, name: CheckName, **params) -> DualityReport:
        """Run one enabled check."""
        check = self.get_check(name)
        if check is None:
            raise ValueError(f"Check {CheckName(name).value} is not enabled")
        return check.run(K, **params)

    def run_all(self, K: SimplicialComplex) -> dict[CheckName, DualityReport]:
        """Run every enabled check with default parameters."""
        return {name: check.run(K) for name, check in self.checks.items()}

    def _handler(self, name: CheckName) -> DualityCheck:
        return self.get_check(name) or self.SUPPORTED_CHECKS[name](self.config)

    def classify(self, K: SimplicialComplex) -> Classification:
        """Run all four checks and assert that they agree.

        The Alexander check runs at d = dim K and at the d inferred from the top homology of Z_K.
        When K has trivial reduced cohomology the verdicts are reported but not compared.

        Raises:
            CheckerDisagreementError: K has non-trivial reduced cohomology and the verdicts differ.
        """
        if K.is_void:
            raise VoidComplexError("classify is undefined on the VOID complex")
        dimension = K.dimension()
        hypothesis_met = not reduced_cohomology(K).is_trivial()
        top = homology_from_cohomology(zk_cohomology_groups(K, self.config)).top_degree()
        inferred = top - K.m - 1
        result = Classification(dimension, inferred, hypothesis_met)

        alexander = self._handler(CheckName.ALEXANDER)
        result.reports[CheckName.ALEXANDER.value] = alexander.run(K, dimension=dimension)
        if inferred != dimension:
            logger.warning(f"Inferred duality dimension {inferred} differs from dim K = {dimension}")
            result.notes.append(f"inferred duality dimension {inferred} differs from dim K = {dimension}")
        if inferred >= -1:
            result.reports["alexander_inferred"] = alexander.run(K, dimension=inferred)
        for name in (CheckName.GHS, CheckName.PD, CheckName.GORENSTEIN):
            result.reports[name.value] = self._handler(name).run(K)

        if not hypothesis_met:
            result.notes.append("hypothesis not met: K has trivial reduced cohomology")
            logger.info("K has trivial reduced cohomology, verdicts are not compared")
            return result

        verdicts = {name: report.verdict for name, report in result.reports.items()}
        if len(set(verdicts.values())) > 1:
            details = ", ".join(f"{name}={verdict.value}" for name, verdict in verdicts.items())
            raise CheckerDisagreementError(f"Duality checks disagree: {details}")
        logger.info(f"All checks agree: {result.verdict.value}")
        return result
