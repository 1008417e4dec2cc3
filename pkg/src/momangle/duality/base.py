"""Base module for duality checks.

This module provides the report types and the base class shared by all duality checks.
"""

import abc
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, ClassVar

from momangle.complexes import SimplicialComplex, VertexSet, format_face, members
from momangle.config import DEFAULT_CONFIG, CheckName, MomangleConfig
from momangle.exceptions import VoidComplexError
from momangle.homology import AbelianGroup, GradedGroups

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Outcome of a check."""

    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"
    ERROR = "error"


@dataclass(frozen=True)
class SubsetWitness:
    """A pair (J, l) where H̃^l(K_J) and H̃_{d-l-1}(K_{[m]\\J}) differ."""

    subset: VertexSet
    l: int
    lhs: AbelianGroup
    rhs: AbelianGroup

    def to_dict(self) -> dict[str, Any]:
        return {
            "J": list(members(self.subset)),
            "l": self.l,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }

    def __str__(self) -> str:
        return f"J={format_face(self.subset)}, l={self.l}: {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class FaceWitness:
    """A face whose link (or, for face None, the complex itself) lacks the homology of a sphere."""

    face: VertexSet | None
    homology: GradedGroups
    expected_sphere: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "face": None if self.face is None else list(members(self.face)),
            "link_homology": self.homology.to_dict(),
            "expected_sphere": self.expected_sphere,
        }

    def __str__(self) -> str:
        where = "K" if self.face is None else f"lk {format_face(self.face)}"
        return f"H̃({where}) = {self.homology}, expected S^{self.expected_sphere}"


@dataclass(frozen=True)
class DegreeWitness:
    """A degree l where capping with the fundamental class is not an isomorphism H^l → H_{D-l}."""

    degree: int
    cohomology: AbelianGroup
    homology: AbelianGroup
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "cohomology": self.cohomology.to_dict(),
            "homology": self.homology.to_dict(),
            "reason": self.reason,
        }

    def __str__(self) -> str:
        return f"degree {self.degree}: H^ = {self.cohomology}, H_ = {self.homology} ({self.reason})"


Witness = SubsetWitness | FaceWitness | DegreeWitness


@dataclass
class DualityReport:
    """Verdict of one check with its parameters and failure witnesses.

    A failing report carries at least one witness and a passing report carries none.
    """

    check: CheckName
    verdict: Verdict
    params: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict == Verdict.FAIL and not self.witnesses:
            raise ValueError(f"{self.check.value} report fails without a witness")
        if self.verdict == Verdict.PASS and self.witnesses:
            raise ValueError(f"{self.check.value} report passes with {len(self.witnesses)} witnesses")

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check.value,
            "verdict": self.verdict.value,
            "params": self.params,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "notes": self.notes,
        }


class DualityCheck(abc.ABC):
    """Base class for all duality checks.

    Subclasses implement ``evaluate``; ``run`` wraps it with input validation and logging.
    """

    CHECK_NAME: ClassVar[CheckName]

    def __init__(self, config: MomangleConfig = DEFAULT_CONFIG):
        """Initialize the check.

        Args:
            config: Caps and worker count used by the underlying computations.
        """
        self.config = config

    def run(self, K: SimplicialComplex, **params) -> DualityReport:
        """Run the check on a complex.

        Args:
            K: The complex. Must not be VOID.
            **params: Check-specific parameters (for example the duality dimension).

        Returns:
            The report.
        """
        if K.is_void:
            raise VoidComplexError(f"The {self.CHECK_NAME.value} check is undefined on the VOID complex")
        logger.info(f"Running {self.CHECK_NAME.value} check on a complex with {K.m} vertices")
        report = self.evaluate(K, **params)
        logger.info(f"Check {self.CHECK_NAME.value}: {report.verdict.value}")
        for witness in report.witnesses:
            logger.debug(f"Witness for {self.CHECK_NAME.value}: {witness}")
        return report

    @abc.abstractmethod
    def evaluate(self, K: SimplicialComplex, **params) -> DualityReport:
        """Decide the check on a non-VOID complex.

        Args:
            K: The complex.
            **params: Check-specific parameters.

        Returns:
            The report.
        """
        pass

    def report(self, witnesses: list[Witness], params: dict[str, Any] | None = None, **kwargs) -> DualityReport:
        """Build a pass or fail report from the witness list."""
        verdict = Verdict.FAIL if witnesses else Verdict.PASS
        return DualityReport(self.CHECK_NAME, verdict, params or {}, list(witnesses), **kwargs)
