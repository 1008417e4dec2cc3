"""Report documents for duality checks and cohomology computations.

This module turns reports into the versioned JSON documents written by the command line.
"""

import logging
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from momangle.duality.base import DualityReport, Verdict
from momangle.duality.controller import Classification
from momangle.homology import GradedGroups
from momangle.moment_angle import BigradedCohomology
from momangle.products import SIGNS_CONVENTION

logger = logging.getLogger(__name__)

# Schema tag embedded in every document
SCHEMA = "momangle/1"

# Check names for documents that are not produced by a duality check
CHECK_ALL = "all"
CHECK_COHOMOLOGY = "cohomology"


class GroupModel(BaseModel):
    """A finitely generated abelian group in canonical form."""

    rank: int = 0
    torsion: list[int] = Field(default_factory=list)


class ReportDocument(BaseModel):
    """JSON document written by the command line."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA, alias="schema")
    check: str
    input: str
    params: dict[str, Any] = Field(default_factory=dict)
    verdict: Verdict
    witnesses: list[dict[str, Any]] = Field(default_factory=list)
    groups: dict[str, GroupModel] = Field(default_factory=dict)
    signs_convention: str = SIGNS_CONVENTION

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def group_models(groups: GradedGroups | None) -> dict[str, GroupModel]:
    """Per-degree canonical groups; zero groups are omitted."""
    if groups is None:
        return {}
    return {str(d): GroupModel(rank=g.rank, torsion=list(g.torsion)) for d, g in groups.groups.items()}


def report_document(report: DualityReport, source: str, groups: GradedGroups | None = None) -> ReportDocument:
    """Document for a single check.

    Args:
        report: The check report.
        source: Name of the input (path or corpus name).
        groups: Cohomology of Z_K, when it was computed.
    """
    params = dict(report.params)
    if report.notes:
        params["notes"] = list(report.notes)
    return ReportDocument(
        check=report.check.value,
        input=source,
        params=params,
        verdict=report.verdict,
        witnesses=[w.to_dict() for w in report.witnesses],
        groups=group_models(groups),
    )


def classification_document(
    classification: Classification, source: str, groups: GradedGroups | None = None
) -> ReportDocument:
    """Document for the joint classification; witnesses are tagged with the check that produced them."""
    witnesses = []
    for name, report in classification.reports.items():
        for witness in report.witnesses:
            witnesses.append({"check": name, **witness.to_dict()})
    params = {
        "dimension": classification.dimension,
        "inferred_dimension": classification.inferred_dimension,
        "hypothesis_met": classification.hypothesis_met,
        "verdicts": {name: report.verdict.value for name, report in classification.reports.items()},
        "reports": {name: report.params for name, report in classification.reports.items()},
        "notes": list(classification.notes),
    }
    return ReportDocument(
        check=CHECK_ALL,
        input=source,
        params=params,
        verdict=classification.verdict,
        witnesses=witnesses,
        groups=group_models(groups),
    )


def cohomology_document(
    H: BigradedCohomology, source: str, direct: GradedGroups | None = None
) -> ReportDocument:
    """Document for a Hochster computation, with the oracle's groups when the direct oracle ran."""
    params: dict[str, Any] = {
        "m": H.K.m,
        "poincare_polynomial": H.poincare_polynomial(),
        "bigraded": H.table(),
    }
    if direct is not None:
        params["direct_cohomology"] = direct.to_dict()
    return ReportDocument(
        check=CHECK_COHOMOLOGY,
        input=source,
        params=params,
        verdict=Verdict.PASS,
        groups=group_models(H.groups),
    )


def error_document(check: str, source: str, error: BaseException, exit_code: int) -> ReportDocument:
    """Document for a command that stopped on an error."""
    return ReportDocument(
        check=check,
        input=source,
        params={"error": type(error).__name__, "message": str(error), "exit_code": exit_code},
        verdict=Verdict.ERROR,
    )
