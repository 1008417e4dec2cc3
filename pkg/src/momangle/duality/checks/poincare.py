"""Poincaré duality check for the moment-angle complex Z_K."""

import logging

from momangle.complexes import SimplicialComplex
from momangle.config import CheckName
from momangle.duality.base import DegreeWitness, DualityCheck, DualityReport, Verdict
from momangle.duality.poincare import pd_certify
from momangle.exceptions import NoFundamentalClassError
from momangle.homology import TRIVIAL, GradedGroups, cohomology_from_homology, reduced_cohomology

logger = logging.getLogger(__name__)


class PoincareDualityCheck(DualityCheck):
    """Certify that capping with a fundamental class is an isomorphism in every degree.

    Only complexes with non-trivial reduced cohomology are in scope; for the others Z_K is
    contractible and the check is inapplicable.
    """

    CHECK_NAME = CheckName.PD

    def evaluate(self, K: SimplicialComplex) -> DualityReport:
        if reduced_cohomology(K).is_trivial():
            return DualityReport(
                self.CHECK_NAME, Verdict.INAPPLICABLE, notes=["inapplicable: trivial reduced cohomology"]
            )
        try:
            certificate = pd_certify(K, self.config)
        except NoFundamentalClassError as e:
            logger.info(f"No fundamental class: {e}")
            homology = e.homology or GradedGroups()
            cohomology = cohomology_from_homology(homology)
            witnesses = [
                DegreeWitness(l, cohomology[l], homology[e.top_degree - l], "no fundamental class")
                for l in e.failing_degrees or [e.top_degree]
            ]
            return self.report(witnesses, {"top_degree": e.top_degree}, notes=[str(e)])

        witnesses = []
        for record in certificate.summands:
            if not record.isomorphism or not record.in_complement:
                reason = "not an isomorphism" if not record.isomorphism else "leaves the complementary block"
                witnesses.append(DegreeWitness(record.total_degree, record.source, record.image, reason))
        for _, degree in certificate.unmatched:
            witnesses.append(DegreeWitness(certificate.top_degree - degree, TRIVIAL, TRIVIAL, "homology not reached"))
        params = {
            "top_degree": certificate.top_degree,
            "dimension": certificate.dimension,
            "summands": [record.to_dict() for record in certificate.summands],
        }
        return self.report(witnesses, params)
