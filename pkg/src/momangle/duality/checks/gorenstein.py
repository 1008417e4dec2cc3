"""Gorenstein duality of the Stanley-Reisner ring Z[K], decided on the core of K."""

import logging

from momangle.complexes import SimplicialComplex, format_face, members
from momangle.config import CheckName
from momangle.duality.base import DualityCheck, DualityReport
from momangle.duality.checks.ghs import GHSCheck

logger = logging.getLogger(__name__)


class GorensteinCheck(DualityCheck):
    """Z[K] has Gorenstein duality iff the core of K is a generalized homology sphere."""

    CHECK_NAME = CheckName.GORENSTEIN

    def evaluate(self, K: SimplicialComplex) -> DualityReport:
        core = K.core()
        kept_ghosts = K.ghost_vertices
        if kept_ghosts:
            logger.warning(f"Core keeps the ghost vertices {format_face(kept_ghosts)} of K")
        core_report = GHSCheck(self.config).evaluate(core)
        params = {
            "core_facets": [list(members(f)) for f in core.facets()],
            "core_dimension": core.dimension(),
            "cone_vertices": list(members(K.cone_vertices())),
            "ghost_vertices_in_core": list(members(kept_ghosts)),
            "minimal_non_faces": [list(members(f)) for f in K.minimal_non_faces()],
            "stanley_reisner_ideal": [str(g) for g in K.stanley_reisner_ideal()],
        }
        return self.report(core_report.witnesses, params, notes=list(core_report.notes))
