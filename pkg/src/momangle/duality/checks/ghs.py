"""Generalized homology sphere check.

K is a GHS^n (n = dim K) when H̃_*(K) ≅ H̃_*(S^n) and, for every nonempty face σ, the link of σ has
the integral homology of S^{n-|σ|}. {∅} is the sphere S^{-1}.
"""

import logging

from momangle.complexes import SimplicialComplex, face_key, format_face
from momangle.config import CheckName
from momangle.duality.base import DualityCheck, DualityReport, FaceWitness
from momangle.homology import GradedGroups, reduced_homology

logger = logging.getLogger(__name__)


def is_sphere_homology(groups: GradedGroups, d: int) -> bool:
    return groups.degrees() == [d] and groups[d].is_infinite_cyclic


class GHSCheck(DualityCheck):
    """Global sphere homology plus the link condition on every nonempty face."""

    CHECK_NAME = CheckName.GHS

    def evaluate(self, K: SimplicialComplex) -> DualityReport:
        n = K.dimension()
        homology = reduced_homology(K)
        witnesses = []
        if not is_sphere_homology(homology, n):
            witnesses.append(FaceWitness(None, homology, n))

        cones = K.cone_vertices()
        if cones:
            # A cone is contractible, so the global test above already failed.
            logger.debug(f"Skipping link checks: {format_face(cones)} are cone vertices")
            return self.report(witnesses, {"n": n}, notes=[f"cone vertices {format_face(cones)}"])

        faces_checked = 0
        for face in sorted(K.faces, key=face_key):
            if not face:
                continue
            link_homology = reduced_homology(K.link(face))
            expected = n - face.bit_count()
            faces_checked += 1
            if not is_sphere_homology(link_homology, expected):
                witnesses.append(FaceWitness(face, link_homology, expected))
        logger.debug(f"Checked links of {faces_checked} faces")
        return self.report(witnesses, {"n": n, "links_checked": faces_checked})
