"""Combinatorial Alexander duality check.

K has d-dimensional Alexander duality when H̃^l(K_J) ≅ H̃_{d-l-1}(K_{[m]\\J}) for every J ⊆ [m] and
every l. Only the isomorphism types are compared.
"""

import logging

from momangle.complexes import SimplicialComplex, full_set, subsets
from momangle.config import CheckName
from momangle.duality.base import DualityCheck, DualityReport, SubsetWitness
from momangle.exceptions import ComplexError
from momangle.homology import GradedGroups, groups_isomorphic, reduced_chain_complex

logger = logging.getLogger(__name__)


def full_subcomplex_groups(K: SimplicialComplex) -> dict[int, tuple[GradedGroups, GradedGroups]]:
    """(H̃^*(K_J), H̃_*(K_J)) for every J ⊆ [m]."""
    result = {}
    for subset in subsets(full_set(K.m)):
        complex_ = reduced_chain_complex(K.full_subcomplex(subset))
        result[subset] = complex_.cohomology_groups(), complex_.homology_groups()
    return result


class AlexanderDualityCheck(DualityCheck):
    """Subset-by-subset comparison of full subcomplexes with their complements."""

    CHECK_NAME = CheckName.ALEXANDER

    def evaluate(self, K: SimplicialComplex, dimension: int | None = None) -> DualityReport:
        """Check Alexander duality of dimension d.

        Args:
            K: The complex.
            dimension: d; defaults to dim K.
        """
        d = K.dimension() if dimension is None else dimension
        if d < -1:
            raise ComplexError(f"Alexander duality dimension must be at least -1, got {d}")
        universe = full_set(K.m)
        groups = full_subcomplex_groups(K)
        witnesses = []
        for subset, (cohomology, _) in groups.items():
            _, complement_homology = groups[universe & ~subset]
            degrees = set(cohomology.degrees()) | {d - k - 1 for k in complement_homology.degrees()}
            for l in sorted(degrees):
                lhs, rhs = cohomology[l], complement_homology[d - l - 1]
                if not groups_isomorphic(lhs, rhs):
                    witnesses.append(SubsetWitness(subset, l, lhs, rhs))
        logger.debug(f"Compared {len(groups)} subsets at d = {d}, {len(witnesses)} violations")
        return self.report(witnesses, {"dimension": d})
