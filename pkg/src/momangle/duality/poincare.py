"""Fundamental classes and Poincaré duality certificates for Z_K.

The cap product with a cellular cycle μ sends the cochains of block J to the chains of block J_μ \\ J,
where J_μ is the block carrying μ. A certificate therefore decides, block by block, that

    [μ] ⌢ - : H^t(C_*(Z_K)_J) → H_{D-t}(C_*(Z_K)_{J_μ \\ J})

is an isomorphism, and collects those verdicts per total degree t. In Hochster terms this is the map
Φ: H̃^l(K_J) → H̃_{n-l-2}(K_{[m]\\J}) with D = n + m.
"""

import logging
from dataclasses import dataclass, field
from typing import Any

from momangle.complexes import SimplicialComplex, VertexSet, face_key, format_face, full_set, members
from momangle.config import DEFAULT_CONFIG, MomangleConfig
from momangle.exceptions import NoFundamentalClassError, VoidComplexError
from momangle.homology import (
    TRIVIAL,
    AbelianGroup,
    IntegerMatrix,
    cohomology_from_homology,
    induced_map_is_isomorphism,
    zeros,
)
from momangle.moment_angle import (
    BigradedCohomology,
    ZkCellularComplex,
    ZkChain,
    ZkCochain,
    hochster_cohomology,
    zk_chain_complex,
)
from momangle.products import HomologyClass, cell_cap, homology_class

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SummandRecord:
    """Verdict for one block pair: H^t of block J against H_{D-t} of block J_μ \\ J.

    Attributes:
        subset: J.
        l: Reduced degree of the summand H̃^l(K_J).
        target: The complementary block, or None when J is not inside the block of μ.
        target_l: Reduced degree of the target summand H̃_{target_l}(K_target).
        source: The source group.
        image: The target group.
        isomorphism: Whether the cap map is an isomorphism.
        in_complement: Whether every transported generator caps into the complementary block.
    """

    subset: VertexSet
    l: int
    target: VertexSet | None
    target_l: int | None
    source: AbelianGroup
    image: AbelianGroup
    isomorphism: bool
    in_complement: bool = True

    @property
    def total_degree(self) -> int:
        return self.l + self.subset.bit_count() + 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "J": list(members(self.subset)),
            "l": self.l,
            "target": None if self.target is None else list(members(self.target)),
            "target_l": self.target_l,
            "source": self.source.to_dict(),
            "image": self.image.to_dict(),
            "isomorphism": self.isomorphism,
            "in_complement": self.in_complement,
        }


@dataclass(eq=False)
class PDCertificate:
    """Result of a Poincaré duality certification.

    Attributes:
        K: The complex.
        top_degree: D, the degree of the fundamental class.
        fundamental_class: The generator [μ] of H_D(Z_K) ≅ Z.
        degree_verdicts: Per cohomological degree t, whether [μ] ⌢ - : H^t → H_{D-t} is an isomorphism.
        summands: One record per block pair with a nonzero side.
        unmatched: Blocks (T, s) with nonzero H_s that no cap map reaches.
    """

    K: SimplicialComplex
    top_degree: int
    fundamental_class: HomologyClass
    degree_verdicts: dict[int, bool]
    summands: list[SummandRecord] = field(default_factory=list)
    unmatched: list[tuple[VertexSet, int]] = field(default_factory=list)

    @property
    def carrier(self) -> VertexSet:
        """The block J_μ carrying the fundamental class."""
        (subset,) = self.fundamental_class.coordinates
        return subset

    @property
    def dimension(self) -> int:
        """n = D - m, so that K has (n-1)-dimensional Alexander duality when the certificate is valid."""
        return self.top_degree - self.K.m

    @property
    def valid(self) -> bool:
        return all(self.degree_verdicts.values()) and all(s.in_complement for s in self.summands)

    @property
    def failing_degrees(self) -> list[int]:
        return sorted(t for t, ok in self.degree_verdicts.items() if not ok)

    def to_dict(self) -> dict[str, Any]:
        return {
            "top_degree": self.top_degree,
            "dimension": self.dimension,
            "valid": self.valid,
            "fundamental_class": {str(c): v for c, v in self.fundamental_class.representative.terms.items()},
            "degree_verdicts": {str(t): ok for t, ok in sorted(self.degree_verdicts.items())},
            "summands": [s.to_dict() for s in self.summands],
            "unmatched": [{"J": list(members(t)), "degree": s} for t, s in self.unmatched],
        }


def fundamental_class(
    K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG, model: ZkCellularComplex | None = None
) -> HomologyClass:
    """A generator of H_D(Z_K) for the top degree D with nonzero homology.

    Raises:
        NoFundamentalClassError: H_D(Z_K) is not infinite cyclic, or it is not carried by the cells
            κ(A, B) with A ∪ B = [m]. The error lists the degrees l where H^l(Z_K) and H_{D-l}(Z_K)
            are not even abstractly isomorphic.
    """
    if K.is_void:
        raise VoidComplexError("VOID complex has no moment-angle model")
    model = model or zk_chain_complex(K, config)
    homology = model.homology_groups()
    top = homology.top_degree()
    carriers = [J for J, block in model.blocks.items() if not block.homology(top).is_trivial]
    problem = None
    if not homology[top].is_infinite_cyclic:
        problem = f"H_{top}(Z_K) = {homology[top]} is not infinite cyclic"
    elif carriers != [full_set(K.m)]:
        problem = f"H_{top}(Z_K) is carried by block {format_face(carriers[0])}, not by [{K.m}]"
    if problem is not None:
        cohomology = cohomology_from_homology(homology)
        failing = [l for l in range(top + 1) if cohomology[l] != homology[top - l]]
        raise NoFundamentalClassError(problem, top_degree=top, failing_degrees=failing, homology=homology)
    carrier = carriers[0]
    basis = model.homology_basis(carrier, top)
    mu = model.chain_from_block(carrier, top, basis.generators[:, :1])
    logger.debug(f"Fundamental class in degree {top}: {mu}")
    return homology_class(model, mu)


def cap_matrix(model: ZkCellularComplex, mu: ZkChain, subset: VertexSet, degree: int) -> IntegerMatrix:
    """Matrix of φ ↦ μ ⌢ φ from the degree-t cochains of block J to the chains of block J_μ \\ J."""
    source_cells = model.blocks[subset].bases.get(degree, [])
    target = model.blocks[next(iter(mu.blocks())) & ~subset]
    target_degree = mu.degree - degree
    matrix = zeros(target.rank(target_degree), len(source_cells))
    for j, dual in enumerate(source_cells):
        for cell, x in mu.terms.items():
            product = cell_cap(cell, dual)
            if product is not None:
                sign, image = product
                matrix[target.index(target_degree, image), j] += sign * x
    return matrix


def _check_summand_refinement(
    H: BigradedCohomology, mu: ZkChain, carrier: VertexSet
) -> dict[tuple[VertexSet, int], bool]:
    """For each Hochster summand, whether μ ⌢ (transported generators) stays in the complementary block."""
    result = {}
    for subset, l in H.summands():
        target = carrier & ~subset
        inside = True
        for i in range(H.basis(subset, l).size):
            coords = tuple(1 if k == i else 0 for k in range(H.basis(subset, l).size))
            representative: ZkCochain = H.representative(subset, l, coords)
            for dual in representative.terms:
                for cell in mu.terms:
                    product = cell_cap(cell, dual)
                    if product is not None and product[1].support != target:
                        inside = False
        result[(subset, l)] = inside
    return result


def pd_certify(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> PDCertificate:
    """Certify (or refute) Poincaré duality of Z_K with an explicit fundamental class.

    Raises:
        NoFundamentalClassError: Top homology of Z_K is not infinite cyclic.
    """
    model = zk_chain_complex(K, config)
    mu_class = fundamental_class(K, config, model)
    mu = mu_class.representative
    top = mu_class.degree
    carrier = next(iter(mu.blocks()))
    logger.info(f"Certifying Poincaré duality in dimension {top}")

    H = hochster_cohomology(K, config)
    refinement = _check_summand_refinement(H, mu, carrier)

    verdicts = {t: True for t in range(top + 1)}
    records = []
    reached = set()
    for subset in sorted(model.blocks, key=face_key):
        block = model.blocks[subset]
        target = carrier & ~subset if not subset & ~carrier else None
        for degree in block.degrees():
            source_group = block.cohomology(degree)
            target_degree = top - degree
            image_group = TRIVIAL
            if target is not None:
                reached.add((target, target_degree))
                image_group = model.blocks[target].homology(target_degree)
            if source_group.is_trivial and image_group.is_trivial:
                continue
            if target is None or source_group != image_group:
                isomorphism = False
            else:
                matrix = cap_matrix(model, mu, subset, degree)
                isomorphism = induced_map_is_isomorphism(
                    matrix, model.cohomology_basis(subset, degree), model.homology_basis(target, target_degree)
                )
            l = degree - subset.bit_count() - 1
            record = SummandRecord(
                subset=subset,
                l=l,
                target=target,
                target_l=None if target is None else target_degree - target.bit_count() - 1,
                source=source_group,
                image=image_group,
                isomorphism=isomorphism,
                in_complement=refinement.get((subset, l), True),
            )
            records.append(record)
            verdicts[degree] = verdicts.get(degree, True) and isomorphism
            if not isomorphism:
                logger.debug(f"Cap with μ fails on block {format_face(subset)} in degree {degree}")

    unmatched = []
    for subset, block in model.blocks.items():
        for degree in block.degrees():
            if (subset, degree) not in reached and not block.homology(degree).is_trivial:
                unmatched.append((subset, degree))
                verdicts[top - degree] = False

    certificate = PDCertificate(K, top, mu_class, verdicts, records, unmatched)
    logger.info(f"Poincaré duality certificate {'valid' if certificate.valid else 'invalid'} in degree {top}")
    return certificate
