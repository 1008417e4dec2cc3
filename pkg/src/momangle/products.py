"""Cup and cap products on the cellular (co)chains of Z_K.

Written in the cells κ(A, B), the cellular cochains of Z_K form the algebra generated by circle classes
u_i (degree 1) and disk classes v_i (degree 2) with u_i² = v_i² = u_i v_i = 0 and v_B = 0 unless B ∈ K.
In the basis dual to the cells this gives

    κ(A, B)^* ⌣ κ(A', B')^* = (-1)^{|B||B'| + inv(A, A')} κ(A ∪ A', B ∪ B')^*

for disjoint supports with B ∪ B' ∈ K, and zero otherwise. The cap product is the unique bilinear
operation with ⟨c ⌢ φ, ψ⟩ = ⟨c, φ ⌣ ψ⟩ (the "adjunction-normalized" sign convention). The Baskakov
product on simplicial cochains of full subcomplexes is the cup product transported through h.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from momangle.complexes import SimplicialComplex, VertexSet, format_face
from momangle.exceptions import ChainLevelError
from momangle.moment_angle import (
    BigradedCohomology,
    Bidegree,
    Cell,
    ZkCellularComplex,
    ZkChain,
    ZkCochain,
    shuffle_inversions,
    zk_boundary,
    zk_coboundary,
)

logger = logging.getLogger(__name__)

SIGNS_CONVENTION = "adjunction-normalized"


def evaluate(chain: ZkChain, cochain: ZkCochain) -> int:
    """The evaluation pairing ⟨c, φ⟩.

    Raises:
        ChainLevelError: The degrees differ (zero vectors pair to 0 in any degree).
    """
    if chain and cochain and chain.degree != cochain.degree:
        raise ChainLevelError(f"Cannot pair a chain of degree {chain.degree} with a cochain of degree {cochain.degree}")
    return sum(c * cochain[cell] for cell, c in chain.terms.items())


def cell_cup(first: Cell, second: Cell, K: SimplicialComplex) -> tuple[int, Cell] | None:
    """Product of two dual cells, or None when it vanishes."""
    if first.support & second.support:
        return None
    disks = first.disks | second.disks
    if disks not in K:
        return None
    exponent = first.disks.bit_count() * second.disks.bit_count() + shuffle_inversions(first.circles, second.circles)
    return (-1 if exponent % 2 else 1), Cell(first.circles | second.circles, disks)


def cell_cap(cell: Cell, dual: Cell) -> tuple[int, Cell] | None:
    """κ(A, B) ⌢ κ(A', B')^*, or None when A' ⊄ A or B' ⊄ B."""
    if dual.circles & ~cell.circles or dual.disks & ~cell.disks:
        return None
    circles = cell.circles & ~dual.circles
    disks = cell.disks & ~dual.disks
    exponent = dual.disks.bit_count() * disks.bit_count() + shuffle_inversions(dual.circles, circles)
    return (-1 if exponent % 2 else 1), Cell(circles, disks)


def _require_cells(vector, K: SimplicialComplex) -> None:
    for cell in vector.terms:
        if not cell.in_moment_angle_complex(K):
            raise ChainLevelError(f"Cell {cell} is not a cell of Z_K")


def zk_cup(first: ZkCochain, second: ZkCochain, K: SimplicialComplex) -> ZkCochain:
    """Cellular cup product of two cochains of Z_K."""
    _require_cells(first, K)
    _require_cells(second, K)
    result: dict[Cell, int] = {}
    for a, x in first.terms.items():
        for b, y in second.terms.items():
            product = cell_cup(a, b, K)
            if product is not None:
                sign, cell = product
                result[cell] = result.get(cell, 0) + sign * x * y
    return ZkCochain(first.degree + second.degree, result)


def cellular_cap(chain: ZkChain, cochain: ZkCochain, K: SimplicialComplex) -> ZkChain:
    """Cellular cap product c ⌢ φ, of degree deg c - deg φ.

    Raises:
        ChainLevelError: A cell lies outside Z_K, or the cochain degree exceeds the chain degree.
    """
    _require_cells(chain, K)
    _require_cells(cochain, K)
    degree = chain.degree - cochain.degree
    if degree < 0 and chain and cochain:
        raise ChainLevelError(f"Cannot cap a degree {chain.degree} chain with a degree {cochain.degree} cochain")
    result: dict[Cell, int] = {}
    for cell, x in chain.terms.items():
        for dual, y in cochain.terms.items():
            product = cell_cap(cell, dual)
            if product is not None:
                sign, target = product
                result[target] = result.get(target, 0) + sign * x * y
    return ZkChain(max(degree, 0), result)


def baskakov_cup(
    K: SimplicialComplex,
    first_subset: VertexSet,
    first: Mapping[VertexSet, int],
    second_subset: VertexSet,
    second: Mapping[VertexSet, int],
) -> dict[VertexSet, int]:
    """Baskakov product of simplicial cochains on K_I and K_J, landing on K_{I ∪ J}.

    σ^* ⊗ τ^* ↦ (-1)^{|σ||τ| + inv(σ, J\\τ) + inv(τ, I\\σ) + inv(I\\σ, J\\τ)} (σ ∪ τ)^*, which is zero
    when σ ∪ τ ∉ K. The product vanishes when I and J meet.

    Raises:
        ChainLevelError: A cochain is supported outside its full subcomplex.
    """
    for subset, cochain in ((first_subset, first), (second_subset, second)):
        for face in cochain:
            if face & ~subset or face not in K:
                raise ChainLevelError(f"{format_face(face)} is not a simplex of K_{format_face(subset)}")
    if first_subset & second_subset:
        return {}
    result: dict[VertexSet, int] = {}
    for sigma, x in first.items():
        rest_first = first_subset & ~sigma
        for tau, y in second.items():
            union = sigma | tau
            if not x * y or union not in K:
                continue
            rest_second = second_subset & ~tau
            exponent = (
                sigma.bit_count() * tau.bit_count()
                + shuffle_inversions(sigma, rest_second)
                + shuffle_inversions(tau, rest_first)
                + shuffle_inversions(rest_first, rest_second)
            )
            result[union] = result.get(union, 0) + (-1 if exponent % 2 else 1) * x * y
    return {face: c for face, c in result.items() if c}


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    """A class in H^degree(Z_K) with a cocycle representative and Hochster coordinates."""

    degree: int
    representative: ZkCochain
    coordinates: dict[Bidegree, tuple[int, ...]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(any(coords) for coords in self.coordinates.values())


@dataclass(frozen=True, eq=False)
class HomologyClass:
    """A class in H_degree(Z_K) with a cycle representative and per-block coordinates."""

    degree: int
    representative: ZkChain
    coordinates: dict[VertexSet, tuple[int, ...]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(any(coords) for coords in self.coordinates.values())


def cohomology_class(H: BigradedCohomology, cochain: ZkCochain) -> CohomologyClass:
    """Wrap a cocycle of Z_K as a class; fails unless every block is a cocycle."""
    return CohomologyClass(cochain.degree, cochain, H.coordinates(cochain))


def summand_class(H: BigradedCohomology, subset: VertexSet, l: int, coords: tuple[int, ...]) -> CohomologyClass:
    """The class with the given coordinates in the summand H̃^l(K_J)."""
    return cohomology_class(H, H.representative(subset, l, coords))


def unit_class(H: BigradedCohomology) -> CohomologyClass:
    """1 ∈ H^0(Z_K), represented by κ(∅, ∅)^*."""
    return cohomology_class(H, ZkCochain.from_cell(Cell(0, 0)))


def cup_on_classes(first: CohomologyClass, second: CohomologyClass, H: BigradedCohomology) -> CohomologyClass:
    """Cup product of classes, reduced to Hochster coordinates."""
    product = zk_cup(first.representative, second.representative, H.K)
    if product.degree != first.degree + second.degree:
        raise ChainLevelError(f"Product landed in degree {product.degree}")
    return cohomology_class(H, product)


def homology_class(model: ZkCellularComplex, chain: ZkChain) -> HomologyClass:
    """Wrap a cycle of Z_K as a class.

    Raises:
        ChainLevelError: The chain is not a cycle.
    """
    if zk_boundary(chain, model.K):
        raise ChainLevelError(f"Chain of degree {chain.degree} is not a cycle")
    coordinates = {}
    for subset in chain.blocks():
        basis = model.homology_basis(subset, chain.degree)
        if basis.size:
            coordinates[subset] = basis.coordinates(model.block_vector(subset, chain))
    return HomologyClass(chain.degree, chain, coordinates)


def cap_on_classes(x: HomologyClass, a: CohomologyClass, model: ZkCellularComplex) -> HomologyClass:
    """[c] ⌢ [φ] = [c ⌢ φ]; both representatives are checked before capping."""
    if zk_boundary(x.representative, model.K):
        raise ChainLevelError("Homology class representative is not a cycle")
    if zk_coboundary(a.representative, model.K):
        raise ChainLevelError("Cohomology class representative is not a cocycle")
    if a.degree > x.degree:
        raise ChainLevelError(f"Cannot cap H_{x.degree} with H^{a.degree}")
    return homology_class(model, cellular_cap(x.representative, a.representative, model.K))
