"""The cellular model of the moment-angle complex Z_K.

Z_K is the polyhedral product of pairs (D², S¹). Each coordinate contributes a point, the circle S or
the disk D, so a cell κ(A, B) is given by disjoint vertex sets A (circle factors) and B (disk factors),
and it lies in Z_K exactly when B is a face of K. The boundary preserves A ∪ B, so the cellular chain
complex splits into one block per subset J ⊆ [m]; the map

    h: C_k(K_J) → C_{|J|+k+1}(Z_K),   σ ↦ sgn(σ, J) · κ(J \\ σ, σ)

is an isomorphism of chain complexes onto block J. Cohomology of the blocks gives the Hochster
decomposition H^*(Z_K) ≅ ⊕_J H̃^*(K_J) with the summand (J, l) in total degree l + |J| + 1.
"""

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from multiprocessing import Pool
from typing import Any

from momangle.complexes import (
    EMPTY,
    SimplicialComplex,
    VertexSet,
    face_key,
    format_face,
    full_set,
    members,
    subsets,
)
from momangle.config import DEFAULT_CONFIG, MomangleConfig
from momangle.exceptions import BudgetExceededError, ChainLevelError, OracleMismatchError, VoidComplexError
from momangle.homology import (
    AbelianGroup,
    ChainComplex,
    GradedGroups,
    HomologyBasis,
    IntegerMatrix,
    cohomology_from_homology,
    reduced_chain_complex,
    zeros,
)

logger = logging.getLogger(__name__)

Bidegree = tuple[VertexSet, int]


def shuffle_inversions(first: VertexSet, second: VertexSet) -> int:
    """Count pairs (x, y) with x in first, y in second and x > y."""
    count = 0
    rest = first
    while rest:
        low = rest & -rest
        count += (second & (low - 1)).bit_count()
        rest ^= low
    return count


def shuffle_sign(face: VertexSet, subset: VertexSet) -> int:
    """sgn(σ, J): sign of the permutation sorting (σ, J \\ σ) into ascending order."""
    return -1 if shuffle_inversions(face, subset & ~face) % 2 else 1


@dataclass(frozen=True)
class Cell:
    """A cell κ(circles, disks) of Z_K.

    Attributes:
        circles: Coordinates carrying the circle S (the 1-cell).
        disks: Coordinates carrying the disk D (the 2-cell).
    """

    circles: VertexSet
    disks: VertexSet = EMPTY

    def __post_init__(self):
        if self.circles & self.disks:
            raise ChainLevelError(
                f"Circle and disk coordinates overlap: {format_face(self.circles)}, {format_face(self.disks)}"
            )

    @property
    def support(self) -> VertexSet:
        return self.circles | self.disks

    @property
    def dimension(self) -> int:
        return self.circles.bit_count() + 2 * self.disks.bit_count()

    def in_moment_angle_complex(self, K: SimplicialComplex) -> bool:
        return not self.support & ~full_set(K.m) and self.disks in K

    def sort_key(self) -> tuple:
        return face_key(self.support), face_key(self.disks)

    def __str__(self) -> str:
        return f"κ({format_face(self.circles)},{format_face(self.disks)})"


def cell_boundary(cell: Cell) -> list[tuple[int, Cell]]:
    """∂κ(A, B) = Σ_{i∈B} (-1)^{#{a∈A : a<i} + |B| - 1} κ(A ∪ i, B \\ i)."""
    terms = []
    parity = cell.disks.bit_count() - 1
    rest = cell.disks
    while rest:
        low = rest & -rest
        below = (cell.circles & (low - 1)).bit_count()
        terms.append((-1 if (below + parity) % 2 else 1, Cell(cell.circles | low, cell.disks ^ low)))
        rest ^= low
    return terms


def cell_coboundary(cell: Cell, K: SimplicialComplex) -> list[tuple[int, Cell]]:
    """Transpose of cell_boundary: the cells of Z_K whose boundary contains the given cell."""
    terms = []
    parity = cell.disks.bit_count()
    rest = cell.circles
    while rest:
        low = rest & -rest
        if cell.disks | low in K:
            below = (cell.circles & (low - 1)).bit_count()
            terms.append((-1 if (below + parity) % 2 else 1, Cell(cell.circles ^ low, cell.disks | low)))
        rest ^= low
    return terms


@dataclass(frozen=True, eq=False)
class CellVector:
    """Sparse integer combination of cells of one degree."""

    degree: int
    terms: Mapping[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for cell, coefficient in self.terms.items():
            if cell.dimension != self.degree:
                raise ChainLevelError(f"Cell {cell} of dimension {cell.dimension} in degree {self.degree}")
            if coefficient:
                cleaned[cell] = int(coefficient)
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_cell(cls, cell: Cell, coefficient: int = 1):
        return cls(cell.dimension, {cell: coefficient})

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.degree, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, cell: Cell) -> int:
        return self.terms.get(cell, 0)

    def cells(self) -> list[Cell]:
        return sorted(self.terms, key=Cell.sort_key)

    def _combine(self, other: "CellVector", factor: int):
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.terms and other.terms and self.degree != other.degree:
            raise ChainLevelError(f"Degree mismatch: {self.degree} and {other.degree}")
        degree = self.degree if self.terms else other.degree
        merged = dict(self.terms)
        for cell, coefficient in other.terms.items():
            merged[cell] = merged.get(cell, 0) + factor * coefficient
        return type(self)(degree, merged)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(self.degree, {c: -v for c, v in self.terms.items()})

    def __mul__(self, scalar: int):
        return type(self)(self.degree, {c: scalar * v for c, v in self.terms.items()})

    __rmul__ = __mul__

    def blocks(self) -> dict[VertexSet, dict[Cell, int]]:
        """Split the terms by support A ∪ B."""
        grouped: dict[VertexSet, dict[Cell, int]] = {}
        for cell, coefficient in self.terms.items():
            grouped.setdefault(cell.support, {})[cell] = coefficient
        return grouped

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[c]}·{c}" for c in self.cells())


class ZkChain(CellVector):
    """A cellular chain of Z_K."""


class ZkCochain(CellVector):
    """A cellular cochain of Z_K, written in the basis dual to the cells."""


def _require_cells_in(vector: CellVector, K: SimplicialComplex) -> None:
    for cell in vector.terms:
        if not cell.in_moment_angle_complex(K):
            raise ChainLevelError(f"Cell {cell} is not a cell of Z_K")


def _require_simplices(K: SimplicialComplex, subset: VertexSet, simplices: Iterable[VertexSet]) -> None:
    if subset & ~full_set(K.m):
        raise ChainLevelError(f"{format_face(subset)} is not a subset of 1..{K.m}")
    for face in simplices:
        if face & ~subset or face not in K:
            raise ChainLevelError(f"{format_face(face)} is not a simplex of K restricted to {format_face(subset)}")


def _simplicial_dimension(simplices: Mapping[VertexSet, int], dimension: int | None) -> int:
    sizes = {face.bit_count() for face in simplices}
    if len(sizes) > 1:
        raise ChainLevelError(f"Simplices of mixed dimensions {sorted(s - 1 for s in sizes)}")
    if sizes:
        found = sizes.pop() - 1
        if dimension is not None and dimension != found:
            raise ChainLevelError(f"Simplices have dimension {found}, expected {dimension}")
        return found
    if dimension is None:
        raise ChainLevelError("The dimension of an empty chain must be given")
    return dimension


def h_transport(
    K: SimplicialComplex, subset: VertexSet, chain: Mapping[VertexSet, int], dimension: int | None = None
) -> ZkChain:
    """Apply h to a simplicial chain of K_J.

    Args:
        K: The complex.
        subset: J.
        chain: Coefficients of simplices of K_J, all of one dimension.
        dimension: Simplicial dimension, required only for an empty chain.

    Returns:
        Σ c_σ sgn(σ, J) κ(J \\ σ, σ), of degree |J| + dimension + 1.
    """
    _require_simplices(K, subset, chain)
    k = _simplicial_dimension(chain, dimension)
    terms = {Cell(subset & ~face, face): shuffle_sign(face, subset) * c for face, c in chain.items()}
    return ZkChain(subset.bit_count() + k + 1, terms)


def h_transport_cochain(
    K: SimplicialComplex, subset: VertexSet, cochain: Mapping[VertexSet, int], dimension: int | None = None
) -> ZkCochain:
    """Inverse of the pullback h^*: σ^* ↦ sgn(σ, J) κ(J \\ σ, σ)^*."""
    _require_simplices(K, subset, cochain)
    k = _simplicial_dimension(cochain, dimension)
    terms = {Cell(subset & ~face, face): shuffle_sign(face, subset) * c for face, c in cochain.items()}
    return ZkCochain(subset.bit_count() + k + 1, terms)


def h_pullback(subset: VertexSet, cochain: ZkCochain) -> dict[VertexSet, int]:
    """h^* restricted to block J: κ(J \\ σ, σ)^* ↦ sgn(σ, J) σ^*. Terms outside the block are dropped."""
    return {
        cell.disks: shuffle_sign(cell.disks, subset) * c for cell, c in cochain.terms.items() if cell.support == subset
    }


def zk_boundary(chain: ZkChain, K: SimplicialComplex) -> ZkChain:
    """Cellular boundary of a chain of Z_K."""
    _require_cells_in(chain, K)
    result: dict[Cell, int] = {}
    for cell, c in chain.terms.items():
        for sign, face in cell_boundary(cell):
            result[face] = result.get(face, 0) + sign * c
    return ZkChain(chain.degree - 1, result)


def zk_coboundary(cochain: ZkCochain, K: SimplicialComplex) -> ZkCochain:
    """Cellular coboundary δ = ∂^T of a cochain of Z_K."""
    _require_cells_in(cochain, K)
    result: dict[Cell, int] = {}
    for cell, c in cochain.terms.items():
        for sign, coface in cell_coboundary(cell, K):
            result[coface] = result.get(coface, 0) + sign * c
    return ZkCochain(cochain.degree + 1, result)


def zk_block_complex(K: SimplicialComplex, subset: VertexSet) -> ChainComplex:
    """Cells κ(J \\ σ, σ), σ ∈ K_J, with the cellular boundary. Cells follow the simplex order of K_J."""
    restricted = K.full_subcomplex(subset)
    dim = restricted.dimension()
    if dim is None:
        return ChainComplex({}, {})
    shift = subset.bit_count() + 1
    bases = {k + shift: [Cell(subset & ~f, f) for f in restricted.faces_of_dimension(k)] for k in range(-1, dim + 1)}
    boundaries = {}
    for degree in range(shift, dim + shift + 1):
        index = {cell: i for i, cell in enumerate(bases[degree - 1])}
        matrix = zeros(len(bases[degree - 1]), len(bases[degree]))
        for j, cell in enumerate(bases[degree]):
            for sign, face in cell_boundary(cell):
                matrix[index[face], j] += sign
        boundaries[degree] = matrix
    return ChainComplex(bases, boundaries)


class ZkCellularComplex:
    """The cellular chain complex of Z_K, held as its direct sum of blocks C_*(Z_K)_J."""

    def __init__(self, K: SimplicialComplex):
        if K.is_void:
            raise VoidComplexError("VOID complex has no moment-angle model")
        self.K = K
        self.blocks = {J: zk_block_complex(K, J) for J in subsets(full_set(K.m))}
        self._homology_bases: dict[Bidegree, HomologyBasis] = {}
        self._cohomology_bases: dict[Bidegree, HomologyBasis] = {}

    def cells(self, degree: int) -> list[Cell]:
        result = []
        for block in self.blocks.values():
            result.extend(block.bases.get(degree, []))
        return sorted(result, key=Cell.sort_key)

    def cell_count(self) -> int:
        return sum(block.rank(d) for block in self.blocks.values() for d in block.degrees())

    def homology_groups(self) -> GradedGroups:
        total = GradedGroups()
        for block in self.blocks.values():
            total = total.direct_sum(block.homology_groups())
        return total

    def cohomology_groups(self) -> GradedGroups:
        total = GradedGroups()
        for block in self.blocks.values():
            total = total.direct_sum(block.cohomology_groups())
        return total

    def homology_basis(self, subset: VertexSet, degree: int) -> HomologyBasis:
        key = (subset, degree)
        if key not in self._homology_bases:
            self._homology_bases[key] = self.blocks[subset].homology_basis(degree)
        return self._homology_bases[key]

    def cohomology_basis(self, subset: VertexSet, degree: int) -> HomologyBasis:
        key = (subset, degree)
        if key not in self._cohomology_bases:
            self._cohomology_bases[key] = self.blocks[subset].cohomology_basis(degree)
        return self._cohomology_bases[key]

    def block_vector(self, subset: VertexSet, vector: CellVector) -> IntegerMatrix:
        """Column of the block-J part of a chain or cochain over the block's cell order."""
        block = self.blocks[subset]
        column = zeros(block.rank(vector.degree), 1)
        for cell, c in vector.terms.items():
            if cell.support == subset:
                column[block.index(vector.degree, cell), 0] += c
        return column

    def chain_from_block(self, subset: VertexSet, degree: int, column: IntegerMatrix) -> ZkChain:
        return ZkChain(degree, self.blocks[subset].labels(degree, column))

    def cochain_from_block(self, subset: VertexSet, degree: int, column: IntegerMatrix) -> ZkCochain:
        return ZkCochain(degree, self.blocks[subset].labels(degree, column))


@dataclass(eq=False)
class BigradedCohomology:
    """The Hochster decomposition of H^*(Z_K) with cocycle representatives.

    Attributes:
        K: The complex.
        complexes: Reduced simplicial chain complex of K_J for every J ⊆ [m].
        bases: Cohomology basis of H̃^l(K_J) for every (J, l) where C^l(K_J) is nonzero.
    """

    K: SimplicialComplex
    complexes: dict[VertexSet, ChainComplex]
    bases: dict[Bidegree, HomologyBasis]

    @staticmethod
    def total_degree(subset: VertexSet, l: int) -> int:
        return l + subset.bit_count() + 1

    def group(self, subset: VertexSet, l: int) -> AbelianGroup:
        basis = self.bases.get((subset, l))
        return basis.group if basis is not None else AbelianGroup()

    def basis(self, subset: VertexSet, l: int) -> HomologyBasis:
        try:
            return self.bases[(subset, l)]
        except KeyError:
            raise ChainLevelError(f"K_{format_face(subset)} has no cochains in degree {l}") from None

    def summands(self, degree: int | None = None) -> list[Bidegree]:
        """Nonzero summands (J, l), ordered by total degree, then J, then l."""
        found = [
            key
            for key, basis in self.bases.items()
            if not basis.group.is_trivial and (degree is None or self.total_degree(*key) == degree)
        ]
        return sorted(found, key=lambda key: (self.total_degree(*key), face_key(key[0]), key[1]))

    @cached_property
    def groups(self) -> GradedGroups:
        total: dict[int, AbelianGroup] = {}
        for subset, l in self.summands():
            degree = self.total_degree(subset, l)
            total[degree] = total.get(degree, AbelianGroup()) + self.group(subset, l)
        return GradedGroups(total)

    def poincare_polynomial(self) -> list[int]:
        return self.groups.ranks()

    def simplicial_cochain(self, subset: VertexSet, l: int, column: IntegerMatrix) -> dict[VertexSet, int]:
        return self.complexes[subset].labels(l, column)

    def representative(self, subset: VertexSet, l: int, coords: Iterable[int]) -> ZkCochain:
        """The transported cocycle h^*^{-1}(Σ coords_i g_i) for the generators g_i of H̃^l(K_J)."""
        basis = self.basis(subset, l)
        cochain = self.simplicial_cochain(subset, l, basis.representative(list(coords)))
        return h_transport_cochain(self.K, subset, cochain, dimension=l)

    def coordinates(self, cochain: ZkCochain) -> dict[Bidegree, tuple[int, ...]]:
        """Coordinates of a cocycle of Z_K in every summand it touches.

        Raises:
            ChainLevelError: A block of the cochain is not a cocycle, or has no cochains in its degree.
        """
        _require_cells_in(cochain, self.K)
        result = {}
        for subset in cochain.blocks():
            l = cochain.degree - subset.bit_count() - 1
            basis = self.basis(subset, l)
            pulled = h_pullback(subset, cochain)
            coords = basis.coordinates(self.complexes[subset].vector(l, pulled))
            if basis.size:
                result[(subset, l)] = coords
        return result

    def table(self) -> list[dict[str, Any]]:
        """Rows (J, l, group, total degree) for every nonzero summand."""
        return [
            {
                "J": list(members(subset)),
                "l": l,
                "group": str(self.group(subset, l)),
                "total_degree": self.total_degree(subset, l),
            }
            for subset, l in self.summands()
        ]


def _subset_cohomology(job: tuple[SimplicialComplex, VertexSet]) -> tuple[VertexSet, ChainComplex, dict]:
    K, subset = job
    complex_ = reduced_chain_complex(K.full_subcomplex(subset))
    return subset, complex_, {l: complex_.cohomology_basis(l) for l in complex_.degrees()}


def _subset_cohomology_groups(job: tuple[SimplicialComplex, VertexSet]) -> tuple[VertexSet, GradedGroups]:
    K, subset = job
    return subset, reduced_chain_complex(K.full_subcomplex(subset)).cohomology_groups()


def _map_subsets(function: Callable, K: SimplicialComplex, config: MomangleConfig) -> list:
    jobs = [(K, J) for J in subsets(full_set(K.m))]
    if config.workers > 1 and len(jobs) > 1:
        logger.debug(f"Distributing {len(jobs)} subsets over {config.workers} workers")
        with Pool(config.workers) as pool:
            return pool.map(function, jobs, chunksize=max(1, len(jobs) // (4 * config.workers)))
    return [function(job) for job in jobs]


def _check_hochster_input(K: SimplicialComplex, config: MomangleConfig) -> None:
    if K.is_void:
        raise VoidComplexError("VOID complex has no moment-angle model")
    if K.m > config.max_m:
        raise BudgetExceededError(f"m = {K.m} exceeds the Hochster cap max_m = {config.max_m}")


def hochster_cohomology(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> BigradedCohomology:
    """Compute ⊕_J H̃^*(K_J) with cocycle representatives for every summand.

    Args:
        K: The complex (not VOID, m at most config.max_m).
        config: Caps and worker count.

    Returns:
        The bigraded cohomology, subsets merged in increasing order.
    """
    _check_hochster_input(K, config)
    logger.info(f"Computing Hochster decomposition over {2**K.m} subsets of [{K.m}]")
    complexes = {}
    bases = {}
    for subset, complex_, by_degree in _map_subsets(_subset_cohomology, K, config):
        complexes[subset] = complex_
        for l, basis in by_degree.items():
            bases[(subset, l)] = basis
            if not basis.group.is_trivial:
                logger.debug(f"H̃^{l}(K_{format_face(subset)}) = {basis.group}")
    result = BigradedCohomology(K, complexes, bases)
    logger.info(f"H^*(Z_K) = {result.groups}")
    return result


def zk_cohomology_groups(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> GradedGroups:
    """Totalized Hochster groups, without representatives."""
    _check_hochster_input(K, config)
    total = GradedGroups()
    for subset, groups in _map_subsets(_subset_cohomology_groups, K, config):
        total = total.direct_sum(groups.shifted(subset.bit_count() + 1))
    return total


def zk_chain_complex(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> ZkCellularComplex:
    """Full cellular chain complex of Z_K with homology bases per block.

    Every block carries Smith transforms, so this is held to the direct cap rather than max_m.
    """
    if K.m > config.direct_max_m:
        raise BudgetExceededError(f"m = {K.m} exceeds the cellular cap direct_max_m = {config.direct_max_m}")
    return ZkCellularComplex(K)


def zk_cells(K: SimplicialComplex) -> dict[int, list[Cell]]:
    """Every cell κ(A, B) of Z_K by dimension, ordered by disks and then circles."""
    universe = full_set(K.m)
    by_degree: dict[int, list[Cell]] = {}
    for disks in sorted(K.faces, key=members):
        for circles in sorted(subsets(universe & ~disks), key=members):
            cell = Cell(circles, disks)
            by_degree.setdefault(cell.dimension, []).append(cell)
    return by_degree


def zk_homology_direct(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> GradedGroups:
    """H_*(Z_K) from one boundary matrix per degree over all cells of Z_K.

    The matrices are assembled from zk_boundary over the whole cell set, with no split into blocks and
    no use of the simplicial complexes K_J.
    """
    if K.is_void:
        raise VoidComplexError("VOID complex has no moment-angle model")
    if K.m > config.direct_max_m:
        raise BudgetExceededError(f"m = {K.m} exceeds the direct oracle cap direct_max_m = {config.direct_max_m}")
    bases = zk_cells(K)
    logger.debug(f"Direct cellular complex has {sum(len(cells) for cells in bases.values())} cells")
    boundaries = {}
    for degree, cells in bases.items():
        below = {cell: i for i, cell in enumerate(bases.get(degree - 1, []))}
        matrix = zeros(len(below), len(cells))
        for j, cell in enumerate(cells):
            for face, c in zk_boundary(ZkChain.from_cell(cell), K).terms.items():
                matrix[below[face], j] += c
        boundaries[degree] = matrix
    return ChainComplex(bases, boundaries).homology_groups()


def verify_direct_oracle(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> GradedGroups:
    """Compare the direct cellular homology against the Hochster totalization.

    Returns:
        The agreed cohomology groups of Z_K.

    Raises:
        OracleMismatchError: The two computations disagree.
    """
    hochster = zk_cohomology_groups(K, config)
    direct = cohomology_from_homology(zk_homology_direct(K, config))
    if direct != hochster:
        raise OracleMismatchError(f"Direct oracle gives H^* = {direct}, Hochster gives {hochster}")
    logger.info("Direct cellular oracle agrees with the Hochster decomposition")
    return hochster


def poincare_polynomial(K: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> list[int]:
    """Coefficients of t^d: rank H^d(Z_K) for d = 0..top."""
    return zk_cohomology_groups(K, config).ranks()
