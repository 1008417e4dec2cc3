"""Exact integral homology.

Integer matrices are numpy arrays with ``dtype=object`` holding Python ints, so every entry is an
arbitrary-precision integer and no floating point is ever involved. The Smith normal form tracks both
unimodular transforms and their inverses; homology bases are read off from them.
"""

import logging
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import sympy

from momangle.complexes import SimplicialComplex
from momangle.exceptions import ChainLevelError

logger = logging.getLogger(__name__)

IntegerMatrix = np.ndarray

PivotRule = Literal["column", "global"]


def integer_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
    """Build an exact integer matrix from nested sequences.

    Args:
        rows: Row lists. May be empty, in which case ``cols`` fixes the shape.
        cols: Column count for an empty row list.

    Returns:
        A 2-d object array of Python ints.
    """
    if not rows:
        return zeros(0, cols or 0)
    result = zeros(len(rows), len(rows[0]))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            result[i, j] = int(value)
    return result


def zeros(rows: int, cols: int) -> IntegerMatrix:
    return np.zeros((rows, cols), dtype=object)


def identity(n: int) -> IntegerMatrix:
    result = zeros(n, n)
    for i in range(n):
        result[i, i] = 1
    return result


def matmul(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    """Exact product that also handles a zero inner dimension."""
    if a.shape[1] == 0 or b.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def is_zero(a: IntegerMatrix) -> bool:
    return not np.any(a != 0)


@dataclass(eq=False)
class SmithDecomposition:
    """Result of a Smith normal form computation: U · A · V = D.

    Attributes:
        diagonal: The min(rows, cols) diagonal entries of D; nonzero entries come first and each divides the next.
        shape: Shape of the input matrix.
        U, V: Unimodular transforms, or None when transforms were not requested.
        U_inv, V_inv: Their exact inverses.
    """

    diagonal: tuple[int, ...]
    shape: tuple[int, int]
    U: IntegerMatrix | None = None
    V: IntegerMatrix | None = None
    U_inv: IntegerMatrix | None = None
    V_inv: IntegerMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def D(self) -> IntegerMatrix:
        result = zeros(*self.shape)
        for i, d in enumerate(self.diagonal):
            result[i, i] = d
        return result


class _SmithReducer:
    """Row and column reduction of one matrix, mirroring every operation on the transforms."""

    def __init__(self, matrix: IntegerMatrix, with_transforms: bool, pivot: PivotRule):
        self.A = np.array(matrix, dtype=object, copy=True)
        self.rows, self.cols = self.A.shape
        self.pivot = pivot
        self.with_transforms = with_transforms
        if with_transforms:
            self.U = identity(self.rows)
            self.U_inv = identity(self.rows)
            self.V = identity(self.cols)
            self.V_inv = identity(self.cols)

    def add_row(self, target: int, source: int, c: int) -> None:
        self.A[target] += c * self.A[source]
        if self.with_transforms:
            self.U[target] += c * self.U[source]
            self.U_inv[:, source] -= c * self.U_inv[:, target]

    def add_col(self, target: int, source: int, c: int) -> None:
        self.A[:, target] += c * self.A[:, source]
        if self.with_transforms:
            self.V[:, target] += c * self.V[:, source]
            self.V_inv[source] -= c * self.V_inv[target]

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[[i, j]] = self.A[[j, i]]
        if self.with_transforms:
            self.U[[i, j]] = self.U[[j, i]]
            self.U_inv[:, [i, j]] = self.U_inv[:, [j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[:, [i, j]] = self.A[:, [j, i]]
        if self.with_transforms:
            self.V[:, [i, j]] = self.V[:, [j, i]]
            self.V_inv[[i, j]] = self.V_inv[[j, i]]

    def negate_row(self, i: int) -> None:
        self.A[i] = -self.A[i]
        if self.with_transforms:
            self.U[i] = -self.U[i]
            self.U_inv[:, i] = -self.U_inv[:, i]

    def _choose_pivot(self, t: int) -> tuple[int, int] | None:
        nonzero = np.argwhere(self.A[t:, t:] != 0)
        if len(nonzero) == 0:
            return None
        if self.pivot == "global":
            candidates = nonzero
        else:
            first_col = nonzero[:, 1].min()
            candidates = nonzero[nonzero[:, 1] == first_col]
        best = min(candidates, key=lambda ij: (abs(self.A[t + ij[0], t + ij[1]]), ij[1], ij[0]))
        return t + int(best[0]), t + int(best[1])

    def _clear_cross(self, t: int) -> None:
        A = self.A
        while True:
            stable = True
            for i in np.flatnonzero(A[t + 1 :, t] != 0) + t + 1:
                q = A[i, t] // A[t, t]
                self.add_row(i, t, -q)
                if A[i, t] != 0:
                    self.swap_rows(i, t)
                    stable = False
            for j in np.flatnonzero(A[t, t + 1 :] != 0) + t + 1:
                q = A[t, j] // A[t, t]
                self.add_col(j, t, -q)
                if A[t, j] != 0:
                    self.swap_cols(j, t)
                    stable = False
            if not stable:
                continue
            if np.any(A[t + 1 :, t] != 0) or np.any(A[t, t + 1 :] != 0):
                continue
            offending = np.argwhere(A[t + 1 :, t + 1 :] % A[t, t] != 0)
            if len(offending) == 0:
                return
            self.add_row(t, t + 1 + int(offending[0][0]), 1)

    def reduce(self) -> SmithDecomposition:
        t = 0
        while t < min(self.rows, self.cols):
            pivot = self._choose_pivot(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            self._clear_cross(t)
            if self.A[t, t] < 0:
                self.negate_row(t)
            t += 1
        diagonal = tuple(int(self.A[i, i]) for i in range(min(self.rows, self.cols)))
        if not self.with_transforms:
            return SmithDecomposition(diagonal, (self.rows, self.cols))
        return SmithDecomposition(diagonal, (self.rows, self.cols), self.U, self.V, self.U_inv, self.V_inv)


def smith_normal_form(
    matrix: IntegerMatrix, with_transforms: bool = True, pivot: PivotRule = "column"
) -> SmithDecomposition:
    """Compute the Smith normal form of an integer matrix.

    Args:
        matrix: Integer matrix (any integer dtype; converted to exact Python ints).
        with_transforms: Track U, V and their inverses. Group computations skip them.
        pivot: "column" takes the smallest entry of the first nonzero column, "global" the smallest
            entry of the remaining block. Both give the same invariant factors.

    Returns:
        The decomposition with U · A · V = D.
    """
    return _SmithReducer(np.asarray(matrix, dtype=object), with_transforms, pivot).reduce()


def _canonical_torsion(orders: Iterable[int]) -> tuple[int, ...]:
    prime_powers: dict[int, list[int]] = {}
    for order in orders:
        order = abs(int(order))
        if order <= 1:
            continue
        for p, e in sympy.factorint(order).items():
            prime_powers.setdefault(int(p), []).append(int(p) ** int(e))
    if not prime_powers:
        return ()
    length = max(len(powers) for powers in prime_powers.values())
    factors = [1] * length
    for powers in prime_powers.values():
        for k, power in enumerate(sorted(powers, reverse=True)):
            factors[k] *= power
    return tuple(sorted(factors))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k with d_i | d_{i+1}.

    Any list of cyclic orders is accepted; it is brought into invariant-factor form on construction,
    so equality is isomorphism.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"Rank must be non-negative, got {self.rank}")
        object.__setattr__(self, "torsion", _canonical_torsion(self.torsion))

    @classmethod
    def free(cls, rank: int = 1) -> "AbelianGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "AbelianGroup":
        """Z/order, with order 0 meaning Z."""
        return cls(1) if order == 0 else cls(0, (order,))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_infinite_cyclic(self) -> bool:
        return self.rank == 1 and not self.torsion

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

    __add__ = direct_sum

    def free_part(self) -> "AbelianGroup":
        return AbelianGroup(self.rank)

    def torsion_part(self) -> "AbelianGroup":
        return AbelianGroup(0, self.torsion)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts)


TRIVIAL = AbelianGroup()


def groups_isomorphic(a: AbelianGroup, b: AbelianGroup) -> bool:
    """Abstract isomorphism of finitely generated abelian groups, decided by invariants."""
    return a.rank == b.rank and a.torsion == b.torsion


@dataclass(frozen=True)
class GradedGroups:
    """Abelian groups indexed by integer degree; absent degrees are zero."""

    groups: dict[int, AbelianGroup] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "groups", {d: g for d, g in sorted(self.groups.items()) if not g.is_trivial})

    def __getitem__(self, degree: int) -> AbelianGroup:
        return self.groups.get(degree, TRIVIAL)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedGroups) and self.groups == other.groups

    def __hash__(self) -> int:
        return hash(tuple(self.groups.items()))

    def degrees(self) -> list[int]:
        return list(self.groups)

    def top_degree(self) -> int | None:
        return max(self.groups) if self.groups else None

    def direct_sum(self, other: "GradedGroups") -> "GradedGroups":
        merged = dict(self.groups)
        for degree, group in other.groups.items():
            merged[degree] = merged.get(degree, TRIVIAL) + group
        return GradedGroups(merged)

    def ranks(self) -> list[int]:
        """Rank per degree from 0 up to the top degree (the Poincaré polynomial coefficients)."""
        top = self.top_degree()
        if top is None or top < 0:
            return []
        return [self[d].rank for d in range(top + 1)]

    def is_trivial(self) -> bool:
        return not self.groups

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * g.rank for d, g in self.groups.items())

    def shifted(self, offset: int) -> "GradedGroups":
        return GradedGroups({d + offset: g for d, g in self.groups.items()})

    def to_dict(self) -> dict[str, dict]:
        return {str(d): g.to_dict() for d, g in self.groups.items()}

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        return ", ".join(f"{d}: {g}" for d, g in self.groups.items())


def cohomology_from_homology(homology: GradedGroups) -> GradedGroups:
    """Universal coefficients: H^d = free(H_d) ⊕ torsion(H_{d-1})."""
    result: dict[int, AbelianGroup] = {}
    for degree, group in homology.groups.items():
        result[degree] = result.get(degree, TRIVIAL) + group.free_part()
        result[degree + 1] = result.get(degree + 1, TRIVIAL) + group.torsion_part()
    return GradedGroups(result)


def homology_from_cohomology(cohomology: GradedGroups) -> GradedGroups:
    """Universal coefficients read backwards: H_d = free(H^d) ⊕ torsion(H^{d+1})."""
    result: dict[int, AbelianGroup] = {}
    for degree, group in cohomology.groups.items():
        result[degree] = result.get(degree, TRIVIAL) + group.free_part()
        result[degree - 1] = result.get(degree - 1, TRIVIAL) + group.torsion_part()
    return GradedGroups(result)


@dataclass(eq=False)
class HomologyBasis:
    """Generators and coordinates for the (co)homology of one degree.

    Vectors are columns over the chain (or cochain) basis of that degree.

    Attributes:
        degree: The degree.
        group: The (co)homology group.
        generators: Matrix whose columns are (co)cycle representatives, torsion generators first.
        orders: Order of each generator; 0 for free generators.
        differential: The outgoing (co)boundary matrix; vectors in its kernel are (co)cycles.
    """

    degree: int
    group: AbelianGroup
    generators: IntegerMatrix
    orders: tuple[int, ...]
    differential: IntegerMatrix
    _to_cycle_coordinates: IntegerMatrix = field(repr=False)
    _to_generators: IntegerMatrix = field(repr=False)
    _positions: tuple[int, ...] = field(repr=False)

    @property
    def size(self) -> int:
        """Number of generators."""
        return len(self.orders)

    @property
    def chain_dimension(self) -> int:
        return self.differential.shape[1]

    def is_cycle(self, vector: IntegerMatrix) -> bool:
        return is_zero(matmul(self.differential, _as_column(vector)))

    def coordinates(self, vector: IntegerMatrix) -> tuple[int, ...]:
        """Coordinates of a (co)cycle in the generator basis; torsion coordinates are reduced mod their order.

        Raises:
            ChainLevelError: The vector is not a (co)cycle of this degree.
        """
        column = _as_column(vector)
        if column.shape[0] != self.chain_dimension:
            raise ChainLevelError(
                f"Vector of length {column.shape[0]} does not live in degree {self.degree} "
                f"(dimension {self.chain_dimension})"
            )
        if not self.is_cycle(column):
            raise ChainLevelError(f"Vector is not a cycle in degree {self.degree}")
        lifted = matmul(self._to_generators, matmul(self._to_cycle_coordinates, column))
        coords = []
        for position, order in zip(self._positions, self.orders, strict=True):
            value = int(lifted[position, 0])
            coords.append(value % order if order else value)
        return tuple(coords)

    def is_boundary(self, vector: IntegerMatrix) -> bool:
        return not any(self.coordinates(vector))

    def representative(self, coords: Sequence[int]) -> IntegerMatrix:
        """A (co)cycle with the given coordinates."""
        if len(coords) != self.size:
            raise ChainLevelError(f"Expected {self.size} coordinates, got {len(coords)}")
        column = zeros(self.size, 1)
        for i, c in enumerate(coords):
            column[i, 0] = int(c)
        return matmul(self.generators, column)


def _as_column(vector) -> IntegerMatrix:
    array = np.asarray(vector, dtype=object)
    if array.ndim == 1:
        return array.reshape(-1, 1)
    return array


def subquotient_basis(outgoing: IntegerMatrix, incoming: IntegerMatrix, degree: int) -> HomologyBasis:
    """ker(outgoing) / im(incoming) with explicit generators.

    Args:
        outgoing: Differential leaving the degree (rows: next group, columns: this degree).
        incoming: Differential entering the degree (rows: this degree).
        degree: Degree label.
    """
    n = outgoing.shape[1]
    if incoming.shape[0] != n:
        raise ChainLevelError(f"Differentials do not compose in degree {degree}: {incoming.shape} into {n}")
    out_snf = smith_normal_form(outgoing)
    r = out_snf.rank
    cycle_basis = out_snf.V[:, r:]
    to_cycle = out_snf.V_inv[r:, :]
    k = n - r

    relations = matmul(to_cycle, incoming)
    rel_snf = smith_normal_form(relations)
    factors = rel_snf.diagonal
    s = rel_snf.rank

    positions = [i for i in range(s) if factors[i] != 1] + list(range(s, k))
    orders = tuple(factors[i] if i < s else 0 for i in positions)
    generators = matmul(cycle_basis, rel_snf.U_inv[:, positions]) if positions else zeros(n, 0)
    group = AbelianGroup(k - s, tuple(factors[i] for i in range(s) if factors[i] != 1))
    return HomologyBasis(
        degree=degree,
        group=group,
        generators=generators,
        orders=orders,
        differential=outgoing,
        _to_cycle_coordinates=to_cycle,
        _to_generators=rel_snf.U,
        _positions=tuple(positions),
    )


class ChainComplex:
    """A finite chain complex of free abelian groups with named basis elements.

    Attributes:
        bases: Basis labels per degree (simplices, cells, ...), in the order used by the matrices.
        boundaries: ∂_d : C_d → C_{d-1}, shape (len(bases[d-1]), len(bases[d])).
    """

    def __init__(self, bases: dict[int, list[Hashable]], boundaries: dict[int, IntegerMatrix]):
        self.bases = {d: list(b) for d, b in bases.items() if b}
        self.boundaries = boundaries
        self._index = {d: {label: i for i, label in enumerate(b)} for d, b in self.bases.items()}
        self._invariants: dict[int, SmithDecomposition] = {}

    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank(self, degree: int) -> int:
        return len(self.bases.get(degree, []))

    def index(self, degree: int, label: Hashable) -> int:
        return self._index[degree][label]

    def boundary(self, degree: int) -> IntegerMatrix:
        """∂_degree with the right (possibly empty) shape."""
        matrix = self.boundaries.get(degree)
        if matrix is None:
            return zeros(self.rank(degree - 1), self.rank(degree))
        return matrix

    def coboundary(self, degree: int) -> IntegerMatrix:
        """δ^degree = (∂_{degree+1})^T : C^degree → C^{degree+1}."""
        return np.ascontiguousarray(self.boundary(degree + 1).T)

    def vector(self, degree: int, coefficients: dict[Hashable, int]) -> IntegerMatrix:
        column = zeros(self.rank(degree), 1)
        for label, c in coefficients.items():
            column[self.index(degree, label), 0] += c
        return column

    def labels(self, degree: int, vector: IntegerMatrix) -> dict[Hashable, int]:
        column = _as_column(vector)
        return {self.bases[degree][i]: int(column[i, 0]) for i in range(column.shape[0]) if column[i, 0] != 0}

    def _snf(self, degree: int) -> SmithDecomposition:
        if degree not in self._invariants:
            self._invariants[degree] = smith_normal_form(self.boundary(degree), with_transforms=False)
        return self._invariants[degree]

    def homology(self, degree: int) -> AbelianGroup:
        rank = self.rank(degree) - self._snf(degree).rank - self._snf(degree + 1).rank
        return AbelianGroup(rank, tuple(f for f in self._snf(degree + 1).invariant_factors if f > 1))

    def cohomology(self, degree: int) -> AbelianGroup:
        rank = self.rank(degree) - self._snf(degree).rank - self._snf(degree + 1).rank
        return AbelianGroup(rank, tuple(f for f in self._snf(degree).invariant_factors if f > 1))

    def homology_groups(self) -> GradedGroups:
        return GradedGroups({d: self.homology(d) for d in self.degrees()})

    def cohomology_groups(self) -> GradedGroups:
        return GradedGroups({d: self.cohomology(d) for d in self.degrees()})

    def homology_basis(self, degree: int) -> HomologyBasis:
        return subquotient_basis(self.boundary(degree), self.boundary(degree + 1), degree)

    def cohomology_basis(self, degree: int) -> HomologyBasis:
        return subquotient_basis(self.coboundary(degree), self.coboundary(degree - 1), degree)


def simplex_boundary(face: int) -> list[tuple[int, int]]:
    """Alternating-sign facets of a simplex: (sign, facet) with sign (-1)^position in sorted order."""
    result = []
    position = 0
    rest = face
    while rest:
        low = rest & -rest
        result.append((-1 if position % 2 else 1, face & ~low))
        position += 1
        rest ^= low
    return result


def reduced_chain_complex(K: SimplicialComplex) -> ChainComplex:
    """The augmented simplicial chain complex with C_{-1} = ⟨∅⟩.

    Simplices are ordered canonically (size, then lexicographic). VOID yields the zero complex.
    """
    dim = K.dimension()
    if dim is None:
        return ChainComplex({}, {})
    bases = {k: K.faces_of_dimension(k) for k in range(-1, dim + 1)}
    boundaries = {}
    for k in range(0, dim + 1):
        index = {face: i for i, face in enumerate(bases[k - 1])}
        matrix = zeros(len(bases[k - 1]), len(bases[k]))
        for j, face in enumerate(bases[k]):
            for sign, facet in simplex_boundary(face):
                matrix[index[facet], j] += sign
        boundaries[k] = matrix
    return ChainComplex(bases, boundaries)


def reduced_homology(K: SimplicialComplex) -> GradedGroups:
    """H̃_k(K; Z) for k ≥ -1."""
    return reduced_chain_complex(K).homology_groups()


def reduced_cohomology(K: SimplicialComplex) -> GradedGroups:
    """H̃^k(K; Z) for k ≥ -1, from the transposed boundary matrices."""
    return reduced_chain_complex(K).cohomology_groups()


def has_sphere_homology(K: SimplicialComplex, d: int) -> bool:
    """True iff H̃_*(K) ≅ H̃_*(S^d); for d = -1 this singles out {∅}."""
    if K.is_void:
        return False
    homology = reduced_homology(K)
    return homology.degrees() == [d] and homology[d].is_infinite_cyclic


def _presentation_smith(matrix: IntegerMatrix) -> SmithDecomposition:
    return smith_normal_form(matrix)


def induced_map_is_isomorphism(f: IntegerMatrix, source: HomologyBasis, target: HomologyBasis) -> bool:
    """Decide whether a chain-level map induces an isomorphism between two (co)homology groups.

    Args:
        f: Matrix from the source chain basis to the target chain basis.
        source: Basis of the source group.
        target: Basis of the target group.

    Raises:
        ChainLevelError: f does not send the source generators to target (co)cycles.
    """
    if f.shape != (target.chain_dimension, source.chain_dimension):
        raise ChainLevelError(
            f"Map of shape {f.shape} does not go from dimension {source.chain_dimension} "
            f"to dimension {target.chain_dimension}"
        )
    a, b = source.size, target.size
    images = matmul(f, source.generators)
    induced = zeros(b, a)
    for j in range(a):
        coords = target.coordinates(images[:, j])
        for i, c in enumerate(coords):
            induced[i, j] = c

    # Z^a → Z^b / diag(target orders)
    presentation = zeros(b, a + b)
    presentation[:, :a] = induced
    for i, order in enumerate(target.orders):
        presentation[i, a + i] = order
    snf = _presentation_smith(presentation)
    surjective = snf.rank == b and all(d == 1 for d in snf.invariant_factors)
    if not surjective:
        return False

    kernel = snf.V[:a, snf.rank :]
    for col in range(kernel.shape[1]):
        for j, order in enumerate(source.orders):
            value = kernel[j, col]
            if (order == 0 and value != 0) or (order and value % order):
                return False
    return True
