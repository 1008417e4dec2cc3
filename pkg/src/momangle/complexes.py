"""Simplicial complexes on [m] with ghost vertices.

Faces are stored as bitmasks: vertex i (1-based) is bit i-1. A complex keeps its ambient vertex count m
explicitly, so ghost vertices (i with {i} not a face) and the VOID complex (no faces at all, not even
the empty one) are ordinary values.
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

import sympy

from momangle.config import HARD_MAX_M
from momangle.exceptions import ComplexError, PairContainmentError, VoidComplexError

logger = logging.getLogger(__name__)

VertexSet = int

EMPTY: VertexSet = 0


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Build a vertex set from 1-based vertex indices."""
    mask = 0
    for v in vertices:
        if v < 1:
            raise ComplexError(f"Vertex indices are 1-based, got {v}")
        mask |= 1 << (v - 1)
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    """Return the 1-based vertices of a vertex set in ascending order."""
    result = []
    i = 1
    while mask:
        if mask & 1:
            result.append(i)
        mask >>= 1
        i += 1
    return tuple(result)


def full_set(m: int) -> VertexSet:
    """Return [m] as a vertex set."""
    return (1 << m) - 1


def subsets(mask: VertexSet) -> Iterator[VertexSet]:
    """Iterate over all subsets of a vertex set, the empty set first and the set itself last."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def face_key(mask: VertexSet) -> tuple[int, tuple[int, ...]]:
    """Canonical simplex order: by size, then lexicographically on the sorted vertex tuple."""
    return mask.bit_count(), members(mask)


def format_face(mask: VertexSet) -> str:
    """Render a face as {1,3,5}; the empty face renders as {}."""
    return "{" + ",".join(str(v) for v in members(mask)) + "}"


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on the vertex set [m].

    Attributes:
        m: Ambient vertex count. Vertices that are not faces are ghost vertices.
        faces: Every face as a bitmask. Empty for the VOID complex; otherwise contains 0 (the empty face).
    """

    m: int
    faces: frozenset[VertexSet] = field(default_factory=frozenset)

    def __post_init__(self):
        if not 0 <= self.m <= HARD_MAX_M:
            raise ComplexError(f"Vertex count must be in range 0-{HARD_MAX_M}, got {self.m}")
        if not isinstance(self.faces, frozenset):
            object.__setattr__(self, "faces", frozenset(self.faces))
        if not self.faces:
            return
        if EMPTY not in self.faces:
            raise ComplexError("A non-VOID complex must contain the empty face")
        universe = full_set(self.m)
        for face in self.faces:
            if face & ~universe:
                raise ComplexError(f"Face {format_face(face)} has a vertex outside 1..{self.m}")
            rest = face
            while rest:
                low = rest & -rest
                if face & ~low not in self.faces:
                    raise ComplexError(f"Faces are not downward closed: {format_face(face)} lacks a facet")
                rest ^= low

    @classmethod
    def from_facets(
        cls, m: int, facets: Iterable[Iterable[int] | VertexSet], include_empty: bool = False
    ) -> "SimplicialComplex":
        """Build the downward closure of a list of facets.

        Args:
            m: Ambient vertex count.
            facets: Facets as iterables of 1-based vertices, or as bitmasks.
            include_empty: Add the empty face even when no facets are given.

        Returns:
            The closure; the VOID complex when there are no facets and include_empty is false.
        """
        universe = full_set(m)
        faces: set[VertexSet] = set()
        masks = [f if isinstance(f, int) else vertex_set(f) for f in facets]
        for mask in masks:
            if mask & ~universe:
                raise ComplexError(f"Facet {format_face(mask)} has a vertex outside 1..{m}")
            if mask in faces:
                continue
            faces.update(subsets(mask))
        if include_empty or masks:
            faces.add(EMPTY)
        return cls(m, frozenset(faces))

    @classmethod
    def void(cls, m: int = 0) -> "SimplicialComplex":
        """The VOID complex on m (ghost) vertices."""
        return cls(m, frozenset())

    @classmethod
    def empty(cls, m: int = 0) -> "SimplicialComplex":
        """The complex {∅} on m ghost vertices."""
        return cls(m, frozenset({EMPTY}))

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        """The full simplex Δ^{m-1} on [m]."""
        return cls.from_facets(m, [full_set(m)], include_empty=True)

    @classmethod
    def boundary_of_simplex(cls, m: int) -> "SimplicialComplex":
        """The boundary ∂Δ^{m-1}: every proper subset of [m]."""
        universe = full_set(m)
        return cls(m, frozenset(s for s in subsets(universe) if s != universe))

    @property
    def is_void(self) -> bool:
        return not self.faces

    def __contains__(self, face: VertexSet) -> bool:
        return face in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __str__(self) -> str:
        if self.is_void:
            return f"VOID on {self.m} vertices"
        return f"complex on {self.m} vertices, facets " + " ".join(format_face(f) for f in self.facets())

    @cached_property
    def vertices(self) -> VertexSet:
        """Non-ghost vertices."""
        mask = 0
        for face in self.faces:
            mask |= face
        return mask

    @property
    def ghost_vertices(self) -> VertexSet:
        return full_set(self.m) & ~self.vertices

    @cached_property
    def _by_size(self) -> dict[int, list[VertexSet]]:
        grouped: dict[int, list[VertexSet]] = {}
        for face in sorted(self.faces, key=face_key):
            grouped.setdefault(face.bit_count(), []).append(face)
        return grouped

    def faces_of_dimension(self, k: int) -> list[VertexSet]:
        """Faces of dimension k (k + 1 vertices) in canonical order; k = -1 gives [∅] unless VOID."""
        return list(self._by_size.get(k + 1, []))

    def dimension(self) -> int | None:
        """Largest face dimension: -1 for {∅}, None for the VOID complex."""
        if self.is_void:
            return None
        return max(self._by_size) - 1

    def f_vector(self) -> list[int]:
        """Face counts by dimension starting at -1 (index 0 counts the empty face)."""
        dim = self.dimension()
        if dim is None:
            return []
        return [len(self._by_size.get(size, [])) for size in range(dim + 2)]

    def reduced_euler_characteristic(self) -> int:
        """Alternating face count starting at dimension -1."""
        return sum((-1) ** (size + 1) * count for size, count in enumerate(self.f_vector()))

    def facets(self) -> list[VertexSet]:
        """Inclusion-maximal faces in canonical order."""
        bits = [1 << v for v in range(self.m)]
        maximal = [f for f in self.faces if not any(not f & b and f | b in self.faces for b in bits)]
        return sorted(maximal, key=face_key)

    def _require_not_void(self, operation: str) -> None:
        if self.is_void:
            raise VoidComplexError(f"{operation} is undefined on the VOID complex")

    def _require_in_range(self, mask: VertexSet) -> None:
        if mask & ~full_set(self.m):
            raise ComplexError(f"Vertex set {format_face(mask)} is not contained in 1..{self.m}")

    def full_subcomplex(self, subset: VertexSet) -> "SimplicialComplex":
        """K_J: faces contained in J, on the same ambient vertex set."""
        self._require_in_range(subset)
        return SimplicialComplex(self.m, frozenset(f for f in self.faces if f & ~subset == 0))

    def link(self, face: VertexSet) -> "SimplicialComplex":
        """lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}."""
        if face not in self.faces:
            raise ComplexError(f"{format_face(face)} is not a face of the complex")
        faces = frozenset(t for t in self.faces if t & face == 0 and t | face in self.faces)
        return SimplicialComplex(self.m, faces)

    def star(self, vertex: int) -> "SimplicialComplex":
        """Closed star of a vertex; VOID when the vertex is a ghost."""
        if not 1 <= vertex <= self.m:
            raise ComplexError(f"Vertex {vertex} is outside 1..{self.m}")
        bit = 1 << (vertex - 1)
        return SimplicialComplex(self.m, frozenset(f for f in self.faces if f | bit in self.faces))

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """K ∗ L with L relabelled to m+1..m+m'."""
        shift = self.m
        faces = frozenset(f | (g << shift) for f in self.faces for g in other.faces)
        return SimplicialComplex(self.m + other.m, faces)

    def cone_vertices(self) -> VertexSet:
        """Vertices whose star is the whole complex."""
        mask = 0
        for v in range(1, self.m + 1):
            bit = 1 << (v - 1)
            if bit & self.vertices and all(f | bit in self.faces for f in self.faces):
                mask |= bit
        return mask

    def core(self) -> "SimplicialComplex":
        """Full subcomplex on the vertices whose star is not all of K (ghost vertices included)."""
        self._require_not_void("core")
        keep = full_set(self.m) & ~self.cone_vertices()
        if keep & self.ghost_vertices:
            logger.debug(f"Core keeps ghost vertices {format_face(keep & self.ghost_vertices)}")
        return self.full_subcomplex(keep)

    def minimal_non_faces(self) -> list[VertexSet]:
        """⊆-minimal subsets of [m] that are not faces, in canonical order."""
        self._require_not_void("minimal_non_faces")
        candidates: set[VertexSet] = set()
        for face in self.faces:
            for v in range(self.m):
                bit = 1 << v
                if face & bit:
                    continue
                candidate = face | bit
                if candidate in self.faces:
                    continue
                rest = candidate
                minimal = True
                while rest:
                    low = rest & -rest
                    if candidate & ~low not in self.faces:
                        minimal = False
                        break
                    rest ^= low
                if minimal:
                    candidates.add(candidate)
        return sorted(candidates, key=face_key)

    def stanley_reisner_ideal(self) -> list[sympy.Expr]:
        """Monomial generators v_{i1}···v_{ij} of the Stanley-Reisner ideal, one per minimal non-face."""
        if self.m == 0:
            return []
        symbols = sympy.symbols(f"v1:{self.m + 1}")
        return [sympy.Mul(*(symbols[i - 1] for i in members(mask))) for mask in self.minimal_non_faces()]

    def relabel(self, mapping: dict[int, int], m: int | None = None) -> "SimplicialComplex":
        """Apply a vertex map (1-based to 1-based); vertices absent from the map must be ghosts."""
        target_m = self.m if m is None else m
        faces = set()
        for face in self.faces:
            faces.add(vertex_set(mapping[v] for v in members(face)))
        return SimplicialComplex(target_m, frozenset(faces))


@dataclass(frozen=True)
class SimplicialPair:
    """A pair (big, small) of complexes on the same vertex set with small ⊆ big."""

    big: SimplicialComplex
    small: SimplicialComplex

    def __post_init__(self):
        if self.big.m != self.small.m:
            raise PairContainmentError(f"Pair sides have {self.big.m} and {self.small.m} vertices")
        if not self.small.faces <= self.big.faces:
            missing = sorted(self.small.faces - self.big.faces, key=face_key)
            raise PairContainmentError(f"Small side face {format_face(missing[0])} is not in the big side")

    @property
    def m(self) -> int:
        return self.big.m
