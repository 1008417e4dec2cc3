"""Polyhedral join products and composition complexes.

The polyhedral join of pairs (K_i, L_i) over a base K on [m] lives on [l_1] ⊔ … ⊔ [l_m], numbered in
pair order: vertex v of pair i becomes v + l_1 + … + l_{i-1}. A face ⊔ τ_i belongs to the join iff
every τ_i is a face of K_i and {i : τ_i ∉ L_i} is a face of K. An L_i given as VOID forces i into
every contributing base face.
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from momangle.complexes import SimplicialComplex, SimplicialPair, VertexSet, face_key, members
from momangle.config import DEFAULT_CONFIG, MomangleConfig
from momangle.duality.checks.ghs import GHSCheck
from momangle.duality.controller import Classification, DualityController
from momangle.exceptions import BudgetExceededError, ComplexError, VoidComplexError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JoinSpec:
    """A base complex on [m] with one simplicial pair per base vertex.

    Attributes:
        base: The base complex K.
        pairs: (K_i, L_i) for i = 1..m, each on its own vertex set [l_i].
    """

    base: SimplicialComplex
    pairs: tuple[SimplicialPair, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.base.is_void:
            raise VoidComplexError("The base of a polyhedral join cannot be VOID")
        if len(self.pairs) != self.base.m:
            raise ComplexError(f"Base has {self.base.m} vertices but {len(self.pairs)} pairs were given")

    @property
    def offsets(self) -> list[int]:
        """Shift applied to the vertex bits of each pair."""
        offsets, total = [], 0
        for pair in self.pairs:
            offsets.append(total)
            total += pair.m
        return offsets

    @property
    def m(self) -> int:
        return sum(pair.m for pair in self.pairs)


def _face_choices(spec: JoinSpec) -> Iterator[tuple[VertexSet, VertexSet]]:
    """(face of the join, {i : τ_i ∉ L_i}) for every choice of faces τ_i ∈ K_i."""
    offsets = spec.offsets
    options = [sorted(pair.big.faces, key=face_key) for pair in spec.pairs]
    for choice in product(*options):
        face, outside = 0, 0
        for i, (pair, tau) in enumerate(zip(spec.pairs, choice, strict=True)):
            face |= tau << offsets[i]
            if tau not in pair.small.faces:
                outside |= 1 << i
        yield face, outside


def polyhedral_join(spec: JoinSpec) -> SimplicialComplex:
    """(K_i, L_i)^{*K} by the membership characterization."""
    faces = frozenset(face for face, outside in _face_choices(spec) if outside in spec.base.faces)
    result = SimplicialComplex(spec.m, faces)
    logger.debug(f"Polyhedral join on {spec.m} vertices with {len(faces)} faces")
    return result


def polyhedral_join_by_union(spec: JoinSpec) -> SimplicialComplex:
    """(K_i, L_i)^{*K} as the union over base faces σ of the joins of K_i (i ∈ σ) and L_i (i ∉ σ)."""
    offsets = spec.offsets
    faces: set[VertexSet] = set()
    for sigma in spec.base.faces:
        sides = [pair.big if sigma >> i & 1 else pair.small for i, pair in enumerate(spec.pairs)]
        for choice in product(*(side.faces for side in sides)):
            face = 0
            for i, tau in enumerate(choice):
                face |= tau << offsets[i]
            faces.add(face)
    return SimplicialComplex(spec.m, frozenset(faces))


def composition_spec(base: SimplicialComplex, factors: Sequence[SimplicialComplex]) -> JoinSpec:
    for i, factor in enumerate(factors, start=1):
        if factor.m < 1:
            raise ComplexError(f"Factor {i} needs at least one vertex")
    return JoinSpec(base, tuple(SimplicialPair(SimplicialComplex.simplex(f.m), f) for f in factors))


def composition_complex(base: SimplicialComplex, factors: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """K(K_1, …, K_m): the polyhedral join with pairs (Δ^{l_i - 1}, K_i)."""
    return polyhedral_join(composition_spec(base, factors))


def is_boundary_of_simplex(K: SimplicialComplex) -> bool:
    return K.faces == SimplicialComplex.boundary_of_simplex(K.m).faces


def ayzenberg_predicate(
    base: SimplicialComplex, factors: Sequence[SimplicialComplex], config: MomangleConfig = DEFAULT_CONFIG
) -> bool:
    """Whether K(K_1, …, K_m) is a generalized homology sphere, decided from K and the K_i alone.

    This holds iff K is a GHS, K_i = ∂Δ^{l_i - 1} for every non-ghost vertex i of K, and K_i is a GHS
    for every ghost vertex i.
    """
    composition_spec(base, factors)
    ghs = GHSCheck(config)
    if not ghs.evaluate(base).passed:
        return False
    for i, factor in enumerate(factors, start=1):
        if base.vertices >> (i - 1) & 1:
            if not is_boundary_of_simplex(factor):
                return False
        elif factor.is_void or not ghs.evaluate(factor).passed:
            return False
    return True


def suspension_pair(k: int) -> SimplicialPair:
    """(∂Δ^{k-1} ∗ {v}, ∂Δ^{k-1}) on k + 1 vertices, with v = k + 1 a ghost of the small side.

    Over the base ∂Δ¹ two copies give the sphere ∂Δ^{k-1} ∗ ∂Δ^{k-1} ∗ ∂Δ¹; k = 2 is the octahedron.
    """
    if k < 1:
        raise ComplexError(f"Suspension pairs need k >= 1, got {k}")
    boundary = SimplicialComplex.boundary_of_simplex(k)
    apex = SimplicialComplex.simplex(1)
    return SimplicialPair(boundary.join(apex), SimplicialComplex(k + 1, boundary.faces))


def polyjoin_classify(spec: JoinSpec, config: MomangleConfig = DEFAULT_CONFIG) -> Classification:
    """Joint duality classification of the polyhedral join."""
    return DualityController(config).classify(polyhedral_join(spec))


def composition_is_poincare(
    base: SimplicialComplex, factors: Sequence[SimplicialComplex], config: MomangleConfig = DEFAULT_CONFIG
) -> bool:
    """Whether the polyhedral product of (cone Z_{K_i}, Z_{K_i}) over K is a Poincaré duality space.

    For a base without ghost vertices this holds iff K is a GHS and every K_i is ∂Δ^{l_i - 1}.

    Raises:
        ComplexError: The base has ghost vertices.
    """
    if base.ghost_vertices:
        raise ComplexError("composition_is_poincare needs a base without ghost vertices")
    composition_spec(base, factors)
    return GHSCheck(config).evaluate(base).passed and all(is_boundary_of_simplex(f) for f in factors)


def poincare_polynomial_product(*polynomials: Sequence[int]) -> list[int]:
    """Coefficients of the product of Poincaré polynomials (Künneth ranks of a product space)."""
    result = np.array([1], dtype=object)
    for polynomial in polynomials:
        result = np.convolve(result, np.asarray([int(c) for c in polynomial] or [0], dtype=object))
    return [int(c) for c in result]


def _vertex_signature(K: SimplicialComplex, vertex: VertexSet) -> tuple[int, ...]:
    return tuple(K.link(vertex).f_vector())


def _faces_through(K: SimplicialComplex) -> dict[VertexSet, list[VertexSet]]:
    through: dict[VertexSet, list[VertexSet]] = {}
    for face in K.faces:
        for v in members(face):
            through.setdefault(1 << (v - 1), []).append(face)
    return through


def _image(face: VertexSet, mapping: dict[VertexSet, VertexSet]) -> VertexSet:
    result = 0
    for v in members(face):
        result |= mapping[1 << (v - 1)]
    return result


def find_isomorphism(
    K: SimplicialComplex, L: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG
) -> dict[int, int] | None:
    """A bijection of non-ghost vertices carrying the faces of K onto those of L, or None.

    Depth-first search over vertex assignments, pruned by link f-vectors and by checking every face
    through the newest vertex in both directions.

    Raises:
        VoidComplexError: Either complex is VOID.
        BudgetExceededError: Either complex has more non-ghost vertices than config.iso_max_vertices.
    """
    if K.is_void or L.is_void:
        raise VoidComplexError("Isomorphism is undefined on the VOID complex")
    for complex_ in (K, L):
        count = complex_.vertices.bit_count()
        if count > config.iso_max_vertices:
            raise BudgetExceededError(
                f"Isomorphism search on {count} vertices exceeds iso_max_vertices={config.iso_max_vertices}"
            )
    if K.f_vector() != L.f_vector():
        return None

    k_vertices = [1 << (v - 1) for v in members(K.vertices)]
    l_vertices = [1 << (v - 1) for v in members(L.vertices)]
    k_signature = {v: _vertex_signature(K, v) for v in k_vertices}
    l_signature = {w: _vertex_signature(L, w) for w in l_vertices}
    if sorted(k_signature.values()) != sorted(l_signature.values()):
        return None
    candidates = {v: [w for w in l_vertices if l_signature[w] == k_signature[v]] for v in k_vertices}
    # Most constrained vertices first
    order = sorted(k_vertices, key=lambda v: (len(candidates[v]), v))
    k_through, l_through = _faces_through(K), _faces_through(L)

    mapping: dict[VertexSet, VertexSet] = {}
    inverse: dict[VertexSet, VertexSet] = {}

    def feasible(v: VertexSet, w: VertexSet) -> bool:
        mapped = 0
        for u in mapping:
            mapped |= u
        for face in k_through.get(v, []):
            if face & ~mapped == 0 and _image(face, mapping) not in L.faces:
                return False
        image_mapped = 0
        for u in inverse:
            image_mapped |= u
        for face in l_through.get(w, []):
            if face & ~image_mapped == 0 and _image(face, inverse) not in K.faces:
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for w in candidates[v]:
            if w in inverse:
                continue
            mapping[v], inverse[w] = w, v
            if feasible(v, w) and extend(depth + 1):
                return True
            del mapping[v], inverse[w]
        return False

    if not extend(0):
        return None
    return {members(v)[0]: members(w)[0] for v, w in mapping.items()}


def are_isomorphic(K: SimplicialComplex, L: SimplicialComplex, config: MomangleConfig = DEFAULT_CONFIG) -> bool:
    """Whether K and L are isomorphic after discarding ghost vertices."""
    found = find_isomorphism(K, L, config) is not None
    logger.debug(f"Isomorphism search: {'found' if found else 'none'}")
    return found

