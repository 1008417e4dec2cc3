"""Tests for the moment_angle module."""

import random
import unittest
from unittest import mock

from momangle.complexes import SimplicialComplex, full_set, subsets, vertex_set
from momangle.config import MomangleConfig
from momangle.corpus import corpus_names, load_corpus
from momangle.exceptions import BudgetExceededError, ChainLevelError, VoidComplexError
from momangle.homology import AbelianGroup, GradedGroups, simplex_boundary
from momangle.moment_angle import (
    Cell,
    ZkCellularComplex,
    ZkChain,
    ZkCochain,
    cell_boundary,
    h_pullback,
    h_transport,
    h_transport_cochain,
    hochster_cohomology,
    poincare_polynomial,
    shuffle_sign,
    verify_direct_oracle,
    zk_boundary,
    zk_cells,
    zk_chain_complex,
    zk_cohomology_groups,
    zk_homology_direct,
)
from tests.helpers import GHOST_POINT, OCTAHEDRON, PENTAGON, RP2, complex_family, random_complex


class TestCells(unittest.TestCase):
    """Test cases for cells and their boundaries."""

    def test_cell_dimension_and_support(self):
        """Test that circles count once and disks twice."""
        cell = Cell(vertex_set([1, 4]), vertex_set([2]))
        self.assertEqual(cell.dimension, 4)
        self.assertEqual(cell.support, vertex_set([1, 2, 4]))
        self.assertEqual(str(cell), "κ({1,4},{2})")

    def test_overlapping_cell_rejected(self):
        """Test that a coordinate cannot be both circle and disk."""
        with self.assertRaises(ChainLevelError):
            Cell(vertex_set([1]), vertex_set([1, 2]))

    def test_membership(self):
        """Test that κ(A, B) lies in Z_K iff B is a face."""
        self.assertTrue(Cell(vertex_set([2]), vertex_set([1, 3])).in_moment_angle_complex(OCTAHEDRON))
        self.assertFalse(Cell(0, vertex_set([1, 2])).in_moment_angle_complex(OCTAHEDRON))

    def test_boundary_of_disk_pair(self):
        """Test ∂κ(∅, {1,2}) = -κ({1},{2}) - κ({2},{1})."""
        boundary = dict((cell, sign) for sign, cell in cell_boundary(Cell(0, vertex_set([1, 2]))))
        self.assertEqual(
            boundary,
            {Cell(vertex_set([1]), vertex_set([2])): -1, Cell(vertex_set([2]), vertex_set([1])): -1},
        )

    def test_boundary_squares_to_zero(self):
        """Test ∂∂ = 0 on cells and random chains of random complexes."""
        rng = random.Random(7)
        for K in complex_family(seed=5, count=30, max_m=5):
            cells = zk_cells(K)
            for degree, of_degree in cells.items():
                for cell in rng.sample(of_degree, min(4, len(of_degree))):
                    with self.subTest(K=str(K), cell=str(cell)):
                        self.assertFalse(zk_boundary(zk_boundary(ZkChain.from_cell(cell), K), K))
                chain = ZkChain(degree, {cell: rng.randint(-3, 3) for cell in of_degree})
                with self.subTest(K=str(K), degree=degree):
                    self.assertFalse(zk_boundary(zk_boundary(chain, K), K))

    def test_chain_arithmetic(self):
        """Test that cancellation leaves the zero vector."""
        cell = Cell(vertex_set([1]), 0)
        chain = ZkChain.from_cell(cell, 3)
        self.assertFalse(chain - chain)
        self.assertEqual((chain + chain)[cell], 6)
        self.assertEqual(ZkChain(1, {}), ZkChain(5, {}))
        with self.assertRaises(ChainLevelError):
            ZkChain(2, {cell: 1})


class TestTransport(unittest.TestCase):
    """Test cases for the map h between simplicial and cellular chains."""

    def test_shuffle_sign(self):
        """Test sgn(σ, J) on small examples."""
        self.assertEqual(shuffle_sign(vertex_set([2]), vertex_set([1, 2])), -1)
        self.assertEqual(shuffle_sign(vertex_set([1]), vertex_set([1, 2])), 1)
        self.assertEqual(shuffle_sign(0, vertex_set([1, 2, 3])), 1)

    def test_h_is_a_chain_map(self):
        """Test ∂h = h∂ on every nonempty simplex of random complexes."""
        rng = random.Random(11)
        for _ in range(60):
            K = random_complex(rng, rng.randint(1, 5))
            for J in subsets(full_set(K.m)):
                for sigma in K.full_subcomplex(J).faces:
                    if not sigma:
                        continue
                    k = sigma.bit_count() - 1
                    image = zk_boundary(h_transport(K, J, {sigma: 1}), K)
                    boundary = {}
                    for sign, facet in simplex_boundary(sigma):
                        boundary[facet] = boundary.get(facet, 0) + sign
                    self.assertEqual(image, h_transport(K, J, boundary, dimension=k - 1))

    def test_pullback_inverts_transport(self):
        """Test h^* ∘ (h^*)^{-1} = id on cochains."""
        cochain = {vertex_set([1, 3]): 2, vertex_set([3, 5]): -1}
        J = vertex_set([1, 3, 5, 6])
        transported = h_transport_cochain(OCTAHEDRON, J, cochain)
        self.assertEqual(transported.degree, 1 + 4 + 1)
        self.assertEqual(h_pullback(J, transported), cochain)

    def test_transport_rejects_foreign_simplices(self):
        """Test that simplices must lie in K_J and share one dimension."""
        with self.assertRaises(ChainLevelError):
            h_transport(OCTAHEDRON, vertex_set([1, 2]), {vertex_set([1, 2]): 1})
        with self.assertRaises(ChainLevelError):
            h_transport(OCTAHEDRON, vertex_set([1, 3]), {vertex_set([1]): 1, vertex_set([1, 3]): 1})
        with self.assertRaises(ChainLevelError):
            h_transport(OCTAHEDRON, vertex_set([1, 3]), {})


class TestHochsterCohomology(unittest.TestCase):
    """Test cases for the bigraded cohomology of Z_K."""

    def test_octahedron(self):
        """Test that Z_K of the octahedron is (S³)³."""
        self.assertEqual(poincare_polynomial(OCTAHEDRON), [1, 0, 0, 3, 0, 0, 3, 0, 0, 1])
        groups = zk_cohomology_groups(OCTAHEDRON)
        self.assertTrue(all(not g.torsion for g in groups.groups.values()))
        H = hochster_cohomology(OCTAHEDRON)
        self.assertEqual(
            H.summands(3), [(vertex_set([1, 2]), 0), (vertex_set([3, 4]), 0), (vertex_set([5, 6]), 0)]
        )
        self.assertEqual(H.summands(9), [(full_set(6), 2)])

    def test_pentagon(self):
        """Test the Poincaré polynomial of Z_K for the pentagon."""
        self.assertEqual(poincare_polynomial(PENTAGON), [1, 0, 0, 5, 5, 0, 0, 1])

    def test_boundary_of_simplex(self):
        """Test that Z_K of ∂Δ^{m-1} is S^{2m-1}."""
        for m in (2, 3, 4):
            expected = GradedGroups({0: AbelianGroup.free(), 2 * m - 1: AbelianGroup.free()})
            self.assertEqual(zk_cohomology_groups(SimplicialComplex.boundary_of_simplex(m)), expected)

    def test_ghost_vertex(self):
        """Test that {∅} on one vertex gives the circle."""
        expected = GradedGroups({0: AbelianGroup.free(), 1: AbelianGroup.free()})
        self.assertEqual(zk_cohomology_groups(GHOST_POINT), expected)
        self.assertEqual(verify_direct_oracle(GHOST_POINT), expected)

    def test_simplex_is_contractible(self):
        """Test that Z_K of a full simplex is a disk."""
        self.assertEqual(poincare_polynomial(SimplicialComplex.simplex(3)), [1])

    def test_cone_is_contractible(self):
        """Test that Z_K of a cone has the cohomology of a point."""
        point = GradedGroups({0: AbelianGroup.free()})
        for K in complex_family(seed=23, count=25, max_m=4):
            cone = K.join(SimplicialComplex.simplex(1))
            with self.subTest(K=str(K)):
                self.assertEqual(zk_cohomology_groups(cone), point)
                self.assertEqual(poincare_polynomial(cone), [1])
                self.assertEqual(zk_homology_direct(cone), point)

    def test_degrees_bounded_by_twice_m(self):
        """Test that no cell and no nonzero group lies above degree 2m."""
        for K in complex_family(seed=29, count=40, max_m=5):
            with self.subTest(K=str(K)):
                self.assertLessEqual(max(zk_cells(K)), 2 * K.m)
                self.assertLessEqual(zk_cohomology_groups(K).top_degree(), 2 * K.m)
                self.assertLessEqual(len(poincare_polynomial(K)) - 1, 2 * K.m)

    def test_projective_plane_torsion(self):
        """Test the Z/2 summand in degree 9."""
        groups = zk_cohomology_groups(RP2)
        self.assertEqual(groups[9], AbelianGroup.cyclic(2))
        self.assertEqual(groups.top_degree(), 9)

    def test_void_is_rejected(self):
        """Test that the VOID complex has no moment-angle model."""
        with self.assertRaises(VoidComplexError):
            hochster_cohomology(SimplicialComplex.void(3))
        with self.assertRaises(VoidComplexError):
            zk_cohomology_groups(SimplicialComplex.void(0))
        with self.assertRaises(VoidComplexError):
            ZkCellularComplex(SimplicialComplex.void(2))

    def test_budget(self):
        """Test that the vertex caps are enforced."""
        config = MomangleConfig(max_m=4, direct_max_m=4)
        with self.assertRaises(BudgetExceededError):
            hochster_cohomology(OCTAHEDRON, config)
        with self.assertRaises(BudgetExceededError):
            zk_homology_direct(PENTAGON, config)

    def test_table(self):
        """Test the summary rows of the pentagon."""
        rows = hochster_cohomology(PENTAGON).table()
        self.assertEqual(rows[0], {"J": [], "l": -1, "group": "Z", "total_degree": 0})
        self.assertEqual(rows[-1], {"J": [1, 2, 3, 4, 5], "l": 1, "group": "Z", "total_degree": 7})
        self.assertEqual(sum(1 for row in rows if row["total_degree"] == 3), 5)

    def test_representative_coordinates(self):
        """Test that each summand generator has a unit coordinate vector."""
        H = hochster_cohomology(PENTAGON)
        for subset, l in H.summands():
            size = H.basis(subset, l).size
            for i in range(size):
                coords = tuple(1 if j == i else 0 for j in range(size))
                cochain = H.representative(subset, l, coords)
                self.assertIsInstance(cochain, ZkCochain)
                self.assertEqual(H.coordinates(cochain), {(subset, l): coords})

    def test_workers_agree(self):
        """Test that the multiprocessing path gives the same groups."""
        config = MomangleConfig(workers=2)
        self.assertEqual(zk_cohomology_groups(PENTAGON, config), zk_cohomology_groups(PENTAGON))


class TestDirectOracle(unittest.TestCase):
    """Test cases for the direct cellular computation."""

    def test_corpus(self):
        """Test that every non-VOID corpus complex passes the oracle."""
        for name in corpus_names():
            K = load_corpus(name)
            if K.is_void:
                continue
            with self.subTest(name=name):
                verify_direct_oracle(K)

    def test_random_complexes(self):
        """Test the oracle on 500 random complexes on at most five vertices."""
        family = complex_family(seed=3, count=500)
        self.assertEqual(len(family), 500)
        for K in family:
            verify_direct_oracle(K)

    def test_cell_count(self):
        """Test that Z_K has 2^{m - |σ|} cells for every face σ."""
        for K in (PENTAGON, RP2, GHOST_POINT, SimplicialComplex.simplex(3)):
            expected = sum(2 ** (K.m - face.bit_count()) for face in K.faces)
            with self.subTest(K=str(K)):
                self.assertEqual(sum(len(cells) for cells in zk_cells(K).values()), expected)
                for degree, cells in zk_cells(K).items():
                    self.assertTrue(all(cell.dimension == degree and cell.disks in K for cell in cells))

    @mock.patch("momangle.moment_angle.zk_block_complex")
    def test_direct_homology_avoids_blocks(self, mock_block):
        """Test that the direct homology is assembled without the per-subset blocks."""
        mock_block.side_effect = AssertionError("per-subset block requested")
        pentagon = {0: AbelianGroup.free(), 3: AbelianGroup.free(5), 4: AbelianGroup.free(5), 7: AbelianGroup.free()}
        self.assertEqual(zk_homology_direct(PENTAGON), GradedGroups(pentagon))
        homology = zk_homology_direct(RP2)
        self.assertEqual(homology[8], AbelianGroup.cyclic(2))
        self.assertEqual(homology[9], AbelianGroup())
        self.assertEqual(
            zk_homology_direct(SimplicialComplex.boundary_of_simplex(2)),
            GradedGroups({0: AbelianGroup.free(), 3: AbelianGroup.free()}),
        )
        mock_block.assert_not_called()

    def test_direct_void_and_budget(self):
        """Test that the direct homology rejects VOID and complexes above direct_max_m."""
        with self.assertRaises(VoidComplexError):
            zk_homology_direct(SimplicialComplex.void(2))
        with self.assertRaises(BudgetExceededError):
            zk_homology_direct(OCTAHEDRON, MomangleConfig(direct_max_m=5))

    def test_chain_complex_uses_direct_cap(self):
        """Test that the full cellular model with homology bases is held to direct_max_m."""
        config = MomangleConfig(max_m=8, direct_max_m=5)
        with self.assertRaises(BudgetExceededError):
            zk_chain_complex(OCTAHEDRON, config)
        self.assertEqual(zk_chain_complex(PENTAGON, config).K, PENTAGON)


if __name__ == "__main__":
    unittest.main()
