"""Tests for the polyjoin module."""

import random
import unittest
from itertools import product

from momangle.complexes import SimplicialComplex, SimplicialPair, full_set, subsets
from momangle.config import MomangleConfig
from momangle.corpus import load_corpus
from momangle.duality import Verdict
from momangle.duality.checks import GHSCheck
from momangle.exceptions import BudgetExceededError, ComplexError, VoidComplexError
from momangle.moment_angle import poincare_polynomial
from momangle.polyjoin import (
    JoinSpec,
    are_isomorphic,
    ayzenberg_predicate,
    composition_complex,
    composition_is_poincare,
    composition_spec,
    find_isomorphism,
    is_boundary_of_simplex,
    poincare_polynomial_product,
    polyhedral_join,
    polyhedral_join_by_union,
    polyjoin_classify,
    suspension_pair,
)
from tests.helpers import OCTAHEDRON, PATH_P3, PENTAGON, RP2, random_complex

S0 = SimplicialComplex.boundary_of_simplex(2)
POINT = SimplicialComplex.simplex(1)
ENDPOINTS = SimplicialComplex.from_facets(3, [[1], [3]])


def all_complexes(m: int) -> list[SimplicialComplex]:
    """Every non-VOID complex on [m]."""
    nonempty = [s for s in subsets(full_set(m)) if s]
    found = set()
    for choice in range(1 << len(nonempty)):
        facets = [s for i, s in enumerate(nonempty) if choice >> i & 1]
        found.add(SimplicialComplex.from_facets(m, facets, include_empty=True))
    return sorted(found, key=lambda K: (len(K.faces), sorted(K.faces)))


class TestJoinSpec(unittest.TestCase):
    """Test cases for JoinSpec validation."""

    def test_pair_count(self):
        """Test that the number of pairs must match the base."""
        with self.assertRaises(ComplexError):
            JoinSpec(S0, (SimplicialPair(POINT, POINT),))

    def test_void_base(self):
        """Test that the base cannot be VOID."""
        with self.assertRaises(VoidComplexError):
            JoinSpec(SimplicialComplex.void(1), (SimplicialPair(POINT, POINT),))

    def test_offsets(self):
        """Test vertex offsets in pair order."""
        spec = JoinSpec(S0, (SimplicialPair(PATH_P3, ENDPOINTS), SimplicialPair(PENTAGON, PENTAGON)))
        self.assertEqual(spec.offsets, [0, 3])
        self.assertEqual(spec.m, 8)


class TestPolyhedralJoin(unittest.TestCase):
    """Test cases for polyhedral joins."""

    def test_octahedron_from_paths(self):
        """Test that two copies of (path, endpoints) over S^0 give the octahedron."""
        pair = SimplicialPair(PATH_P3, ENDPOINTS)
        result = polyhedral_join(JoinSpec(S0, (pair, pair)))
        self.assertEqual(result.m, 6)
        self.assertEqual(result.ghost_vertices, 0)
        self.assertTrue(are_isomorphic(result, OCTAHEDRON))

    def test_suspension_of_pentagon(self):
        """Test the seven-vertex 2-sphere over ∂Δ¹ ∗ {3} with a VOID small side."""
        base = SimplicialComplex.from_facets(3, [[1, 3], [2, 3]])
        point_pair = SimplicialPair(POINT, SimplicialComplex.empty(1))
        pentagon_pair = SimplicialPair(PENTAGON, SimplicialComplex.void(5))
        result = polyhedral_join(JoinSpec(base, (point_pair, point_pair, pentagon_pair)))
        self.assertEqual(result.m, 7)
        report = GHSCheck().evaluate(result)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertEqual(report.params["n"], 2)
        self.assertTrue(are_isomorphic(result, load_corpus("sphere_7")))

    def test_simplex_base_is_join(self):
        """Test that over a full simplex with L_i = K_i the polyhedral join is the join."""
        spec = JoinSpec(
            SimplicialComplex.simplex(2), (SimplicialPair(PENTAGON, PENTAGON), SimplicialPair(S0, S0))
        )
        self.assertEqual(polyhedral_join(spec), PENTAGON.join(S0))

    def test_membership_matches_union(self):
        """Test that the membership rule and the union of joins agree on random specs."""
        rng = random.Random(5)
        for _ in range(300):
            base = random_complex(rng, rng.randint(1, 3))
            pairs = []
            for _ in range(base.m):
                big = random_complex(rng, rng.randint(1, 3), max_facets=3)
                option = rng.randint(0, 2)
                if option == 0:
                    small = SimplicialComplex.void(big.m)
                elif option == 1:
                    small = SimplicialComplex.empty(big.m)
                else:
                    small = big.full_subcomplex(rng.getrandbits(big.m))
                pairs.append(SimplicialPair(big, small))
            spec = JoinSpec(base, tuple(pairs))
            self.assertEqual(polyhedral_join(spec), polyhedral_join_by_union(spec))

    def test_kunneth(self):
        """Test that the octahedral join has the Poincaré polynomial of (S³)³."""
        cube = poincare_polynomial_product([1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1])
        self.assertEqual(cube, [1, 0, 0, 3, 0, 0, 3, 0, 0, 1])
        pair = SimplicialPair(PATH_P3, ENDPOINTS)
        self.assertEqual(poincare_polynomial(polyhedral_join(JoinSpec(S0, (pair, pair)))), cube)

    def test_product_coefficients_are_exact(self):
        """Test that large Betti numbers multiply without overflow."""
        big = 2**40
        self.assertEqual(poincare_polynomial_product([1, big], [1, big]), [1, 2 * big, big * big])
        self.assertEqual(poincare_polynomial_product([3**50], [3**50]), [3**100])
        self.assertEqual(poincare_polynomial_product(), [1])
        self.assertEqual(poincare_polynomial_product([1, 1], []), [0, 0])


class TestSuspensionPair(unittest.TestCase):
    """Test cases for suspension_pair."""

    def test_octahedron(self):
        """Test that k = 2 over S^0 gives the octahedron."""
        pair = suspension_pair(2)
        self.assertEqual(pair.m, 3)
        result = polyhedral_join(JoinSpec(S0, (pair, pair)))
        self.assertTrue(are_isomorphic(result, OCTAHEDRON))

    def test_higher_sphere(self):
        """Test that k = 3 over S^0 gives a 4-dimensional sphere on eight vertices."""
        pair = suspension_pair(3)
        result = polyhedral_join(JoinSpec(S0, (pair, pair)))
        self.assertEqual(result.m, 8)
        self.assertEqual(result.dimension(), 4)
        self.assertTrue(GHSCheck().evaluate(result).passed)

    def test_invalid(self):
        """Test that k must be positive."""
        with self.assertRaises(ComplexError):
            suspension_pair(0)


class TestComposition(unittest.TestCase):
    """Test cases for composition complexes and the substitution predicate."""

    def test_boundaries_compose_to_boundary(self):
        """Test that substituting boundaries of simplices into S^0 gives ∂Δ⁵."""
        boundary = SimplicialComplex.boundary_of_simplex(3)
        result = composition_complex(S0, [boundary, boundary])
        self.assertEqual(result.m, 6)
        self.assertTrue(is_boundary_of_simplex(result))
        self.assertTrue(ayzenberg_predicate(S0, [boundary, boundary]))

    def test_ghost_base(self):
        """Test that over {∅} on one ghost vertex the composition is the factor itself."""
        result = composition_complex(SimplicialComplex.empty(1), [OCTAHEDRON])
        self.assertEqual(result, OCTAHEDRON)
        self.assertTrue(ayzenberg_predicate(SimplicialComplex.empty(1), [OCTAHEDRON]))

    def test_predicate_rejects(self):
        """Test that a full simplex factor on a non-ghost vertex gives a cone."""
        factors = [POINT.join(POINT), S0]
        self.assertFalse(ayzenberg_predicate(S0, factors))
        self.assertFalse(GHSCheck().evaluate(composition_complex(S0, factors)).passed)

    def test_predicate_input_validation(self):
        """Test that factors need vertices and the base cannot be VOID."""
        with self.assertRaises(ComplexError):
            ayzenberg_predicate(S0, [S0, SimplicialComplex.empty(0)])
        with self.assertRaises(VoidComplexError):
            ayzenberg_predicate(SimplicialComplex.void(1), [S0])

    def test_predicate_matches_ghs_exhaustively(self):
        """Test the predicate against the GHS check for every base on at most three vertices."""
        factor_choices = [
            POINT,
            SimplicialComplex.simplex(2),
            S0,
            SimplicialComplex.boundary_of_simplex(3),
        ]
        ghs = GHSCheck()
        for m in (1, 2, 3):
            for base in all_complexes(m):
                for factors in product(factor_choices, repeat=m):
                    with self.subTest(base=base.facets(), factors=[f.m for f in factors]):
                        expected = ghs.evaluate(composition_complex(base, factors)).passed
                        self.assertEqual(ayzenberg_predicate(base, factors), expected)

    def test_composition_is_poincare(self):
        """Test the PD predicate against the joint classification of the composition."""
        factor_choices = [
            SimplicialComplex.empty(1),
            S0,
            SimplicialComplex.empty(2),
            SimplicialComplex.boundary_of_simplex(3),
        ]
        for base in (S0, SimplicialComplex.boundary_of_simplex(3)):
            for factors in product(factor_choices, repeat=base.m):
                K = composition_complex(base, factors)
                classification = polyjoin_classify(composition_spec(base, factors))
                if not classification.hypothesis_met:
                    continue
                with self.subTest(base=base.m, factors=[sorted(f.faces) for f in factors]):
                    expected = classification.verdict == Verdict.PASS
                    self.assertEqual(composition_is_poincare(base, factors), expected)
                    self.assertEqual(GHSCheck().evaluate(K).passed, expected)

    def test_composition_is_poincare_ghost_base(self):
        """Test that bases with ghost vertices are rejected."""
        with self.assertRaises(ComplexError):
            composition_is_poincare(SimplicialComplex.empty(1), [S0])


class TestIsomorphism(unittest.TestCase):
    """Test cases for the isomorphism search."""

    def test_relabelled_pentagon(self):
        """Test that a relabelled pentagon is found, with its map."""
        mapping = {1: 3, 2: 5, 3: 2, 4: 4, 5: 1}
        relabeled = PENTAGON.relabel(mapping)
        found = find_isomorphism(PENTAGON, relabeled)
        self.assertIsNotNone(found)
        self.assertEqual(PENTAGON.relabel(found), relabeled)

    def test_ghost_vertices_ignored(self):
        """Test that ghost vertices do not affect isomorphism."""
        self.assertTrue(are_isomorphic(SimplicialComplex(7, PENTAGON.faces), PENTAGON))

    def test_same_f_vector(self):
        """Test two triangles against a hexagon, which share f-vector and degrees."""
        two_triangles = SimplicialComplex.from_facets(6, [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6]])
        hexagon = SimplicialComplex.from_facets(6, [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]])
        self.assertEqual(two_triangles.f_vector(), hexagon.f_vector())
        self.assertFalse(are_isomorphic(two_triangles, hexagon))

    def test_different_complexes(self):
        """Test complexes told apart by counts."""
        self.assertFalse(are_isomorphic(RP2, OCTAHEDRON))
        path = SimplicialComplex.from_facets(4, [[1, 2], [2, 3], [3, 4]])
        star = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [1, 4]])
        self.assertFalse(are_isomorphic(path, star))

    def test_budget(self):
        """Test the vertex cap."""
        with self.assertRaises(BudgetExceededError):
            are_isomorphic(PENTAGON, PENTAGON, MomangleConfig(iso_max_vertices=4))

    def test_void(self):
        """Test that VOID is rejected."""
        with self.assertRaises(VoidComplexError):
            are_isomorphic(SimplicialComplex.void(2), S0)


if __name__ == "__main__":
    unittest.main()
