import random
import unittest
from collections import Counter

from hypothesis import given, settings, strategies as st

from tatetors.dimtorsor import AbelianGroup
from tatetors.errors import (
    DegreeOutOfRangeError,
    InvalidGerbeError,
    InvalidReferenceError,
    SimplicialIdentityError,
)
from tatetors.sampling import random_cochain
from tatetors.simptors import (
    Cochain,
    GerbeRep,
    MultTorsorRep,
    SimplexRef,
    check_mult_torsor,
    classify_torsor,
    coboundary,
    cohomology,
    evaluate_even_odd,
    gerbe_to_torsor,
    iso_decide,
    minimal_torus,
    projective_plane,
    raw_cochain,
    reanchor,
    simplex_boundary,
    solve_coboundary,
    standard_simplex,
    street_boundaries,
    street_identity_holds,
    symbolic_even_odd,
    validate_simplicial_set,
)

Z = AbelianGroup.integers()
Z2 = AbelianGroup.cyclic(2)
Z3 = AbelianGroup.cyclic(3)

TRIANGLE_FACES = {"01": ["1", "0"], "02": ["2", "0"], "12": ["2", "1"]}


class TestSimplicialSets(unittest.TestCase):
    def test_should_accept_standard_triangle(self):
        complex_ = standard_simplex(2)
        self.assertEqual((("0", "1", "2"), ("01", "02", "12"), ("012",)), complex_.simplices)
        self.assertEqual(2, complex_.dim)

    def test_should_name_failing_face_identity(self):
        faces = dict(TRIANGLE_FACES, **{"012": ["12", "02", "02"]})
        with self.assertRaises(SimplicialIdentityError) as context:
            validate_simplicial_set([["0", "1", "2"], ["01", "02", "12"], ["012"]], faces)
        self.assertEqual(("012", 0, 2), (context.exception.simplex, context.exception.i, context.exception.j))

    def test_should_reject_dangling_reference(self):
        with self.assertRaises(InvalidReferenceError):
            validate_simplicial_set([["0"], ["a"]], {"a": ["0", "x"]})

    def test_should_reject_dimension_above_cap(self):
        with self.assertRaises(DegreeOutOfRangeError):
            standard_simplex(3, dim_cap=2)

    def test_should_accept_minimal_torus_and_projective_plane(self):
        self.assertEqual((1, 3, 2), tuple(len(ids) for ids in minimal_torus().simplices))
        self.assertEqual((2, 3, 2), tuple(len(ids) for ids in projective_plane().simplices))

    def test_should_normalize_degeneracies(self):
        ref = SimplexRef.parse("s0(s0(v))")
        self.assertEqual((1, 0), ref.ops)
        self.assertEqual("s1(s0(v))", str(ref))
        with self.assertRaises(ValueError):
            SimplexRef.parse("s0(v")

    def test_should_take_faces_of_degenerate_simplices(self):
        complex_ = minimal_torus()
        s0a = SimplexRef.parse("s0(a)")
        self.assertEqual(
            [SimplexRef("a"), SimplexRef("a"), SimplexRef.parse("s0(v)")],
            complex_.face_refs(s0a),
        )


class TestStreetBoundaries(unittest.TestCase):
    def test_should_split_triangle_faces_by_parity(self):
        boundaries = street_boundaries(standard_simplex(2), "012")
        self.assertEqual(Counter({"12": 1, "01": 1}), boundaries["+"])
        self.assertEqual(Counter({"02": 1}), boundaries["-"])

    def test_should_list_second_order_faces_of_tetrahedron(self):
        boundaries = street_boundaries(standard_simplex(3), "0123")
        self.assertEqual(Counter(["123", "013"]), boundaries["+"])
        self.assertEqual(Counter(["023", "012"]), boundaries["-"])
        self.assertEqual(Counter(["23", "12", "13", "01"]), boundaries["++"])
        self.assertEqual(Counter(["13", "03"]), boundaries["-+"])
        self.assertEqual(Counter(["23", "02", "12", "01"]), boundaries["+-"])
        self.assertEqual(Counter(["03", "02"]), boundaries["--"])

    def test_should_list_second_order_faces_of_four_simplex(self):
        boundaries = street_boundaries(standard_simplex(4), "01234")
        self.assertEqual(Counter(["1234", "0134", "0123"]), boundaries["+"])
        self.assertEqual(Counter(["0234", "0124"]), boundaries["-"])
        self.assertEqual(Counter(["234", "124", "134", "014", "123", "013"]), boundaries["++"])
        self.assertEqual(Counter(["134", "123", "034", "013", "023", "012"]), boundaries["-+"])
        self.assertEqual(Counter(["234", "024", "124", "014"]), boundaries["+-"])
        self.assertEqual(Counter(["034", "023", "024", "012"]), boundaries["--"])

    def test_should_hold_second_order_identity(self):
        complex_ = standard_simplex(4)
        for n in (2, 3, 4):
            for sigma in complex_.nondegenerate(n):
                self.assertTrue(street_identity_holds(street_boundaries(complex_, sigma)))

    def test_should_reject_low_dimensional_simplex(self):
        with self.assertRaises(DegreeOutOfRangeError):
            street_boundaries(standard_simplex(2), "01")


class TestCochains(unittest.TestCase):
    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6), st.integers(0, 2))
    def test_should_square_coboundary_to_zero(self, seed, degree):
        complex_ = standard_simplex(4)
        c = random_cochain(complex_, degree, Z, random.Random(seed))
        self.assertTrue(coboundary(coboundary(c)).is_zero())

    def test_should_reject_unknown_simplex(self):
        with self.assertRaises(InvalidReferenceError):
            Cochain.from_coords(minimal_torus(), 1, Z, {"z": [1]})

    def test_should_solve_coboundaries(self):
        complex_ = simplex_boundary(3)
        x = random_cochain(complex_, 1, Z3, random.Random(3))
        solution = solve_coboundary(coboundary(x))
        self.assertEqual(coboundary(x), coboundary(solution))
        generator = cohomology(complex_, 2, Z3).representatives[0]
        self.assertIsNone(solve_coboundary(generator))


class TestPasting(unittest.TestCase):
    def test_should_give_equal_pastings_for_zero_alpha(self):
        t = MultTorsorRep.trivial(standard_simplex(3), 1, Z)
        self.assertEqual((Z.zero, Z.zero), evaluate_even_odd(t, "0123"))

    def test_should_match_alternating_coboundary_symbolically(self):
        complex_ = standard_simplex(4)
        for n in (2, 3, 4):
            for tau in complex_.nondegenerate(n):
                difference, expected = symbolic_even_odd(complex_, tau)
                self.assertEqual(expected, difference)

    def test_should_pass_coboundary_alpha(self):
        complex_ = standard_simplex(4)
        alpha = coboundary(random_cochain(complex_, 1, Z, random.Random(11)))
        report = check_mult_torsor(MultTorsorRep.from_alpha(alpha))
        self.assertEqual("pass", report["status"])
        self.assertEqual(5, report["checked"])

    def test_should_report_witness_for_non_cocycle(self):
        complex_ = standard_simplex(3)
        alpha = Cochain.from_coords(complex_, 2, Z, {"012": [1]})
        report = check_mult_torsor(MultTorsorRep.from_alpha(alpha))
        self.assertEqual("fail", report["status"])
        self.assertEqual([{"simplex": "0123", "difference": [-1]}], report["violations"])

    def test_should_subtract_anchor_coboundary(self):
        complex_ = standard_simplex(3)
        rng = random.Random(2)
        anchors = random_cochain(complex_, 1, Z, rng)
        alpha = random_cochain(complex_, 2, Z, rng)
        t = MultTorsorRep(complex_, 1, Z, anchors, alpha)
        self.assertEqual(alpha - coboundary(anchors), raw_cochain(t))
        self.assertEqual(raw_cochain(t), raw_cochain(reanchor(t, random_cochain(complex_, 1, Z, rng))))

    def test_should_reject_degree_above_cap(self):
        complex_ = standard_simplex(2, dim_cap=2)
        with self.assertRaises(DegreeOutOfRangeError):
            MultTorsorRep.trivial(complex_, 1, Z)


class TestCohomology(unittest.TestCase):
    def test_should_compute_known_groups(self):
        cases = [
            (simplex_boundary(2), 1, Z, (0,)),
            (simplex_boundary(3), 2, Z, (0,)),
            (standard_simplex(2), 1, Z, ()),
            (standard_simplex(2), 2, Z, ()),
            (minimal_torus(), 1, Z, (0, 0)),
            (minimal_torus(), 2, Z, (0,)),
            (projective_plane(), 1, Z, ()),
            (projective_plane(), 2, Z, (2,)),
            (projective_plane(), 2, Z2, (2,)),
            (projective_plane(), 1, Z2, (2,)),
        ]
        for complex_, n, group, factors in cases:
            self.assertEqual(sorted(factors), sorted(cohomology(complex_, n, group).group.factors))

    def test_should_reject_degree_above_cap(self):
        with self.assertRaises(DegreeOutOfRangeError):
            cohomology(standard_simplex(2, dim_cap=2), 2, Z)

    def test_should_classify_representatives_as_generators(self):
        h = cohomology(minimal_torus(), 1, Z)
        for k, representative in enumerate(h.representatives):
            self.assertEqual(h.group.generator(k), h.class_of(representative))

    def test_should_classify_torus_generator(self):
        complex_ = minimal_torus()
        upper = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, Z, {"U": [1]}))
        lower = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, Z, {"L": [1]}))
        self.assertIn(classify_torsor(upper).coords, [(1,), (-1,)])
        self.assertTrue((classify_torsor(upper) + classify_torsor(lower)).is_zero())
        self.assertTrue(classify_torsor(MultTorsorRep.trivial(complex_, 1, Z)).is_zero())

    def test_should_decide_isomorphism(self):
        complex_ = minimal_torus()
        t1 = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, Z, {"U": [1]}))
        t2 = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, Z, {"L": [-1]}))
        t3 = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, Z, {"U": [2]}))
        x = iso_decide(t1, t2)
        self.assertIsNotNone(x)
        self.assertEqual(t1.alpha - t2.alpha, coboundary(x))
        self.assertIsNone(iso_decide(t1, t3))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_keep_class_when_reanchored(self, seed):
        rng = random.Random(seed)
        complex_ = projective_plane()
        alpha = random_cochain(complex_, 2, Z2, rng)
        t = MultTorsorRep.from_alpha(alpha)
        moved = reanchor(t, random_cochain(complex_, 1, Z2, rng))
        self.assertEqual(classify_torsor(t), classify_torsor(moved))
        self.assertIsNotNone(iso_decide(t, moved))


class TestGerbes(unittest.TestCase):
    def test_should_turn_trivial_gerbe_into_trivial_torsor(self):
        complex_ = simplex_boundary(4)
        g = GerbeRep(complex_, Z, Cochain.zero(complex_, 2, Z), Cochain.zero(complex_, 3, Z))
        t = gerbe_to_torsor(g)
        self.assertEqual(2, t.degree)
        self.assertTrue(t.alpha.is_zero())
        self.assertTrue(classify_torsor(t).is_zero())

    def test_should_classify_coboundary_beta_to_zero(self):
        rng = random.Random(5)
        complex_ = standard_simplex(4)
        beta = coboundary(random_cochain(complex_, 2, Z3, rng))
        g = GerbeRep(complex_, Z3, random_cochain(complex_, 2, Z3, rng), beta)
        t = gerbe_to_torsor(g)
        self.assertEqual("pass", check_mult_torsor(t)["status"])
        self.assertTrue(classify_torsor(t).is_zero())

    def test_should_classify_nontrivial_cocycle(self):
        complex_ = simplex_boundary(4)
        h = cohomology(complex_, 3, Z3)
        g = GerbeRep(complex_, Z3, Cochain.zero(complex_, 2, Z3), h.representatives[0])
        self.assertFalse(classify_torsor(gerbe_to_torsor(g)).is_zero())

    def test_should_reject_non_cocycle_beta(self):
        complex_ = standard_simplex(4)
        beta = Cochain.from_coords(complex_, 3, Z, {"0123": [1]})
        with self.assertRaises(InvalidGerbeError):
            GerbeRep(complex_, Z, Cochain.zero(complex_, 2, Z), beta)
