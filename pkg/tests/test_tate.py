import random
import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tatetors.errors import InexactSequenceError, LatticeError, NotAdmissibleError
from tatetors.exactlin import Field
from tatetors.sampling import random_automorphism, random_lattice, random_tate_ses
from tatetors.tate import (
    LaurentMatrix,
    LaurentPoly,
    TateSpace,
    check_tate_ses,
    common_window,
    diagnose_tate_ses,
    diagonal_lattice,
    lattice_contains,
    lattice_from_generators,
    lattice_grid,
    lattice_image,
    lattice_join,
    lattice_meet,
    lattice_normalize,
    lattice_window,
    lift_lattice,
    project_lattice,
    relative_index,
    split_tate_ses,
    standard_lattice,
    sub_image_lattice,
)

F2 = Field(2)
F3 = Field(3)
F5 = Field(5)
Q = Field(0)

K1 = TateSpace(1, F3)
K2 = TateSpace(2, F3)


def t_power(field, e):
    return LaurentMatrix.monomial_diagonal(field, [1], [e])


class TestLaurentPoly(unittest.TestCase):
    def test_should_parse_and_format_terms(self):
        poly = LaurentPoly.parse(F5, "t^-2+3")
        self.assertEqual(((-2, 1), (0, 3)), poly.terms)
        self.assertEqual("1*t^-2+3*t^0", poly.format())
        self.assertEqual(((1, 4),), LaurentPoly.parse(F5, "-t").terms)
        self.assertTrue(LaurentPoly.parse(F5, "0").is_zero())

    def test_should_reject_malformed_terms(self):
        with self.assertRaises(ValueError):
            LaurentPoly.parse(F5, "2*x")

    def test_should_multiply_and_divide(self):
        a = LaurentPoly.parse(Q, "t^2+-1")
        b = LaurentPoly.parse(Q, "t+-1")
        q = a.exact_quotient(b)
        self.assertEqual({0: Fraction(1), 1: Fraction(1)}, dict(q.terms))
        self.assertEqual(a, q * b)
        with self.assertRaises(ArithmeticError):
            LaurentPoly.parse(Q, "t^2+1").exact_quotient(b)

    def test_should_shift_valuation(self):
        poly = LaurentPoly.parse(F3, "2*t^-1+t^4").shift(3)
        self.assertEqual((2, 7), (poly.valuation, poly.degree))


class TestLattices(unittest.TestCase):
    def test_should_normalize_standard_lattice(self):
        lattice = lattice_normalize(K2, 0, 0, [])
        self.assertEqual((0, 0, 0), (lattice.lo, lattice.hi, lattice.sub.dim))

    def test_should_tighten_slack_bounds(self):
        # t^-1 O in k((t)) given inside t^-3 O / t^2 O
        lattice = lattice_normalize(K1, -3, 2, [(0, 0, 1, 0, 0)])
        self.assertEqual((-1, -1), (lattice.lo, lattice.hi))
        self.assertEqual(standard_lattice(K1, -1), lattice)

    def test_should_normalize_full_span(self):
        lattice = lattice_normalize(K1, -1, 1, [(1, 0), (0, 1)])
        self.assertEqual(standard_lattice(K1, -1), lattice)
        self.assertEqual(0, lattice.sub.dim)

    def test_should_reject_inverted_bounds(self):
        with self.assertRaises(LatticeError):
            lattice_normalize(K1, 2, 1, [])

    def test_should_build_lattice_from_generators(self):
        generator = (LaurentPoly.parse(F3, "t^-1+t"), LaurentPoly.zero(F3))
        lattice = lattice_from_generators(K2, [generator], 2)
        self.assertTrue(lattice_contains(lattice, standard_lattice(K2, 2)))
        self.assertFalse(lattice_contains(lattice, standard_lattice(K2, 0)))

    def test_should_compare_by_containment(self):
        a = standard_lattice(K1, -1)
        self.assertTrue(lattice_contains(a, a))
        self.assertTrue(lattice_contains(a, standard_lattice(K1, 1)))
        self.assertFalse(lattice_contains(standard_lattice(K1, 1), a))

    def test_should_not_contain_standard_lattice_in_diagonal_span(self):
        # span{(t^-1, t^-1)} + t O^2
        a = lattice_normalize(K2, -1, 1, [(1, 1, 0, 0)])
        self.assertFalse(lattice_contains(a, standard_lattice(K2, 0)))
        self.assertTrue(lattice_contains(a, standard_lattice(K2, 1)))

    def test_should_meet_and_join_componentwise(self):
        a = diagonal_lattice(K2, [-1, 0])
        b = diagonal_lattice(K2, [0, -1])
        self.assertEqual(standard_lattice(K2, 0), lattice_meet(a, b))
        self.assertEqual(standard_lattice(K2, -1), lattice_join(a, b))
        self.assertEqual(a, lattice_meet(a, a))
        self.assertEqual(a, lattice_join(a, standard_lattice(K2, 3)))
        self.assertEqual(standard_lattice(K2, 3), lattice_meet(a, standard_lattice(K2, 3)))

    def test_should_count_relative_index(self):
        self.assertEqual(2, relative_index(standard_lattice(K1, -2), standard_lattice(K1, 0)))
        a = diagonal_lattice(K2, [0, 1])
        self.assertEqual(0, relative_index(a, a))
        self.assertEqual(-2, relative_index(a, diagonal_lattice(K2, [-1, 0])))

    def test_should_embed_lattice_in_window(self):
        window = lattice_window(standard_lattice(K1, 0), -1, 1)
        self.assertEqual((2, 1), (window.ambient_dim, window.dim))
        self.assertEqual((0, 4), common_window(diagonal_lattice(K2, [0, 1]), standard_lattice(K2, 4)))
        with self.assertRaises(ValueError):
            lattice_window(diagonal_lattice(K2, [-1, 0]), 0, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_add_relative_indices(self, seed):
        rng = random.Random(seed)
        a, b, c = (random_lattice(K2, rng) for _ in range(3))
        self.assertEqual(
            relative_index(a, c), relative_index(a, b) + relative_index(b, c)
        )

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_satisfy_modular_law(self, seed):
        rng = random.Random(seed)
        a, b = random_lattice(K2, rng), random_lattice(K2, rng)
        meet, join = lattice_meet(a, b), lattice_join(a, b)
        self.assertTrue(lattice_contains(a, meet) and lattice_contains(join, b))
        self.assertEqual(relative_index(a, meet), relative_index(join, b))


class TestTateSequences(unittest.TestCase):
    def test_should_accept_split_sequence(self):
        ses = split_tate_ses(F3, 1, 1)
        self.assertEqual((1, 2, 1), (ses.sub.rank, ses.middle.rank, ses.quotient.rank))

    def test_should_accept_multiplication_by_t(self):
        ses = check_tate_ses(t_power(F3, 1), LaurentMatrix.zeros(F3, 0, 1))
        self.assertEqual(0, ses.quotient.rank)

    def test_should_diagnose_nonzero_composite(self):
        i = LaurentMatrix.from_rows(F3, [[1], [0]])
        j = LaurentMatrix.from_rows(F3, [[1, 0]])
        self.assertEqual("composite-nonzero", diagnose_tate_ses(i, j))
        with self.assertRaises(InexactSequenceError):
            check_tate_ses(i, j)

    def test_should_lift_along_first_coordinate(self):
        ses = split_tate_ses(F3, 1, 1)
        u = diagonal_lattice(K2, [-1, 2])
        self.assertEqual(standard_lattice(K1, -1), lift_lattice(ses, u))
        self.assertEqual(standard_lattice(K1, 2), project_lattice(ses, u))

    def test_should_lift_along_multiplication_by_t(self):
        ses = check_tate_ses(t_power(F3, 1), LaurentMatrix.zeros(F3, 0, 1))
        self.assertEqual(standard_lattice(K1, -1), lift_lattice(ses, standard_lattice(K1, 0)))

    def test_should_lift_along_identity(self):
        ses = check_tate_ses(LaurentMatrix.identity(F3, 2), LaurentMatrix.zeros(F3, 0, 2))
        u = lattice_normalize(K2, -1, 1, [(1, 2, 0, 0)])
        self.assertEqual(u, lift_lattice(ses, u))

    def test_should_project_along_multiplication_by_t(self):
        ses = check_tate_ses(LaurentMatrix.zeros(F3, 1, 0), t_power(F3, 1))
        self.assertEqual(standard_lattice(K1, 1), project_lattice(ses, standard_lattice(K1, 0)))
        self.assertEqual(standard_lattice(K1, 1), lattice_image(t_power(F3, 1), standard_lattice(K1, 0)))

    def test_should_project_to_zero_lattice_of_rank_zero_space(self):
        ses = check_tate_ses(LaurentMatrix.identity(F3, 1), LaurentMatrix.zeros(F3, 0, 1))
        projected = project_lattice(ses, standard_lattice(K1, 4))
        self.assertEqual(standard_lattice(TateSpace(0, F3)), projected)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_invert_lattice_image(self, seed):
        rng = random.Random(seed)
        g, g_inv = random_automorphism(F2, 2, rng)
        lattice = random_lattice(TateSpace(2, F2), rng)
        self.assertEqual(lattice, lattice_image(g, lattice_image(g_inv, lattice)))

    def test_should_span_sub_image_over_t_lattice(self):
        ses = split_tate_ses(F3, 1, 1)
        self.assertEqual(diagonal_lattice(K2, [-1, 1]), sub_image_lattice(ses))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_contain_shifted_sub_image(self, seed):
        ses = random_tate_ses(F3, 1, 1, random.Random(seed))
        lattice = sub_image_lattice(ses)
        self.assertTrue(lattice_contains(lattice, standard_lattice(ses.middle, 1)))
        self.assertTrue(lattice_contains(lift_lattice(ses, lattice), standard_lattice(ses.sub, -1)))


class TestLatticeGrid(unittest.TestCase):
    def test_should_compute_quotient_dimensions(self):
        ses = split_tate_ses(F3, 1, 1)
        grid = lattice_grid(ses, standard_lattice(K2, 0), standard_lattice(K2, -1))
        self.assertEqual((1, 2, 1), grid.quotient_dims())

    def test_should_give_zero_bottom_row_for_equal_lattices(self):
        ses = split_tate_ses(F3, 1, 1)
        u = diagonal_lattice(K2, [0, 2])
        self.assertEqual((0, 0, 0), lattice_grid(ses, u, u).quotient_dims())

    def test_should_reject_wrong_sub_lattice(self):
        ses = split_tate_ses(F3, 1, 1)
        u = standard_lattice(K2, 0)
        with self.assertRaises(NotAdmissibleError):
            lattice_grid(ses, u, u, lower_sub=standard_lattice(K1, 5))

    def test_should_reject_non_nested_lattices(self):
        ses = split_tate_ses(F3, 1, 1)
        with self.assertRaises(LatticeError):
            lattice_grid(ses, standard_lattice(K2, -1), standard_lattice(K2, 0))
