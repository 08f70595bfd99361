import itertools
import random
import unittest

from hypothesis import given, settings, strategies as st

from tatetors.detline import (
    DetTheory,
    GradedLine,
    LineIso,
    ProductDetTheory,
    RelDetTheory,
    basis_change,
    check_delta_chain,
    check_symmetry,
    delta_relative,
    det_line,
    det_map,
    hom_torsor_class,
    koszul_swap,
    lambda_ses,
    mu_det,
    pair_criterion,
    twist,
)
from tatetors.errors import NotAdmissibleError
from tatetors.exactcat import FdSpace, LinMap, check_ses, complete_grid_3x3, split_ses, subspace_inclusion
from tatetors.exactlin import Field, enumerate_subspaces, span
from tatetors.sampling import random_lattice, random_tate_ses
from tatetors.tate import (
    TateSpace,
    diagonal_lattice,
    lattice_join,
    lattice_meet,
    lift_lattice,
    project_lattice,
    split_tate_ses,
    standard_lattice,
)

F2 = Field(2)
F5 = Field(5)
F7 = Field(7)


def line_grid(field):
    top = subspace_inclusion(span(field, 2, [(1, 0)]))
    left = subspace_inclusion(span(field, 2, [(0, 1)]))
    return complete_grid_3x3(top, left)


def all_grids(field, n):
    subspaces = list(enumerate_subspaces(field, n))
    for a, b in itertools.product(subspaces, repeat=2):
        yield complete_grid_3x3(subspace_inclusion(a), subspace_inclusion(b))


class TestLines(unittest.TestCase):
    def test_should_give_unit_line_for_zero_space(self):
        self.assertEqual(GradedLine.unit(), det_line(FdSpace(0, F5)))

    def test_should_label_standard_wedge(self):
        line = det_line(FdSpace(3, F5))
        self.assertEqual((3, "e1∧e2∧e3"), (line.degree, line.label))

    def test_should_change_basis_by_determinant(self):
        iso = basis_change(FdSpace(2, F5), None, [(2, 0), (0, 1)])
        self.assertEqual(2, iso.scalar)

    def test_should_reject_zero_scalar_and_degree_change(self):
        with self.assertRaises(ValueError):
            LineIso(GradedLine.unit(), GradedLine.unit(), 0, F5)
        with self.assertRaises(ValueError):
            LineIso(GradedLine(1, "a"), GradedLine(2, "b"), 1, F5)

    def test_should_compute_determinant_of_isomorphism(self):
        f = LinMap.from_rows(FdSpace(2, F5), FdSpace(2, F5), [(1, 2), (3, 4)])
        self.assertEqual(3, det_map(f).scalar)
        with self.assertRaises(NotAdmissibleError):
            det_map(LinMap.zero(FdSpace(1, F5), FdSpace(1, F5)))


class TestLambda(unittest.TestCase):
    def test_should_give_unit_scalar_for_standard_split(self):
        iso = lambda_ses(split_ses(F5, 1, 1))
        self.assertEqual(1, iso.scalar)
        self.assertEqual(2, iso.source.degree)

    def test_should_give_determinant_for_isomorphism_sequence(self):
        f = LinMap.from_rows(FdSpace(2, F5), FdSpace(2, F5), [(1, 2), (3, 4)])
        ses = check_ses(f, LinMap.zero(FdSpace(2, F5), FdSpace(0, F5)))
        self.assertEqual(det_map(f).scalar, lambda_ses(ses).scalar)

    def test_should_not_depend_on_section(self):
        ses = split_ses(F5, 1, 1)
        self.assertEqual(1, lambda_ses(ses, section=[(3, 1)]).scalar)
        with self.assertRaises(NotAdmissibleError):
            lambda_ses(ses, section=[(1, 0)])

    def test_should_apply_koszul_signs(self):
        self.assertEqual(4, koszul_swap(GradedLine(1, "x"), GradedLine(1, "y"), F5).scalar)
        self.assertEqual(1, koszul_swap(GradedLine.unit(), GradedLine(7, "y"), F5).scalar)
        self.assertEqual(1, koszul_swap(GradedLine(2, "x"), GradedLine(3, "y"), F5).scalar)
        self.assertEqual(
            1, koszul_swap(GradedLine(1, "x"), GradedLine(1, "y"), F5, graded=False).scalar
        )

    def test_should_square_swap_to_identity(self):
        for a, b in itertools.product(range(4), repeat=2):
            x, y = GradedLine(a, "x"), GradedLine(b, "y")
            twice = koszul_swap(y, x, F7).compose(koszul_swap(x, y, F7))
            self.assertEqual(1, twice.scalar)


class TestSymmetry(unittest.TestCase):
    def test_should_pass_graded_determinant_exhaustively(self):
        pairs = list(itertools.product(range(3), repeat=2))
        report = check_symmetry(DetTheory(F5), pairs, list(all_grids(F5, 2)))
        self.assertTrue(report["pair_pass"])
        self.assertTrue(report["grid_pass"])

    def test_should_fail_ungraded_determinant_on_lines(self):
        result = pair_criterion(DetTheory(F5, graded=False), 1, 1)
        self.assertEqual((4, 1, False), (result["lhs"], result["rhs"], result["passed"]))

    def test_should_agree_on_failure_of_ungraded_determinant(self):
        report = check_symmetry(DetTheory(F5, graded=False), [(1, 1)], [line_grid(F5)])
        self.assertFalse(report["pair_pass"])
        self.assertFalse(report["grid_pass"])
        self.assertTrue(report["agree"])

    def test_should_pass_ungraded_determinant_in_characteristic_two(self):
        pairs = list(itertools.product(range(3), repeat=2))
        report = check_symmetry(DetTheory(F2, graded=False), pairs, list(all_grids(F2, 2)))
        self.assertTrue(report["pair_pass"] and report["grid_pass"])

    def test_should_not_depend_on_chosen_bases(self):
        theory = DetTheory(F5)
        result = pair_criterion(theory, 1, 2, bases=([(3,)], [(1, 1), (0, 2)]))
        self.assertTrue(result["passed"])


class TestRelativeDeterminant(unittest.TestCase):
    space = TateSpace(1, F5)

    def test_should_give_identity_on_equal_lattices(self):
        theory = RelDetTheory(self.space, standard_lattice(self.space))
        u = standard_lattice(self.space, 2)
        self.assertEqual(1, delta_relative(theory, u, u).scalar)

    def test_should_raise_degree_by_one_step(self):
        theory = RelDetTheory(self.space, standard_lattice(self.space))
        iso = delta_relative(
            theory, standard_lattice(self.space, 0), standard_lattice(self.space, -1)
        )
        self.assertEqual((1, 1), (iso.target.degree, iso.scalar))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_compose_delta_along_chains(self, seed):
        rng = random.Random(seed)
        space = TateSpace(2, F5)
        theory = RelDetTheory(space, random_lattice(space, rng), GradedLine(1, "a"), 3)
        a, b = random_lattice(space, rng), random_lattice(space, rng)
        self.assertTrue(check_delta_chain(theory, lattice_meet(a, b), a, lattice_join(a, b)))

    def test_should_classify_equal_theories(self):
        theory = RelDetTheory(self.space, standard_lattice(self.space))
        self.assertEqual((0, 1), hom_torsor_class(theory, theory))

    def test_should_separate_degrees(self):
        theory = RelDetTheory(self.space, standard_lattice(self.space))
        shifted = twist(theory, GradedLine(2, "L"), 5)
        self.assertEqual((2, "empty"), hom_torsor_class(shifted, theory))

    def test_should_compare_scalars_in_equal_degree(self):
        space = TateSpace(1, F7)
        base = standard_lattice(space)
        t1 = RelDetTheory(space, base, anchor_scalar=5)
        t2 = RelDetTheory(space, base)
        self.assertEqual((0, 5), hom_torsor_class(t1, t2))


class TestCombinedDeterminant(unittest.TestCase):
    def test_should_add_degrees_along_split_sequence(self):
        k1, k2 = TateSpace(1, F5), TateSpace(2, F5)
        t = RelDetTheory(k1, standard_lattice(k1))
        theory = mu_det(split_tate_ses(F5, 1, 1), t, t)
        self.assertEqual(0, theory.degree(diagonal_lattice(k2, [-1, 1])))
        self.assertEqual(GradedLine.unit(), theory.value(standard_lattice(k2)))

    def test_should_satisfy_chain_condition_off_the_standard_chain(self):
        k1, k2 = TateSpace(1, F5), TateSpace(2, F5)
        t1 = RelDetTheory(k1, standard_lattice(k1, 1), GradedLine(1, "a"))
        t2 = RelDetTheory(k1, standard_lattice(k1, -1))
        theory = mu_det(split_tate_ses(F5, 1, 1), t1, t2)
        chain = [diagonal_lattice(k2, e) for e in ([2, 1], [0, 1], [-1, -2])]
        self.assertTrue(check_delta_chain(theory, *chain))

    def test_should_flip_sign_without_swap(self):
        k1, k2 = TateSpace(1, F5), TateSpace(2, F5)
        ses = split_tate_ses(F5, 1, 1)
        t1 = RelDetTheory(k1, standard_lattice(k1))
        t2 = RelDetTheory(k1, standard_lattice(k1), GradedLine(1, "a"))
        u, v = standard_lattice(k2), diagonal_lattice(k2, [-1, 0])
        swapped = ProductDetTheory(ses, t1, t2).delta(u, v)
        unswapped = ProductDetTheory(ses, t1, t2, insert_swap=False).delta(u, v)
        self.assertEqual(F5.neg(unswapped.scalar), swapped.scalar)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2))
    def test_should_combine_along_twisted_sequences(self, seed, a, c):
        rng = random.Random(seed)
        ses = random_tate_ses(F5, a, c, rng)
        t1 = RelDetTheory(ses.sub, random_lattice(ses.sub, rng), GradedLine(rng.randint(-2, 2), "a"))
        t2 = RelDetTheory(ses.quotient, random_lattice(ses.quotient, rng))
        theory = mu_det(ses, t1, t2)
        u = random_lattice(ses.middle, rng)
        v = lattice_join(u, random_lattice(ses.middle, rng))
        w = lattice_join(v, random_lattice(ses.middle, rng))
        self.assertTrue(check_delta_chain(theory, u, v, w))
        expected = t1.degree(lift_lattice(ses, v)) + t2.degree(project_lattice(ses, v))
        self.assertEqual(expected, theory.degree(v))
