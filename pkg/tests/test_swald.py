import random
import unittest

from hypothesis import given, settings, strategies as st

from tatetors.dimtorsor import DimTheory
from tatetors.errors import (
    BudgetExceededError,
    DegreeOutOfRangeError,
    DimensionMismatchError,
    NotAdmissibleError,
)
from tatetors.exactcat import FdSpace, LinMap
from tatetors.exactlin import Field, span
from tatetors.swald import (
    DeterminantLambda,
    SObject,
    build_s_object,
    check_naturality,
    check_simplicial_identities,
    enumerate_s_skeleton,
    s_degeneracy,
    s_face,
    skeleton_as_simplicial_set,
    verify_theory_as_torsor,
)

F2 = Field(2)
F3 = Field(3)


def line_in_plane(field):
    return LinMap.from_columns(FdSpace(1, field), FdSpace(2, field), [(1, 0)])


class TestSObjects(unittest.TestCase):
    def test_should_build_basepoint(self):
        x = build_s_object(F2)
        self.assertEqual((0, 0, ()), (x.n, x.d, x.interior))

    def test_should_build_single_object(self):
        x = build_s_object(F2, top=FdSpace(1, F2))
        self.assertEqual((1, 1), (x.n, x.entry(0, 1).dim))

    def test_should_build_line_in_plane(self):
        x = build_s_object(F2, [line_in_plane(F2)], quotient_dims={(0, 1): 1, (0, 2): 2, (1, 2): 1})
        self.assertEqual((0, 1, 2), x.dims)
        ses = x.ses(0, 1, 2)
        self.assertEqual((1, 2, 1), (ses.sub.dim, ses.middle.dim, ses.quotient.dim))

    def test_should_reject_wrong_quotient_dimension(self):
        with self.assertRaises(NotAdmissibleError):
            build_s_object(F2, [line_in_plane(F2)], quotient_dims={(1, 2): 2})

    def test_should_reject_non_composable_monos(self):
        with self.assertRaises(DimensionMismatchError):
            build_s_object(F2, [line_in_plane(F2), line_in_plane(F2)])

    def test_should_erase_rows_and_columns(self):
        x = build_s_object(F2, [line_in_plane(F2)])
        top_erased = s_face(x, 0)
        last_erased = s_face(x, 2)
        self.assertEqual((1, 1), (top_erased.n, top_erased.d))
        self.assertEqual((1, 1), (last_erased.n, last_erased.d))
        self.assertEqual((1, 2), (x.face(1).n, x.face(1).d))

    def test_should_cancel_degeneracy_with_adjacent_faces(self):
        x = SObject(F3, 2, 2, (span(F3, 2, [(1, 2)]),))
        for j in range(3):
            y = s_degeneracy(x, j)
            self.assertTrue(y.is_degenerate)
            self.assertEqual(x, y.face(j))
            self.assertEqual(x, y.face(j + 1))
            self.assertEqual(x, y.core())

    def test_should_reject_non_nested_steps(self):
        with self.assertRaises(NotAdmissibleError):
            SObject(F2, 3, 2, (span(F2, 2, [(1, 0)]), span(F2, 2, [(0, 1)])))


class TestSkeleton(unittest.TestCase):
    def test_should_give_single_point_per_level_in_dimension_zero(self):
        self.assertEqual([1, 1, 1, 1], enumerate_s_skeleton(F2, 0, 3).counts())

    def test_should_count_low_levels(self):
        counts = enumerate_s_skeleton(F2, 1, 2).counts()
        # level 1 is {0, k}; level 2 is 0 >-> 0 ->> 0, 0 >-> k ->> k and k >-> k ->> 0
        self.assertEqual([1, 2, 3], counts)
        self.assertEqual(8, enumerate_s_skeleton(F2, 2, 2).counts()[2])

    def test_should_enforce_budget(self):
        with self.assertRaises(BudgetExceededError):
            enumerate_s_skeleton(F3, 3, 4, budget=50)

    def test_should_satisfy_simplicial_identities(self):
        report = check_simplicial_identities(enumerate_s_skeleton(F2, 2, 4))
        self.assertEqual("pass", report["status"])
        self.assertGreater(report["checked"], 0)

    def test_should_form_simplicial_set(self):
        skeleton = enumerate_s_skeleton(F2, 1, 3)
        complex_ = skeleton_as_simplicial_set(skeleton)
        # a nondegenerate level 2 object needs d >= 2
        self.assertEqual(3, complex_.dim_cap)
        self.assertEqual(1, len(complex_.nondegenerate(1)))
        self.assertEqual(0, len(complex_.nondegenerate(2)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_should_commute_faces_on_sampled_objects(self, seed):
        rng = random.Random(seed)
        level = enumerate_s_skeleton(F3, 2, 3).levels[3]
        x = level[rng.randrange(len(level))]
        i, j = sorted(rng.sample(range(4), 2))
        self.assertEqual(x.face(j).face(i), x.face(i).face(j - 1))


class TestTheoriesAsTorsors(unittest.TestCase):
    def test_should_pass_dimension_theory(self):
        report = verify_theory_as_torsor(enumerate_s_skeleton(F2, 2, 3), DimTheory.universal())
        self.assertEqual("pass", report["status"])
        self.assertEqual("dim", report["theory"])

    def test_should_pass_graded_determinant(self):
        report = verify_theory_as_torsor(enumerate_s_skeleton(F2, 2, 3), DeterminantLambda(F2))
        self.assertEqual("pass", report["status"])

    def test_should_detect_sign_fault(self):
        fault = SObject(F3, 2, 2, (span(F3, 2, [(1, 0)]),))
        report = verify_theory_as_torsor(enumerate_s_skeleton(F3, 3, 3), DeterminantLambda(F3, fault=fault))
        self.assertEqual("fail", report["status"])
        self.assertTrue(report["violations"])

    def test_should_pass_determinant_over_odd_field(self):
        report = verify_theory_as_torsor(enumerate_s_skeleton(F3, 2, 3), DeterminantLambda(F3))
        self.assertEqual(("pass", "pass"), (report["status"], report["torsor"]["status"]))

    def test_should_detect_sign_fault_through_discrete_logarithms(self):
        fault = SObject(F3, 2, 2, (span(F3, 2, [(1, 0)]),))
        report = verify_theory_as_torsor(enumerate_s_skeleton(F3, 3, 3), DeterminantLambda(F3, fault=fault))
        self.assertEqual("fail", report["torsor"]["status"])

    def test_should_need_level_three(self):
        with self.assertRaises(DegreeOutOfRangeError):
            verify_theory_as_torsor(enumerate_s_skeleton(F2, 1, 2), DimTheory.universal())

    def test_should_only_evaluate_lambda_on_level_two(self):
        with self.assertRaises(DimensionMismatchError):
            DeterminantLambda(F2)(build_s_object(F2, top=FdSpace(1, F2)))

    def test_should_be_natural_under_isomorphisms(self):
        skeleton = enumerate_s_skeleton(F3, 2, 2)
        report = check_naturality(skeleton, DeterminantLambda(F3), random.Random(1), samples=30)
        self.assertEqual(("pass", 30), (report["status"], report["checked"]))
