import unittest

from tatetors.config import create_run_config
from tatetors.verification import COHOMOLOGY_ORACLES, SUITES, run_suite


def small_config(**overrides):
    return create_run_config(**{"trials": 10, **overrides})


class TestSuites(unittest.TestCase):
    def test_should_pass_lattice_suites(self):
        for suite in ("index", "cocycle", "modular", "lift-project"):
            for field in ("F2", "F3"):
                report = run_suite(suite, small_config(field=field))[0]
                self.assertEqual("pass", report["status"], "%s over %s" % (suite, field))
                self.assertEqual(10, report["checked"])

    def test_should_pass_combination_suite(self):
        for group in ("Z", "Z/2", "Z+Z/3"):
            report = run_suite("mu", small_config(field="F3", group=group))[0]
            self.assertEqual("pass", report["status"], group)

    def test_should_pass_exhaustive_category_suites(self):
        for suite in ("partially-abelian", "grid"):
            report = run_suite(suite, small_config())[0]
            self.assertEqual(("pass", "F2"), (report["status"], report["field"]), suite)

    def test_should_report_ungraded_mismatch(self):
        report = run_suite("det-symmetry", small_config())[0]
        self.assertEqual("pass", report["status"])
        self.assertEqual({"lhs": 4, "rhs": 1}, report["ungraded_scalars"])

    def test_should_match_known_cohomology(self):
        report = run_suite("cohomology", small_config())[0]
        self.assertEqual("pass", report["status"])
        self.assertEqual(len(COHOMOLOGY_ORACLES), len(report["groups"]))
        self.assertIn("H^2(torus; Z) = Z", report["groups"])

    def test_should_count_torsor_classes(self):
        report = run_suite("classification", small_config())[0]
        self.assertEqual("pass", report["status"])
        self.assertEqual([2, 2], [c["classes"] for c in report["classes"]])

    def test_should_pass_pasting_and_gerbe_suites(self):
        for suite in ("pasting", "gerbe"):
            report = run_suite(suite, small_config())[0]
            self.assertEqual("pass", report["status"], suite)
        self.assertGreater(run_suite("gerbe", small_config())[0]["rejected"], 0)

    def test_should_detect_injected_fault_on_s_construction(self):
        report = run_suite("s-construction", small_config(dim_cap=2, level_cap=3))[0]
        self.assertEqual("pass", report["status"])
        self.assertEqual(4, len(report["levels"]))
        self.assertEqual(["F2", "F3"], report["torsor_fields"])
        self.assertGreater(report["fault_violations"], 0)


class TestRunSuite(unittest.TestCase):
    def test_should_repeat_reports_for_same_seed(self):
        self.assertEqual(run_suite("cocycle", small_config()), run_suite("cocycle", small_config()))

    def test_should_run_every_suite(self):
        reports = run_suite("all", small_config(trials=2))
        self.assertEqual(list(SUITES), [r["suite"] for r in reports])

    def test_should_reject_unknown_suite(self):
        with self.assertRaises(KeyError):
            run_suite("nonsense", small_config())
