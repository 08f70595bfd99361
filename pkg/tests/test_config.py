import unittest

from tatetors.config import (
    DEFAULTS,
    create_run_config,
    field_of,
    group_of,
    parse_header,
    validate_config,
)
from tatetors.errors import ConfigurationError


class TestParseHeader(unittest.TestCase):
    def test_should_convert_integers(self):
        header = parse_header("tate rank=2 field=F5 lo=-3")
        self.assertEqual({"tags": ["tate"], "rank": 2, "field": "F5", "lo": -3}, header)

    def test_should_keep_non_integer_values(self):
        self.assertEqual("Z/2", parse_header("group=Z/2")["group"])


class TestConfigValidation(unittest.TestCase):
    def test_should_start_from_defaults(self):
        run_config = create_run_config()
        self.assertEqual(DEFAULTS, run_config)
        validate_config(run_config)

    def test_should_ignore_unset_overrides(self):
        run_config = create_run_config(field="F3", seed=None)
        self.assertEqual(("F3", 7), (run_config["field"], run_config["seed"]))
        self.assertEqual(3, field_of(run_config).p)

    def test_should_accept_output_directory(self):
        validate_config(create_run_config(out_dir="temp/out"))

    def test_should_fail_on_unknown_key(self):
        with self.assertRaises(ConfigurationError):
            validate_config(create_run_config(colour="blue"))

    def test_should_fail_on_composite_field(self):
        with self.assertRaises(ConfigurationError):
            validate_config(create_run_config(field="F4"))

    def test_should_fail_on_unknown_group(self):
        with self.assertRaises(ConfigurationError):
            validate_config(create_run_config(group="Q"))

    def test_should_fail_on_out_of_range_values(self):
        for overrides in (
            {"trials": -1},
            {"budget": 0},
            {"dim_cap": 4},
            {"level_cap": 6},
            {"degree": 5},
            {"graded": "no"},
        ):
            with self.assertRaises(ConfigurationError):
                validate_config(create_run_config(**overrides))

    def test_should_parse_group(self):
        self.assertEqual((0, 3), group_of(create_run_config(group="Z+Z/3")).factors)
