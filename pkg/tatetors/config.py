"""Create and validate run configurations."""

import re

from .dimtorsor import AbelianGroup
from .errors import ConfigurationError
from .exactlin import Field

DEFAULTS = {
    "field": "F2",
    "group": "Z",
    "seed": 7,
    "trials": 100,
    "budget": 20000,
    "dim_cap": 2,
    "level_cap": 4,
    "degree": 1,
    "graded": True,
}


def parse_header(line):
    """Parse a header line on the format "key=value key=value ...".

    Integer values are converted; everything else stays a string. Tokens without an
    equals sign are collected under the key "tags".
    """
    header = {"tags": []}
    for item in line.split():
        pair = re.fullmatch(r"([\w\-]+)=(\S+)", item)
        if not pair:
            header["tags"].append(item)
            continue
        value = pair[2]
        header[pair[1]] = int(value) if re.fullmatch(r"-?\d+", value) else value
    return header


def create_run_config(**overrides):
    """Create a run configuration dictionary, starting from the defaults."""
    run_config = dict(DEFAULTS)
    run_config.update({k: v for k, v in overrides.items() if v is not None})
    return run_config


def validate_config(run_config):
    for key in run_config:
        if key not in DEFAULTS and key != "out_dir":
            raise ConfigurationError('Unknown configuration key "%s".' % key)
    try:
        Field.parse(str(run_config["field"]))
    except ValueError as e:
        raise ConfigurationError('Invalid field "%s": %s' % (run_config["field"], e))
    try:
        AbelianGroup.parse(str(run_config["group"]))
    except ValueError as e:
        raise ConfigurationError('Invalid group "%s": %s' % (run_config["group"], e))
    if run_config["trials"] < 0:
        raise ConfigurationError("The number of trials must not be negative.")
    if run_config["budget"] < 1:
        raise ConfigurationError("The enumeration budget must be positive.")
    if not 0 <= run_config["dim_cap"] <= 3:
        raise ConfigurationError("The dimension cap must be in 0..3.")
    if not 0 <= run_config["level_cap"] <= 5:
        raise ConfigurationError("The level cap must be in 0..5.")
    if not 0 <= run_config["degree"] <= 4:
        raise ConfigurationError("The degree must be in 0..4.")
    if not isinstance(run_config["graded"], bool):
        raise ConfigurationError("The graded flag must be true or false.")


def field_of(run_config):
    return Field.parse(str(run_config["field"]))


def group_of(run_config):
    return AbelianGroup.parse(str(run_config["group"]))
