"""Report output: canonical JSON, text reports and the sha256 manifest.

Text reports are rendered through jinja2 templates in the templates directory.
"""

import hashlib
import json
import logging
from fractions import Fraction
from pathlib import Path

import jinja2

log = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"


def overall_status(results):
    """Return "fail" if any result failed, else "pass"; an empty result set passes."""
    if any(r.get("status") == "fail" for r in results):
        return "fail"
    return "pass"


def _json_scalar(value):
    """Serialize rational field scalars as "p/q" strings."""
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError("Object of type %s is not JSON serializable" % type(value).__name__)


def to_json(results):
    return json.dumps(list(results), sort_keys=True, indent=2, default=_json_scalar)


def format_value(value):
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join("%s: %s" % (k, format_value(value[k])) for k in sorted(value)) + "}"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def create_jinja_environment(template_path=TEMPLATE_DIR):
    jinja_env = jinja2.Environment(
        loader=jinja2.FileSystemLoader(str(template_path)),
        autoescape=jinja2.select_autoescape([]),
        keep_trailing_newline=True,
    )
    jinja_env.trim_blocks = True
    jinja_env.lstrip_blocks = True
    jinja_env.filters["value"] = format_value
    return jinja_env


def render_text(results, template="report.txt"):
    jinja_template = create_jinja_environment().get_template(template)
    context = {
        "results": list(results),
        "status": overall_status(results),
    }
    return jinja_template.render(context)


def ensure_dir_exists(path):
    if not path.exists():
        path.mkdir(parents=True)


def write_report(results, output_dir, file_list=None):
    """Write report.json, report.txt and manifest.txt into output_dir.

    Missing output directories are created.
    """
    output_dir = Path(output_dir)
    ensure_dir_exists(output_dir)
    file_list = [] if file_list is None else file_list
    for name, text in (("report.json", to_json(results) + "\n"), ("report.txt", render_text(results))):
        output_path = output_dir / name
        output_path.write_bytes(text.encode("utf-8"))
        file_list.append(str(output_path))
    manifest_file_path = output_dir / "manifest.txt"
    write_manifest_file(file_list, output_dir, manifest_file_path)
    log.info("wrote %d report files to %s", len(file_list), output_dir)
    return file_list


def write_manifest_file(file_list, output_dir, manifest_file_path):
    """Write one "relative-path;sha256" line per file, sorted by path."""
    base_path = Path(output_dir).resolve()
    lines = []
    for file_name in sorted(file_list):
        relative = Path(file_name).resolve().relative_to(base_path).as_posix()
        checksum = hashlib.sha256(Path(file_name).read_bytes()).hexdigest()
        lines.append(f"{relative};{checksum}\n")
    Path(manifest_file_path).write_text("".join(lines), encoding="utf-8")
