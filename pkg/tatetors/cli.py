"""Command line interface: parse input files, run computations and verification suites.

Exit codes: 0 on success, 1 when a check or verification fails, 2 on usage, parse
or configuration errors.
"""

import argparse
import logging
import sys

from .config import create_run_config, field_of, group_of, validate_config
from .detline import DetTheory, check_symmetry
from .dimtorsor import DimTheory, RelDimTheory, eval_reldim, mu_combine
from .errors import (
    InexactSequenceError,
    InvalidGerbeError,
    TatetorsError,
    VerificationError,
)
from .exactcat import FdSpace, LinMap, complete_grid_3x3, subspace_inclusion
from .exactlin import enumerate_subspaces
from .fileformats import format_lattice, read_file
from .report import overall_status, render_text, to_json, write_report
from .simptors import (
    Cochain,
    GerbeRep,
    MultTorsorRep,
    check_mult_torsor,
    classify_torsor,
    cohomology,
    gerbe_to_torsor,
)
from .swald import check_simplicial_identities, enumerate_s_skeleton
from .tate import (
    check_tate_ses,
    lattice_join,
    lattice_meet,
    lift_lattice,
    project_lattice,
    relative_index,
    standard_lattice,
)
from .verification import SUITES, run_suite

log = logging.getLogger(__name__)


def _read_ses(args):
    return check_tate_ses(read_file(args.mono), read_file(args.epi))


def run_index(args, run_config):
    a, b = read_file(args.first), read_file(args.second)
    value = relative_index(a, b)
    return [{"command": "index", "status": "pass", "index": value, "output": str(value)}]


def _lattice_result(command, lattice):
    text = format_lattice(lattice)
    return [{"command": command, "status": "pass", "lattice": text, "output": text.rstrip("\n")}]


def run_meet(args, run_config):
    return _lattice_result("meet", lattice_meet(read_file(args.first), read_file(args.second)))


def run_join(args, run_config):
    return _lattice_result("join", lattice_join(read_file(args.first), read_file(args.second)))


def run_lift(args, run_config):
    return _lattice_result("lift", lift_lattice(_read_ses(args), read_file(args.lattice)))


def run_project(args, run_config):
    return _lattice_result("project", project_lattice(_read_ses(args), read_file(args.lattice)))


def run_ses_check(args, run_config):
    try:
        ses = _read_ses(args)
    except InexactSequenceError as e:
        return [{"command": "ses-check", "status": "fail", "reason": e.reason, "output": "fail: %s" % e.reason}]
    shape = [ses.sub.rank, ses.middle.rank, ses.quotient.rank]
    return [{"command": "ses-check", "status": "pass", "ranks": shape, "output": "pass"}]


def _element(group, text):
    coords = [int(x) for x in text.split(",")] if text else []
    return group.element(coords)


def run_mu_eval(args, run_config):
    """Evaluate μ(d', d'') at a lattice; d' and d'' take the given values at O."""
    ses = _read_ses(args)
    lattice = read_file(args.lattice)
    group = group_of(run_config)
    image = _element(group, args.generator_image) if args.generator_image else (
        group.generator() if group.factors else group.zero
    )
    chi = DimTheory(group, image)
    d1 = RelDimTheory(chi, ses.sub, standard_lattice(ses.sub), _element(group, args.sub_value))
    d2 = RelDimTheory(
        chi, ses.quotient, standard_lattice(ses.quotient), _element(group, args.quotient_value)
    )
    value = eval_reldim(mu_combine(ses, d1, d2), lattice)
    return [
        {
            "command": "mu-eval",
            "status": "pass",
            "group": group.name,
            "value": list(value.coords),
            "output": value.format(),
        }
    ]


def run_det_symmetry(args, run_config):
    field = field_of(run_config)
    graded = run_config["graded"]
    pairs = [(a, b) for a in range(3) for b in range(3)]
    if field.is_finite:
        grids = [
            complete_grid_3x3(subspace_inclusion(s1), subspace_inclusion(s2))
            for d in range(3)
            for s1 in enumerate_subspaces(field, d)
            for s2 in enumerate_subspaces(field, d)
        ]
    else:
        plane = FdSpace(2, field)
        lines = [LinMap.from_columns(FdSpace(1, field), plane, [v]) for v in ((1, 0), (0, 1))]
        grids = [complete_grid_3x3(*lines)]
    result = check_symmetry(DetTheory(field, graded), pairs, grids)
    symmetric = result["pair_pass"] and result["grid_pass"]
    return [
        {
            "command": "det-symmetry",
            "status": "pass" if symmetric and result["agree"] else "fail",
            "field": field.name,
            "graded": graded,
            "pair_pass": result["pair_pass"],
            "grid_pass": result["grid_pass"],
            "agree": result["agree"],
            "violations": [r for r in result["pairs"] + result["grids"] if not r["passed"]],
            "output": "%s determinant over %s is %s"
            % ("graded" if graded else "ungraded", field.name, "symmetric" if symmetric else "not symmetric"),
        }
    ]


def run_cohomology(args, run_config):
    complex_ = read_file(args.complex)
    h = cohomology(complex_, run_config["degree"], group_of(run_config))
    return [
        {
            "command": "cohomology",
            "status": "pass",
            "degree": h.degree,
            "coefficients": h.coefficients.name,
            "group": h.group.name,
            "output": h.group.name,
        }
    ]


def _anchors(args, complex_, degree, group):
    if args.anchors is None:
        return Cochain.zero(complex_, degree, group)
    anchors = read_file(args.anchors, complex_=complex_, degree=degree)
    if anchors.group != group:
        raise VerificationError("Anchors and morphism data use different groups.")
    return anchors


def run_classify(args, run_config):
    complex_ = read_file(args.complex)
    alpha = read_file(args.cochain, complex_=complex_)
    degree = alpha.degree - 1
    t = MultTorsorRep(complex_, degree, alpha.group, _anchors(args, complex_, degree, alpha.group), alpha)
    report = check_mult_torsor(t)
    if report["status"] != "pass":
        return [dict(report, command="classify", output="fail: not a multiplicative torsor")]
    cls = classify_torsor(t)
    return [
        {
            "command": "classify",
            "status": "pass",
            "degree": degree,
            "group": cls.group.name,
            "class": list(cls.coords),
            "output": str(cls),
        }
    ]


def run_gerbe_torsor(args, run_config):
    complex_ = read_file(args.complex)
    beta = read_file(args.cochain, complex_=complex_, degree=3)
    try:
        g = GerbeRep(complex_, beta.group, _anchors(args, complex_, 2, beta.group), beta)
    except InvalidGerbeError as e:
        return [{"command": "gerbe-torsor", "status": "fail", "reason": str(e), "output": "fail: %s" % e}]
    t = gerbe_to_torsor(g)
    report = check_mult_torsor(t)
    cls = classify_torsor(t)
    result = dict(report, command="gerbe-torsor", group=cls.group.name)
    result["class"] = list(cls.coords)
    result["output"] = "%s, class %s" % (report["status"], cls)
    return [result]


def run_s_enumerate(args, run_config):
    field = field_of(run_config)
    skeleton = enumerate_s_skeleton(
        field, run_config["dim_cap"], run_config["level_cap"], run_config["budget"]
    )
    identities = check_simplicial_identities(skeleton)
    counts = skeleton.counts()
    return [
        {
            "command": "s-enumerate",
            "status": identities["status"],
            "field": field.name,
            "levels": counts,
            "checked": identities["checked"],
            "violations": identities["violations"],
            "output": " ".join("S%d:%d" % (n, c) for n, c in enumerate(counts)),
        }
    ]


def run_verify(args, run_config):
    return run_suite(args.suite, run_config)


COMMANDS = {
    "index": run_index,
    "meet": run_meet,
    "join": run_join,
    "lift": run_lift,
    "project": run_project,
    "ses-check": run_ses_check,
    "mu-eval": run_mu_eval,
    "det-symmetry": run_det_symmetry,
    "cohomology": run_cohomology,
    "classify": run_classify,
    "gerbe-torsor": run_gerbe_torsor,
    "s-enumerate": run_s_enumerate,
    "verify": run_verify,
}


def create_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="F<p> or Q (default: F2)")
    common.add_argument("--group", help='coefficient group, like "Z", "Z/6" or "Z+Z/2" (default: Z)')
    common.add_argument("--seed", type=int, help="seed of the random suites (default: 7)")
    common.add_argument("--trials", type=int, help="trials per random suite (default: 100)")
    common.add_argument("--budget", type=int, help="object budget of enumerations (default: 20000)")
    common.add_argument("--degree", type=int, help="cohomological degree (default: 1)")
    common.add_argument("--dim-cap", type=int, help="dimension cap D of the S-construction (default: 2)")
    common.add_argument("--level-cap", type=int, help="level cap N of the S-construction (default: 4)")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--out-dir", help="also write report.json, report.txt and a manifest here")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log more, -vv for debug")

    parser = argparse.ArgumentParser(
        prog="tatetors", description="Lattices in Tate spaces, determinantal theories and torsors."
    )
    verbs = parser.add_subparsers(dest="command", required=True)
    for name in ("index", "meet", "join"):
        p = verbs.add_parser(name, parents=[common], help="%s of two lattices" % name)
        p.add_argument("first", help=".lat file")
        p.add_argument("second", help=".lat file")
    for name in ("lift", "project", "mu-eval", "ses-check"):
        p = verbs.add_parser(name, parents=[common], help="%s along an admissible sequence" % name)
        p.add_argument("mono", help=".lmx file of the admissible mono")
        p.add_argument("epi", help=".lmx file of the admissible epi")
        if name != "ses-check":
            p.add_argument("lattice", help=".lat file of a lattice in the middle space")
        if name == "mu-eval":
            p.add_argument("--sub-value", default="0", help="value of d' at O")
            p.add_argument("--quotient-value", default="0", help="value of d'' at O")
            p.add_argument("--generator-image", help="χ of the line (default: first generator)")
    p = verbs.add_parser("det-symmetry", parents=[common], help="symmetry criteria of det")
    p.add_argument("--ungraded", action="store_true", help="use the ungraded determinant")
    p = verbs.add_parser("cohomology", parents=[common], help="cohomology of a simplicial set")
    p.add_argument("complex", help=".sset file")
    for name, what in (("classify", "a multiplicative torsor"), ("gerbe-torsor", "a gerbe")):
        p = verbs.add_parser(name, parents=[common], help="check and classify %s" % what)
        p.add_argument("complex", help=".sset file")
        p.add_argument("cochain", help=".coch file with the morphism data")
        p.add_argument("--anchors", help=".coch file with the anchors (default: zero)")
    verbs.add_parser("s-enumerate", parents=[common], help="enumerate the S-construction")
    p = verbs.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    return create_parser().parse_args(argv)


def emit_report(results, as_json):
    """Return the report as JSON, or as text."""
    if as_json:
        return to_json(results)
    if results and all("output" in r for r in results):
        return "\n".join(r["output"] for r in results)
    return render_text(results).rstrip("\n")


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    levels = [logging.WARNING, logging.INFO, logging.DEBUG]
    logging.basicConfig(
        stream=sys.stderr,
        level=levels[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        run_config = create_run_config(
            field=args.field,
            group=args.group,
            seed=args.seed,
            trials=args.trials,
            budget=args.budget,
            degree=args.degree,
            dim_cap=args.dim_cap,
            level_cap=args.level_cap,
            graded=False if getattr(args, "ungraded", False) else None,
        )
        validate_config(run_config)
        results = COMMANDS[args.command](args, run_config)
    except (VerificationError, InvalidGerbeError) as err:
        print(f"[error] {err}", file=sys.stderr)
        return 1
    except (TatetorsError, OSError, ValueError) as err:
        print(f"[error] {err}", file=sys.stderr)
        return 2
    print(emit_report(results, args.json))
    if args.out_dir:
        write_report(results, args.out_dir)
    return 1 if overall_status(results) == "fail" else 0


if __name__ == "__main__":
    sys.exit(main())
