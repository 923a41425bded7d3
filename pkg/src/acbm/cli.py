"""File-based front end.

Subcommands:

    classify  read a tensor or Lie-algebra file, report its classes
    project   read a tensor file, emit one class component or block projection
    gen       emit input files: sphere, liegroup, random, group
    verify    run the seeded invariant suites

Exit codes: 0 success (verify: all checks passed), 2 parse error or bad
parameters, 3 precondition failure (invalid structure, tensor outside
the admissible space, broken bracket table), 1 failed verify checks.

Examples:

    acbm gen sphere --n 1 --t 0.7 --out sphere.json
    acbm classify sphere.json
    acbm gen liegroup --n 1 --a 1.0,1.0 | acbm classify /dev/stdin --format json
    acbm verify --suite dim3 --seeds 100
"""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .decomposition import classify, component, project_w
from .errors import PreconditionError
from .group import random_group_element
from .models import (
    check_jacobi,
    koszul_connection,
    lie_family,
    sphere_structure_tensor,
    structure_tensor_from_connection,
)
from .structure import canonical_structure, validate_structure
from .tensors import random_structure_tensor
from .verify import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_classifiable(path: str):
    """Resolve an input file to (structure, tensor), running the Koszul
    pipeline for Lie-algebra specifications."""
    doc = fileio.load_document(path)
    kind = fileio.detect_kind(doc)
    if kind == "lie":
        spec = fileio.lie_from_doc(doc)
        if not check_jacobi(spec):
            raise PreconditionError("bracket table violates the Jacobi identity")
        s = spec.structure
        f = structure_tensor_from_connection(spec, koszul_connection(spec))
    else:
        s, f = fileio.tensor_from_doc(doc)
    report = validate_structure(s)
    if not report.valid:
        worst = ", ".join(f"{k}={v:.3e}" for k, v in report.violations)
        raise PreconditionError(f"structure violates axioms: {worst}")
    return s, f


def cmd_classify(args) -> int:
    s, f = _load_classifiable(args.input)
    report = classify(s, f, rel_tol=args.tol, abs_floor=args.abs_floor)
    if args.format == "json":
        text = fileio.dumps(fileio.report_to_doc(report))
    else:
        text = fileio.format_report_text(report)
    _emit(text, args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    s, f = _load_classifiable(args.input)
    if (args.class_index is None) == (args.w is None):
        raise fileio.ParseError("specify exactly one of --class-index or --w")
    if args.class_index is not None:
        result = component(s, f, args.class_index)
    else:
        result = project_w(s, f, args.w)
    _emit(fileio.dumps(fileio.tensor_to_doc(s, result)), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "sphere":
        s, f = sphere_structure_tensor(args.n, args.t)
        doc = fileio.tensor_to_doc(s, f)
    elif args.kind == "liegroup":
        try:
            params = [float(x) for x in args.a.split(",")]
        except ValueError as exc:
            raise fileio.ParseError(f"--a must be comma-separated floats: {exc}") from exc
        if len(params) != 2 * args.n:
            raise fileio.ParseError(
                f"--a must list {2 * args.n} values for n={args.n}, got {len(params)}"
            )
        doc = fileio.lie_to_doc(lie_family(args.n, params))
    elif args.kind == "random":
        if args.dim < 3 or args.dim % 2 == 0:
            raise fileio.ParseError(f"--dim must be an odd integer >= 3, got {args.dim}")
        s = canonical_structure((args.dim - 1) // 2)
        doc = fileio.tensor_to_doc(s, random_structure_tensor(s, args.seed))
    else:
        elem = random_group_element(args.n, args.seed)
        doc = fileio.group_to_doc(args.n, elem.a)
    _emit(fileio.dumps(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    results = run_suites(names, args.seeds)
    all_passed = True
    for suite, checks in results.items():
        print(f"suite: {suite} (seeds={args.seeds})")
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            all_passed &= check.passed
            print(f"  {status}  {check.name:<32} worst {check.worst:.3e}  tol {check.tol:.1e}")
    print("result:", "PASS" if all_passed else "FAIL")
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acbm",
        description="Structure tensors of almost contact B-metric geometry:"
        " classification, projections, generators, invariant verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a tensor or Lie-algebra file")
    p_classify.add_argument("input", help="input JSON file")
    p_classify.add_argument("--tol", type=float, default=1e-9, help="relative class threshold")
    p_classify.add_argument("--abs-floor", type=float, default=1e-12, help="absolute magnitude floor")
    p_classify.add_argument("--format", choices=("text", "json"), default="text")
    p_classify.add_argument("--out", help="write the report to a file instead of stdout")
    p_classify.set_defaults(func=cmd_classify)

    p_project = sub.add_parser("project", help="emit a class component or block projection")
    p_project.add_argument("input", help="input JSON file")
    p_project.add_argument("--class-index", type=int, choices=range(1, 12), metavar="1..11",
                           help="basic class component to extract")
    p_project.add_argument("--w", type=int, choices=(1, 2, 3, 4), help="block projection to extract")
    p_project.add_argument("--out", help="output path (default stdout)")
    p_project.set_defaults(func=cmd_project)

    p_gen = sub.add_parser("gen", help="generate input files")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)
    g_sphere = gen_sub.add_parser("sphere", help="time-like sphere structure tensor")
    g_sphere.add_argument("--n", type=int, required=True)
    g_sphere.add_argument("--t", type=float, required=True, help="sphere parameter (radians)")
    g_lie = gen_sub.add_parser("liegroup", help="solvable Lie-algebra family")
    g_lie.add_argument("--n", type=int, required=True)
    g_lie.add_argument("--a", type=str, required=True, help="comma-separated 2n parameters")
    g_random = gen_sub.add_parser("random", help="seeded random admissible tensor")
    g_random.add_argument("--dim", type=int, required=True, help="odd dimension >= 3")
    g_random.add_argument("--seed", type=int, default=0)
    g_group = gen_sub.add_parser("group", help="seeded structure-group element")
    g_group.add_argument("--n", type=int, required=True)
    g_group.add_argument("--seed", type=int, default=0)
    for g in (g_sphere, g_lie, g_random, g_group):
        g.add_argument("--out", help="output path (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify", help="run seeded invariant suites")
    p_verify.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p_verify.add_argument("--seeds", type=int, default=20, help="seeds per property")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except fileio.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
