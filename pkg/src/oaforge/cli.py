"""Command-line surface.

Exit codes: 0 success / verified, 1 verification failure (one JSON record per
failure on standard output), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebraic, catalog as cat, compose, diffmatrix, fixtures as fix
from .arrays import (
    LargeSet,
    SymbolMatrix,
    brute_force_strength,
    project_columns,
    verify_large_set,
    verify_strength,
)
from .errors import (
    BudgetExceededError,
    ConstraintError,
    DMUnavailableError,
    OAForgeError,
    ParseError,
)
from .expand import (
    ResolvableProjection,
    expand_shift,
    find_resolvable_projection,
)
from .formats import read_array, write_array
from .gf import parse_order


def _columns(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _params(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not key or not value:
            raise argparse.ArgumentTypeError(f"bad parameter {part!r}")
        out[key.strip()] = int(value)
    return out


def _budget(text: str) -> int:
    return int(float(text))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oaforge",
        description="Construct and exhaustively verify mixed-level orthogonal"
                    " arrays, large sets, and difference matrices.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for subset counting")
    parser.add_argument("--budget", type=_budget, default=10**8,
                        help="counting-operation / search-node budget (default 1e8)")
    parser.add_argument("--fail-fast", action="store_true",
                        help="stop at the first failing column subset")
    # the same globals are accepted after the subcommand; merged in main()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", dest="sub_threads", type=int, default=None,
                        help=argparse.SUPPRESS)
    common.add_argument("--budget", dest="sub_budget", type=_budget, default=None,
                        help=argparse.SUPPRESS)
    common.add_argument("--fail-fast", dest="sub_fail_fast", action="store_const",
                        const=True, default=None, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    c = sub.add_parser("construct", help="run one constructor")
    c.add_argument("recipe", choices=["sylvester2", "sylvester3", "projective",
                                      "bush", "q4t3", "chai1", "chai2"])
    c.add_argument("--n", type=int, help="exponent (sylvester: order 2^n;"
                                         " projective: dimension)")
    c.add_argument("--k", type=int, help="number of columns")
    c.add_argument("--q", type=parse_order, help="field order, 'p^e' or a prime power")
    c.add_argument("--t", type=int, help="strength (bush)")
    c.add_argument("--v", type=int, help="group order (chai1/chai2)")
    c.add_argument("--dm-file", type=Path, help="difference matrix to develop")
    c.add_argument("--keep", type=_columns,
                   help="project onto these columns (in order) before output")
    c.add_argument("--expand", action="store_true",
                   help="emit the expanded large set instead of the array")
    c.add_argument("-o", "--output", type=Path)

    e = sub.add_parser("expand", help="expand an array into its large set")
    e.add_argument("oa_file", type=Path)
    e.add_argument("--columns", type=_columns,
                   help="resolvable projection columns (default: search)")
    e.add_argument("--keep", type=_columns,
                   help="project onto these columns (in order) first")
    e.add_argument("-o", "--output", type=Path, required=True)

    v = sub.add_parser("verify", help="verify an artifact file")
    v.add_argument("kind", choices=["oa", "loa", "dm"])
    v.add_argument("file", type=Path)
    v.add_argument("--strength", type=int,
                   help="strength to check (default: the file's claimed t)")

    o = sub.add_parser("oracle", help="brute-force strength re-count")
    o.add_argument("file", type=Path)
    o.add_argument("--strength", type=int)

    p = sub.add_parser("compose", help="combine two large sets")
    p.add_argument("operation", choices=["juxtapose", "kronecker"])
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    t = sub.add_parser("theorem", help="execute a composite recipe")
    t.add_argument("id", choices=list(compose.THEOREM_IDS))
    t.add_argument("--params", type=_params, required=True,
                   help="comma-separated name=value pairs, e.g. v=4,k=5")
    t.add_argument("-o", "--output", type=Path)

    g = sub.add_parser("catalog", help="list/reproduce the result tables")
    g.add_argument("query", choices=["table1", "table2", "table3", "table4",
                                     "table5", "table6", "theorems", "all"])
    g.add_argument("--run", action="store_true",
                   help="execute every synthesizable entry within budget")

    s = sub.add_parser("search", help="backtracking searches")
    s.add_argument("what", choices=["dm"])
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--group", help="cyclic factorization, e.g. Z2xZ2 (default Zv)")
    s.add_argument("-o", "--output", type=Path)

    f = sub.add_parser("fixtures", help="check the installed reference corpus")
    f.add_argument("--dir", type=Path, help="alternate corpus directory")
    f.add_argument("--no-expand", action="store_true",
                   help="skip the expansion check")
    f.add_argument("--list", action="store_true", help="list corpus files")
    return parser


def _emit(record: dict):
    print(json.dumps(record, sort_keys=True))


def _report_strength(report) -> int:
    if report.ok:
        print(f"ok: strength {report.t} verified"
              f" ({report.checked_subsets} column subsets)")
        return 0
    for failure in report.failures:
        _emit(failure.as_record())
    return 1


def _report_large_set(report) -> int:
    if report.ok:
        print(f"ok: large set verified (M={report.m}, N={report.n},"
              f" universe={report.universe}, strength {report.t})")
        return 0
    for record in report.records():
        _emit(record)
    if report.first_bad_report is not None:
        for failure in report.first_bad_report.failures:
            _emit(failure.as_record())
    return 1


def _write(obj, path: Path | None, label: str):
    if path is None:
        print(f"{label} (no output file requested)")
    else:
        write_array(obj, path)
        print(f"{label} -> {path}")


def _cmd_construct(args) -> int:
    recipe = args.recipe
    if recipe in ("sylvester2", "sylvester3"):
        if args.n is None or args.k is None:
            raise ConstraintError(f"{recipe} needs --n and --k")
        builder = algebraic.sylvester_oa2 if recipe == "sylvester2" \
            else algebraic.sylvester_oa3
        a, proj = builder(args.n, args.k)
    elif recipe == "projective":
        if args.q is None or args.n is None or args.k is None:
            raise ConstraintError("projective needs --q, --n and --k")
        q = args.q[0] ** args.q[1]
        a, proj = algebraic.linear_oa(algebraic.projective_columns(q, args.n), args.k)
    elif recipe == "bush":
        if args.q is None or args.t is None or args.k is None:
            raise ConstraintError("bush needs --q, --t and --k")
        q = args.q[0] ** args.q[1]
        a, proj = algebraic.linear_oa(algebraic.bush_columns(q, args.t), args.k)
    elif recipe == "q4t3":
        if args.q is None or args.k is None:
            raise ConstraintError("q4t3 needs --q and --k")
        q = args.q[0] ** args.q[1]
        a, proj = algebraic.linear_oa(algebraic.q4_matrix(q), args.k)
    else:  # chai1 / chai2
        if args.v is None:
            raise ConstraintError(f"{recipe} needs --v")
        if args.dm_file is not None:
            dm = diffmatrix.read_dm(args.dm_file)
            report = diffmatrix.verify_dm(dm)
            if not report.ok:
                for fail in report.failures:
                    _emit({"kind": "dm-pair", "columns": list(fail.columns),
                           "missing": list(fail.missing),
                           "repeated": list(fail.repeated)})
                return 1
            if dm.v != args.v:
                raise ConstraintError(f"--v {args.v} but the file has v={dm.v}")
        else:
            dm = diffmatrix.dm_for(args.v)
        if recipe == "chai1":
            a, proj = diffmatrix.develop_chai1(dm)
        else:
            a, proj, report = diffmatrix.develop_chai2(dm)
            if not report.ok:
                print(f"self-check verdict: NOT an OA({a.n},"
                      f"{a.profile.format()},2); failing column pairs below")
                for failure in report.failures:
                    _emit(failure.as_record())
                _write(a.with_t(0), args.output,
                       f"candidate array ({a.n} x {a.k}) emitted unverified")
                return 1
            print("self-check verdict: pass")

    if args.keep:
        missing = set(proj.columns) - set(args.keep)
        if missing:
            raise ConstraintError(
                f"--keep must retain the resolvable columns {proj.columns}")
        a = project_columns(a, args.keep)
        proj = ResolvableProjection(
            tuple(args.keep.index(c) for c in proj.columns), a.n)
    label = f"OA({a.n},{a.profile.format()},{a.t}), resolvable columns {proj.columns}"
    if args.expand:
        ls = expand_shift(a, proj)
        report = verify_large_set(ls, ls.t, threads=args.threads,
                                  budget=args.budget)
        code = _report_large_set(report)
        if code:
            return code
        _write(ls, args.output, f"LOA({ls.n},{ls.profile.format()},{ls.t}) M={ls.m}")
        return 0
    _write(a, args.output, label)
    return 0


def _level_product(a: SymbolMatrix, columns) -> int:
    out = 1
    for c in columns:
        out *= a.profile.levels[c]
    return out


def _cmd_expand(args) -> int:
    a = read_array(args.oa_file)
    if isinstance(a, LargeSet):
        raise OAForgeError("expand expects a single array, not a large set")
    if args.keep:
        a = project_columns(a, args.keep)
    if args.columns:
        proj = ResolvableProjection(args.columns, _level_product(a, args.columns))
    else:
        found = find_resolvable_projection(a)
        if found is None:
            print("no resolvable projection exists")
            return 1
        print(f"using resolvable columns {found.columns}")
        proj = found
    ls = expand_shift(a, proj)
    t = ls.t if ls.t is not None else 0
    report = verify_large_set(ls, t, threads=args.threads, budget=args.budget)
    code = _report_large_set(report)
    if code:
        return code
    write_array(ls, args.output)
    print(f"LOA({ls.n},{ls.profile.format()},{t}) M={ls.m} -> {args.output}")
    return 0


def _cmd_verify(args) -> int:
    if args.kind == "dm":
        dm = diffmatrix.read_dm(args.file)
        report = diffmatrix.verify_dm(dm)
        if report.ok:
            print(f"ok: ({dm.v},{dm.k},1) difference matrix over"
                  f" {dm.group.label()}")
            return 0
        for failure in report.failures:
            _emit({"kind": "dm-pair", "columns": list(failure.columns),
                   "missing": list(failure.missing),
                   "repeated": list(failure.repeated)})
        return 1
    obj = read_array(args.file)
    if args.kind == "oa":
        if not isinstance(obj, SymbolMatrix):
            raise OAForgeError(f"{args.file} holds a large set; use 'verify loa'")
        t = args.strength if args.strength is not None else (obj.t or 0)
        report = verify_strength(obj, t, fail_fast=args.fail_fast,
                                 budget=args.budget, threads=args.threads)
        return _report_strength(report)
    if not isinstance(obj, LargeSet):
        raise OAForgeError(f"{args.file} holds a single array; use 'verify oa'")
    t = args.strength if args.strength is not None else (obj.t or 0)
    report = verify_large_set(obj, t, threads=args.threads, budget=args.budget)
    return _report_large_set(report)


def _cmd_oracle(args) -> int:
    obj = read_array(args.file)
    if not isinstance(obj, SymbolMatrix):
        raise OAForgeError("the oracle checks single arrays")
    t = args.strength if args.strength is not None else (obj.t or 0)
    report = brute_force_strength(obj, t, budget=args.budget)
    return _report_strength(report)


def _cmd_compose(args) -> int:
    first = read_array(args.first)
    second = read_array(args.second)
    if not isinstance(first, LargeSet) or not isinstance(second, LargeSet):
        raise OAForgeError("compose expects two large-set files")
    if args.operation == "juxtapose":
        ls = compose.juxtapose(first, second)
        write_array(ls, args.output)
        print(f"LOA({ls.n},{ls.profile.format()},{ls.t}) M={ls.m}"
              f" -> {args.output}")
        return 0
    out = compose.kronecker(first, second)
    write_array(out, args.output)
    print(f"OA({out.n},{out.profile.format()},{out.t}) -> {args.output}")
    return 0


def _cmd_theorem(args) -> int:
    plan = compose.plan_theorem(args.id, args.params)
    artifact = compose.execute_plan(plan)
    profile = artifact.profile.format()
    if isinstance(artifact, LargeSet):
        label = f"LOA({artifact.n},{profile},{artifact.t}) M={artifact.m}"
    else:
        label = f"OA({artifact.n},{profile},{artifact.t})"
    _write(artifact, args.output, f"{label} verified")
    return 0


def _cmd_catalog(args) -> int:
    entries = cat.catalog(args.query)
    if not args.run:
        for entry in entries:
            line = f"{entry.source}: {entry.result} [{entry.params}]" \
                   f" status={entry.status}"
            if entry.command:
                line += f"\n    command: {entry.command}"
            if entry.note:
                line += f"\n    note: {entry.note}"
            print(line)
        return 0
    failures = 0
    for entry, outcome in cat.run_entries(entries, budget=args.budget):
        print(f"{entry.source}: {entry.result} -> {outcome}")
        if outcome.startswith("failed"):
            failures += 1
    return 1 if failures else 0


def _cmd_search(args) -> int:
    group = None
    if args.group:
        group = diffmatrix.AbelianGroup(
            int(z[1:]) for z in args.group.split("x"))
    try:
        dm = diffmatrix.search_dm(args.v, args.k, budget=args.budget, group=group)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}")
        return 1
    if dm is None:
        print(f"proven: no ({args.v},{args.k},1) difference matrix over"
              f" {(group or diffmatrix.AbelianGroup((args.v,))).label()}"
              " (full exhaustion)")
        return 0
    print(f"found ({dm.v},{dm.k},1) difference matrix over {dm.group.label()}")
    if args.output:
        diffmatrix.write_dm(dm, args.output)
        print(f"-> {args.output}")
    return 0


def _cmd_fixtures(args) -> int:
    if args.list:
        directory = args.dir or fix.fixture_dir()
        for name in fix.fixture_names():
            path = directory / f"{name}.txt"
            print(f"{name}: {path}" + ("" if path.exists() else " (missing)"))
        return 0
    report = fix.fixtures_check(args.dir, expand=not args.no_expand)
    if report.corpus_empty:
        print("no fixtures installed")
        return 1
    for result in report.results:
        print(f"{result.name}: {result.status}")
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "sub_threads", None) is not None:
        args.threads = args.sub_threads
    if getattr(args, "sub_budget", None) is not None:
        args.budget = args.sub_budget
    if getattr(args, "sub_fail_fast", None) is not None:
        args.fail_fast = args.sub_fail_fast
    handlers = {
        "construct": _cmd_construct,
        "expand": _cmd_expand,
        "verify": _cmd_verify,
        "oracle": _cmd_oracle,
        "compose": _cmd_compose,
        "theorem": _cmd_theorem,
        "catalog": _cmd_catalog,
        "search": _cmd_search,
        "fixtures": _cmd_fixtures,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        _emit({"kind": "parse-error", "message": str(exc), "line": exc.line})
        return 1
    except (ConstraintError, DMUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OAForgeError as exc:
        record = {"kind": type(exc).__name__, "message": str(exc)}
        report = getattr(exc, "report", None)
        if report is not None and hasattr(report, "failures"):
            for failure in report.failures[:32]:
                _emit(failure.as_record())
        _emit(record)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
