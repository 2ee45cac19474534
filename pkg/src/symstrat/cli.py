"""Command-line front end: ``symstrat <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass

from . import confighomology as ch
from . import euler as eu
from . import ranges as rg
from . import spectral as sp
from . import sympower as sy
from ._linalg import fraction_str
from .errors import ResourceBoundError, SymstratError
from .graded import GradedDim
from .manifolds import euclidean, load_manifold
from .partitions import Partition, collapses_by_depth, partitions_of

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

DEFAULT_MAX_N = 7
DEFAULT_MAX_K = 8


class UsageError(Exception):
    pass


@dataclass
class Table:
    """Rows for CSV output alongside the JSON document."""

    header: list[str]
    rows: list[list]


@dataclass
class Result:
    doc: dict
    table: Table
    pretty: str
    exit_code: int = EXIT_OK


# -- formatting -------------------------------------------------------------


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def dump_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows(table.rows)
    return buf.getvalue()


def reprint(text: str, fmt: str) -> str:
    """Parse emitted output and print it again with the same emitter."""
    if fmt == "json":
        return dump_json(json.loads(text))
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        return dump_csv(Table(rows[0], rows[1:]))
    raise ValueError(f"no parser for format {fmt!r}")


def _graded(g: GradedDim) -> dict[str, int]:
    return {str(q): v for q, v in g.as_dict().items()}


def _fmt_graded(g: GradedDim) -> str:
    return ", ".join(f"{q}:{v}" for q, v in g.as_dict().items()) or "0"


# -- argument handling ------------------------------------------------------


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _keyval(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    k, v = text.split("=", 1)
    return k.strip(), v.strip()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--max-n", type=_nonneg, default=DEFAULT_MAX_N, help="bound on configuration points")
    common.add_argument("--max-k", type=_nonneg, default=DEFAULT_MAX_K, help="bound on partition size / symmetric power")

    parser = _Parser(prog="symstrat", description="Strata, discriminants and stability ranges in symmetric powers.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("ranges", parents=[common], help="stability ranges")
    p.add_argument("--manifold", default=None)
    p.add_argument("--lambda", dest="lam", type=_partition, default=None)
    p.add_argument("--j", type=_nonneg, default=None)
    p.add_argument("--label", choices=rg.CASE_LABELS, default=None, help="evaluate one labelled formula")
    p.add_argument("--param", type=_keyval, action="append", default=[], help="formula parameter key=value")
    p.add_argument("--batch", default=None, help="CSV with columns manifold,lambda,j")

    p = sub.add_parser("collapses", parents=[common], help="collapse poset by depth")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)

    p = sub.add_parser("strata", parents=[common], help="stratum homology over R^d")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam", type=_partition)
    g.add_argument("--k", type=_nonneg, help="all partitions of k")
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--mode", choices=("plain", "twisted"), default=None)

    p = sub.add_parser("sym", parents=[common], help="Betti numbers of symmetric powers")
    p.add_argument("--manifold", default="S2")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--operators", action="store_true", help="include stabilization and transfer matrices")

    p = sub.add_parser("e1", parents=[common], help="E^1 page for a discriminant")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--mode", choices=("plain", "twisted"), default=None)

    p = sub.add_parser("chi", parents=[common], help="compactly supported Euler characteristic ledger")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--j", type=_nonneg, default=0)
    p.add_argument("--manifold", default=None)
    p.add_argument("--d", type=_nonneg, default=None)
    p.add_argument("--twisted", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--suite", default="all")
    return parser


def _manifold(selector: str | None, d: int | None = None):
    if selector is None:
        if d is None:
            raise UsageError("give --manifold or --d")
        return euclidean(d)
    try:
        return load_manifold(selector)
    except (KeyError, OSError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None


def _check_d(d: int):
    if d < 2:
        raise UsageError(f"--d must be at least 2, got {d}")


# -- subcommands ------------------------------------------------------------


def _range_row(res: rg.RangeResult) -> list:
    inputs = ";".join(f"{k}={v}" for k, v in res.inputs.items())
    return [res.bound, res.case, res.direction, inputs, " | ".join(res.warnings)]


def _parse_param(key: str, value: str):
    if key == "M":
        return load_manifold(value)
    if key == "lam":
        return Partition.parse(value)
    if key == "case":
        return value
    return int(value)


def cmd_ranges(args) -> Result:
    header = ["bound", "case", "direction", "inputs", "warnings"]
    if args.batch:
        try:
            with open(args.batch, newline="", encoding="utf-8") as fh:
                rows = list(csv.DictReader(fh))
        except OSError as exc:
            raise UsageError(str(exc)) from None
        results = []
        for row in rows:
            try:
                M = load_manifold(row["manifold"])
                results.append(rg.stability_range(M, Partition.parse(row["lambda"]), int(row["j"])))
            except (KeyError, ValueError) as exc:
                raise UsageError(f"bad batch row {row}: {exc}") from None
        doc = {"results": [r.to_json() for r in results]}
        table = Table(header, [_range_row(r) for r in results])
        pretty = "\n".join(f"{r.case}: i <= {r.bound}" for r in results)
        return Result(doc, table, pretty)
    if args.label and args.label not in ("d>2-H1≠0", "d=2-H1≠0", "star_a", "nonorientable-d>2", "nonorientable-d=2"):
        try:
            params = {k: _parse_param(k, v) for k, v in args.param}
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad --param: {exc}") from None
        if args.manifold:
            params.setdefault("M", _manifold(args.manifold))
        if args.j is not None:
            params.setdefault("j", args.j)
        if args.lam is not None:
            params.setdefault("lam", args.lam)
        res = rg.auxiliary_ranges(args.label, params)
    else:
        if args.manifold is None or args.lam is None or args.j is None:
            raise UsageError("ranges needs --manifold, --lambda and --j (or --label/--batch)")
        M = _manifold(args.manifold)
        res = rg.stability_range(M, args.lam, args.j)
        if args.label and res.case != args.label:
            raise UsageError(f"{M.name} selects case {res.case}, not {args.label}")
    word = "<=" if res.direction == "le" else ">="
    pretty = f"{res.case}: isomorphism for * {word} {res.bound}"
    if res.warnings:
        pretty += "\n" + "\n".join(f"warning: {w}" for w in res.warnings)
    return Result(res.to_json(), Table(header, [_range_row(res)]), pretty)


def cmd_collapses(args) -> Result:
    if args.lam.k > args.max_k:
        raise ResourceBoundError(f"partition of {args.lam.k} exceeds --max-k {args.max_k}")
    levels = collapses_by_depth(args.lam)
    doc = {"lambda": list(args.lam.parts), "depths": {str(p): [list(mu.parts) for mu in v] for p, v in levels.items()}}
    rows = [[p, str(mu)] for p, v in levels.items() for mu in v]
    pretty = "\n".join(f"{p}: " + "  ".join(str(mu) for mu in v) for p, v in levels.items())
    return Result(doc, Table(["depth", "partition"], rows), pretty)


def cmd_strata(args) -> Result:
    _check_d(args.d)
    lams = [args.lam] if args.lam is not None else list(partitions_of(args.k))
    entries, rows, lines = [], [], []
    for lam in lams:
        h = ch.stratum_homology(lam, args.d, args.mode, max_n=args.max_n)
        c = ch.stratum_compact_support(lam, args.d, args.mode, max_n=args.max_n)
        entries.append({"partition": str(lam), "homology": _graded(h), "compact_support": _graded(c)})
        rows += [[str(lam), "homology", q, v] for q, v in h.as_dict().items()]
        rows += [[str(lam), "compact_support", q, v] for q, v in c.as_dict().items()]
        lines.append(f"{lam}: H_* {_fmt_graded(h)} | H^*_c {_fmt_graded(c)}")
    mode = args.mode or ("twisted" if args.d % 2 else "plain")
    doc = {"d": args.d, "mode": mode, "strata": entries}
    return Result(doc, Table(["partition", "kind", "degree", "dim"], rows), "\n".join(lines))


def cmd_sym(args) -> Result:
    if args.k > args.max_k:
        raise ResourceBoundError(f"k={args.k} exceeds --max-k {args.max_k}")
    M = _manifold(args.manifold)
    table = {k: sy.sym_betti(M.betti, k) for k in range(args.k + 1)}
    top = max((g.top_degree for g in table.values()), default=0)
    rows = [[q] + [table[k][q] for k in range(args.k + 1)] for q in range(top + 1)]
    doc = {
        "manifold": M.name,
        "betti": list(M.betti.dims),
        "table": {str(k): list(g.padded(top + 1)) for k, g in table.items()},
    }
    if args.operators:
        k = args.k
        doc["operators"] = {
            "stabilization": sy.stabilization_operator(M.betti, k).to_json(),
        }
        if k >= 1:
            doc["operators"]["transfer"] = sy.transfer_operator(M.betti, k).to_json()
    header = ["degree"] + [f"k={k}" for k in range(args.k + 1)]
    pretty = "\n".join(f"k={k}: {_fmt_graded(g)}" for k, g in table.items())
    return Result(doc, Table(header, rows), pretty)


def cmd_e1(args) -> Result:
    _check_d(args.d)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        page = sp.build_e1(args.lam, args.j, args.d, args.mode, max_n=args.max_n)
    doc = page.to_json()
    doc["warnings"] = [str(w.message) for w in caught]
    qs, ps, grid = page.matrix()
    rows = [[q] + row for q, row in zip(qs, grid)]
    width = max([len(str(v)) for row in grid for v in row] + [1])
    lines = ["q\\p " + " ".join(str(p).rjust(width) for p in ps)]
    lines += [str(q).rjust(3) + " " + " ".join(str(v).rjust(width) for v in row) for q, row in zip(qs, grid)]
    return Result(doc, Table(["q\\p"] + [str(p) for p in ps], rows), "\n".join(lines))


def cmd_chi(args) -> Result:
    M = _manifold(args.manifold, args.d)
    ledger = eu.euler_ledger(args.lam, args.j, M.chi_c, twisted=args.twisted)
    doc = ledger.to_json()
    rows = [[r["partition"], r["chi_c"], int(r["in_D"])] for r in ledger.rows()]
    rows += [["total:Sym", ledger.chi_Sym, ""], ["total:D", ledger.chi_D, ""], ["total:W", ledger.chi_W, ""]]
    lines = [f"{r['partition']:>16}  {r['chi_c']:>6}  {'D' if r['in_D'] else 'W'}" for r in ledger.rows()]
    lines.append(f"Sym {ledger.chi_Sym}  D {ledger.chi_D}  W {ledger.chi_W}")
    return Result(doc, Table(["partition", "chi_c", "in_D"], rows), "\n".join(lines))


def cmd_verify(args) -> Result:
    from .verify import run_verify

    try:
        report = run_verify(args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = report.to_json()
    rows = [
        [i["module"], i["name"], i["status"], i["checked"], i["skipped"], i["counterexample"] or ""]
        for i in doc["invariants"]
    ]
    lines = []
    for i in doc["invariants"]:
        line = f"{i['status']:<15} {i['module']}: {i['name']}"
        if i["counterexample"]:
            line += f"\n{'':16}counterexample: {i['counterexample']}"
        lines.append(line)
    first = report.first_failure
    if first is not None:
        lines.append(f"first failure: {first.invariant.module}: {first.invariant.name}")
    code = EXIT_OK if report.passed else EXIT_ASSERT
    header = ["module", "invariant", "status", "checked", "skipped", "counterexample"]
    return Result(doc, Table(header, rows), "\n".join(lines), code)


COMMANDS = {
    "ranges": cmd_ranges,
    "collapses": cmd_collapses,
    "strata": cmd_strata,
    "sym": cmd_sym,
    "e1": cmd_e1,
    "chi": cmd_chi,
    "verify": cmd_verify,
}

SAMPLE_INVOCATIONS = [
    ["ranges", "--manifold", "R4", "--lambda", "2", "--j", "5"],
    ["collapses", "--lambda", "1,1,2"],
    ["strata", "--k", "3", "--d", "2"],
    ["sym", "--manifold", "S2", "--k", "3"],
    ["e1", "--lambda", "2", "--j", "1", "--d", "2"],
    ["chi", "--lambda", "2", "--j", "1", "--d", "2"],
]


def run(argv: list[str]) -> tuple[int, str, str]:
    """Execute a command line; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        return EXIT_USAGE, "", f"{exc}\n"
    except ResourceBoundError as exc:
        return EXIT_RESOURCE, "", f"resource guard: {exc}\n"
    except SymstratError as exc:
        return EXIT_USAGE, "", f"{exc}\n"
    except ValueError as exc:
        return EXIT_USAGE, "", f"symstrat: {exc}\n"
    if args.format == "json":
        out = dump_json(result.doc)
    elif args.format == "csv":
        out = dump_csv(result.table)
    else:
        out = result.pretty + "\n"
    return result.exit_code, out, ""


def render(argv: list[str]) -> str:
    code, out, err = run(argv)
    if code != EXIT_OK:
        raise RuntimeError(f"{' '.join(argv)} exited {code}: {err}")
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
