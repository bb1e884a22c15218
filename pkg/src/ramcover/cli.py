"""Command-line front end.

Exit codes: 0 success / verified / found, 1 counterexample or not found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from ramcover import colorings as col
from ramcover.canon import VERTEX_COLOR, normalize_mode
from ramcover.certify import check_certificate
from ramcover.covers import (
    brute_cycle_partition2,
    brute_h_tiling,
    brute_path_cover,
    component_cover,
    greedy_h_cover,
    named_graph,
    ryser_cover_check,
    two_color_path_partition,
)
from ramcover.errors import RamcoverError
from ramcover.graph import Graph, berge_witness, max_matching
from ramcover.harness import COUNTEREXAMPLE, Claim, exhaustive_verify, random_verify
from ramcover.ramsey import (
    find_missing_color_matching,
    max_connected_mono_matching,
    max_s_colored_matching,
    perfect_matching_missing_color,
    sharpness_check_main,
)

OK, FOUND_NOTHING, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def emit(obj: Any, fmt: str = "json") -> str:
    """Render a report; JSON output is byte-stable (sorted keys, fixed indent)."""
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    rows = obj.get("rows") if isinstance(obj, dict) else None
    if rows is not None:
        if not rows:
            return "(no rows)\n"
        cols = list(rows[0])
        cells = [[_cell(r[k]) for k in cols] for r in rows]
        widths = [max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(cols)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(cols, widths))]
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
        return "\n".join(line.rstrip() for line in lines) + "\n"
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in sorted(obj.items()))
    return f"{obj}\n"


def _cell(v: Any) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def _shard(text: str) -> tuple[int, int]:
    try:
        i, m = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/m, got {text!r}") from None
    if not 0 <= i < m:
        raise argparse.ArgumentTypeError(f"shard needs 0 <= i < m, got {text!r}")
    return i, m


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None


def _coloring(args) -> col.EdgeColoring:
    return col.EdgeColoring.from_json(_load_json(args.input))


def _h_graph(text: str) -> Graph:
    if text.lstrip().startswith("["):
        edges = json.loads(text)
        n = max((max(e) for e in edges), default=0)
        return Graph.from_edges(n, edges)
    return named_graph(text)


# -- handlers ----------------------------------------------------------------


def _write_or_print(args, c: col.EdgeColoring, meta: dict | None = None):
    if args.output:
        col.write_coloring(c, args.output)
        out = {"written": args.output, "n": c.n, "t": c.t}
    else:
        out = c.to_json()
    if meta:
        out["meta"] = meta
    return OK, out


def cmd_construct(args):
    kind = args.kind
    if kind == "partition":
        return _write_or_print(args, col.partition_coloring(args.parts))
    if kind == "extremal-main":
        _need(args, "t", "k")
        parts = col.extremal_main_parts(args.t, args.k)
        return _write_or_print(args, col.partition_coloring(parts), {"parts": parts})
    if kind == "cockayne-lorimer":
        _need(args, "t", "p")
        parts = col.cockayne_lorimer_parts(args.t, args.p)
        return _write_or_print(args, col.partition_coloring(parts), {"parts": parts})
    _need(args, "t", "part_size")
    _, method = col.crossing_assignment(args.t)
    return _write_or_print(args, col.nb_coloring(args.t, args.part_size), {"crossing_method": method})


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.verb} {getattr(args, 'kind', '')}: missing --{', --'.join(m.replace('_', '-') for m in missing)}")


def cmd_matching(args):
    c = _coloring(args)
    if args.kind == "max":
        _need(args, "s")
        return OK, max_s_colored_matching(c, args.s).to_json()
    if args.kind == "find-guaranteed":
        _need(args, "k")
        cert = find_missing_color_matching(c, args.k)
    elif args.kind == "missing-color":
        cert = perfect_matching_missing_color(c)
    else:
        return OK, max_connected_mono_matching(c).to_json()
    if cert is None:
        return FOUND_NOTHING, {"found": False}
    return OK, cert.to_json()


def cmd_cover(args):
    c = _coloring(args)
    kind = args.kind
    if kind == "paths2":
        pp = two_color_path_partition(c)
        out = pp.to_certificate().to_json()
        out["probes"] = pp.probes
        return OK, out
    if kind == "components":
        _need(args, "s")
        return OK, component_cover(c, args.s).to_json()
    if kind == "ryser":
        cert = ryser_cover_check(c)
        return (OK, cert.to_json()) if cert else (FOUND_NOTHING, {"found": False, "t": c.t})
    if kind == "brute-paths":
        _need(args, "s")
        return OK, brute_path_cover(c, args.s).to_json()
    if kind == "cycles2":
        cert = brute_cycle_partition2(c)
        return (OK, cert.to_json()) if cert else (FOUND_NOTHING, {"found": False})
    h = _h_graph(args.h)
    _need(args, "s")
    if kind == "h-greedy":
        _need(args, "ramsey_bound")
        cert = greedy_h_cover(c, h, args.ramsey_bound, args.s)
        out = cert.to_json()
        out["bound"] = args.s * (c.n - args.ramsey_bound) / c.t
        return OK, out
    return OK, brute_h_tiling(c, h, args.s).to_json()


def cmd_deficiency(args):
    data = _load_json(args.input)
    if "colors" in data:
        c = col.EdgeColoring.from_json(data)
        if args.colors is None:
            raise UsageError("coloring input needs --colors to choose the subgraph")
        g = c.subgraph(args.colors)
    else:
        g = Graph.from_json(data)
    m = max_matching(g)
    w = berge_witness(g)
    return OK, {
        "n": g.n,
        "nu": m.size,
        "deficiency": g.n - 2 * m.size,
        "matching": [list(e) for e in m.edges],
        "x_set": sorted(w.x_set),
        "odd_components": w.odd_components,
    }


def cmd_verify(args):
    if args.kind == "sharpness-main":
        rows = [sharpness_check_main(t, k) for t in range(args.t_min, args.t_max + 1) for k in range(args.k_min, args.k_max + 1)]
        rows = [{key: r[key] for key in ("t", "k", "n", "parts", "max_matching", "expected", "sharp")} for r in rows]
        ok = all(r["sharp"] for r in rows)
        return (OK if ok else FOUND_NOTHING), {"all_sharp": ok, "rows": rows}
    if args.input is None or args.cert is None:
        raise UsageError("verify certificate needs --input and --cert")
    c = _coloring(args)
    problems = check_certificate(c, _load_json(args.cert))
    return (OK if not problems else FOUND_NOTHING), {"valid": not problems, "problems": problems}


def cmd_search(args):
    claim = Claim(args.name, k=args.k, p=args.p, s=args.s)
    if args.exhaustive:
        report = exhaustive_verify(args.n, args.t, claim, args.mode, args.shard or (0, 1))
    else:
        seed = 0 if args.seed is None else args.seed
        report = random_verify(args.n, args.t, claim, args.samples, seed, args.streams, args.generator)
    code = FOUND_NOTHING if report.status == COUNTEREXAMPLE else OK
    return code, report.to_json()


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=None, help="RNG seed for sampling commands")
    common.add_argument("--shard", type=_shard, default=None, metavar="I/M", help="work on shard I of M")

    parser = argparse.ArgumentParser(prog="ramcover", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("construct", help="build a coloring")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("partition", parents=[common])
    k.add_argument("--parts", type=_int_list, required=True, help="e.g. 1,2,5")
    for name, opts in (("extremal-main", ("t", "k")), ("cockayne-lorimer", ("t", "p")), ("nb", ("t", "part-size"))):
        k = kinds.add_parser(name, parents=[common])
        for opt in opts:
            k.add_argument(f"--{opt}", type=int, required=True)
    for sub in kinds.choices.values():
        sub.add_argument("-o", "--output", default=None)
        sub.set_defaults(func=cmd_construct)

    p = verbs.add_parser("matching", help="matching solvers")
    kinds = p.add_subparsers(dest="kind", required=True)
    for name in ("max", "find-guaranteed", "missing-color", "connected"):
        k = kinds.add_parser(name, parents=[common])
        k.add_argument("--input", required=True)
        k.add_argument("--s", type=int)
        k.add_argument("--k", type=int)
        k.set_defaults(func=cmd_matching)

    p = verbs.add_parser("cover", help="covers and partitions")
    kinds = p.add_subparsers(dest="kind", required=True)
    for name in ("paths2", "components", "ryser", "brute-paths", "cycles2", "h-greedy", "h-brute"):
        k = kinds.add_parser(name, parents=[common])
        k.add_argument("--input", required=True)
        k.add_argument("--s", type=int)
        if name.startswith("h-"):
            k.add_argument("--h", default="triangle", help="'triangle', 'c5' or an edge list like [[1,2],[2,3]]")
        if name == "h-greedy":
            k.add_argument("--ramsey-bound", type=int)
        k.set_defaults(func=cmd_cover)

    p = verbs.add_parser("deficiency", parents=[common], help="Tutte-Berge deficiency and witness")
    p.add_argument("--input", required=True, help="graph JSON, or coloring JSON with --colors")
    p.add_argument("--colors", type=_int_list, default=None)
    p.set_defaults(func=cmd_deficiency)

    p = verbs.add_parser("verify", help="sharpness sweep and certificate revalidation")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("sharpness-main", parents=[common])
    k.add_argument("--t-min", type=int, default=2)
    k.add_argument("--t-max", type=int, default=5)
    k.add_argument("--k-min", type=int, default=1)
    k.add_argument("--k-max", type=int, default=20)
    k.set_defaults(func=cmd_verify)
    k = kinds.add_parser("certificate", parents=[common])
    k.add_argument("--input")
    k.add_argument("--cert")
    k.set_defaults(func=cmd_verify)

    p = verbs.add_parser("search", help="check a named claim")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("claim", parents=[common])
    k.add_argument("--name", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--t", type=int, required=True)
    k.add_argument("--k", type=int)
    k.add_argument("--p", type=int)
    k.add_argument("--s", type=int)
    k.add_argument("--exhaustive", action="store_true")
    k.add_argument("--mode", default=VERTEX_COLOR, type=normalize_mode, help="vertex | vertex-color | raw")
    k.add_argument("--samples", type=int, default=1000)
    k.add_argument("--streams", type=int, default=1)
    k.add_argument("--generator", default="uniform", choices=("uniform", "extremal"))
    k.set_defaults(func=cmd_search)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        code, out = args.func(args)
    except (UsageError, RamcoverError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"ramcover: error: {exc}", file=stderr)
        return USAGE
    stdout.write(emit(out, args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
