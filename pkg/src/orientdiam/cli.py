"""Command-line entry point (``orientdiam``)."""

from __future__ import annotations

import argparse
import csv
import io as _io
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import io
from .errors import OrientDiamError, VerificationError
from .generators import FAMILIES, generate
from .graph import INF, diameter, eta
from .oracle import exact_oriented_diameter, verify_orientation
from .pipelines import orient_diameter4, orient_general

CSV_HEADER = ["instance", "family", "params", "seed", "n", "m", "d", "eta",
              "promised", "achieved", "oracle", "ms"]


def _fmt(x) -> str:
    return "inf" if x == INF else str(x)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run_pipeline(g, mode: str):
    if mode == "auto":
        mode = "diam4" if diameter(g) == 4 else "general"
    if mode == "diam4":
        return orient_diameter4(g)
    return orient_general(g)


def cmd_orient(args) -> int:
    g = io.read_graph(args.graph)
    o, report = run_pipeline(g, args.mode)
    strong, diam = verify_orientation(g, o)
    if diam != report.achieved:
        raise VerificationError(f"pipeline reported {report.achieved}, verifier found {diam}")
    record = {"n": g.n, "m": g.m, **report.as_record()}
    record["strong"] = str(strong).lower()
    if args.out:
        _write(args.out, io.dump_orientation(o))
    _write(args.report, io.dump_report(record))
    return 0


def cmd_oracle(args) -> int:
    g = io.read_graph(args.graph)
    res = exact_oriented_diameter(g, args.budget_edges, method=args.method)
    lines = {
        "optimum": "none" if res.optimum is None else res.optimum,
        "nodes": res.nodes_explored,
        "method": res.method,
    }
    _write(None, io.dump_report(lines))
    if res.certificate is not None:
        if args.out:
            _write(args.out, io.dump_orientation(res.certificate))
        else:
            sys.stdout.write("# certificate\n" + io.dump_orientation(res.certificate))
    return 0


def cmd_verify(args) -> int:
    g = io.read_graph(args.graph)
    with open(args.orientation, encoding="utf-8") as fh:
        o = io.parse_orientation(g, fh.read())
    strong, diam = verify_orientation(g, o)
    _write(None, io.dump_report({"strong": str(strong).lower(), "diameter": _fmt(diam)}))
    return 0


def _parse_params(tokens) -> dict:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise OrientDiamError(f"expected key=value parameter, got {tok!r}")
        out[key] = value
    return out


def cmd_gen(args) -> int:
    g = generate(args.family, _parse_params(args.params), args.seed)
    _write(args.out, io.dump_edge_list(g))
    return 0


def cmd_export_dot(args) -> int:
    g = io.read_graph(args.graph)
    o = None
    if args.orientation:
        with open(args.orientation, encoding="utf-8") as fh:
            o = io.parse_orientation(g, fh.read())
    _write(args.out, io.to_dot(g, o))
    return 0


def sample_params(family: str, rng: random.Random) -> dict:
    if family == "cycle":
        return {"n": rng.randint(3, 20)}
    if family == "complete":
        return {"n": rng.randint(3, 8)}
    if family == "theta":
        # at most one path may be a direct edge
        lengths = sorted(rng.randint(1, 5) for _ in range(3))
        lengths = lengths[:1] + [max(x, 2) for x in lengths[1:]]
        return {"lengths": ",".join(map(str, lengths))}
    if family == "torus_grid":
        return {"rows": rng.randint(3, 6), "cols": rng.randint(3, 6)}
    if family == "random_2ec":
        n = rng.randint(8, 40)
        return {"n": n, "m": n + rng.randint(0, n), "base": rng.choice(["cycle", "tree"]),
                "depth": rng.randint(2, 4)}
    return {}


def sweep_row(task) -> list[str]:
    index, family, params, seed, mode, oracle_edges, timing = task
    g = generate(family, params, seed)
    start = time.perf_counter()
    o, report = run_pipeline(g, mode)
    ms = (time.perf_counter() - start) * 1000
    strong, achieved = verify_orientation(g, o)
    if not strong or achieved != report.achieved:
        raise VerificationError(f"instance {index}: re-verification gave {achieved}")
    oracle = "-"
    if g.m <= oracle_edges:
        oracle = _fmt(exact_oriented_diameter(g).optimum)
    d, (e, _) = diameter(g), eta(g)
    ptext = ";".join(f"{k}={v}" for k, v in params.items())
    return [str(index), family, ptext, str(seed), str(g.n), str(g.m), str(d), str(e),
            str(report.promised), _fmt(achieved), oracle, f"{ms:.1f}" if timing else "0"]


def cmd_sweep(args) -> int:
    families = args.families or ["random_2ec"]
    for fam in families:
        if fam not in FAMILIES:
            raise OrientDiamError(f"unknown family {fam!r}")
    rng = random.Random(args.seed)
    tasks = []
    for i in range(args.count):
        fam = families[i % len(families)]
        params = sample_params(fam, rng)
        seed = rng.randrange(2**31)
        tasks.append((i, fam, params, seed, args.mode, args.oracle_edges, not args.no_timing))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(sweep_row, tasks))
    else:
        rows = [sweep_row(t) for t in tasks]
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    _write(args.csv, buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orientdiam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orient", help="orient a graph and report the verified diameter")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["general", "diam4", "auto"], default="general")
    p.add_argument("--out", help="write the orientation here")
    p.add_argument("--report", help="write the key=value report here (default stdout)")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("oracle", help="exact oriented diameter of a small graph")
    p.add_argument("graph")
    p.add_argument("--budget-edges", type=int, default=None)
    p.add_argument("--method", choices=["auto", "exhaustive", "branch-and-bound"], default="auto")
    p.add_argument("--out", help="write the certificate orientation here")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check an orientation and print its diameter")
    p.add_argument("graph")
    p.add_argument("orientation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit an edge list from a generator family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", help="key=value generator parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="batch experiment records as CSV")
    p.add_argument("--families", nargs="+")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--mode", choices=["general", "diam4", "auto"], default="auto")
    p.add_argument("--oracle-edges", type=int, default=14,
                   help="run the exact oracle on instances with at most this many edges")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the ms column")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-dot", help="DOT text for a graph or an oriented graph")
    p.add_argument("graph")
    p.add_argument("orientation", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OrientDiamError, OSError, ValueError) as exc:
        print(f"orientdiam: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
