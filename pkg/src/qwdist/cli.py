"""Command-line interface: ``qwdist {enumerate,nullspace,classify,verify,walk}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from qwdist import oracle
from qwdist.distinguish import pair_null
from qwdist.exact import to_uniform_sum_basis
from qwdist.jsonio import dumps
from qwdist.graphs import LabeledGraph, complete_graph, enumerate_labeled_connected, laplacian
from qwdist.lattice import FORMATS, classify, export
from qwdist.verify import sig15, verify_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return dumps(obj)


def select_graph(order: int, selector: str | None, mask: str | None) -> tuple[int | None, LabeledGraph]:
    """Resolve a graph given by enumeration index, ``K`` or an edge bitmask."""
    if (selector is None) == (mask is None):
        raise UsageError("give exactly one of a graph selector or an edge mask")
    if mask is not None:
        try:
            g = LabeledGraph.from_mask(order, int(mask, 0))
        except ValueError as exc:
            raise UsageError(f"bad edge mask {mask!r}: {exc}") from None
    elif selector.upper() == "K":
        g = complete_graph(order)
    else:
        graphs = enumerate_labeled_connected(order)
        try:
            return int(selector), graphs[int(selector)]
        except (ValueError, IndexError):
            raise UsageError(f"graph index must be 0..{len(graphs) - 1} or K, got {selector!r}") from None
    index = next((k for k, h in enumerate(enumerate_labeled_connected(order)) if h == g), None)
    return index, g


def _graph_record(index, g: LabeledGraph) -> dict:
    return dict(index=index, mask=g.mask, **g.to_json())


def cmd_enumerate(args) -> int:
    graphs = enumerate_labeled_connected(args.order)
    if args.format == "csv":
        rows = [(k, g.mask, " ".join(f"{a}-{b}" for a, b in g.sorted_edges())) for k, g in enumerate(graphs)]
        _write(_csv(rows, ["index", "mask", "edges"]), args.out)
    else:
        _write(_json([_graph_record(k, g) for k, g in enumerate(graphs)]), args.out)
    return EXIT_OK


def cmd_nullspace(args) -> int:
    order_j = args.order_j if args.order_j is not None else args.order
    idx_i, gi = select_graph(args.order, args.i, args.edges_i)
    idx_j, gj = select_graph(order_j, args.j, args.edges_j)
    if gi.order != gj.order:
        raise UsageError(f"graphs must have equal order, got {gi.order} and {gj.order}")
    res = pair_null(laplacian(gi), laplacian(gj), idx_i, idx_j)
    basis = to_uniform_sum_basis(res.space) if args.paper_basis else [list(v) for v in res.space.basis]
    if args.format == "csv":
        _write(_csv(basis, [f"x{k}" for k in range(gi.order ** 2)]), args.out)
    else:
        _write(_json({
            "order": gi.order,
            "i": _graph_record(idx_i, gi),
            "j": _graph_record(idx_j, gj),
            "dim": res.space.dim,
            "subspace": res.space.to_json(),
            "display_basis": basis if args.paper_basis else None,
            "constraint_ranks": [list(c) for c in res.constraint_ranks],
        }), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    report = classify(args.order, threads=args.threads)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for fmt in FORMATS:
            (outdir / f"classify_order{args.order}.{fmt}").write_bytes(export(report, fmt))
        print(report.summary())
    elif args.format:
        sys.stdout.buffer.write(export(report, args.format))
        sys.stdout.flush()
        print(report.summary(), file=sys.stderr)
    else:
        print(report.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    check = None
    if args.check_file:
        try:
            check = json.loads(Path(args.check_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read check file: {exc}") from None
    try:
        result = verify_order(args.order, seed=args.seed, samples=args.samples, check=check, threads=args.threads)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed check file: {exc}") from None
    if args.format == "csv":
        rows = [(v.get("check") or v.get("relation"), v.get("i", ""), v.get("j", ""))
                for key in ("mismatches", "relation_violations", "oracle_violations") for v in result[key]]
        _write(_csv(rows, ["violation", "i", "j"]), args.out)
    else:
        _write(_json(result), args.out)
    print(f"violations={result['violations']}", file=sys.stderr)
    return EXIT_OK if result["violations"] == 0 else EXIT_FAIL


def _load_amplitudes(path: str, n: int) -> np.ndarray:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read amplitude file: {exc}") from None
    amps = np.array([complex(*a) if isinstance(a, list) else complex(a) for a in raw])
    if amps.shape != (n,):
        raise UsageError(f"amplitude file must hold {n} entries")
    return amps


def cmd_walk(args) -> int:
    _, g = select_graph(args.order, args.graph, args.edges)
    n = g.order
    if (args.start is None) == (args.amplitudes is None):
        raise UsageError("give exactly one of --start or --amplitudes")
    if args.amplitudes:
        psi0 = _load_amplitudes(args.amplitudes, n)
    elif args.start == "uniform":
        psi0 = np.full(n, 1 / math.sqrt(n), dtype=complex)
    else:
        v = int(args.start)
        if not 0 <= v < n:
            raise UsageError(f"start vertex must be in 0..{n - 1}")
        psi0 = np.zeros(n, dtype=complex)
        psi0[v] = 1
    probs = [sig15(p) for p in oracle.probabilities(oracle.evolve(g, psi0, args.time))]
    if args.format == "csv":
        _write(_csv([(k, f"{p:.15g}") for k, p in enumerate(probs)], ["vertex", "probability"]), args.out)
    else:
        _write(_json({"order": n, "graph": g.to_json(), "time": args.time, "probabilities": probs}), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwdist", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list labeled connected graphs of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("nullspace", help="exact null space of W for one graph pair")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--order-j", type=int, help="order of the second graph (defaults to --order)")
    p.add_argument("--i", help="first graph: enumeration index or K")
    p.add_argument("--j", help="second graph: enumeration index or K")
    p.add_argument("--edges-i", help="first graph as an edge bitmask (e.g. 0b011)")
    p.add_argument("--edges-j", help="second graph as an edge bitmask")
    p.add_argument("--paper-basis", action="store_true", help="also print a basis summing to all-ones")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_nullspace)

    p = sub.add_parser("classify", help="all pair null spaces, zones and their lattice")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=list(FORMATS), help="print one export format to stdout")
    p.add_argument("--out", help="directory for the json, csv and dot exports")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check inclusion relations and oracle residuals")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--check-file", help="classification JSON whose pair null spaces are checked")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("walk", help="vertex probabilities after a single-graph walk")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--graph", help="enumeration index or K")
    p.add_argument("--edges", help="edge bitmask")
    p.add_argument("--start", help="start vertex, or 'uniform'")
    p.add_argument("--amplitudes", help="JSON file of initial amplitudes (numbers or [re, im])")
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_walk)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
