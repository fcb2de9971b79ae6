"""Command-line front end: single-value queries, p-grid sweeps, figure datasets.

Single values are printed as JSON, sweeps as CSV with header ``p,value``.
Exit codes: 0 success (a missing threshold is JSON null, still 0), 2 usage
error, 1 computation error such as an exceeded size cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import GraphSpecError, SizeLimitError
from .graph import Graph, min_vertex_cover, parse_graph
from .density import (Bipartition, export_density, negativity, numerical_rank,
                      randomize, subgraph_space_dimension, RANK_TOL)
from .witness import (DEFAULT_THRESHOLD_TOL, gme_threshold, gme_witness_value,
                      _overlap_at_level)
from .lhv import lhv_bound, lhv_threshold, lhv_witness_value
from .sampler import sample_preparation, sample_to_json

QUANTITIES = ("overlap", "gme_witness", "lhv_witness", "negativity", "rank")
FIG_TARGETS = ("fig4", "fig5", "fig6", "fig7", "fig9")


@dataclass(frozen=True)
class SweepRecord:
    """One (p, value) point of a sweep, with its provenance labels."""

    p: float
    value: float
    quantity: str
    graph_spec: str
    level: str


def _fmt(value):
    """Round floats to 12 significant digits for stable output."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return value


def _emit_json(obj):
    print(json.dumps({k: _fmt(v) for k, v in obj.items()}))


def _value_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _parse_level(text: str):
    if text == "exact":
        return "exact"
    try:
        level = int(text)
    except ValueError:
        raise ValueError(f"level must be 'exact' or an integer, got {text!r}") from None
    if level < 0:
        raise ValueError(f"level must be nonnegative, got {level}")
    return level


def _parse_p(value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {value}")
    return value


def _parse_grid(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"p-grid must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(s) for s in parts)
    except ValueError:
        raise ValueError(f"non-numeric p-grid {text!r}") from None
    if not 0.0 <= start <= stop <= 1.0:
        raise ValueError("p-grid bounds must satisfy 0 <= START <= STOP <= 1")
    if step <= 0.0:
        raise ValueError("p-grid step must be positive")
    count = int((stop - start) / step + 1e-9)
    values = []
    for i in range(count + 1):
        v = start + i * step
        if abs(v - stop) < 1e-9:
            v = stop
        values.append(min(max(v, 0.0), 1.0))
    return values


def _parse_bipartition(text: str, n: int) -> Bipartition:
    halves = text.split("|")
    if len(halves) != 2:
        raise ValueError(f"bipartition must be LIST|LIST, got {text!r}")

    def mask_of(part):
        mask = 0
        for tok in part.split(","):
            tok = tok.strip()
            if not tok:
                continue
            v = int(tok)
            if not 0 <= v < n:
                raise ValueError(f"bipartition vertex {v} out of range for n={n}")
            if (mask >> v) & 1:
                raise ValueError(f"bipartition repeats vertex {v}")
            mask |= 1 << v
        return mask

    side_a, side_b = mask_of(halves[0]), mask_of(halves[1])
    if side_a & side_b:
        raise ValueError("bipartition sides overlap")
    if (side_a | side_b) != (1 << n) - 1:
        raise ValueError("bipartition must cover every vertex")
    return Bipartition(n, side_a)


def _graph_of(args) -> Graph:
    return parse_graph(args.graph)


def _lhv_bound_for(g: Graph, supplied) -> float:
    if supplied is not None:
        if not 0.0 < supplied <= 1.0:
            raise ValueError(f"--lhv-bound must be in (0, 1], got {supplied}")
        return supplied
    return lhv_bound(g)


# ---------------------------------------------------------------- handlers

def _cmd_overlap(args):
    g = _graph_of(args)
    p = _parse_p(args.p)
    _emit_json({"overlap": _overlap_at_level(g, p, _parse_level(args.level))})
    return 0


def _cmd_witness(args):
    g = _graph_of(args)
    ev = gme_witness_value(g, _parse_p(args.p), _parse_level(args.level),
                           graph_spec=args.graph)
    _emit_json({
        "graph_spec": ev.graph_spec,
        "p": ev.p,
        "level": ev.level,
        "overlap": ev.overlap_value,
        "witness": ev.witness_value,
        "constant": ev.constant_term,
    })
    return 0


def _cmd_threshold(args):
    g = _graph_of(args)
    level = _parse_level(args.level)
    value = gme_threshold(g, level=level, tol=args.tol)
    key = "p_w" if level == "exact" else "p_F"
    _emit_json({key: value})
    return 0


def _cmd_lhv_bound(args):
    _emit_json({"D": lhv_bound(_graph_of(args))})
    return 0


def _cmd_lhv_threshold(args):
    g = _graph_of(args)
    d = _lhv_bound_for(g, args.lhv_bound)
    value = lhv_threshold(g, level=_parse_level(args.level), d=d, tol=args.tol)
    _emit_json({"p_lhv": value, "D": d})
    return 0


def _cmd_negativity(args):
    g = _graph_of(args)
    p = _parse_p(args.p)
    cut = _parse_bipartition(args.bipartition, g.n)
    rho = randomize(g, p)
    if args.dump_matrix:
        export_density(rho, args.dump_matrix, p=p, graph_spec=args.graph)
    _emit_json({"negativity": negativity(rho, cut)})
    return 0


def _cmd_rank(args):
    g = _graph_of(args)
    p = _parse_p(args.p)
    rho = randomize(g, p)
    if args.dump_matrix:
        export_density(rho, args.dump_matrix, p=p, graph_spec=args.graph)
    _emit_json({"rank": numerical_rank(rho, tol=args.tol)})
    return 0


def _cmd_dim(args):
    _emit_json({"dim": subgraph_space_dimension(_graph_of(args))})
    return 0


def _cmd_cover(args):
    _emit_json({"cover": min_vertex_cover(_graph_of(args))})
    return 0


def _cmd_sample(args):
    g = _graph_of(args)
    p = _parse_p(args.p)
    sample = sample_preparation(g, p, args.shots, args.seed, threads=args.threads)
    print(sample_to_json(sample, graph_spec=args.graph, p=p))
    return 0


def _sweep_value(quantity, g, p, level, cut, d, tol):
    if quantity == "overlap":
        return _overlap_at_level(g, p, level)
    if quantity == "gme_witness":
        return gme_witness_value(g, p, level).witness_value
    if quantity == "lhv_witness":
        return lhv_witness_value(g, p, level, d).witness_value
    if quantity == "negativity":
        return negativity(randomize(g, p), cut)
    return numerical_rank(randomize(g, p), tol=tol)


def _cmd_sweep(args):
    g = _graph_of(args)
    level = _parse_level(args.level)
    grid = _parse_grid(args.p_grid)
    cut = None
    if args.quantity == "negativity":
        if not args.bipartition:
            raise ValueError("sweep of negativity needs --bipartition")
        cut = _parse_bipartition(args.bipartition, g.n)
    d = _lhv_bound_for(g, args.lhv_bound) if args.quantity == "lhv_witness" else None
    records = [
        SweepRecord(p=p,
                    value=_sweep_value(args.quantity, g, p, level, cut, d, args.tol),
                    quantity=args.quantity, graph_spec=args.graph, level=str(level))
        for p in grid
    ]
    if args.out == "csv":
        print("p,value")
        for rec in records:
            print(f"{rec.p:.12g},{_value_text(rec.value)}")
    else:
        print(json.dumps([{
            "p": _fmt(rec.p),
            "value": _fmt(rec.value),
            "quantity": rec.quantity,
            "graph_spec": rec.graph_spec,
            "level": rec.level,
        } for rec in records]))
    return 0


# ----------------------------------------------------------- figure datasets

def _threshold_cell(spec: str, level):
    return gme_threshold(parse_graph(spec), level=level)


def _fig_rows(target: str, threads: int):
    if target == "fig4":
        header = "family,n,p_w"
        cells = [(fam, n) for fam in ("star", "path") for n in range(3, 11)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(
                lambda fn: _threshold_cell(f"{fn[0]}:{fn[1]}", "exact"), cells))
        return header, [(fam, n, v) for (fam, n), v in zip(cells, vals)]

    if target == "fig5":
        header = "n,p_w,p_F,rel_diff"
        rows = []
        for n in range(3, 11):
            g = parse_graph(f"cycle:{n}")
            p_w = gme_threshold(g, level="exact")
            p_f = gme_threshold(g, level=2)
            rows.append((n, p_w, p_f, (p_f - p_w) / p_w))
        return header, rows

    if target == "fig6":
        header = "m,n,p_F"
        cells = [(m, n) for m in range(2, 6) for n in range(2, 6)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(
                lambda mn: _threshold_cell(f"grid:{mn[0]}x{mn[1]}", 2), cells))
        return header, [(m, n, v) for (m, n), v in zip(cells, vals)]

    if target == "fig7":
        header = "i,j,k,p_F"
        cells = [(i, j, k) for i in range(2, 4) for j in range(2, 4) for k in range(2, 4)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(
                lambda c: _threshold_cell(f"grid3:{c[0]}x{c[1]}x{c[2]}", 2), cells))
        return header, [(i, j, k, v) for (i, j, k), v in zip(cells, vals)]

    # fig9: LHV thresholds with computed classical bounds, desk-scale sizes
    header = "family,n,D,p_lhv"
    rows = []
    for fam in ("star", "path", "cycle"):
        for n in range(3, 8):
            g = parse_graph(f"{fam}:{n}")
            d = lhv_bound(g)
            rows.append((fam, n, d, lhv_threshold(g, level=2, d=d)))
    return header, rows


def _cmd_figs(args):
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    header, rows = _fig_rows(args.target, args.threads)
    path = out_dir / f"{args.target}.csv"
    lines = [header]
    for row in rows:
        lines.append(",".join(_value_text(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    _emit_json({"written": str(path)})
    return 0


# ------------------------------------------------------------------ parser

def _add_common(sub, *, graph=True, p=False, level=None, tol=None):
    if graph:
        sub.add_argument("--graph", required=True,
                         help="graph spec: family:size, file:PATH, or JSON")
    if p:
        sub.add_argument("--p", type=float, required=True,
                         help="randomness parameter in [0, 1]")
    if level is not None:
        sub.add_argument("--level", default=level,
                         help="overlap truncation: 'exact' or an integer")
    if tol is not None:
        sub.add_argument("--tol", type=float, default=tol)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgstates",
        description="Randomized graph states: entanglement and nonlocality diagnostics.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("overlap", help="randomization overlap at one p")
    _add_common(sub, p=True, level="exact")
    sub.set_defaults(handler=_cmd_overlap)

    sub = commands.add_parser("witness", help="GME witness value at one p")
    _add_common(sub, p=True, level="exact")
    sub.set_defaults(handler=_cmd_witness)

    sub = commands.add_parser("threshold", help="GME threshold p_w or p_F")
    _add_common(sub, level="exact", tol=DEFAULT_THRESHOLD_TOL)
    sub.set_defaults(handler=_cmd_threshold)

    sub = commands.add_parser("lhv-bound", help="classical Bell bound D(G)")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_lhv_bound)

    sub = commands.add_parser("lhv-threshold", help="LHV-violation threshold")
    _add_common(sub, level="2", tol=DEFAULT_THRESHOLD_TOL)
    sub.add_argument("--lhv-bound", type=float, default=None,
                     help="externally known D(G); computed when omitted")
    sub.set_defaults(handler=_cmd_lhv_threshold)

    sub = commands.add_parser("negativity", help="negativity across a bipartition")
    _add_common(sub, p=True)
    sub.add_argument("--bipartition", required=True, help="e.g. 0,1|2,3")
    sub.add_argument("--dump-matrix", default=None,
                     help="write the density matrix to BASE.csv/BASE.json")
    sub.set_defaults(handler=_cmd_negativity)

    sub = commands.add_parser("rank", help="numerical rank of the randomized state")
    _add_common(sub, p=True, tol=RANK_TOL)
    sub.add_argument("--dump-matrix", default=None,
                     help="write the density matrix to BASE.csv/BASE.json")
    sub.set_defaults(handler=_cmd_rank)

    sub = commands.add_parser("dim", help="dimension of the subgraph state space")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_dim)

    sub = commands.add_parser("cover", help="minimum vertex cover size")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_cover)

    sub = commands.add_parser("sample", help="Monte Carlo preparation samples")
    _add_common(sub, p=True)
    sub.add_argument("--shots", type=int, default=10000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub.set_defaults(handler=_cmd_sample)

    sub = commands.add_parser("sweep", help="p-grid sweep of one quantity")
    _add_common(sub, level="exact", tol=RANK_TOL)
    sub.add_argument("--quantity", required=True, choices=QUANTITIES)
    sub.add_argument("--p-grid", required=True, help="START:STOP:STEP, inclusive")
    sub.add_argument("--bipartition", default=None)
    sub.add_argument("--lhv-bound", type=float, default=None)
    sub.add_argument("--out", choices=("json", "csv"), default="csv")
    sub.set_defaults(handler=_cmd_sweep)

    sub = commands.add_parser("figs", help="regenerate figure datasets")
    sub.add_argument("--target", required=True, choices=FIG_TARGETS)
    sub.add_argument("--out-dir", default=".")
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub.set_defaults(handler=_cmd_figs)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (GraphSpecError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app():
    raise SystemExit(main())
