"""Command-line entry point.

Every command prints its numeric results to stdout as CSV rows under the
fixed report header. Exit status: 0 on success, 1 on usage errors, 2 on
runtime errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import generators
from .bench import bench_convergence, measure, plot_sweep
from .continuous import (
    avg_straightness_edge_edge,
    avg_straightness_edge_graph,
    avg_straightness_graph,
    avg_straightness_point_edge,
    avg_straightness_point_graph,
)
from .discrete import sigma_theta_graph, sigma_theta_vertex
from .errors import StraightEdgeError
from .io import MetricReport, export_csv, load_graph, write_csv_rows, write_graphml
from .paths import DEFAULT_MEMORY_BUDGET, Mode, make_provider
from .points import straightness_points
from .quadrature import QuadratureConfig
from .render import render_svg


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _edge(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.replace("-", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an edge as 'u,v', got {text!r}") from None
    return a, b


def _thetas(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser, discrete: bool = True) -> None:
    p.add_argument("--graph", required=True, help="GraphML file with x/y node data")
    p.add_argument("--distances", choices=[m.value for m in Mode], default=Mode.ON_DEMAND.value)
    p.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET,
                   help="bytes allowed for a precomputed distance table")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--output", help="also write the CSV rows to this file")
    if discrete:
        p.add_argument("--mode", choices=["continuous", "discrete"], default="continuous")
        p.add_argument("--theta", type=int, help="average edge segmentation (discrete mode)")
        p.add_argument("--scheme", choices=["length", "uniform"], default="length")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="straightedge", description="Continuous and discrete average Straightness.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a generated graph as GraphML")
    gen.add_argument("family", choices=["grid", "planar", "er", "radio"])
    gen.add_argument("--k", type=int, default=5, help="grid side")
    gen.add_argument("--n", type=int, default=25, help="vertex count (planar, er)")
    gen.add_argument("--p", type=float, default=0.1, help="edge probability (er)")
    gen.add_argument("--spokes", type=int, default=8)
    gen.add_argument("--rings", type=int, default=3)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    vs = sub.add_parser("vertex-straightness", help="S_G(p) or S_uv(p) for a vertex, or sigma_theta(u)")
    _common(vs)
    vs.add_argument("--vertex", type=int, required=True)
    vs.add_argument("--target", type=_edge, help="restrict to one target edge 'u,v' (continuous)")

    es = sub.add_parser("edge-straightness", help="S_G(e) or S_e2(e1) for an edge")
    _common(es, discrete=False)
    es.add_argument("--edge", type=_edge, required=True)
    es.add_argument("--target", type=_edge)
    es.add_argument("--exclude-self", action="store_true")

    gs = sub.add_parser("graph-straightness", help="S_G(G) or sigma_theta(G)")
    _common(gs)
    gs.add_argument("--exclude-same-edge", action="store_true")

    sw = sub.add_parser("sweep", help="sigma_theta over a list of theta against the continuous value")
    _common(sw, discrete=False)
    sw.add_argument("--thetas", type=_thetas, default=[1, 2, 5, 10, 20, 50])
    sw.add_argument("--vertex", type=int, help="compare vertex variants instead of whole graph")
    sw.add_argument("--scheme", choices=["length", "uniform"], default="length")
    sw.add_argument("--plot", help="PNG file for the convergence figure")

    rd = sub.add_parser("render", help="draw per-vertex or per-edge values as SVG")
    _common(rd, discrete=False)
    rd.add_argument("--measure", required=True,
                    choices=["point-point", "point-edge", "point-graph", "edge-edge", "edge-graph"])
    rd.add_argument("--anchor", help="anchor vertex 'v' or edge 'u,v'")
    rd.add_argument("--out", required=True)
    return parser


def _qc(args) -> QuadratureConfig:
    return QuadratureConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _emit(reports: list[MetricReport], args) -> None:
    write_csv_rows(reports, sys.stdout)
    if getattr(args, "output", None):
        export_csv(reports, args.output)


def _cmd_generate(args) -> list[MetricReport]:
    if args.family == "grid":
        g = generators.square_grid(args.k)
    elif args.family == "planar":
        g = generators.random_planar(args.n, args.seed)
    elif args.family == "er":
        g = generators.spatial_erdos_renyi(args.n, args.p, args.seed)
    else:
        g = generators.radio_concentric(args.spokes, args.rings)
    write_graphml(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m}", file=sys.stderr)
    return []


def _need_theta(args, parser_error) -> None:
    if args.mode == "discrete" and args.theta is None:
        parser_error("--mode discrete requires --theta")
    if args.mode == "discrete" and args.theta < 0:
        parser_error("--theta must be non-negative")


def _cmd_vertex(args) -> list[MetricReport]:
    g = load_graph(args.graph)
    u = args.vertex
    g.coord(u)
    if args.mode == "discrete":
        m = measure(lambda: sigma_theta_vertex(g, u, args.theta, args.distances, args.scheme,
                                               args.memory_budget))
        name = "sigma" if args.theta <= 1 else "sigma_theta"
        return [MetricReport(name, f"vertex:{u}", m.value, m.wall_time, m.peak_memory,
                             theta=args.theta, mode=args.distances)]
    dp = make_provider(g, args.distances, args.memory_budget)
    p = g.vertex_point(u)
    if args.target is not None:
        m = measure(lambda: avg_straightness_point_edge(g, dp, p, args.target, _qc(args)))
        target = f"vertex:{u}->edge:{args.target[0]}-{args.target[1]}"
        return [MetricReport("S_uv(p)", target, m.value, m.wall_time, m.peak_memory, mode=args.distances)]
    m = measure(lambda: avg_straightness_point_graph(g, dp, p, _qc(args)))
    return [MetricReport("S_G(p)", f"vertex:{u}", m.value, m.wall_time, m.peak_memory, mode=args.distances)]


def _cmd_edge(args) -> list[MetricReport]:
    g = load_graph(args.graph)
    dp = make_provider(g, args.distances, args.memory_budget)
    e = args.edge
    label = f"edge:{min(e)}-{max(e)}"
    if args.target is not None:
        m = measure(lambda: avg_straightness_edge_edge(g, dp, e, args.target, _qc(args)))
        t = args.target
        return [MetricReport("S_e2(e1)", f"{label}->edge:{min(t)}-{max(t)}", m.value,
                             m.wall_time, m.peak_memory, mode=args.distances)]
    m = measure(lambda: avg_straightness_edge_graph(g, dp, e, not args.exclude_self, _qc(args)))
    return [MetricReport("S_G(e)", label, m.value, m.wall_time, m.peak_memory, mode=args.distances)]


def _cmd_graph(args) -> list[MetricReport]:
    g = load_graph(args.graph)
    if args.mode == "discrete":
        m = measure(lambda: sigma_theta_graph(g, args.theta, args.distances, args.scheme, args.memory_budget))
        name = "sigma" if args.theta <= 1 else "sigma_theta"
        return [MetricReport(name, "graph", m.value, m.wall_time, m.peak_memory,
                             theta=args.theta, mode=args.distances)]
    dp = make_provider(g, args.distances, args.memory_budget)
    m = measure(lambda: avg_straightness_graph(g, dp, not args.exclude_same_edge, _qc(args)))
    return [MetricReport("S_G(G)", "graph", m.value, m.wall_time, m.peak_memory, mode=args.distances)]


def _cmd_sweep(args) -> list[MetricReport]:
    g = load_graph(args.graph)
    res = bench_convergence(g, args.vertex, args.thetas, _qc(args), args.distances, args.scheme,
                            args.memory_budget)
    target = "graph" if args.vertex is None else f"vertex:{args.vertex}"
    ref_name = "S_G(G)" if args.vertex is None else "S_G(p)"
    reports = [MetricReport(ref_name, target, res.reference, res.reference_time, max(res.memory, default=1),
                            mode=args.distances)]
    for theta, value, t, mem in zip(res.thetas, res.sigma, res.times, res.memory):
        reports.append(MetricReport("sigma_theta", target, value, t, mem, theta=theta, mode=args.distances))
    if args.plot:
        plot_sweep(res, args.plot)
    return reports


def _parse_anchor(text: str | None):
    if text is None:
        return None
    if "," in text or "-" in text:
        return _edge(text)
    return int(text)


def _cmd_render(args, parser_error) -> list[MetricReport]:
    g = load_graph(args.graph)
    dp = make_provider(g, args.distances, args.memory_budget)
    qc = _qc(args)
    try:
        anchor = _parse_anchor(args.anchor)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        parser_error(str(exc))
    wants_vertex = args.measure in ("point-point", "point-edge")
    wants_edge = args.measure == "edge-edge"
    if wants_vertex and not isinstance(anchor, int):
        parser_error(f"--measure {args.measure} needs a vertex --anchor")
    if wants_edge and not isinstance(anchor, tuple):
        parser_error("--measure edge-edge needs an edge --anchor")

    keys = g.edge_keys()
    if args.measure == "point-point":
        p = g.vertex_point(anchor)
        values = [straightness_points(g, dp, p, g.vertex_point(v)) if g.degree(v) else 0.0
                  for v in range(g.n)]
        values[anchor] = 1.0
        per = "vertex"
    elif args.measure == "point-edge":
        p = g.vertex_point(anchor)
        values = [avg_straightness_point_edge(g, dp, p, k, qc) for k in keys]
        per = "edge"
    elif args.measure == "point-graph":
        values = [avg_straightness_point_graph(g, dp, g.vertex_point(v), qc) if g.degree(v) else 0.0
                  for v in range(g.n)]
        per = "vertex"
    elif args.measure == "edge-edge":
        values = [avg_straightness_edge_edge(g, dp, anchor, k, qc) for k in keys]
        per = "edge"
    else:
        values = [avg_straightness_edge_graph(g, dp, k, True, qc) for k in keys]
        per = "edge"
    values = np.clip(values, 0.0, 1.0)
    render_svg(g, values, anchor, args.out, per)
    print(f"wrote {args.out}", file=sys.stderr)
    return []


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)

        def parser_error(msg):
            parser.error(msg)

        if args.command in ("vertex-straightness", "graph-straightness"):
            _need_theta(args, parser_error)
        handlers = {
            "generate": _cmd_generate,
            "vertex-straightness": _cmd_vertex,
            "edge-straightness": _cmd_edge,
            "graph-straightness": _cmd_graph,
            "sweep": _cmd_sweep,
        }
        if args.command == "render":
            reports = _cmd_render(args, parser_error)
        else:
            reports = handlers[args.command](args)
        if reports:
            _emit(reports, args)
        return 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:
        # --help exits through argparse with status 0.
        return int(exc.code or 0)
    except (StraightEdgeError, OSError, ValueError, MemoryError) as exc:
        print(f"straightedge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
