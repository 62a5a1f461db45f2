"""GraphML and CSV graph ingestion, GraphML export, and metric reports."""

from __future__ import annotations

import csv
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import IoError, MissingCoordinateAttribute, ParseError
from .graph import SpatialGraph, build_graph

CSV_HEADER = ("measure", "target", "value", "theta", "time_s", "peak_mem_bytes", "seed", "mode")
MEASURES = ("S_uv(p)", "S_G(p)", "S_e2(e1)", "S_G(e)", "S_G(G)", "sigma", "sigma_theta")

_NS = "http://graphml.graphdrawing.org/xmlns"


@dataclass
class ImportStats:
    duplicate_edges: int = 0
    zero_length_edges: int = 0
    self_loops: int = 0

    @property
    def warnings(self) -> int:
        return self.duplicate_edges + self.zero_length_edges + self.self_loops


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _clean_edges(coords: np.ndarray, pairs, stats: ImportStats) -> list[tuple[int, int]]:
    """Drop loops, repeats and zero-length edges, counting each kind."""
    seen = set()
    kept = []
    for a, b in pairs:
        if a == b:
            stats.self_loops += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            stats.duplicate_edges += 1
            continue
        if np.array_equal(coords[a], coords[b]):
            stats.zero_length_edges += 1
            continue
        seen.add(key)
        kept.append(key)
    return kept


def read_graphml(path) -> tuple[SpatialGraph, ImportStats]:
    """Parse a GraphML file whose nodes carry numeric ``x`` and ``y`` data."""
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None

    keys = {}
    for el in root.iter():
        if _local(el.tag) == "key" and el.get("for", "node") in ("node", "all"):
            keys[el.get("id")] = el.get("attr.name", el.get("id"))
    graph_el = next((el for el in root.iter() if _local(el.tag) == "graph"), None)
    if graph_el is None:
        raise ParseError(f"{path}: no <graph> element")

    ids: dict[str, int] = {}
    coords = []
    raw_edges = []
    for el in graph_el:
        tag = _local(el.tag)
        if tag == "node":
            node_id = el.get("id")
            if node_id is None or node_id in ids:
                raise ParseError(f"{path}: missing or repeated node id {node_id!r}")
            data = {keys.get(d.get("key"), d.get("key")): (d.text or "").strip()
                    for d in el if _local(d.tag) == "data"}
            xy = []
            for name in ("x", "y"):
                if name not in data:
                    raise MissingCoordinateAttribute(f"{path}: node {node_id!r} has no {name!r}")
                try:
                    value = float(data[name])
                except ValueError:
                    raise ParseError(f"{path}: node {node_id!r} has non-numeric {name!r}") from None
                if not math.isfinite(value):
                    raise ParseError(f"{path}: node {node_id!r} has non-finite {name!r}")
                xy.append(value)
            ids[node_id] = len(coords)
            coords.append(xy)
        elif tag == "edge":
            raw_edges.append((el.get("source"), el.get("target")))

    pairs = []
    for s, t in raw_edges:
        if s not in ids or t not in ids:
            raise ParseError(f"{path}: edge ({s}, {t}) references an unknown node")
        pairs.append((ids[s], ids[t]))
    coords = np.array(coords, dtype=float).reshape(-1, 2)
    stats = ImportStats()
    edges = _clean_edges(coords, pairs, stats)
    return build_graph(coords, edges, {"source": str(path)}), stats


def import_graphml(path) -> SpatialGraph:
    g, stats = read_graphml(path)
    g.meta["warnings"] = stats.warnings
    g.meta["duplicate_edges"] = stats.duplicate_edges
    g.meta["zero_length_edges"] = stats.zero_length_edges
    return g


def write_graphml(g: SpatialGraph, path) -> None:
    """Write ``g`` as GraphML with ``x``/``y`` node data in full precision."""
    ET.register_namespace("", _NS)
    root = ET.Element(f"{{{_NS}}}graphml")
    for name in ("x", "y"):
        ET.SubElement(root, f"{{{_NS}}}key", {"id": name, "for": "node",
                                              "attr.name": name, "attr.type": "double"})
    graph_el = ET.SubElement(root, f"{{{_NS}}}graph", {"id": "G", "edgedefault": "undirected"})
    for i, (x, y) in enumerate(g.coords.tolist()):
        node = ET.SubElement(graph_el, f"{{{_NS}}}node", {"id": f"n{i}"})
        ET.SubElement(node, f"{{{_NS}}}data", {"key": "x"}).text = repr(x)
        ET.SubElement(node, f"{{{_NS}}}data", {"key": "y"}).text = repr(y)
    for u, v in g.edges.tolist():
        ET.SubElement(graph_el, f"{{{_NS}}}edge", {"source": f"n{u}", "target": f"n{v}"})
    ET.indent(root)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)


def import_csv_edgelist(vertex_path, edge_path) -> SpatialGraph:
    """Read an ``x,y`` vertex file and a ``u,v`` edge file (0-based rows)."""
    try:
        with open(vertex_path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        coords = np.array([[float(r["x"]), float(r["y"])] for r in rows], dtype=float).reshape(-1, 2)
        with open(edge_path, newline="", encoding="utf-8") as fh:
            pairs = [(int(r["u"]), int(r["v"])) for r in csv.DictReader(fh)]
    except KeyError as exc:
        raise MissingCoordinateAttribute(f"missing column {exc}") from None
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from None
    stats = ImportStats()
    g = build_graph(coords, _clean_edges(coords, pairs, stats), {"source": str(vertex_path)})
    g.meta["warnings"] = stats.warnings
    return g


def load_graph(path) -> SpatialGraph:
    return import_graphml(path)


@dataclass
class MetricReport:
    measure: str
    target: str
    value: float
    wall_time: float = 0.0
    peak_memory: int = 1
    theta: float | None = None
    seed: int | None = None
    mode: str = ""
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")

    def row(self) -> list[str]:
        return [self.measure, self.target, repr(float(self.value)),
                "" if self.theta is None else repr(self.theta),
                repr(float(self.wall_time)), str(int(self.peak_memory)),
                "" if self.seed is None else str(self.seed), self.mode]


def write_csv_rows(reports, fh, header: bool = True) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(r.row())


def export_csv(reports, path) -> None:
    """One row per report under the fixed header; UTF-8 with LF endings."""
    if isinstance(reports, MetricReport):
        reports = [reports]
    try:
        with open(Path(path), "w", newline="", encoding="utf-8") as fh:
            write_csv_rows(reports, fh)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_csv(path) -> list[MetricReport]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ParseError(f"{path}: unexpected header {reader.fieldnames}")
        return [MetricReport(
            measure=r["measure"], target=r["target"], value=float(r["value"]),
            theta=float(r["theta"]) if r["theta"] else None,
            wall_time=float(r["time_s"]), peak_memory=int(r["peak_mem_bytes"]),
            seed=int(r["seed"]) if r["seed"] else None, mode=r["mode"],
        ) for r in reader]
