"""Timing and memory metering, and the discrete-vs-continuous convergence sweep."""

from __future__ import annotations

import resource
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .continuous import DEFAULT_QC, avg_straightness_graph, avg_straightness_point_graph
from .discrete import segment_graph, sigma_graph, sigma_vertex
from .graph import SpatialGraph
from .paths import DEFAULT_MEMORY_BUDGET, Mode, make_provider
from .quadrature import QuadratureConfig


def peak_memory_bytes() -> int:
    """Process-wide resident-set high-water mark."""
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # Linux reports kibibytes, macOS bytes.
    return int(peak if sys.platform == "darwin" else peak * 1024)


@dataclass
class Measured:
    value: float
    wall_time: float
    peak_memory: int


def measure(fn: Callable[[], float]) -> Measured:
    start = time.perf_counter()
    value = fn()
    elapsed = time.perf_counter() - start
    return Measured(float(value), elapsed, peak_memory_bytes())


@dataclass
class SweepResult:
    thetas: list
    sigma: list = field(default_factory=list)
    reference: float = float("nan")
    reference_time: float = 0.0
    times: list = field(default_factory=list)
    memory: list = field(default_factory=list)
    vertex_counts: list = field(default_factory=list)
    edge_counts: list = field(default_factory=list)
    vertex: int | None = None

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.thetas, self.thetas[1:])):
            raise ValueError("thetas must be strictly increasing")

    @property
    def errors(self) -> np.ndarray:
        return np.abs(np.asarray(self.sigma) - self.reference)


def bench_convergence(g: SpatialGraph, u: int | None, thetas: Sequence[int],
                      qc: QuadratureConfig = DEFAULT_QC, dp_mode: Mode | str = Mode.ON_DEMAND,
                      scheme: str = "length", memory_budget: int = DEFAULT_MEMORY_BUDGET,
                      threads: int | None = None) -> SweepResult:
    """Compute sigma_theta for every theta and the continuous reference.

    With ``u`` given the vertex variants are compared, otherwise the
    whole-graph ones. Runs are executed one after another so timings are
    not disturbed by each other.
    """
    result = SweepResult(list(thetas), vertex=u)

    def reference() -> float:
        dp = make_provider(g, dp_mode, memory_budget)
        if u is None:
            return avg_straightness_graph(g, dp, qc=qc, threads=threads)
        return avg_straightness_point_graph(g, dp, g.vertex_point(u), qc)

    ref = measure(reference)
    result.reference, result.reference_time = ref.value, ref.wall_time

    for theta in result.thetas:
        holder = {}

        def run(theta=theta) -> float:
            sg = segment_graph(g, max(int(theta), 1), scheme)
            holder["sg"] = sg
            if u is None:
                dp = make_provider(sg.graph, dp_mode, memory_budget) if Mode(dp_mode) is Mode.PRECOMPUTED else None
                return sigma_graph(sg.graph, dp, threads)
            dp = make_provider(sg.graph, dp_mode, memory_budget)
            return sigma_vertex(sg.graph, sg.original(u), dp)

        m = measure(run)
        result.sigma.append(m.value)
        result.times.append(m.wall_time)
        result.memory.append(m.peak_memory)
        result.vertex_counts.append(holder["sg"].graph.n)
        result.edge_counts.append(holder["sg"].graph.m)
    return result


def plot_sweep(result: SweepResult, path) -> None:
    """Save sigma_theta against theta with the continuous reference line."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    thetas = np.maximum(np.asarray(result.thetas, dtype=float), 1.0)
    ax.plot(thetas, result.sigma, "o-", label="discrete")
    ax.axhline(result.reference, color="black", linestyle="--", label="continuous")
    ax.set_xscale("log")
    ax.set_xlabel("average edge segmentation")
    ax.set_ylabel("average straightness")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
