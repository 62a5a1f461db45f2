"""Continuous and discrete average Straightness on spatial graphs."""

from .auxfun import AuxParams, antiderivative_F, aux_f, make_params, route_params
from .bench import SweepResult, bench_convergence, plot_sweep
from .continuous import (
    avg_straightness_edge_edge,
    avg_straightness_edge_graph,
    avg_straightness_graph,
    avg_straightness_point_edge,
    avg_straightness_point_graph,
    total_straightness_edge_edge,
    total_straightness_point_edge,
)
from .discrete import SegmentedGraph, segment_graph, sigma_theta_graph, sigma_theta_vertex, sigma_vertex
from .errors import *  # noqa: F401,F403
from .generators import radio_concentric, random_planar, spatial_erdos_renyi, square_grid
from .graph import (
    Coord,
    EdgeKey,
    PointRef,
    SpatialGraph,
    build_graph,
    euclidean_between_points,
    euclidean_distance,
    point_coords,
)
from .io import MetricReport, export_csv, import_csv_edgelist, import_graphml, write_graphml
from .paths import DistanceProvider, Mode, make_provider
from .points import (
    break_even_point,
    break_even_vertex,
    graph_distance_points,
    graph_distance_vertex_point,
    straightness_points,
)
from .quadrature import QuadratureConfig
from .render import render_svg

__version__ = "0.1.0"
