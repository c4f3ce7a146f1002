"""Random geometric graphs on the unit cube: models, connectivity
thresholds, obstacle environments, sampling-based planners, and the
experiment harness tying them together."""

from .analysis import (AxisBox, ComponentLabeling, OccupancyReport,
                       connected_components, graph_distances,
                       largest_component_deficit, restrict_to_region,
                       shortest_path, stretch, subgraph_on_vertices,
                       tessellation_occupancy)
from .environment import (Environment, collision_free_segment, free_volume,
                          geodesic_estimate, is_free, load_environment,
                          make_toy_scenario, save_environment)
from .experiments import (ExperimentSpec, Row, calibrate_radius,
                          mean_degree_target, run_experiment, trial_seed,
                          write_csv)
from .geometry import (PointSet, Thresholds, bluetooth_threshold,
                       connection_radius, sample_uniform, thresholds,
                       unit_ball_volume)
from .integrals import (IntegralEstimate, classify_region, estimate_In,
                        inner_integral, interior_inner_integral, region_volume)
from .models import (Bluetooth, Constant, ConnectionModel, Custom, Disk,
                     Embedded, GeometricGraph, GridIndex, LinearDecay, PhiSpec,
                     Soft, build_graph, build_grid_index, phi_values,
                     radius_neighbors, read_graph_dump, soft_phi,
                     write_graph_dump)
from .planners import (QueryResult, Roadmap, build_roadmap, default_gamma,
                       default_model, path_length, query, save_roadmap)

__version__ = "0.1.0"
