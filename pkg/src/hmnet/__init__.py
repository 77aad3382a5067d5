"""Hierarchically modular constraint networks and MAX-IFF search benchmarks."""
from .degrees import DegreeList, sample_normal_ndl, sample_powerlaw_ndl, validate_degree_list
from .experiment import ExperimentPlan, NdlSpec, generate_instance, run_experiment, write_report
from .errors import ConstructionError, HmnetError, InfeasibleError, ParameterError, UndefinedMetricError
from .graph import Graph, from_degree_list, is_connected, switch_randomize
from .iff import Genotype, IffProblem, fitness, fitness_delta
from .metrics import modularity_q, network_metrics, q2, q_levels
from .modularize import ModularizeConfig, modularize, modularize_detailed
from .search import SearchConfig, ga, mmhc, rmhc, run_algorithm
from .topology import DecompositionTopology, average_edge_distance, build_topology, edge_distance

__version__ = "0.1.0"
