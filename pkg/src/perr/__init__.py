"""Solvers for package-exchange robot routing (PERR): RIP, Bubbletree,
sorting-network baselines and an exact oracle for tiny instances."""
from .baselines import odd_even_sort_plan, shearsort_plan
from .bubbletree import Balance, BubbleConfig, BubbleStats, bubbletree_solve, postprocess_redundancy
from .graph import Graph, Tree, bfs_shortest_path, bfs_spanning_tree, one_center
from .instances import Instance, GridMap, load_instance, parse_grid_map, parse_scenario
from .oracle import optimal_makespan
from .rip import ChainPolicy, Mode, RipConfig, RipStats, rip_solve
from .validate import Plan, PlanMetrics, validate_plan

__all__ = [
    "Balance", "BubbleConfig", "BubbleStats", "ChainPolicy", "Graph", "GridMap", "Instance",
    "Mode", "Plan", "PlanMetrics", "RipConfig", "RipStats", "Tree", "bfs_shortest_path",
    "bfs_spanning_tree", "bubbletree_solve", "load_instance", "odd_even_sort_plan",
    "one_center", "optimal_makespan", "parse_grid_map", "parse_scenario",
    "postprocess_redundancy", "rip_solve", "shearsort_plan", "validate_plan",
]
