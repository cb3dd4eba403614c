"""Path planners: grid search, potential field, RRT*, and LQR-RRT*."""

from navsim.planning.grid_search import GridPath, GridWorld, path_cost, plan_grid
from navsim.planning.lqr_rrt import (
    LqrRrtParams,
    lqr_cost_metric,
    lqr_rrt_star_plan,
    lqr_steer,
)
from navsim.planning.potential import (
    PotentialParams,
    plan_potential_field,
    potential_value,
)
from navsim.planning.rrt_star import RrtParams, rrt_star_plan
from navsim.planning.tree import PlanTree, TreeNode

__all__ = [
    "GridPath",
    "GridWorld",
    "LqrRrtParams",
    "PlanTree",
    "PotentialParams",
    "RrtParams",
    "TreeNode",
    "lqr_cost_metric",
    "lqr_rrt_star_plan",
    "lqr_steer",
    "path_cost",
    "plan_grid",
    "plan_potential_field",
    "potential_value",
    "rrt_star_plan",
]
