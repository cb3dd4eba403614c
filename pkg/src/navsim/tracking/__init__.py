"""Path tracking: PID speed control, rear-wheel steering feedback, linear MPC."""

from navsim.tracking.mpc import (
    MpcParams,
    linearize_bicycle,
    mpc_track_step,
    reference_window,
)
from navsim.tracking.path import ReferencePath, Waypoint, nearest_path_point
from navsim.tracking.pid import PidState, pid_step
from navsim.tracking.qp import AdmmParams, Qp, qp_solve_admm
from navsim.tracking.rear_wheel import rear_wheel_feedback

__all__ = [
    "AdmmParams",
    "MpcParams",
    "PidState",
    "Qp",
    "ReferencePath",
    "Waypoint",
    "linearize_bicycle",
    "mpc_track_step",
    "nearest_path_point",
    "pid_step",
    "qp_solve_admm",
    "rear_wheel_feedback",
    "reference_window",
]
