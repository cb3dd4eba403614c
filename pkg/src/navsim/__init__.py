"""navsim: reference implementations of autonomous-navigation algorithms.

Subpackages mirror the five technical categories plus the shared kernel and
the simulation harness:

- ``navsim.core``: angles, RNG, dense linalg, motion/observation models
- ``navsim.localization``: EKF, particle filter, histogram filter
- ``navsim.mapping``: log-odds occupancy grid, k-means clustering
- ``navsim.slam``: EKF-SLAM, FastSLAM 2.0
- ``navsim.planning``: grid search, potential field, RRT*, LQR-RRT*
- ``navsim.tracking``: PID, rear-wheel feedback, ADMM QP, linear MPC
- ``navsim.sim``: deterministic scenario runner, CSV/SVG/PGM emitters, CLI
"""

__version__ = "0.1.0"
