"""Joint pose-and-map estimation: EKF-SLAM and FastSLAM 2.0, known correspondences."""

from navsim.slam.ekf_slam import (
    EkfSlamState,
    ekf_slam_step,
    inverse_observation_jacobians,
    landmark_init,
)
from navsim.slam.fastslam import (
    FastSlamParticle,
    LandmarkFilter,
    fastslam2_step,
    fastslam_estimate,
)

__all__ = [
    "EkfSlamState",
    "FastSlamParticle",
    "LandmarkFilter",
    "ekf_slam_step",
    "fastslam2_step",
    "fastslam_estimate",
    "inverse_observation_jacobians",
    "landmark_init",
]
