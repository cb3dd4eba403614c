"""Localization filters: EKF with GNSS fixes, particle filter, histogram filter."""

from navsim.localization.ekf import EkfBelief, ekf_predict, ekf_update
from navsim.localization.histogram import (
    HistogramBelief,
    hf_predict,
    hf_update,
    motion_kernel,
)
from navsim.localization.particle import (
    Particle,
    ParticleSet,
    effective_sample_size,
    estimate,
    gaussian_pdf,
    mean_pose,
    pf_step,
    resample_low_variance,
    systematic_indices,
)

__all__ = [
    "EkfBelief",
    "HistogramBelief",
    "Particle",
    "ParticleSet",
    "effective_sample_size",
    "ekf_predict",
    "ekf_update",
    "estimate",
    "gaussian_pdf",
    "hf_predict",
    "hf_update",
    "mean_pose",
    "motion_kernel",
    "pf_step",
    "resample_low_variance",
    "systematic_indices",
]
