"""PID with output clamping and conditional-integration anti-windup."""

import math
from dataclasses import dataclass, replace

from navsim.errors import InvalidInput


@dataclass(frozen=True)
class PidState:
    kp: float
    ki: float
    kd: float
    integral: float = 0.0
    prev_error: float = 0.0
    u_min: float = -math.inf
    u_max: float = math.inf

    def __post_init__(self):
        if not self.u_min < self.u_max:
            raise InvalidInput(f"need u_min < u_max, got [{self.u_min}, {self.u_max}]")


def pid_step(s: PidState, error: float, dt: float) -> tuple[float, PidState]:
    """One controller step; returns the clamped output and the updated state.

    The integral tentatively accumulates error*dt before the output is
    formed; if the raw output falls outside [u_min, u_max] that accumulation
    is discarded (the integral freezes) while the output is clamped.
    """
    if not dt > 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    tentative = s.integral + error * dt
    u_raw = s.kp * error + s.ki * tentative + s.kd * (error - s.prev_error) / dt
    if u_raw < s.u_min:
        return s.u_min, replace(s, prev_error=error)
    if u_raw > s.u_max:
        return s.u_max, replace(s, prev_error=error)
    return u_raw, replace(s, integral=tentative, prev_error=error)
