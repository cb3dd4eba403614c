"""Deterministic random streams built on the splitmix64 recurrence.

Streams are immutable values: every draw returns the sample together with
the advanced stream, so a run replays bit-identically from its seed and the
sequence is portable across implementations of the same recurrence.
"""

import math
from dataclasses import dataclass

from navsim.errors import InvalidInput

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RngStream:
    """State of a splitmix64 stream (64-bit unsigned)."""

    state: int = 0

    def __post_init__(self):
        object.__setattr__(self, "state", int(self.state) & _MASK64)


def next_u64(s: RngStream) -> tuple[int, RngStream]:
    """Draw one 64-bit value and return it with the advanced stream."""
    state = (s.state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z ^= z >> 31
    return z, RngStream(state)


def uniform(s: RngStream) -> tuple[float, RngStream]:
    """Uniform double in [0, 1) using the top 53 bits of one draw."""
    bits, s = next_u64(s)
    return (bits >> 11) * _INV_2_53, s


def box_muller(u1: float, u2: float) -> float:
    """Standard-normal deviate from uniforms u1 in (0, 1], u2 in [0, 1)."""
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)


def gauss(s: RngStream, mean: float = 0.0, std: float = 1.0) -> tuple[float, RngStream]:
    """Gaussian draw via Box-Muller; consumes exactly two u64 draws.

    std == 0 returns ``mean`` exactly (the normal deviate is still drawn so
    the stream advances the same way regardless of std).
    """
    if std < 0:
        raise InvalidInput(f"std must be >= 0, got {std}")
    bits1, s = next_u64(s)
    bits2, s = next_u64(s)
    u1 = ((bits1 >> 11) + 1) * _INV_2_53  # (0, 1]: log stays finite
    u2 = (bits2 >> 11) * _INV_2_53  # [0, 1)
    return mean + std * box_muller(u1, u2), s


def split_substream(s: RngStream, index: int) -> RngStream:
    """Independent substream for worker ``index``, derived from one draw of ``s``.

    Callers that need n substreams draw the base once and XOR in each index,
    so a parallel evaluation is bit-identical to the sequential one.
    """
    base, _ = next_u64(s)
    return RngStream(base ^ index)
