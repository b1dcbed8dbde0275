"""Small angle helpers used by the phase comparisons."""

import math


def wrap_angle(x: float) -> float:
    """Map x to the principal branch (-pi, pi]."""
    y = math.atan2(math.sin(x), math.cos(x))
    if y <= -math.pi:
        y = math.pi
    return y


def angular_distance(x: float, y: float) -> float:
    """Minimal distance between two angles, immune to the +-pi boundary."""
    return abs(wrap_angle(x - y))
