"""Model parameters and the fixed two-qubit basis conventions.

Basis order everywhere in this package: (up-up, up-down, down-up, down-down).
Energies share one arbitrary unit with hbar = 1; angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """The four physical knobs of the rotating-field two-qubit XXZ model.

    j_x is the XY exchange energy, j_z the Ising exchange energy, b0 the
    field energy per spin (mu*B/2), and theta the polar angle of the field
    rotation axis.
    """

    j_x: float
    j_z: float
    b0: float
    theta: float

    def __post_init__(self):
        for name in ("j_x", "j_z", "b0", "theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.b0 < 0:
            raise ValueError(f"b0 must be >= 0, got {self.b0}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def j(self) -> float:
        """Exchange anisotropy J = j_x - j_z.

        The shifted triplet energies depend on the exchange couplings only
        through this difference.
        """
        return self.j_x - self.j_z

    @property
    def scale(self) -> float:
        """Reference energy for relative tolerances: max(|j_x|, |j_z|, b0, 1)."""
        return max(abs(self.j_x), abs(self.j_z), self.b0, 1.0)


def singlet_state() -> np.ndarray:
    """The spin singlet (|ud> - |du>)/sqrt(2), an eigenstate for every parameter set."""
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=np.complex128) / math.sqrt(2.0)
