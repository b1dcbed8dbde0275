"""Time-domain check of the Berry phase: integrate one slow field rotation.

The geometric phase is extracted as total minus dynamical phase, which needs
no gauge smoothing; it matches the analytic value modulo 2 pi as the drive
frequency goes to zero.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels, oracle, spectrum
from .angles import wrap_angle
from .errors import (
    AdiabaticityViolation,
    AdiabaticityWarning,
    DegenerateSpectrum,
    StepUnderflow,
)
from .model import ModelParams

FIDELITY_THRESHOLD = 0.9
MAX_DT_NORM = 0.1           # StepUnderflow above this dt * max|E|
DEFAULT_DT_NORM = 0.006     # default step budget targets dt * max|E| <= this
DEFAULT_OMEGA_REL = 1e-3    # default drive: omega = 1e-3 * scale
GAP_WARN_FACTOR = 0.01      # warn when omega > 0.01 * min gap


@dataclass(frozen=True)
class AdiabaticSchedule:
    """One full rotation phi(t) = omega t from 0 to 2 pi in `steps` RK4 steps."""

    omega: float
    steps: int

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.steps < 1000:
            raise ValueError(f"steps must be >= 1000, got {self.steps}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True)
class EvolutionResult:
    """Outcome of one period of driven evolution for one level.

    total_phase is arg<psi(0)|psi(T)>, dynamical_phase is -int <psi|H|psi> dt,
    fidelity is |<Psi_n(T)|psi(T)>| against the instantaneous eigenstate
    (which equals the initial one after a full loop), min_gap the smallest
    spectral gap of the tracked level, and norm_correction the summed
    per-step renormalization magnitude.
    """

    level: int
    omega: float
    steps: int
    final_state: np.ndarray
    dynamical_phase: float
    total_phase: float
    fidelity: float
    min_gap: float
    norm_correction: float
    adiabaticity_violated: bool
    gap_warning: bool


def default_schedule(params: ModelParams, omega: float | None = None,
                     steps: int | None = None) -> AdiabaticSchedule:
    """Schedule defaults: omega = 1e-3 * scale, steps from dt * max|E| <= 0.008."""
    if omega is None:
        omega = DEFAULT_OMEGA_REL * params.scale
    if steps is None:
        emax = max(abs(e) for e in spectrum.eigenvalues(params))
        period = 2.0 * math.pi / omega
        steps = max(1000, math.ceil(period * max(emax, 1e-300) / DEFAULT_DT_NORM))
    return AdiabaticSchedule(omega=omega, steps=steps)


def _level_min_gap(params: ModelParams, n: int) -> float:
    energies = spectrum.eigenvalues(params)
    return min(abs(energies[m] - energies[n]) for m in range(4) if m != n)


def evolve(params: ModelParams, sched: AdiabaticSchedule, n: int) -> EvolutionResult:
    """Integrate i dpsi/dt = H(t) psi over one period from eigenstate n.

    Raises DegenerateSpectrum for a degenerate level and StepUnderflow when
    dt * max|E| >= 0.1; emits AdiabaticityWarning when omega is not small
    against the level's gap.  A fidelity below 0.9 flags the result instead
    of raising, so diagnostics stay inspectable.
    """
    if n not in (0, 1, 2, 3):
        raise ValueError(f"level index must be in 0..3, got {n}")

    min_gap = _level_min_gap(params, n)
    if min_gap < 1e-8 * params.scale:
        raise DegenerateSpectrum(
            f"level {n} gap {min_gap:.3e} below tolerance; adiabatic theorem inapplicable"
        )

    emax = max(abs(e) for e in spectrum.eigenvalues(params))
    dt = sched.period / sched.steps
    if dt * emax >= MAX_DT_NORM:
        raise StepUnderflow(
            f"dt * max|E| = {dt * emax:.3f} >= {MAX_DT_NORM}; increase steps"
        )

    gap_warning = sched.omega > GAP_WARN_FACTOR * min_gap
    if gap_warning:
        warnings.warn(
            f"omega = {sched.omega:.3e} exceeds {GAP_WARN_FACTOR} * gap "
            f"({min_gap:.3e}); evolution may not be adiabatic",
            AdiabaticityWarning,
            stacklevel=2,
        )

    psi0 = spectrum.eigenstate(params, n, phi=0.0)
    h_static, h_cos, h_sin = oracle.field_decomposition(params)
    psi_t, dyn_phase, norm_corr = _kernels.rk4_evolve(
        h_static, h_cos, h_sin, psi0, sched.omega, sched.steps
    )

    overlap = complex(psi0.conj() @ psi_t)
    fidelity = abs(overlap)
    total_phase = math.atan2(overlap.imag, overlap.real)

    return EvolutionResult(
        level=n,
        omega=sched.omega,
        steps=sched.steps,
        final_state=psi_t,
        dynamical_phase=dyn_phase,
        total_phase=total_phase,
        fidelity=fidelity,
        min_gap=min_gap,
        norm_correction=norm_corr,
        adiabaticity_violated=fidelity < FIDELITY_THRESHOLD,
        gap_warning=gap_warning,
    )


def geometric_phase(result: EvolutionResult) -> float:
    """Total minus dynamical phase, wrapped to (-pi, pi].

    Converges to the analytic Berry phase modulo 2 pi as omega -> 0; raises
    AdiabaticityViolation when the run lost the eigenstate.
    """
    if result.adiabaticity_violated:
        raise AdiabaticityViolation(
            f"fidelity {result.fidelity:.4f} below {FIDELITY_THRESHOLD}; "
            "geometric phase unreliable"
        )
    return wrap_angle(result.total_phase - result.dynamical_phase)
