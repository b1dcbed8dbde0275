"""Berry phase and concurrence of the eigenstates, and ratio sweeps linking them."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DegenerateSpectrum
from .model import ModelParams
from .spectrum import TripletSolution, triplet_solutions

AXIS_JX = "jx_over_b0"
AXIS_JZ = "jz_over_b0"


@dataclass(frozen=True)
class ObservableRecord:
    """Per-level observables: unwound Berry phase (radians) and concurrence.

    Degenerate levels keep their concurrence (well defined for the returned
    eigenvector, though not unique) but report berry = nan and are flagged.
    """

    n: int
    berry: float
    conc: float
    degenerate: bool = False
    fallback_used: bool = False


@dataclass(frozen=True)
class RelationCurve:
    """Observables along a strictly increasing coupling-ratio grid."""

    axis: str
    points: tuple  # of (ratio, (ObservableRecord for n = 0..3))


def berry_phase(sol: TripletSolution) -> float:
    """Unwound Berry phase 2 pi (a^2 - c^2) of one triplet level, in [-2pi, 2pi]."""
    if sol.degenerate:
        raise DegenerateSpectrum(
            f"level {sol.n} is degenerate; its Berry phase is undefined"
        )
    return 2.0 * math.pi * (sol.a**2 - sol.c**2)


def concurrence(sol: TripletSolution) -> float:
    """Concurrence |2 a c - b^2| of one triplet level."""
    return abs(2.0 * sol.a * sol.c - sol.b**2)


def singlet_record() -> ObservableRecord:
    """The singlet is maximally entangled and acquires no geometric phase."""
    return ObservableRecord(n=0, berry=0.0, conc=1.0)


def observables_for(params: ModelParams):
    """ObservableRecord for all four levels (n = 0 singlet, 1..3 triplets).

    Degenerate triplet levels get berry = nan instead of aborting the batch.
    """
    records = [singlet_record()]
    for sol in triplet_solutions(params):
        try:
            berry = berry_phase(sol)
        except DegenerateSpectrum:
            berry = float("nan")
        records.append(
            ObservableRecord(
                n=sol.n,
                berry=berry,
                conc=concurrence(sol),
                degenerate=sol.degenerate,
                fallback_used=sol.fallback_used,
            )
        )
    return records


def params_at_ratio(base: ModelParams, axis: str, ratio: float) -> ModelParams:
    """base with the swept coupling set to ratio * b0."""
    if axis == AXIS_JX:
        return replace(base, j_x=ratio * base.b0)
    if axis == AXIS_JZ:
        return replace(base, j_z=ratio * base.b0)
    raise ValueError(f"unknown axis {axis!r}")


def relation_curve(base: ModelParams, axis: str, ratios) -> RelationCurve:
    """Observables along a coupling-ratio grid, holding everything else fixed.

    Per-point degeneracies are flagged in the records rather than failing the
    sweep.
    """
    ratios = list(ratios)
    if not ratios:
        raise ValueError("ratio grid is empty")
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    if any(b <= a for a, b in zip(ratios, ratios[1:])):
        raise ValueError("ratios must be strictly increasing")
    points = tuple(
        (ratio, tuple(observables_for(params_at_ratio(base, axis, ratio))))
        for ratio in ratios
    )
    return RelationCurve(axis=axis, points=points)
