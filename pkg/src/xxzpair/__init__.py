"""Two exchange-coupled qubits in a slowly rotating magnetic field.

Closed-form eigensystem, Berry phases and concurrences, with independent
brute-force oracles (dense diagonalization, Wilson-loop phase, time-domain
adiabatic evolution) and a CLI front end.
"""

from .adiabatic import AdiabaticSchedule, EvolutionResult, default_schedule, evolve, geometric_phase
from .errors import (
    AdiabaticityViolation,
    AdiabaticityWarning,
    ConvergenceFailure,
    DegenerateInput,
    DegenerateSpectrum,
    NormError,
    NotARoot,
    StepUnderflow,
    XxzPairError,
)
from .model import ModelParams, singlet_state
from .observables import (
    ObservableRecord,
    RelationCurve,
    berry_phase,
    concurrence,
    observables_for,
    relation_curve,
)
from .spectrum import (
    CubicInvariants,
    TripletSolution,
    cubic_invariants,
    eigenstate,
    eigenvalues,
    shifted_cubic,
    triplet_coefficients,
    triplet_shifted_roots,
    triplet_solutions,
)

__all__ = [
    "AdiabaticSchedule",
    "AdiabaticityViolation",
    "AdiabaticityWarning",
    "ConvergenceFailure",
    "CubicInvariants",
    "DegenerateInput",
    "DegenerateSpectrum",
    "EvolutionResult",
    "ModelParams",
    "NormError",
    "NotARoot",
    "ObservableRecord",
    "RelationCurve",
    "StepUnderflow",
    "TripletSolution",
    "XxzPairError",
    "berry_phase",
    "concurrence",
    "cubic_invariants",
    "default_schedule",
    "eigenstate",
    "eigenvalues",
    "evolve",
    "geometric_phase",
    "observables_for",
    "relation_curve",
    "shifted_cubic",
    "singlet_state",
    "triplet_coefficients",
    "triplet_shifted_roots",
    "triplet_solutions",
]

__version__ = "0.1.0"
