"""Seeded random-parameter suites pitting the closed forms against the oracle.

Used by the `check` CLI command and by the acceptance tests.  Couplings are
drawn log-uniform over six decades with random signs, theta uniform on
(0, pi); tuples are rejected while any pair of levels sits closer than
min_gap_rel * scale, since per-level comparisons need cleanly identifiable
oracle eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import observables, oracle, spectrum
from .model import ModelParams

MIN_GAP_REL = 1e-4


@dataclass(frozen=True)
class CheckTolerances:
    """Acceptance tolerances for the oracle and symmetry suites."""

    root_residual: float = 1e-9     # |F(eps)| / scale^3
    eig_mismatch: float = 1e-9      # |E_analytic - E_oracle| / scale
    berry_mismatch: float = 1e-8    # radians
    conc_mismatch: float = 1e-8
    symmetry: float = 1e-10


def sample_params(rng: np.random.Generator,
                  min_gap_rel: float = MIN_GAP_REL) -> ModelParams:
    """One random parameter tuple with all four levels separated."""
    while True:
        j_x = 10.0 ** rng.uniform(-3.0, 3.0) * (1.0 if rng.random() < 0.5 else -1.0)
        j_z = 10.0 ** rng.uniform(-3.0, 3.0) * (1.0 if rng.random() < 0.5 else -1.0)
        b0 = 10.0 ** rng.uniform(-3.0, 3.0)
        theta = rng.uniform(0.0, math.pi)
        params = ModelParams(j_x, j_z, b0, theta)
        energies = spectrum.eigenvalues(params)
        gap = min(
            abs(energies[i] - energies[j])
            for i in range(4)
            for j in range(i + 1, 4)
        )
        if gap >= min_gap_rel * params.scale:
            return params


def _params_key(params: ModelParams):
    return [params.j_x, params.j_z, params.b0, params.theta]


def run_suite(samples: int, seed: int,
              tol: CheckTolerances | None = None) -> dict:
    """Oracle-equivalence and symmetry suite over seeded random tuples.

    Returns a summary dict with the max deviations, the symmetry violation
    count, the offending tuples, and an overall pass flag.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    tol = tol or CheckTolerances()
    rng = np.random.default_rng(seed)

    max_root_residual = 0.0
    max_eig_mismatch = 0.0
    max_berry_mismatch = 0.0
    max_conc_mismatch = 0.0
    max_coeff_mismatch = 0.0
    max_symmetry_deviation = 0.0
    symmetry_violations = 0
    violations = []

    for _ in range(samples):
        params = sample_params(rng)
        scale = params.scale
        bad = []

        roots = spectrum.triplet_shifted_roots(params)
        sols = spectrum.triplet_solutions(params)
        res = max(abs(spectrum.shifted_cubic(eps, params)) for eps in roots)
        res /= scale**3
        max_root_residual = max(max_root_residual, res)
        if res > tol.root_residual:
            bad.append("root_residual")

        analytic = np.sort(spectrum.eigenvalues(params))
        dec = oracle.eigh(oracle.hamiltonian(params, 0.0))
        eig_dev = float(np.max(np.abs(analytic - dec.values))) / scale
        max_eig_mismatch = max(max_eig_mismatch, eig_dev)
        if eig_dev > tol.eig_mismatch:
            bad.append("eig_mismatch")

        _tvals, tvecs = oracle.triplet_eigensystem(params, 0.0)
        for i, sol in enumerate(sols):
            vec = tvecs[:, i]
            berry_dev = abs(
                observables.berry_phase(sol)
                - 2.0 * math.pi * (abs(vec[0]) ** 2 - abs(vec[3]) ** 2)
            )
            conc_dev = abs(
                observables.concurrence(sol) - oracle.concurrence_numeric(vec)
            )
            coeff_dev = max(
                abs(sol.a**2 - abs(vec[0]) ** 2),
                abs(sol.c**2 - abs(vec[3]) ** 2),
            )
            max_berry_mismatch = max(max_berry_mismatch, berry_dev)
            max_conc_mismatch = max(max_conc_mismatch, conc_dev)
            max_coeff_mismatch = max(max_coeff_mismatch, coeff_dev)
            if berry_dev > tol.berry_mismatch:
                bad.append(f"berry_mismatch[{sol.n}]")
            if conc_dev > tol.conc_mismatch:
                bad.append(f"conc_mismatch[{sol.n}]")
            if coeff_dev > tol.conc_mismatch:
                bad.append(f"coeff_mismatch[{sol.n}]")

        sym_dev = _symmetry_deviation(params, roots, sols)
        max_symmetry_deviation = max(max_symmetry_deviation, sym_dev)
        if sym_dev > tol.symmetry:
            symmetry_violations += 1
            bad.append("symmetry")

        if bad:
            violations.append({"params": _params_key(params), "failed": bad})

    passed = not violations
    return {
        "samples": samples,
        "seed": seed,
        "max_root_residual": max_root_residual,
        "max_eig_mismatch": max_eig_mismatch,
        "max_berry_mismatch": max_berry_mismatch,
        "max_conc_mismatch": max_conc_mismatch,
        "max_coeff_mismatch": max_coeff_mismatch,
        "max_symmetry_deviation": max_symmetry_deviation,
        "symmetry_violations": symmetry_violations,
        "violations": violations,
        "pass": passed,
    }


def _symmetry_deviation(params: ModelParams, roots, sols) -> float:
    """Worst deviation across the closed-form symmetry relations at one tuple.

    Covers the reality guarantee r^2 <= q^3, ascending roots, normalization,
    the theta mirror of the coefficients, and the antisymmetry/mirror of the
    observables.
    """
    dev = 0.0
    inv = spectrum.cubic_invariants(params)
    dev = max(dev, (inv.r**2 - inv.q**3) / max(inv.q**3, 1.0))
    dev = max(dev, (roots[0] - roots[1]) / params.scale,
              (roots[1] - roots[2]) / params.scale)

    mirrored = ModelParams(params.j_x, params.j_z, params.b0,
                           math.pi - params.theta)
    sols_m = spectrum.triplet_solutions(mirrored)
    for sol, sol_m in zip(sols, sols_m):
        if not (sol.fallback_used or sol_m.fallback_used):
            dev = max(dev, abs(sol.a**2 + sol.b**2 + sol.c**2 - 1.0))
            dev = max(dev, abs(sol.a - sol_m.c), abs(sol.b - sol_m.b))
        if not (sol.degenerate or sol_m.degenerate):
            dev = max(
                dev,
                abs(observables.berry_phase(sol) + observables.berry_phase(sol_m)),
            )
        dev = max(
            dev,
            abs(observables.concurrence(sol) - observables.concurrence(sol_m)),
        )
    return dev
