"""Random-suite plumbing: sampling, summaries, and mutation sensitivity."""

import math

import numpy as np
import pytest

from xxzpair import ModelParams, observables, spectrum
from xxzpair.crosscheck import CheckTolerances, run_suite, sample_params


def test_sampler_respects_gap_floor():
    rng = np.random.default_rng(31)
    for _ in range(50):
        p = sample_params(rng, min_gap_rel=1e-3)
        energies = spectrum.eigenvalues(p)
        gap = min(abs(energies[i] - energies[j])
                  for i in range(4) for j in range(i + 1, 4))
        assert gap >= 1e-3 * p.scale


def test_suite_passes_and_reports_maxima():
    summary = run_suite(100, seed=42)
    assert summary["pass"] is True
    assert summary["violations"] == []
    assert summary["symmetry_violations"] == 0
    assert summary["max_eig_mismatch"] < 1e-9
    assert summary["max_root_residual"] < 1e-9
    assert summary["max_berry_mismatch"] < 1e-8
    assert summary["max_conc_mismatch"] < 1e-8


def test_suite_deterministic():
    first = run_suite(50, seed=9)
    second = run_suite(50, seed=9)
    assert first == second


def test_suite_seed_sensitivity():
    assert run_suite(50, seed=1) != run_suite(50, seed=2)


def test_zero_samples_rejected():
    with pytest.raises(ValueError):
        run_suite(0, seed=1)


def test_wrong_sign_berry_is_caught(monkeypatch):
    # Mutation sanity check: a sign flip in the analytic Berry formula must
    # trip the oracle comparison.
    def flipped(sol):
        return -2.0 * math.pi * (sol.a**2 - sol.c**2)

    monkeypatch.setattr(observables, "berry_phase", flipped)
    summary = run_suite(25, seed=42)
    assert summary["pass"] is False
    assert any("berry_mismatch" in f for v in summary["violations"]
               for f in v["failed"])


def test_loose_tolerances_forgive(monkeypatch):
    # The same flipped formula passes with absurd tolerances, proving the
    # thresholds are the active ingredient.
    def flipped(sol):
        return -2.0 * math.pi * (sol.a**2 - sol.c**2)

    monkeypatch.setattr(observables, "berry_phase", flipped)
    tol = CheckTolerances(berry_mismatch=1e3, symmetry=1e3)
    summary = run_suite(10, seed=42, tol=tol)
    assert summary["pass"] is True
