"""Brute-force ground truth for the closed-form results.

Builds the explicit 4x4 Hamiltonian from tensor products, diagonalizes it
with an in-repo Jacobi solver, and extracts Berry phases and concurrences in
gauge-invariant form without touching the analytic root or coefficient
formulas in `spectrum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .angles import wrap_angle
from .errors import ConvergenceFailure, DegenerateSpectrum, NormError
from .model import ModelParams, singlet_state

# Pauli matrices; the exchange terms use these directly while the Zeeman
# term is b0 * sum of single-spin sigma . n_hat (b0 = mu B / 2).
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
IDENT_2 = np.eye(2, dtype=np.complex128)

EIGH_TOL_REL = 1e-13
EIGH_MAX_SWEEPS = 60
MIN_TRACK_OVERLAP = 0.5


@dataclass(frozen=True)
class EigDecomposition:
    """Ascending eigenvalues, orthonormal eigenvector columns, max residual."""

    values: np.ndarray
    vectors: np.ndarray
    residual: float


def _exchange_matrix(params: ModelParams) -> np.ndarray:
    xx = np.kron(SIGMA_X, SIGMA_X)
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    zz = np.kron(SIGMA_Z, SIGMA_Z)
    return params.j_x * (xx + yy) + params.j_z * zz


def field_decomposition(params: ModelParams):
    """Split H(phi) = h_static + cos(phi) h_cos + sin(phi) h_sin.

    h_static carries the exchange terms and the polar field component; the
    two others carry the rotating transverse field.
    """
    s = math.sin(params.theta)
    c = math.cos(params.theta)
    sum_x = np.kron(SIGMA_X, IDENT_2) + np.kron(IDENT_2, SIGMA_X)
    sum_y = np.kron(SIGMA_Y, IDENT_2) + np.kron(IDENT_2, SIGMA_Y)
    sum_z = np.kron(SIGMA_Z, IDENT_2) + np.kron(IDENT_2, SIGMA_Z)
    h_static = _exchange_matrix(params) + params.b0 * c * sum_z
    h_cos = params.b0 * s * sum_x
    h_sin = params.b0 * s * sum_y
    return h_static, h_cos, h_sin


def hamiltonian(params: ModelParams, phi: float = 0.0) -> np.ndarray:
    """Explicit 4x4 Hamiltonian at field azimuth phi.

    Entry-for-entry Hermitian by construction (conjugate pairs are built
    from the same cos/sin values).
    """
    h_static, h_cos, h_sin = field_decomposition(params)
    return h_static + math.cos(phi) * h_cos + math.sin(phi) * h_sin


def triplet_block(params: ModelParams) -> np.ndarray:
    """Shifted 3x3 triplet block at phi = 0 in the basis (uu, t0, dd).

    "Shifted" means j_z has been subtracted from the diagonal, so the
    eigenvalues are the shifted energies directly.
    """
    u = 2.0 * params.b0 * math.cos(params.theta)
    w = math.sqrt(2.0) * params.b0 * math.sin(params.theta)
    two_j = 2.0 * params.j
    return np.array(
        [
            [u, w, 0.0],
            [w, two_j, w],
            [0.0, w, -u],
        ]
    )


def eigh(m: np.ndarray) -> EigDecomposition:
    """In-repo Jacobi diagonalization of a Hermitian matrix.

    Converges when the off-diagonal Frobenius norm drops below
    1e-13 * ||m||; raises ConvergenceFailure after the sweep budget.
    """
    m = np.asarray(m, dtype=np.complex128)
    herm_defect = np.max(np.abs(m - m.conj().T))
    mnorm = np.linalg.norm(m)
    if herm_defect > 1e-12 * max(mnorm, 1.0):
        raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")

    values, vectors, off_rel, _sweeps = _kernels.jacobi_eigh(
        m, EIGH_TOL_REL, EIGH_MAX_SWEEPS
    )
    if off_rel > EIGH_TOL_REL:
        raise ConvergenceFailure(
            f"Jacobi sweeps exhausted, off-diagonal norm {off_rel:.3e} of ||m||"
        )
    residual = float(np.max(np.linalg.norm(m @ vectors - vectors * values, axis=0)))
    return EigDecomposition(values=values, vectors=vectors, residual=residual)


def _singlet_column(vectors: np.ndarray) -> int:
    overlaps = np.abs(singlet_state().conj() @ vectors) ** 2
    col = int(np.argmax(overlaps))
    if overlaps[col] < 1.0 - 1e-6:
        raise DegenerateSpectrum(
            "singlet mixes with a triplet level; oracle level labels undefined"
        )
    return col


def triplet_eigensystem(params: ModelParams, phi: float = 0.0):
    """Eigenvalues and eigenvectors of the three non-singlet levels, ascending.

    Returns (values shape (3,), vectors shape (4, 3)).  The singlet column is
    identified by overlap and removed; raises DegenerateSpectrum when the
    singlet cannot be separated.
    """
    dec = eigh(hamiltonian(params, phi))
    col = _singlet_column(dec.vectors)
    keep = [i for i in range(4) if i != col]
    return dec.values[keep], dec.vectors[:, keep]


def concurrence_numeric(v: np.ndarray, norm_tol: float = 1e-8) -> float:
    """|<Psi|sigma_y x sigma_y|Psi*>| for a pure two-qubit state.

    Expands to |-2 v0 v3 + 2 v1 v2| in the (uu, ud, du, dd) amplitudes; the
    global phase drops out.
    """
    v = np.asarray(v, dtype=np.complex128)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > norm_tol:
        raise NormError(f"state norm {nrm!r} is not 1 within {norm_tol}")
    return float(abs(-2.0 * v[0] * v[3] + 2.0 * v[1] * v[2]))


def berry_unwound_numeric(params: ModelParams, n: int) -> float:
    """Unwound Berry phase 2 pi (|v_uu|^2 - |v_dd|^2) from the phi = 0 eigenvector.

    The azimuth enters the eigenstates only through e^{-i phi} and e^{+i phi}
    factors on the uu and dd amplitudes, so the loop integral reduces to the
    weight difference; this includes the winding, unlike loop-based phases.
    """
    if n == 0:
        return 0.0
    if n not in (1, 2, 3):
        raise ValueError(f"level index must be in 0..3, got {n}")
    _values, vectors = triplet_eigensystem(params, 0.0)
    v = vectors[:, n - 1]
    return float(2.0 * math.pi * (abs(v[0]) ** 2 - abs(v[3]) ** 2))


def wilson_loop_phase(params: ModelParams, n: int, steps: int) -> float:
    """Discrete overlap-product (Pancharatnam) phase around one field loop.

    Diagonalizes from scratch at each azimuth phi_k = 2 pi k / steps, follows
    level n by maximum overlap, and returns -arg of the closed product of
    neighbour overlaps, in (-pi, pi].  Matches the analytic phase modulo 2 pi
    as steps grow.
    """
    if steps < 16:
        raise ValueError(f"steps must be >= 16, got {steps}")
    if n not in (0, 1, 2, 3):
        raise ValueError(f"level index must be in 0..3, got {n}")

    if n == 0:
        dec = eigh(hamiltonian(params, 0.0))
        v_start = dec.vectors[:, _singlet_column(dec.vectors)]
    else:
        _values, vectors = triplet_eigensystem(params, 0.0)
        v_start = vectors[:, n - 1]

    h_static, h_cos, h_sin = field_decomposition(params)
    phase, min_overlap, worst_off = _kernels.wilson_loop(
        h_static, h_cos, h_sin,
        np.ascontiguousarray(v_start, dtype=np.complex128),
        steps, EIGH_TOL_REL, EIGH_MAX_SWEEPS,
    )
    if worst_off > EIGH_TOL_REL:
        raise ConvergenceFailure(
            f"Jacobi failed to converge along the loop (off {worst_off:.3e})"
        )
    if min_overlap < MIN_TRACK_OVERLAP:
        raise DegenerateSpectrum(
            f"level tracking lost (overlap {min_overlap:.3f} < {MIN_TRACK_OVERLAP})"
        )
    return wrap_angle(phase)
