"""Closed-form eigensystem of the two-qubit XXZ model in a rotating field.

The singlet decouples with energy -(j_z + 2 j_x).  The three triplet levels
have shifted energies eps_n = E_n - j_z given by the real roots of

    F(eps) = eps^3 - 2 J eps^2 - 4 b0^2 eps + 8 J b0^2 cos^2(theta),

with J = j_x - j_z, solved here in trigonometric form.  Eigenstate
coefficients (a, b, c) over (uu, symmetric ud+du, dd) follow in closed form,
with a null-space fallback where their shared normalizer vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import DegenerateInput, NotARoot
from .model import ModelParams, singlet_state

CLAMP_TOL = 1e-12       # tolerated arccos-argument overshoot from rounding
GAP_TOL_REL = 1e-8      # root gap below this (times scale) flags degeneracy
D_TOL_REL = 1e-10       # normalizer below this (times (|eps| + 2 b0)^4) falls back
ROOT_TOL = 1e-9         # |F(eps)| tolerance, times max(1, |eps|^3)


@dataclass(frozen=True)
class CubicInvariants:
    """Trigonometric-solution invariants: q (energy^2), r (energy^3), p (radians)."""

    q: float
    r: float
    p: float


@dataclass(frozen=True)
class TripletSolution:
    """One triplet level: shifted/full energy and real eigenstate coefficients.

    fallback_used marks levels whose coefficients came from the null-space
    solve instead of the closed forms; degenerate marks levels whose root gap
    is below tolerance (any orthonormal choice is returned there).
    """

    n: int
    eps: float
    energy: float
    a: float
    b: float
    c: float
    d: float
    fallback_used: bool
    degenerate: bool


def shifted_cubic(eps: float, params: ModelParams) -> float:
    """F(eps) = eps^3 - 2 J eps^2 - 4 b0^2 eps + 8 J b0^2 cos^2(theta)."""
    j = params.j
    b0sq = params.b0 * params.b0
    cos2 = math.cos(params.theta) ** 2
    return eps**3 - 2.0 * j * eps**2 - 4.0 * b0sq * eps + 8.0 * j * b0sq * cos2


def cubic_invariants(params: ModelParams) -> CubicInvariants:
    """q = 4(J^2 + 3 b0^2)/9, r = 4J(2J^2 + 9 b0^2 (1 - 3 cos^2 theta))/27,
    p = arccos(r / sqrt(q^3)).

    Hermiticity guarantees r^2 <= q^3, so p is always real; the arccos
    argument is clamped when rounding pushes it past 1 by less than 1e-12.
    Raises DegenerateInput when q = 0 (J = 0 and b0 = 0), carrying the
    conventional invariants (0, 0, pi/2).
    """
    j = params.j
    b0sq = params.b0 * params.b0
    q = 4.0 * (j * j + 3.0 * b0sq) / 9.0
    if q == 0.0:
        raise DegenerateInput(
            "J = 0 and b0 = 0: shifted triplet spectrum is a triple root at zero",
            invariants=CubicInvariants(q=0.0, r=0.0, p=math.pi / 2.0),
        )
    cos2 = math.cos(params.theta) ** 2
    r = 4.0 * j * (2.0 * j * j + 9.0 * b0sq * (1.0 - 3.0 * cos2)) / 27.0
    arg = r / math.sqrt(q**3)
    if abs(arg) > 1.0:
        if abs(arg) - 1.0 > CLAMP_TOL:
            raise ValueError(
                f"arccos argument {arg!r} exceeds 1 beyond rounding tolerance"
            )
        arg = math.copysign(1.0, arg)
    return CubicInvariants(q=q, r=r, p=math.acos(arg))


def _polish_root(eps: float, params: ModelParams) -> float:
    """Guarded Newton refinement of a trig-formula root.

    The closed form is accurate to machine epsilon times the energy scale;
    one or two Newton steps push the cubic residual down to evaluation noise.
    Steps are only accepted while they shrink |F|, which keeps near-double
    roots safe (there the step is bounded by the current error).
    """
    j = params.j
    b0sq = params.b0 * params.b0
    f = shifted_cubic(eps, params)
    for _ in range(2):
        fprime = 3.0 * eps * eps - 4.0 * j * eps - 4.0 * b0sq
        if fprime == 0.0 or f == 0.0:
            break
        candidate = eps - f / fprime
        f_candidate = shifted_cubic(candidate, params)
        if abs(f_candidate) >= abs(f):
            break
        eps, f = candidate, f_candidate
    return eps


def _root_gate(eps: float, params: ModelParams) -> bool:
    return abs(shifted_cubic(eps, params)) <= ROOT_TOL * max(1.0, abs(eps) ** 3)


def _repair_close_pair(roots, params: ModelParams):
    """Recover a near-double pair that defeats the trigonometric branch.

    When two roots nearly coincide the arccos argument sits at the edge of
    its domain and the branch formula loses most digits; Newton started from
    the resulting mid-pair value stalls.  The best-conditioned root (largest
    |F'|) is kept and the other two are rebuilt from the stable Vieta data:
    their product -C/f is relatively exact, their sum -A - f is good in
    absolute terms, and the small root comes from product/big to avoid
    cancellation.
    """
    j = params.j
    b0sq = params.b0 * params.b0
    coeff_a = -2.0 * j                      # cubic is eps^3 + A eps^2 + B eps + C
    coeff_c = 8.0 * j * b0sq * math.cos(params.theta) ** 2

    def fprime(eps):
        return abs(3.0 * eps * eps - 4.0 * j * eps - 4.0 * b0sq)

    far = _polish_root(max(roots, key=fprime), params)
    pair_sum = -coeff_a - far
    pair_prod = -coeff_c / far if far != 0.0 else 0.0
    disc = pair_sum * pair_sum - 4.0 * pair_prod
    if disc < 0.0:
        disc = 0.0
    big = 0.5 * (pair_sum + math.copysign(math.sqrt(disc), pair_sum))
    small = pair_prod / big if big != 0.0 else 0.5 * pair_sum
    repaired = sorted(
        (_polish_root(big, params), _polish_root(small, params), far)
    )
    return tuple(repaired)


def _roots_from_invariants(inv: CubicInvariants, j: float, params: ModelParams):
    two_sqrt_q = 2.0 * math.sqrt(inv.q)
    shift = 2.0 * j / 3.0
    roots = tuple(
        _polish_root(
            two_sqrt_q * math.cos((inv.p + 2.0 * n * math.pi) / 3.0) + shift, params
        )
        for n in (1, 2, 3)
    )
    if all(_root_gate(eps, params) for eps in roots):
        return roots
    return _repair_close_pair(roots, params)


def triplet_shifted_roots(params: ModelParams):
    """The three real roots eps_n = 2 sqrt(q) cos((p + 2 n pi)/3) + 2J/3.

    The branch index n = 1, 2, 3 makes the roots ascending for p in [0, pi];
    they are returned in that order without re-sorting.  Each root gets a
    guarded Newton polish against the cubic.
    """
    inv = cubic_invariants(params)
    return _roots_from_invariants(inv, params.j, params)


def _shifted_roots_lenient(params: ModelParams):
    """Roots plus a flag for the q = 0 triple-root convention."""
    try:
        return triplet_shifted_roots(params), False
    except DegenerateInput:
        return (0.0, 0.0, 0.0), True


def eigenvalues(params: ModelParams):
    """All four energies: E_0 = -(j_z + 2 j_x) and E_n = eps_n + j_z.

    E_0 is the singlet and carries no theta or b0 dependence.  When J = 0 and
    b0 = 0 the triplet collapses to the triple root eps = 0, so the triplet
    energies all equal j_z.
    """
    roots, _collapsed = _shifted_roots_lenient(params)
    e0 = -(params.j_z + 2.0 * params.j_x)
    return (e0,) + tuple(eps + params.j_z for eps in roots)


def closed_form_coefficients(eps: float, params: ModelParams):
    """Raw evaluation of the coefficient formulas at an arbitrary energy.

    Returns (a, b, c, d) with
        a = -(2/sqrt(d)) b0 sin(theta) (eps + 2 b0 cos(theta))
        b = -sqrt(2/d) (eps + 2 b0 cos(theta)) (eps - 2 b0 cos(theta))
        c = -(2/sqrt(d)) b0 sin(theta) (eps - 2 b0 cos(theta))
        d = 2 (eps^4 - 2 (1 + 3 cos(2 theta)) b0^2 eps^2 + 16 b0^4 cos^2(theta)).

    d is evaluated in the equivalent all-positive grouping
    4 b0^2 sin^2(theta) [(eps+u)^2 + (eps-u)^2] + 2 [(eps+u)(eps-u)]^2 with
    u = 2 b0 cos(theta); the printed polynomial cancels catastrophically
    near its zeros, this form never does, and it reuses the exact products
    entering a, b, c so that a^2 + b^2 + c^2 = 1 to a few ulps.

    No root or singularity checks; exposed for the symmetry relations, which
    hold for the formulas as functions of (eps, theta).
    """
    b0 = params.b0
    ct = math.cos(params.theta)
    st = math.sin(params.theta)
    plus = eps + 2.0 * b0 * ct
    minus = eps - 2.0 * b0 * ct
    bs = b0 * st
    cross = plus * minus
    d = 4.0 * bs * bs * (plus * plus + minus * minus) + 2.0 * cross * cross
    sqrt_d = math.sqrt(d) if d > 0.0 else float("nan")
    a = -2.0 * bs * plus / sqrt_d
    b = -math.sqrt(2.0) * cross / sqrt_d
    c = -2.0 * bs * minus / sqrt_d
    return a, b, c, d


def _fallback_coefficients(params: ModelParams, index: int):
    """Null-space coefficients from the shifted triplet block.

    Diagonalizes the 3x3 block (real symmetric at phi = 0), takes the
    eigenvector of the index-th ascending eigenvalue, and fixes the gauge by
    making the first non-negligible component positive.
    """
    dec = oracle.eigh(oracle.triplet_block(params))
    vec = dec.vectors[:, index].real.copy()
    vec /= np.linalg.norm(vec)
    for comp in vec:
        if abs(comp) > 1e-9:
            if comp < 0.0:
                vec = -vec
            break
    return float(vec[0]), float(vec[1]), float(vec[2])


def _solution_at_index(params: ModelParams, roots, collapsed: bool,
                       index: int, eps: float) -> TripletSolution:
    gaps = (roots[1] - roots[0], roots[2] - roots[1])
    degenerate = collapsed or min(gaps) < GAP_TOL_REL * params.scale

    a, b, c, d = closed_form_coefficients(eps, params)
    # The removable singularities sit where d vanishes against the energies
    # actually entering the formulas, |eps| and 2 b0, not the global scale.
    d_scale = (abs(eps) + 2.0 * params.b0) ** 4
    if not d > D_TOL_REL * d_scale:
        a, b, c = _fallback_coefficients(params, index)
        fallback = True
    else:
        fallback = False

    return TripletSolution(
        n=index + 1,
        eps=eps,
        energy=eps + params.j_z,
        a=a,
        b=b,
        c=c,
        d=d,
        fallback_used=fallback,
        degenerate=degenerate,
    )


def triplet_coefficients(eps: float, params: ModelParams) -> TripletSolution:
    """Coefficients (a, b, c) of the triplet eigenstate with shifted energy eps.

    eps must solve the cubic within ROOT_TOL * max(1, |eps|^3), else NotARoot;
    the level index is that of the nearest root.  Where the normalizer d is
    numerically zero (sin(theta) = 0, or eps = 0 at theta = pi/2) the
    removable singularity is resolved by the null-space fallback and flagged.
    """
    residual = abs(shifted_cubic(eps, params))
    if residual > ROOT_TOL * max(1.0, abs(eps) ** 3):
        raise NotARoot(
            f"F({eps!r}) = {residual:.3e} exceeds tolerance; not a triplet root"
        )
    roots, collapsed = _shifted_roots_lenient(params)
    index = min(range(3), key=lambda i: abs(roots[i] - eps))
    return _solution_at_index(params, roots, collapsed, index, eps)


def triplet_solutions(params: ModelParams):
    """TripletSolution for all three levels, ascending in shifted energy.

    Level identity is positional, so degenerate levels still come out as
    distinct orthonormal states.
    """
    roots, collapsed = _shifted_roots_lenient(params)
    return tuple(
        _solution_at_index(params, roots, collapsed, i, eps)
        for i, eps in enumerate(roots)
    )


def eigenstate(params: ModelParams, n: int, phi: float = 0.0) -> np.ndarray:
    """Amplitudes of level n over (uu, ud, du, dd) at field azimuth phi.

    n = 0 is the singlet, independent of phi and of every parameter;
    n = 1, 2, 3 gives (a e^{-i phi}, b/sqrt(2), b/sqrt(2), c e^{+i phi}).
    """
    if n == 0:
        return singlet_state()
    if n not in (1, 2, 3):
        raise ValueError(f"level index must be in 0..3, got {n}")
    roots, collapsed = _shifted_roots_lenient(params)
    sol = _solution_at_index(params, roots, collapsed, n - 1, roots[n - 1])
    em = complex(math.cos(phi), -math.sin(phi))
    b_comp = sol.b / math.sqrt(2.0)
    return np.array(
        [sol.a * em, b_comp, b_comp, sol.c * em.conjugate()], dtype=np.complex128
    )
