"""Compiled kernels for the hot numerical paths.

Everything here is plain algorithmic code (cyclic complex Jacobi rotations,
overlap-product loops, fixed-step RK4); numba only compiles it.  The public
wrappers with validation and error handling live in `oracle` and `adiabatic`.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_eigh(a, tol_rel, max_sweeps):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation makes the pivot real with a phase factor and then applies
    the classical symmetric Jacobi rotation.  Returns
    (values, vectors, off_rel, sweeps) with eigenvalues ascending and
    eigenvectors in the columns of `vectors`.  `off_rel` is the final
    off-diagonal Frobenius norm relative to ||a||; convergence means
    off_rel <= tol_rel.
    """
    n = a.shape[0]
    h = a.copy()
    v = np.eye(n, dtype=np.complex128)

    anorm = 0.0
    for i in range(n):
        for jj in range(n):
            anorm += abs(h[i, jj]) ** 2
    anorm = np.sqrt(anorm)
    if anorm == 0.0:
        vals = np.zeros(n)
        return vals, v, 0.0, 0

    sweeps = 0
    off = 0.0
    while True:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * abs(h[p, q]) ** 2
        off = np.sqrt(off)
        if off <= tol_rel * anorm or sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = h[p, q]
                ab = abs(beta)
                if ab <= 1e-300 or ab <= 1e-18 * anorm:
                    continue
                # Phase that makes the pivot real, then a real rotation.
                ph = beta / ab
                app = h[p, p].real
                aqq = h[q, q].real
                tau = (aqq - app) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                phc = np.conj(ph)
                h[p, p] = app - t * ab
                h[q, q] = aqq + t * ab
                h[p, q] = 0.0
                h[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        hip = h[i, p]
                        hiq = h[i, q]
                        h[i, p] = c * hip - s * phc * hiq
                        h[i, q] = s * hip + c * phc * hiq
                        h[p, i] = np.conj(h[i, p])
                        h[q, i] = np.conj(h[i, q])
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * phc * viq
                    v[i, q] = s * vip + c * phc * viq

    vals = np.empty(n)
    for i in range(n):
        vals[i] = h[i, i].real

    # Ascending selection sort, carrying the eigenvector columns along.
    for i in range(n - 1):
        k = i
        for jj in range(i + 1, n):
            if vals[jj] < vals[k]:
                k = jj
        if k != i:
            tmp = vals[i]
            vals[i] = vals[k]
            vals[k] = tmp
            for r in range(n):
                tv = v[r, i]
                v[r, i] = v[r, k]
                v[r, k] = tv

    return vals, v, off / anorm, sweeps


@njit(cache=True)
def wilson_loop(h_static, h_cos, h_sin, v_start, steps, tol_rel, max_sweeps):
    """Overlap-product phase of one tracked eigenvector around the field loop.

    The Hamiltonian at azimuth phi is h_static + cos(phi) h_cos +
    sin(phi) h_sin, sampled at phi_k = 2 pi k / steps.  The level is followed
    by maximum overlap from slice to slice, and the loop is closed with the
    phi = 0 vector, so arbitrary per-slice eigenvector phases cancel exactly.
    Returns (phase, min_overlap, worst_off_rel).
    """
    n = h_static.shape[0]
    v_prev = v_start.copy()
    z = 1.0 + 0.0j
    min_ov = 1.0
    worst_off = 0.0
    h = np.empty((n, n), dtype=np.complex128)

    for k in range(1, steps):
        phi = 2.0 * np.pi * k / steps
        cp = np.cos(phi)
        sp = np.sin(phi)
        for i in range(n):
            for jj in range(n):
                h[i, jj] = h_static[i, jj] + cp * h_cos[i, jj] + sp * h_sin[i, jj]
        vals, vecs, off_rel, sweeps = jacobi_eigh(h, tol_rel, max_sweeps)
        if off_rel > worst_off:
            worst_off = off_rel
        best = -1.0
        best_col = 0
        best_ov = 0.0 + 0.0j
        for col in range(n):
            ov = 0.0 + 0.0j
            for i in range(n):
                ov += np.conj(v_prev[i]) * vecs[i, col]
            a = abs(ov)
            if a > best:
                best = a
                best_col = col
                best_ov = ov
        if best < min_ov:
            min_ov = best
        z *= best_ov
        for i in range(n):
            v_prev[i] = vecs[i, best_col]

    ov = 0.0 + 0.0j
    for i in range(n):
        ov += np.conj(v_prev[i]) * v_start[i]
    if abs(ov) < min_ov:
        min_ov = abs(ov)
    z *= ov

    phase = -np.arctan2(z.imag, z.real)
    return phase, min_ov, worst_off


@njit(cache=True)
def rk4_evolve(h_static, h_cos, h_sin, psi0, omega, steps):
    """Fixed-step RK4 integration of i dpsi/dt = H(t) psi over one period.

    H(t) = h_static + cos(omega t) h_cos + sin(omega t) h_sin and
    T = 2 pi / omega.  The state is renormalized every step (the summed
    correction magnitude is returned) and <psi|H|psi> is accumulated by the
    trapezoid rule.  Returns (psi_T, dynamical_phase, norm_correction).
    """
    n = psi0.shape[0]
    dt = 2.0 * np.pi / omega / steps
    psi = psi0.copy()
    ha = np.empty((n, n), dtype=np.complex128)
    hb = np.empty((n, n), dtype=np.complex128)
    hc = np.empty((n, n), dtype=np.complex128)
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)

    for i in range(n):
        for jj in range(n):
            ha[i, jj] = h_static[i, jj] + h_cos[i, jj]  # phi = 0

    # k1 = -i H(t) psi; the same product gives <H> at the step start.
    for i in range(n):
        s = 0.0 + 0.0j
        for jj in range(n):
            s += ha[i, jj] * psi[jj]
        k1[i] = -1j * s
    e_prev = 0.0
    for i in range(n):
        e_prev -= (np.conj(psi[i]) * k1[i]).imag

    energy_integral = 0.0
    norm_correction = 0.0

    for step in range(steps):
        t = step * dt
        phi_b = omega * (t + 0.5 * dt)
        phi_c = omega * (t + dt)
        cb = np.cos(phi_b)
        sb = np.sin(phi_b)
        cc = np.cos(phi_c)
        sc = np.sin(phi_c)
        for i in range(n):
            for jj in range(n):
                hb[i, jj] = h_static[i, jj] + cb * h_cos[i, jj] + sb * h_sin[i, jj]
                hc[i, jj] = h_static[i, jj] + cc * h_cos[i, jj] + sc * h_sin[i, jj]

        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        for i in range(n):
            s = 0.0 + 0.0j
            for jj in range(n):
                s += hb[i, jj] * tmp[jj]
            k2[i] = -1j * s

        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        for i in range(n):
            s = 0.0 + 0.0j
            for jj in range(n):
                s += hb[i, jj] * tmp[jj]
            k3[i] = -1j * s

        for i in range(n):
            tmp[i] = psi[i] + dt * k3[i]
        for i in range(n):
            s = 0.0 + 0.0j
            for jj in range(n):
                s += hc[i, jj] * tmp[jj]
            k4[i] = -1j * s

        for i in range(n):
            psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

        nrm = 0.0
        for i in range(n):
            nrm += (psi[i] * np.conj(psi[i])).real
        nrm = np.sqrt(nrm)
        norm_correction += abs(nrm - 1.0)
        for i in range(n):
            psi[i] /= nrm

        # H at the step end becomes H(t) of the next step.
        for i in range(n):
            for jj in range(n):
                ha[i, jj] = hc[i, jj]
        for i in range(n):
            s = 0.0 + 0.0j
            for jj in range(n):
                s += ha[i, jj] * psi[jj]
            k1[i] = -1j * s
        e_new = 0.0
        for i in range(n):
            e_new -= (np.conj(psi[i]) * k1[i]).imag
        energy_integral += 0.5 * (e_prev + e_new) * dt
        e_prev = e_new

    return psi, -energy_integral, norm_correction
