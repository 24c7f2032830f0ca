"""Compiled time-stepping kernels (method of lines, uniform grid).

Boundary handling: Neumann by mirror ghost (u_{-1} = u_1), Dirichlet rows
frozen during the step and overwritten with the prescribed value afterwards.
All loops are deterministic; no fastmath, no threading.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _rhs(vals, lam_inv, a, b, dx2, bc_code, out):
    m, nx = vals.shape
    for i in range(m):
        for j in range(nx):
            if j == 0:
                if bc_code[i, 0] == 1:
                    out[i, j] = 0.0
                    continue
                lap = 2.0 * (vals[i, 1] - vals[i, 0]) / dx2
            elif j == nx - 1:
                if bc_code[i, 1] == 1:
                    out[i, j] = 0.0
                    continue
                lap = 2.0 * (vals[i, nx - 2] - vals[i, nx - 1]) / dx2
            else:
                lap = (vals[i, j - 1] - 2.0 * vals[i, j] + vals[i, j + 1]) / dx2
            s = a[i]
            for k in range(m):
                s += b[i, k] * vals[k, j]
            out[i, j] = lam_inv[i] * (lap + vals[i, j] * s)


@njit(cache=True)
def rk4_run(vals, lam_inv, a, b, dx, dt, nsteps, bc_code, bc_vals, snap_every, snaps):
    """Returns 0 on success or the 1-based step index where values went non-finite."""
    m, nx = vals.shape
    dx2 = dx * dx
    k1 = np.empty((m, nx))
    k2 = np.empty((m, nx))
    k3 = np.empty((m, nx))
    k4 = np.empty((m, nx))
    tmp = np.empty((m, nx))
    isnap = 0
    for i in range(m):
        for j in range(nx):
            snaps[0, i, j] = vals[i, j]
    for n in range(nsteps):
        _rhs(vals, lam_inv, a, b, dx2, bc_code, k1)
        for i in range(m):
            for j in range(nx):
                tmp[i, j] = vals[i, j] + 0.5 * dt * k1[i, j]
        _rhs(tmp, lam_inv, a, b, dx2, bc_code, k2)
        for i in range(m):
            for j in range(nx):
                tmp[i, j] = vals[i, j] + 0.5 * dt * k2[i, j]
        _rhs(tmp, lam_inv, a, b, dx2, bc_code, k3)
        for i in range(m):
            for j in range(nx):
                tmp[i, j] = vals[i, j] + dt * k3[i, j]
        _rhs(tmp, lam_inv, a, b, dx2, bc_code, k4)
        ok = True
        for i in range(m):
            for j in range(nx):
                vals[i, j] += dt / 6.0 * (k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j])
            if bc_code[i, 0] == 1:
                vals[i, 0] = bc_vals[n + 1, i, 0]
            if bc_code[i, 1] == 1:
                vals[i, nx - 1] = bc_vals[n + 1, i, 1]
            for j in range(nx):
                if not np.isfinite(vals[i, j]):
                    ok = False
        if (n + 1) % snap_every == 0:
            isnap += 1
            for i in range(m):
                for j in range(nx):
                    snaps[isnap, i, j] = vals[i, j]
        if not ok:
            return n + 1
    return 0


@njit(cache=True)
def imex_run(vals, lam_inv, a, b, dx, dt, nsteps, bc_code, bc_vals, snap_every, snaps):
    """Lie splitting: explicit Euler reaction substep, Crank-Nicolson diffusion.

    Returns 0 on success or the 1-based blow-up step index.
    """
    m, nx = vals.shape
    dx2 = dx * dx
    low = np.empty(nx)
    diag = np.empty(nx)
    up = np.empty(nx)
    rhs = np.empty(nx)
    cp = np.empty(nx)
    dp = np.empty(nx)
    isnap = 0
    for i in range(m):
        for j in range(nx):
            snaps[0, i, j] = vals[i, j]
    for n in range(nsteps):
        # reaction substep (forward Euler); Dirichlet endpoints stay frozen
        for j in range(nx):
            s0 = np.empty(m)
            for i in range(m):
                s = a[i]
                for k in range(m):
                    s += b[i, k] * vals[k, j]
                s0[i] = vals[i, j] * s
            for i in range(m):
                if j == 0 and bc_code[i, 0] == 1:
                    continue
                if j == nx - 1 and bc_code[i, 1] == 1:
                    continue
                vals[i, j] += dt * lam_inv[i] * s0[i]
        # Crank-Nicolson diffusion per component
        for i in range(m):
            th = 0.5 * dt * lam_inv[i] / dx2
            for j in range(nx):
                low[j] = -th
                up[j] = -th
                diag[j] = 1.0 + 2.0 * th
            # rhs = (I + th L) vals
            for j in range(nx):
                if j == 0:
                    lap = 2.0 * (vals[i, 1] - vals[i, 0])
                elif j == nx - 1:
                    lap = 2.0 * (vals[i, nx - 2] - vals[i, nx - 1])
                else:
                    lap = vals[i, j - 1] - 2.0 * vals[i, j] + vals[i, j + 1]
                rhs[j] = vals[i, j] + th * lap
            # boundary rows
            if bc_code[i, 0] == 1:
                diag[0] = 1.0
                up[0] = 0.0
                rhs[0] = bc_vals[n + 1, i, 0]
            else:
                up[0] = -2.0 * th  # mirror ghost doubles the off-diagonal
            if bc_code[i, 1] == 1:
                diag[nx - 1] = 1.0
                low[nx - 1] = 0.0
                rhs[nx - 1] = bc_vals[n + 1, i, 1]
            else:
                low[nx - 1] = -2.0 * th
            # Thomas solve
            cp[0] = up[0] / diag[0]
            dp[0] = rhs[0] / diag[0]
            for j in range(1, nx):
                denom = diag[j] - low[j] * cp[j - 1]
                cp[j] = up[j] / denom
                dp[j] = (rhs[j] - low[j] * dp[j - 1]) / denom
            vals[i, nx - 1] = dp[nx - 1]
            for j in range(nx - 2, -1, -1):
                vals[i, j] = dp[j] - cp[j] * vals[i, j + 1]
        ok = True
        for i in range(m):
            for j in range(nx):
                if not np.isfinite(vals[i, j]):
                    ok = False
        if (n + 1) % snap_every == 0:
            isnap += 1
            for i in range(m):
                for j in range(nx):
                    snaps[isnap, i, j] = vals[i, j]
        if not ok:
            return n + 1
    return 0
