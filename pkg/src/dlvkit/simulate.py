"""Method-of-lines simulator on uniform 1-D grids.

Spatial discretization is the second-order central Laplacian with
mirror-ghost Neumann or strongly imposed Dirichlet ends.  Time stepping is
classic RK4 under a diffusion CFL guard, or an IMEX step (Crank-Nicolson
diffusion, explicit reaction) for stiff refinements.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import DlvModel
from .textio import serialize_model

__all__ = [
    "Grid1D",
    "FieldState",
    "BoundaryCondition",
    "SimConfig",
    "SimResult",
    "CflError",
    "BlowUpError",
    "cfl_limit",
    "init_from_solution",
    "step",
    "run",
    "error_vs_solution",
    "convergence_order",
    "trapezoid_mass",
]

NEUMANN = 0
DIRICHLET = 1


class CflError(ValueError):
    """Explicit step size violates the diffusion stability bound."""

    def __init__(self, dt, limit):
        self.dt = dt
        self.limit = limit
        super().__init__(f"dt = {dt:g} exceeds the explicit CFL bound {limit:g}")


class BlowUpError(RuntimeError):
    """Non-finite values appeared; carries the partial trajectory."""

    def __init__(self, t, snapshots):
        self.t = t
        self.snapshots = snapshots
        super().__init__(f"solution blew up at t = {t:g}")


@dataclass(frozen=True)
class Grid1D:
    a: float
    b: float
    nx: int

    def __post_init__(self):
        if self.nx < 8:
            raise ValueError("nx >= 8 required")
        if not self.b > self.a:
            raise ValueError("need b > a")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / (self.nx - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.nx)


@dataclass(frozen=True)
class FieldState:
    t: float
    values: np.ndarray  # (m, nx)
    grid: Grid1D


@dataclass(frozen=True)
class BoundaryCondition:
    """Per end, per component: zero Neumann or Dirichlet.

    Dirichlet values come from constants or from a reference solution
    evaluated at the endpoints.
    """

    codes: np.ndarray  # (m, 2) ints
    const_values: np.ndarray | None = None  # (m, 2)
    sol: object = None

    @classmethod
    def neumann_zero(cls, m):
        return cls(np.zeros((m, 2), dtype=np.int64))

    @classmethod
    def dirichlet_constant(cls, left, right):
        left = np.asarray(left, float)
        right = np.asarray(right, float)
        m = left.size
        return cls(np.ones((m, 2), dtype=np.int64), np.stack([left, right], axis=1))

    @classmethod
    def from_solution(cls, sol):
        return cls(np.ones((sol.model.m, 2), dtype=np.int64), sol=sol)

    def values_at(self, times, grid) -> np.ndarray:
        """(nt, m, 2) Dirichlet values at the given times (zeros where Neumann)."""
        times = np.asarray(times, float)
        m = self.codes.shape[0]
        out = np.zeros((times.size, m, 2))
        if self.sol is not None:
            left = np.asarray(self.sol.eval(times, grid.a), float)
            right = np.asarray(self.sol.eval(times, grid.b), float)
            out[:, :, 0] = left.T
            out[:, :, 1] = right.T
        elif self.const_values is not None:
            out[:] = self.const_values[None, :, :]
        bad = ~np.isfinite(out)
        if np.any(bad):
            raise ValueError("non-finite Dirichlet boundary values")
        return out


@dataclass(frozen=True)
class SimConfig:
    dt: float
    t_end: float
    scheme: str = "rk4"  # "rk4" (explicit) or "imex" (CN diffusion, explicit reaction)
    snapshot_stride: int = 0  # 0: keep only initial and final states
    safety: float = 0.9

    def __post_init__(self):
        if self.scheme not in ("rk4", "imex"):
            raise ValueError("scheme must be 'rk4' or 'imex'")


@dataclass(frozen=True)
class SimResult:
    snapshots: tuple  # FieldState, first is the initial state
    manifest: str

    @property
    def final(self) -> FieldState:
        return self.snapshots[-1]


def cfl_limit(model: DlvModel, grid: Grid1D, safety=0.9) -> float:
    """Explicit diffusion bound dt <= safety * min(lam) * dx^2 / 2."""
    return safety * float(np.min(model.lam_f)) * grid.dx**2 / 2.0


def init_from_solution(sol, grid: Grid1D, t0=0.0) -> FieldState:
    xs = grid.nodes()
    ok = np.atleast_1d(sol.validity(float(t0), xs))
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise ValueError(
            f"grid node {bad} (x = {xs[bad]:.6g}) is outside the validity domain of {sol.id}"
        )
    vals = np.asarray(sol.eval(float(t0), xs), float)
    return FieldState(float(t0), vals.copy(), grid)


def _model_arrays(model):
    return 1.0 / model.lam_f, model.a_f, model.b_f


def _manifest(model, grid, bc, cfg, nsteps):
    h = hashlib.sha256(serialize_model(model).encode()).hexdigest()[:16]
    kinds = {NEUMANN: "neumann", DIRICHLET: "dirichlet"}
    bclines = []
    for i in range(model.m):
        bclines.append(
            f"bc component {i + 1} = {kinds[int(bc.codes[i, 0])]} | {kinds[int(bc.codes[i, 1])]}"
        )
    return "\n".join(
        [
            f"model_hash = {h}",
            f"grid = {grid.a!r} {grid.b!r} {grid.nx}",
            f"scheme = {cfg.scheme}",
            f"dt = {cfg.dt!r}",
            f"t_end = {cfg.t_end!r}",
            f"steps = {nsteps}",
            *bclines,
        ]
    ) + "\n"


def run(model: DlvModel, state0: FieldState, bc: BoundaryCondition, cfg: SimConfig) -> SimResult:
    grid = state0.grid
    if state0.values.shape != (model.m, grid.nx):
        raise ValueError("state shape does not match model/grid")
    nsteps = int(round(cfg.t_end / cfg.dt))
    if abs(nsteps * cfg.dt - cfg.t_end) > 1e-9 * max(1.0, cfg.t_end):
        nsteps = int(math.ceil(cfg.t_end / cfg.dt - 1e-12))
    nsteps = max(nsteps, 1)
    dt = cfg.t_end / nsteps
    if cfg.scheme == "rk4":
        limit = cfl_limit(model, grid, cfg.safety)
        if dt > limit * (1 + 1e-12):
            raise CflError(dt, limit)
    lam_inv, a, b = _model_arrays(model)
    stride = cfg.snapshot_stride if cfg.snapshot_stride > 0 else nsteps
    nsnap = nsteps // stride + 1
    snaps = np.empty((nsnap, model.m, grid.nx))
    times = state0.t + dt * np.arange(nsteps + 1)
    bc_vals = bc.values_at(times, grid)
    vals = state0.values.astype(float).copy()
    kern = _kernels.rk4_run if cfg.scheme == "rk4" else _kernels.imex_run
    status = kern(vals, lam_inv, a, b, grid.dx, dt, nsteps,
                  bc.codes.astype(np.int64), bc_vals, stride, snaps)
    manifest = _manifest(model, grid, bc, cfg, nsteps)
    if status != 0:
        done = status // stride
        partial = tuple(
            FieldState(float(times[k * stride]), snaps[k].copy(), grid) for k in range(done + 1)
        )
        raise BlowUpError(float(times[status]), partial)
    full = [FieldState(float(times[k * stride]), snaps[k].copy(), grid) for k in range(nsnap)]
    if nsteps % stride != 0:
        full.append(FieldState(float(times[-1]), vals.copy(), grid))
    return SimResult(tuple(full), manifest)


def step(model: DlvModel, state: FieldState, bc: BoundaryCondition, dt, scheme="rk4") -> FieldState:
    """A single time step (same kernels as ``run``)."""
    cfg = SimConfig(dt=dt, t_end=dt, scheme=scheme)
    out = run(model, state, bc, cfg)
    final = out.final
    return FieldState(state.t + dt, final.values, state.grid)


def error_vs_solution(state: FieldState, sol) -> tuple:
    xs = state.grid.nodes()
    ref = np.asarray(sol.eval(state.t, xs), float)
    err = state.values - ref
    linf = float(np.max(np.abs(err)))
    l2 = float(np.sqrt(np.trapezoid(np.sum(err * err, axis=0), xs)))
    return linf, l2


def trapezoid_mass(state: FieldState) -> np.ndarray:
    xs = state.grid.nodes()
    return np.trapezoid(state.values, xs, axis=1)


def convergence_order(model, sol, grids, bc_builder, t_end, scheme="rk4",
                      safety=0.9, t0=0.0):
    """Least-squares slope of log error vs log dx with dt at the CFL bound
    (dt proportional to dx^2), so the spatial order dominates."""
    errs = []
    dxs = []
    for grid in grids:
        state0 = init_from_solution(sol, grid, t0)
        bc = bc_builder(grid)
        dt = cfl_limit(model, grid, safety)
        cfg = SimConfig(dt=dt, t_end=t_end, scheme=scheme, safety=safety)
        out = run(model, state0, bc, cfg)
        linf, _ = error_vs_solution(out.final, sol)
        errs.append(linf)
        dxs.append(grid.dx)
    logs = np.log(np.asarray(errs))
    logd = np.log(np.asarray(dxs))
    p = float(np.polyfit(logd, logs, 1)[0])
    return p, list(zip(dxs, errs))
