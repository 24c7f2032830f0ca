"""Ansatz machinery: reduce the PDE system to ODEs, integrate reduced systems,
and lift profiles back to PDE fields with analytic jets."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .model import DlvModel
from .solutions.base import RestrictionError, _polyder, _polyval, ediv, make_solution
from .symmetry import _detect_proportional_rows, _detect_uniform_rows

__all__ = [
    "ANSATZ_IDS",
    "ReducedSystem",
    "Profile",
    "tw_reduce",
    "a64_reduce",
    "build_ansatz",
    "reduced_residual",
    "integrate_reduced",
    "consistency_check",
    "registered_triples",
    "tw_profile_from_tanh",
]

ANSATZ_IDS = ("TW", "A64", "A619", "A620", "A621", "A73")


@dataclass(frozen=True)
class ReducedSystem:
    id: str
    order: int  # 2: second-order in the reduced variable; 1: first-order in t
    dim: int
    params: dict
    residual_fn: object  # (omega, phi, dphi, ddphi) -> (dim,) array
    rhs2_fn: object = None  # order 2: (omega, phi, dphi) -> ddphi
    rhs1_fn: object = None  # order 1: (omega, y) -> dy

    def residual(self, omega, phi, dphi, ddphi=None):
        phi = np.asarray(phi, float)
        dphi = np.asarray(dphi, float)
        if self.order == 2 and ddphi is None:
            raise ValueError("second-order system needs ddphi")
        ddphi = None if ddphi is None else np.asarray(ddphi, float)
        return self.residual_fn(omega, phi, dphi, ddphi)


class Profile:
    """phi(omega) with first and second derivatives.

    Either closed form (callable) or a dense-output interpolant from
    ``integrate_reduced``; the second derivative always comes from the
    closed form or the ODE right-hand side, never from differentiating an
    interpolant twice.
    """

    def __init__(self, dim, eval_fn, omega_range=None, diagnostic=None):
        self.dim = dim
        self._eval = eval_fn
        self.omega_range = omega_range
        self.diagnostic = diagnostic
        self.n_steps = None  # filled by integrate_reduced

    def eval(self, omega):
        phi, dphi, ddphi = self._eval(np.asarray(omega, dtype=float))
        return np.asarray(phi, float), np.asarray(dphi, float), np.asarray(ddphi, float)

    def shifted(self, s):
        return Profile(self.dim, lambda w: self._eval(np.asarray(w, float) + s),
                       self.omega_range, self.diagnostic)

    @classmethod
    def from_callable(cls, dim, fn, omega_range=None):
        return cls(dim, fn, omega_range)


# ---------------------------------------------------------------------------
# reduced systems
# ---------------------------------------------------------------------------


def tw_reduce(model: DlvModel, alpha) -> ReducedSystem:
    """Plane-wave reduction: phi_i'' + alpha lam_i phi_i' + phi_i (a + b phi)_i = 0."""
    lam = model.lam_f
    af = float(alpha)

    def residual(omega, phi, dphi, ddphi):
        return ddphi + af * lam.reshape((-1,) + (1,) * (phi.ndim - 1)) * dphi + model.reaction(phi)

    def rhs2(omega, phi, dphi):
        return -(af * lam * dphi + model.reaction(phi))

    return ReducedSystem("tw", 2, model.m, {"alpha": alpha}, residual, rhs2_fn=rhs2)


def a64_reduce(model: DlvModel, variant: bool = False) -> ReducedSystem:
    """Reduction of the equal-rows system through the separable ansatz.

    ``variant`` drops the a1*phi1 + a1*a2 terms of the first equation (the
    form produced by the other two operators of the same family).
    """
    a1, a2 = model.a
    lam1, lam2 = model.lam
    c2 = float(ediv(a2 * lam1 - a1 * lam2, lam1 - lam2))
    a1f, a2f = float(a1), float(a2)

    def residual(omega, phi, dphi, ddphi):
        r1 = ddphi[0] + phi[0] ** 2 + (a1f + a2f) * phi[0] + a1f * a2f
        if variant:
            r1 = r1 - a1f * phi[0] - a1f * a2f
        r2 = ddphi[1] + c2 * phi[1] + phi[0] * phi[1]
        return np.stack([r1, r2])

    def rhs2(omega, phi, dphi):
        g1 = phi[0] ** 2 + (a1f + a2f) * phi[0] + a1f * a2f
        if variant:
            g1 = g1 - a1f * phi[0] - a1f * a2f
        g2 = c2 * phi[1] + phi[0] * phi[1]
        return -np.stack([g1, g2])

    return ReducedSystem("sep-x", 2, 2, {"variant": variant}, residual, rhs2_fn=rhs2)


def _a6_t_reduce(model: DlvModel, alphas, poly: bool) -> ReducedSystem:
    """First-order (in t) reduced pair for the proportional-rows system."""
    lam1, lam2 = (float(v) for v in model.lam)
    a1, a2 = (float(v) for v in model.a)
    al0, al1, al2 = (float(v) for v in alphas)

    if not poly:
        def residual(omega, phi, dphi, ddphi=None):
            r1 = lam1 * dphi[0] - phi[0] * (a1 + phi[1])
            r2 = lam2 * dphi[1] - ((a2 + lam2 / lam1 * phi[1]) * phi[1]
                                   + al0 * (a1 * lam2 / lam1 - a2) * phi[0])
            return np.stack([r1, r2])

        def rhs1(omega, y):
            return np.array([
                y[0] * (a1 + y[1]) / lam1,
                ((a2 + lam2 / lam1 * y[1]) * y[1] + al0 * (a1 * lam2 / lam1 - a2) * y[0]) / lam2,
            ])

        rid = "sep-t"
    else:
        def residual(omega, phi, dphi, ddphi=None):
            r1 = lam1 * dphi[0] - phi[0] * (a1 + phi[1])
            r2 = lam2 * dphi[1] - (lam2 / lam1 * (a1 + phi[1]) * phi[1]
                                   - 2 * al2 * (lam1 - lam2) * phi[0])
            return np.stack([r1, r2])

        def rhs1(omega, y):
            return np.array([
                y[0] * (a1 + y[1]) / lam1,
                (lam2 / lam1 * (a1 + y[1]) * y[1] - 2 * al2 * (lam1 - lam2) * y[0]) / lam2,
            ])

        rid = "sep-t-poly"
    return ReducedSystem(rid, 1, 2, {"alphas": alphas}, residual, rhs1_fn=rhs1)


def a73_reduce(model: DlvModel) -> ReducedSystem:
    lam1, lam2 = model.lam[0], model.lam[1]
    a2, a3 = (float(v) for v in (model.a[1], model.a[2]))
    c1 = float(ediv(model.a[1] * lam1 - model.a[0] * lam2, lam1 - lam2))

    def residual(omega, phi, dphi, ddphi):
        s = phi[1] + phi[2]
        return np.stack([
            ddphi[0] + phi[0] * (c1 - s),
            ddphi[1] + phi[1] * (a2 - s),
            ddphi[2] + phi[2] * (a3 - s),
        ])

    def rhs2(omega, phi, dphi):
        s = phi[1] + phi[2]
        return -np.stack([phi[0] * (c1 - s), phi[1] * (a2 - s), phi[2] * (a3 - s)])

    return ReducedSystem("comp3-x", 2, 3, {}, residual, rhs2_fn=rhs2)


def reduced_residual(rs: ReducedSystem, profile: Profile, omega) -> np.ndarray:
    phi, dphi, ddphi = profile.eval(omega)
    return rs.residual(omega, phi, dphi, ddphi)


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------


def _lifted(model, jet_fn, name, window):
    return make_solution(name, model, jet_fn, window, check=False)


def build_ansatz(ansatz_id: str, model: DlvModel, params=None, window=(0.0, 1.0, -1.0, 1.0)):
    """Returns (lift, reduced_system); lift maps a Profile to a PDE field."""
    params = dict(params or {})
    if ansatz_id == "TW":
        alpha = params["alpha"]
        rs = tw_reduce(model, alpha)
        af = float(alpha)

        def lift(profile: Profile):
            def jet_fn(t, x):
                w = np.asarray(x, float) - af * np.asarray(t, float)
                phi, dphi, ddphi = profile.eval(w)
                return phi, -af * dphi, dphi, ddphi

            return _lifted(model, jet_fn, "TW-lift", window)

        return lift, rs

    if ansatz_id == "A64":
        scales = _detect_uniform_rows(model)
        if scales is None:
            raise RestrictionError("equal interaction rows", "ansatz needs the equal-rows system")
        a1, a2 = model.a
        lam1, lam2 = model.lam
        if a1 == a2 or float(lam1) == float(lam2):
            raise RestrictionError("a1 != a2 and lam1 != lam2")
        beta = float(ediv(a1 - a2, lam1 - lam2))
        a1f, a2f = float(a1), float(a2)
        p, q = (float(v) for v in scales)
        rs = a64_reduce(model, variant=bool(params.get("variant", False)))

        def lift(profile: Profile):
            def jet_fn(t, x):
                phi, dphi, ddphi = profile.eval(np.asarray(x, float))
                E = np.exp(beta * np.asarray(t, float))
                den = a1f - a2f
                u = (-E * phi[1] + a1f * phi[0] + a1f * a2f) / (den * p)
                v = (E * phi[1] - a2f * phi[0] - a1f * a2f) / (den * q)
                ut = -beta * E * phi[1] / (den * p)
                vt = beta * E * phi[1] / (den * q)
                ux = (-E * dphi[1] + a1f * dphi[0]) / (den * p)
                vx = (E * dphi[1] - a2f * dphi[0]) / (den * q)
                uxx = (-E * ddphi[1] + a1f * ddphi[0]) / (den * p)
                vxx = (E * ddphi[1] - a2f * ddphi[0]) / (den * q)
                return (np.stack([u, v]), np.stack([ut, vt]),
                        np.stack([ux, vx]), np.stack([uxx, vxx]))

            return _lifted(model, jet_fn, "A64-lift", window)

        return lift, rs

    if ansatz_id in ("A619", "A620", "A621"):
        scales = _detect_proportional_rows(model)
        if scales is None:
            raise RestrictionError("proportional interaction rows",
                                   "ansatz needs row2 = (lam2/lam1) row1")
        lam1, lam2 = model.lam
        a1, a2 = model.a
        kap2 = ediv(lam1 * a2 - lam2 * a1, lam1 - lam2)
        alphas = (params["alpha0"], params["alpha1"], params["alpha2"])
        al0, al1, al2 = (float(v) for v in alphas)
        p, q = (float(v) for v in scales)
        l1f = float(lam1)
        kf = math.sqrt(abs(float(kap2)))

        if ansatz_id == "A619":
            if not float(kap2) > 0:
                raise RestrictionError("kappa^2 > 0 for the trigonometric branch")

            def gparts(t, x):
                dec = np.exp(-kf * kf / l1f * t)
                S = al1 * np.sin(kf * x) + al2 * np.cos(kf * x)
                Sx = kf * (al1 * np.cos(kf * x) - al2 * np.sin(kf * x))
                g = al0 + dec * S
                return g, -kf * kf / l1f * dec * S, dec * Sx, -kf * kf * dec * S

            rs = _a6_t_reduce(model, alphas, poly=False)
        elif ansatz_id == "A620":
            if not float(kap2) < 0:
                raise RestrictionError("kappa^2 < 0 for the exponential branch")

            def gparts(t, x):
                grow = np.exp(kf * kf / l1f * t)
                ep, em = np.exp(kf * x), np.exp(-kf * x)
                S = al1 * ep + al2 * em
                Sx = kf * (al1 * ep - al2 * em)
                g = al0 + grow * S
                return g, kf * kf / l1f * grow * S, grow * Sx, kf * kf * grow * S

            rs = _a6_t_reduce(model, alphas, poly=False)
        else:
            if float(kap2) != 0:
                raise RestrictionError("lam1 a2 = lam2 a1 for the polynomial branch")

            def gparts(t, x):
                g = al0 + al1 * x + al2 * l1f * x * x + 2 * al2 * t
                zeros = np.zeros(np.broadcast_shapes(np.shape(t), np.shape(x)))
                return g, 2 * al2 + zeros, al1 + 2 * al2 * l1f * x + zeros, 2 * al2 * l1f + zeros

            rs = _a6_t_reduce(model, alphas, poly=True)

        def lift(profile: Profile):
            def jet_fn(t, x):
                t = np.asarray(t, float)
                x = np.asarray(x, float)
                y, dy, _ = profile.eval(t)
                g, gt, gx, gxx = gparts(t, x)
                U = y[0] * g
                Ut = dy[0] * g + y[0] * gt
                Ux = y[0] * gx
                Uxx = y[0] * gxx
                u, ut, ux, uxx = U / p, Ut / p, Ux / p, Uxx / p
                v = (y[1] - U) / q
                vt = (dy[1] - Ut) / q
                vx = -Ux / q
                vxx = -Uxx / q
                return (np.stack([u, v]), np.stack([ut, vt]),
                        np.stack([ux, vx]), np.stack([uxx, vxx]))

            return _lifted(model, jet_fn, f"{ansatz_id}-lift", window)

        return lift, rs

    if ansatz_id == "A73":
        scales = _detect_uniform_rows(model)
        if scales is None or model.m != 3:
            raise RestrictionError("uniform interaction rows (three components)")
        lam1, lam2, lam3 = model.lam
        a1, a2, a3 = model.a
        bal = float((lam2 - lam3) * a1 - (lam1 - lam3) * a2 + (lam1 - lam2) * a3)
        if abs(bal) > 1e-12 * (1 + max(abs(float(v)) for v in (a1, a2, a3))):
            raise RestrictionError(
                "(lam2-lam3) a1 - (lam1-lam3) a2 + (lam1-lam2) a3 = 0", f"got {bal:.3e}")
        if float(lam1) == float(lam2):
            raise RestrictionError("lam1 != lam2")
        delta = ediv(a1 - a2, lam1 - lam2)
        if delta == 0:
            raise RestrictionError("delta != 0")
        alpha = params["alpha"]
        dl, alf = float(delta), float(alpha)
        p, q, r = (float(v) for v in scales)
        rs = a73_reduce(model)

        def lift(profile: Profile):
            def jet_fn(t, x):
                t = np.asarray(t, float)
                x = np.asarray(x, float)
                phi, dphi, ddphi = profile.eval(x)
                E = np.exp(dl * t)
                f = phi[0] * E
                u = -f / p
                ut = -dl * f / p
                ux = -dphi[0] * E / p
                uxx = -ddphi[0] * E / p
                cv = alf / dl - 1.0
                v = -(phi[1] + cv * f) / q
                vt = -cv * dl * f / q
                vx = -(dphi[1] + cv * dphi[0] * E) / q
                vxx = -(ddphi[1] + cv * ddphi[0] * E) / q
                cw = -alf / dl
                w = -(phi[2] + cw * f) / r
                wt = -cw * dl * f / r
                wx = -(dphi[2] + cw * dphi[0] * E) / r
                wxx = -(ddphi[2] + cw * ddphi[0] * E) / r
                return (np.stack([u, v, w]), np.stack([ut, vt, wt]),
                        np.stack([ux, vx, wx]), np.stack([uxx, vxx, wxx]))

            return _lifted(model, jet_fn, "A73-lift", window)

        return lift, rs

    raise ValueError(f"unknown ansatz {ansatz_id!r} (one of {ANSATZ_IDS})")


# ---------------------------------------------------------------------------
# numerical integration of reduced systems
# ---------------------------------------------------------------------------


def integrate_reduced(rs: ReducedSystem, init, span, tol=1e-10) -> Profile:
    """Adaptive Runge-Kutta with dense output; near blow-up the profile is
    truncated and carries a diagnostic instead of failing."""
    y0 = np.asarray(init, dtype=float).ravel()
    if rs.order == 2:
        if y0.size != 2 * rs.dim:
            raise ValueError(f"need (phi, dphi) initial state of size {2 * rs.dim}")

        def rhs(w, y):
            phi, dphi = y[: rs.dim], y[rs.dim:]
            return np.concatenate([dphi, rs.rhs2_fn(w, phi, dphi)])
    else:
        if y0.size != rs.dim:
            raise ValueError(f"need initial state of size {rs.dim}")

        def rhs(w, y):
            return rs.rhs1_fn(w, y)

    out = solve_ivp(rhs, (float(span[0]), float(span[1])), y0, method="RK45",
                    rtol=tol, atol=tol, dense_output=True)
    diagnostic = None
    if not out.success:
        diagnostic = f"integration stopped at omega = {out.t[-1]:.6g}: {out.message}"
    dense = out.sol
    reached = out.t[-1]

    lo_bound = min(float(span[0]), float(reached))
    hi_bound = max(float(span[0]), float(reached))

    if rs.order == 2:
        def eval_fn(w):
            w_arr = np.asarray(w, float)
            flat = np.atleast_1d(w_arr).ravel()
            y = dense(flat)
            phi, dphi = y[: rs.dim], y[rs.dim:]
            dd = np.empty_like(phi)
            for i, wi in enumerate(flat):
                dd[:, i] = rs.rhs2_fn(wi, phi[:, i], dphi[:, i])
            shape = (rs.dim,) + w_arr.shape
            return phi.reshape(shape), dphi.reshape(shape), dd.reshape(shape)
    else:
        def eval_fn(w):
            w_arr = np.asarray(w, float)
            flat = np.atleast_1d(w_arr).ravel()
            y = dense(flat)
            dphi = np.empty_like(y)
            ddphi = np.empty_like(y)
            for i, wi in enumerate(flat):
                dphi[:, i] = rhs(wi, y[:, i])
                h = 1e-6 * (1.0 + abs(wi))
                lo = max(lo_bound, wi - h)
                hi = min(hi_bound, wi + h)
                ddphi[:, i] = (rhs(hi, dense(hi)) - rhs(lo, dense(lo))) / (hi - lo)
            shape = (rs.dim,) + w_arr.shape
            return y.reshape(shape), dphi.reshape(shape), ddphi.reshape(shape)

    prof = Profile(rs.dim, eval_fn, (float(span[0]), float(reached)), diagnostic)
    prof.n_steps = len(out.t)
    return prof


# ---------------------------------------------------------------------------
# consistency and registered triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    max_pde_residual: float
    max_reduced_residual: float
    bound: float
    ok: bool


def consistency_check(model, field, rs, profile, t_grid, x_grid, omegas,
                      factor=100.0, floor=1e-9) -> ConsistencyReport:
    """PDE residual of the lifted field is controlled by the reduced residual."""
    from .model import pde_residual, residual_scale

    tt, xx = np.meshgrid(np.asarray(t_grid, float), np.asarray(x_grid, float), indexing="ij")
    jet = field.jet(tt, xx)
    scale = residual_scale(model, jet)
    pde = float(np.max(np.abs(pde_residual(model, jet)) / (1.0 + scale)))
    red = float(np.max(np.abs(reduced_residual(rs, profile, np.asarray(omegas, float)))))
    bound = factor * (red + floor)
    return ConsistencyReport(pde, red, bound, pde <= bound)


def dump_profile(profile: Profile, omegas, path):
    """CSV dump: omega, phi_k, dphi_k, ddphi_k columns."""
    from .textio import write_csv

    omegas = np.asarray(omegas, float)
    phi, dphi, ddphi = profile.eval(omegas)
    header = "omega," + ",".join(
        f"phi{k + 1},dphi{k + 1},ddphi{k + 1}" for k in range(profile.dim)
    )
    cols = [omegas]
    for k in range(profile.dim):
        cols += [phi[k], dphi[k], ddphi[k]]
    write_csv(path, header, cols)


def tw_profile_from_tanh(data) -> Profile:
    """Closed-form plane-wave profile from polynomial-in-T data."""
    mu = float(data.mu)
    polys = [tuple(float(c) for c in cs) for cs in data.coeffs]
    dpolys = [_polyder(p) for p in polys]
    ddpolys = [_polyder(p) for p in dpolys]
    is_coth = data.kind == "coth"

    def eval_fn(w):
        z = mu * np.asarray(w, float)
        T = 1.0 / np.tanh(z) if is_coth else np.tanh(z)
        omt2 = 1.0 - T * T
        phi = np.stack([_polyval(p, T) for p in polys])
        dU = np.stack([_polyval(p, T) for p in dpolys])
        ddU = np.stack([_polyval(p, T) for p in ddpolys])
        dphi = mu * omt2 * dU
        ddphi = mu * mu * omt2 * (-2.0 * T * dU + omt2 * ddU)
        return phi, dphi, ddphi

    return Profile(len(polys), eval_fn)


def registered_triples():
    """(solution, ansatz id, lifted field, reduced system, profile, omegas) rows.

    Every catalog entry constructed through an ansatz appears here; lifting
    the exact reduced solution must reproduce the entry pointwise.
    """
    from . import solutions

    rows = []
    for sid in solutions.TANH_IDS:
        sol = solutions.default_solution(sid)
        data = sol.tanh_data
        profile = tw_profile_from_tanh(data)
        lift, rs = build_ansatz("TW", sol.model, {"alpha": data.alpha}, window=sol.window)
        if sid == "FISHER_COTH":
            omegas = np.linspace(0.5, 5.0, 33)
        else:
            omegas = np.linspace(-5.0, 5.0, 33)
        rows.append((sol, "TW", lift(profile), rs, profile, omegas))

    for sid in ("CD11_EXP", "CD11_TRIG", "CD11_TANH2", "CD11_TANH3", "CD11_COMP"):
        sol = solutions.default_solution(sid)
        info = sol.reduction_info
        profile = Profile(2, info["profile_x"])
        lift, rs = build_ansatz("A64", sol.model, {}, window=sol.window)
        t0, t1, x0, x1 = sol.window
        omegas = np.linspace(x0, x1, 33)
        if sid == "CD11_TANH3":
            omegas = np.linspace(max(x0, 0.3), x1, 33)
        rows.append((sol, "A64", lift(profile), rs, profile, omegas))

    sol = solutions.default_solution("CD21_CASE1")
    info = sol.reduction_info
    al = info["alphas"]

    def prof_t(t, info=info):
        y, dy = info["profile_t"](t)
        h = 1e-6
        _, dyp = info["profile_t"](np.asarray(t, float) + h)
        _, dym = info["profile_t"](np.asarray(t, float) - h)
        return y, dy, (dyp - dym) / (2 * h)

    profile = Profile(2, prof_t)
    lift, rs = build_ansatz(
        "A619", sol.model,
        {"alpha0": al[0], "alpha1": al[1], "alpha2": al[2]}, window=sol.window)
    rows.append((sol, "A619", lift(profile), rs, profile, np.linspace(0.0, 2.0, 33)))

    sol = solutions.default_solution("CD13_3COMP")
    info = sol.reduction_info
    profile = Profile(3, info["profile_x"])
    lift, rs = build_ansatz("A73", sol.model, {"alpha": sol.params["alpha"]}, window=sol.window)
    t0, t1, x0, x1 = sol.window
    rows.append((sol, "A73", lift(profile), rs, profile, np.linspace(x0, x1, 33)))
    return rows
