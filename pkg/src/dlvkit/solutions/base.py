"""Closed-form solution objects, catalog plumbing and shared evaluators."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..model import DlvModel, JetPoint, pde_residual, residual_scale

__all__ = [
    "ClosedFormSolution",
    "CatalogEntry",
    "TanhData",
    "RestrictionError",
    "DomainError",
    "UnknownSolutionError",
    "GUARD_BAND",
    "SELF_CHECK_TOL",
]

#: half-width (in the composite argument) of the band excluded around
#: singular manifolds; keeps coth/tan evaluation well conditioned
GUARD_BAND = 1e-6

#: construction-time residual check: |S_i| <= SELF_CHECK_TOL * (1 + scale)
SELF_CHECK_TOL = 1e-9


class RestrictionError(ValueError):
    """A parameter restriction of a catalog entry is violated."""

    def __init__(self, restriction: str, detail: str = ""):
        self.restriction = restriction
        super().__init__(f"restriction violated: {restriction}" + (f" ({detail})" if detail else ""))


class DomainError(ValueError):
    """Evaluation requested at an excluded (singular or invalid) point."""


class UnknownSolutionError(KeyError):
    """Identifier not present in the catalog."""


@dataclass(frozen=True)
class TanhData:
    """Traveling-wave data: components are polynomials in T = tanh(mu*(x - alpha*t))."""

    kind: str  # "tanh" or "coth"
    mu: float
    alpha: float  # wave speed in the omega = x - alpha*t convention
    coeffs: tuple  # per component, coefficient tuple low -> high degree


@dataclass(frozen=True)
class ClosedFormSolution:
    """A cataloged exact solution with analytic jet and validity domain."""

    id: str
    model: DlvModel
    params: dict
    derived: dict
    asymptote: tuple | None
    nonnegative: bool
    window: tuple  # (t0, t1, x0, x1) default verification window
    jet_fn: object  # (t, x) -> (u, u_t, u_x, u_xx), unchecked
    validity_fn: object = None  # (t, x) -> bool array; None means everywhere
    tanh_data: TanhData | None = None
    reduction_info: dict | None = None

    def validity(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        if self.validity_fn is None:
            return np.ones(np.broadcast_shapes(t.shape, x.shape), dtype=bool)
        return np.asarray(self.validity_fn(t, x), dtype=bool)

    def _require_valid(self, t, x):
        ok = self.validity(t, x)
        if not np.all(ok):
            bad = np.argwhere(~np.atleast_1d(ok))
            raise DomainError(
                f"{self.id}: evaluation outside the validity domain "
                f"(first offending index {tuple(bad[0])})"
            )

    def eval(self, t, x) -> np.ndarray:
        self._require_valid(t, x)
        u, _, _, _ = self.jet_fn(np.asarray(t, float), np.asarray(x, float))
        return u

    def jet(self, t, x) -> JetPoint:
        self._require_valid(t, x)
        u, ut, ux, uxx = self.jet_fn(np.asarray(t, float), np.asarray(x, float))
        return JetPoint(t=t, x=x, u=u, u_t=ut, u_x=ux, u_xx=uxx)

    def residual(self, t, x) -> np.ndarray:
        return pde_residual(self.model, self.jet(t, x))

    def window_grid(self, nt=21, nx=21):
        t0, t1, x0, x1 = self.window
        tt, xx = np.meshgrid(np.linspace(t0, t1, nt), np.linspace(x0, x1, nx), indexing="ij")
        return tt, xx


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    m: int
    family: str
    params: tuple  # (name, short description) pairs, in canonical order
    restrictions: tuple
    defaults: dict
    build: object  # dict -> ClosedFormSolution

    def param_names(self):
        return tuple(name for name, _ in self.params)


def finish(sol: ClosedFormSolution, check: bool = True) -> ClosedFormSolution:
    """Construction-time self check: residual small on a coarse window sample."""
    if check:
        tt, xx = sol.window_grid(5, 5)
        res = np.abs(sol.residual(tt, xx))
        scale = residual_scale(sol.model, sol.jet(tt, xx))
        worst = float(np.max(res / (1.0 + scale)))
        if worst > SELF_CHECK_TOL:
            raise AssertionError(
                f"{sol.id}: construction self-check failed, scaled residual {worst:.3e}"
            )
    return sol


# -- shared evaluators -------------------------------------------------------


def _polyval(coeffs, T):
    acc = np.zeros_like(T)
    for c in reversed(coeffs):
        acc = acc * T + float(c)
    return acc


def _polyder(coeffs):
    return tuple(k * float(c) for k, c in enumerate(coeffs))[1:] or (0.0,)


def tanh_front_jet(data: TanhData):
    """Jet closure for polynomial-in-T traveling waves.

    Both tanh and coth satisfy dT/domega = mu*(1 - T^2), so one code path
    serves both kinds.
    """
    mu = float(data.mu)
    alpha = float(data.alpha)
    polys = [tuple(float(c) for c in cs) for cs in data.coeffs]
    dpolys = [_polyder(p) for p in polys]
    ddpolys = [_polyder(p) for p in dpolys]
    is_coth = data.kind == "coth"

    def jet(t, x):
        w = x - alpha * t
        z = mu * w
        T = 1.0 / np.tanh(z) if is_coth else np.tanh(z)
        omt2 = 1.0 - T * T
        u = np.stack([_polyval(p, T) for p in polys])
        dU = np.stack([_polyval(p, T) for p in dpolys])
        ddU = np.stack([_polyval(p, T) for p in ddpolys])
        ux = mu * omt2 * dU
        ut = -alpha * ux
        uxx = mu * mu * omt2 * (-2.0 * T * dU + omt2 * ddU)
        return u, ut, ux, uxx

    return jet


def tanh_validity(data: TanhData, band: float = GUARD_BAND):
    """Excludes the blow-up plane z = 0 for coth fronts."""
    if data.kind != "coth":
        return None
    mu = float(data.mu)
    alpha = float(data.alpha)

    def ok(t, x):
        z = mu * (x - alpha * t)
        return np.abs(z) > band

    return ok


def make_solution(sol_id, model, jet_fn, window, params=None, derived=None,
                  asymptote=None, nonnegative=False, validity_fn=None,
                  tanh_data=None, reduction_info=None, check=True):
    """Assemble and self-check a solution object (also used for ad-hoc fields)."""
    sol = ClosedFormSolution(
        id=sol_id,
        model=model,
        params=dict(params or {}),
        derived=dict(derived or {}),
        asymptote=asymptote,
        nonnegative=nonnegative,
        window=window,
        jet_fn=jet_fn,
        validity_fn=validity_fn,
        tanh_data=tanh_data,
        reduction_info=reduction_info,
    )
    return finish(sol, check=check)


def is_rational(v) -> bool:
    return isinstance(v, (int, Fraction))


def ediv(x, y):
    """Division that keeps rational operands exact."""
    if is_rational(x) and is_rational(y):
        return Fraction(x) / Fraction(y)
    return float(x) / float(y)
