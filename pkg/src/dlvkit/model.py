"""Normalized m-component diffusive Lotka-Volterra systems.

The working form puts the inverse diffusivities on the time derivative,

    lam_i * u^i_t = u^i_xx + u^i * (a_i + sum_j b_ij u^j),    i = 1..m,

so the second-order terms carry no coefficients.  ``DlvModel`` stores
``lam``, ``a`` and the interaction matrix ``b`` exactly as given (Fractions
survive), and exposes float views for numerics.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real

import numpy as np

__all__ = [
    "DlvModel",
    "JetPoint",
    "SteadyState",
    "SteadyStateReport",
    "NondegeneracyReport",
    "ModelError",
    "pde_residual",
    "residual_scale",
    "steady_states",
    "nondegeneracy",
]

#: absolute tolerance, scaled by (1 + magnitude of the largest term)
BASE_TOL = 1e-12


class ModelError(ValueError):
    """Inconsistent dimensions or invalid coefficients."""


def _as_number(v):
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, Real):
        return float(v)
    raise ModelError(f"not a number: {v!r}")


@dataclass(frozen=True)
class DlvModel:
    """Immutable m-component DLV system in normalized form."""

    lam: tuple
    a: tuple
    b: tuple  # m rows of m entries
    name: str | None = None

    def __post_init__(self):
        lam = tuple(_as_number(v) for v in self.lam)
        a = tuple(_as_number(v) for v in self.a)
        b = tuple(tuple(_as_number(v) for v in row) for row in self.b)
        m = len(lam)
        if m < 2:
            raise ModelError("need at least two components")
        if len(a) != m or len(b) != m or any(len(row) != m for row in b):
            raise ModelError(
                f"dimension mismatch: m={m}, len(a)={len(a)}, b is "
                f"{len(b)}x{tuple(len(r) for r in b)}"
            )
        for i, v in enumerate(lam):
            if not (v > 0 and np.isfinite(float(v))):
                raise ModelError(f"lambda[{i}] = {v} must be positive and finite")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return len(self.lam)

    @cached_property
    def lam_f(self) -> np.ndarray:
        return np.array([float(v) for v in self.lam])

    @cached_property
    def a_f(self) -> np.ndarray:
        return np.array([float(v) for v in self.a])

    @cached_property
    def b_f(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.b])

    # -- constructor sugar for the named two/three component forms ---------

    @classmethod
    def two_component(cls, lam1, lam2, a1, a2, b1, c1, b2, c2, name=None):
        """Reactions u*(a1+b1*u+c1*v), v*(a2+b2*u+c2*v)."""
        return cls((lam1, lam2), (a1, a2), ((b1, c1), (b2, c2)), name)

    @classmethod
    def three_component(cls, lam, a, bce, name=None):
        """``bce`` holds the rows (b_k, c_k, e_k), k = 1..3."""
        lam = tuple(lam)
        a = tuple(a)
        rows = tuple(tuple(r) for r in bce)
        if len(lam) != 3 or len(a) != 3 or len(rows) != 3:
            raise ModelError("three_component wants three of everything")
        return cls(lam, a, rows, name)

    # -- evaluation ---------------------------------------------------------

    def reaction(self, u) -> np.ndarray:
        """r_i = u_i * (a_i + sum_j b_ij u_j); vectorized over trailing axes."""
        u = np.asarray(u, dtype=float)
        if u.shape[0] != self.m:
            raise ModelError(f"u has {u.shape[0]} components, model has {self.m}")
        lin = self.a_f.reshape((self.m,) + (1,) * (u.ndim - 1)) + np.tensordot(
            self.b_f, u, axes=(1, 0)
        )
        return u * lin

    def reaction_jacobian(self, u) -> np.ndarray:
        """d r_i / d u_j at a single state vector ``u``."""
        u = np.asarray(u, dtype=float)
        jac = u[:, None] * self.b_f
        jac[np.diag_indices(self.m)] += self.a_f + self.b_f @ u
        return jac

    def rescale_components(self, scales) -> "DlvModel":
        """Substitution u_i -> s_i * u_i: keeps lam, a; maps b_ij -> b_ij * s_j."""
        scales = tuple(_as_number(s) for s in scales)
        if len(scales) != self.m:
            raise ModelError("one scale per component")
        if any(s == 0 for s in scales):
            raise ModelError("scales must be nonzero")
        b = tuple(tuple(bij * sj for bij, sj in zip(row, scales)) for row in self.b)
        return DlvModel(self.lam, self.a, b, self.name)


@dataclass(frozen=True)
class JetPoint:
    """Point values of a solution and its first/second derivatives.

    Fields are (m,)-vectors or (m, ...) arrays for grid evaluation.
    """

    t: object
    x: object
    u: np.ndarray
    u_t: np.ndarray
    u_x: np.ndarray
    u_xx: np.ndarray


def pde_residual(model: DlvModel, jet: JetPoint) -> np.ndarray:
    """S_i = lam_i u_t - u_xx - u*(a + b u) per component."""
    u = np.asarray(jet.u, dtype=float)
    if u.shape[0] != model.m:
        raise ModelError("jet dimensions do not match the model")
    lam = model.lam_f.reshape((model.m,) + (1,) * (u.ndim - 1))
    return lam * np.asarray(jet.u_t, float) - np.asarray(jet.u_xx, float) - model.reaction(u)


def residual_scale(model: DlvModel, jet: JetPoint) -> np.ndarray:
    """Largest contributing term magnitude, for relative residual tolerances."""
    u = np.asarray(jet.u, dtype=float)
    lam = model.lam_f.reshape((model.m,) + (1,) * (u.ndim - 1))
    terms = np.stack(
        [
            np.abs(lam * np.asarray(jet.u_t, float)),
            np.abs(np.asarray(jet.u_xx, float)),
            np.abs(model.reaction(u)),
        ]
    )
    return terms.max(axis=0)


# -- steady states ----------------------------------------------------------


@dataclass(frozen=True)
class SteadyState:
    u: tuple
    active_set: frozenset


@dataclass(frozen=True)
class SteadyStateReport:
    states: tuple
    degenerate: tuple  # active sets whose linear subsystem is singular

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def contains(self, u, tol=1e-10) -> bool:
        """Membership: matches a listed state, or sits on a reported degenerate
        family with vanishing reaction."""
        u = np.asarray(u, dtype=float)
        for st in self.states:
            if np.max(np.abs(u - np.array(st.u))) <= tol * (1 + np.max(np.abs(u))):
                return True
        active = frozenset(int(i) for i in np.nonzero(np.abs(u) > tol)[0])
        if active in self.degenerate:
            return True
        return False


def steady_states(model: DlvModel, tol=BASE_TOL) -> SteadyStateReport:
    """Enumerate constant solutions of reaction(u)=0 over active subsets.

    For every subset S of components the remaining ones are pinned to zero and
    the linear system a_i + sum_{j in S} b_ij u_j = 0 (i in S) is solved.
    Singular subsystems are reported, not dropped.
    """
    m = model.m
    a = model.a_f
    b = model.b_f
    states: list[SteadyState] = []
    degenerate: list[frozenset] = []

    def record(uvec, active):
        scale = 1.0 + float(np.max(np.abs(uvec)))
        if np.max(np.abs(model.reaction(uvec))) > tol * scale:
            return
        for st in states:
            if np.max(np.abs(uvec - np.array(st.u))) <= 1e-12 * scale:
                return
        states.append(SteadyState(tuple(float(v) for v in uvec), frozenset(active)))

    for r in range(m + 1):
        for active in itertools.combinations(range(m), r):
            if r == 0:
                record(np.zeros(m), active)
                continue
            idx = list(active)
            sub = b[np.ix_(idx, idx)]
            rhs = -a[idx]
            if np.linalg.matrix_rank(sub, tol=1e-12 * max(1.0, np.abs(sub).max())) < r:
                degenerate.append(frozenset(active))
                continue
            try:
                sol = np.linalg.solve(sub, rhs)
            except np.linalg.LinAlgError:
                degenerate.append(frozenset(active))
                continue
            uvec = np.zeros(m)
            uvec[idx] = sol
            record(uvec, active)

    return SteadyStateReport(tuple(states), tuple(degenerate))


# -- nondegeneracy ----------------------------------------------------------


@dataclass(frozen=True)
class NondegeneracyReport:
    applicable: bool
    flags: dict
    passed: bool
    note: str = ""


def nondegeneracy(model: DlvModel) -> NondegeneracyReport:
    """Flags for the natural coupling/nonlinearity inequalities (m = 2 or 3).

    m=2: each equation nonlinear, system not autonomous.
    m=3: each equation coupled to at least one other component.
    Other m: explicitly not applicable.
    """
    b = model.b_f
    if model.m == 2:
        b1, c1 = b[0]
        b2, c2 = b[1]
        flags = {
            "b1^2+c1^2 != 0": b1 * b1 + c1 * c1 != 0.0,
            "b2^2+c2^2 != 0": b2 * b2 + c2 * c2 != 0.0,
            "c1^2+b2^2 != 0": c1 * c1 + b2 * b2 != 0.0,
        }
        return NondegeneracyReport(True, flags, all(flags.values()))
    if model.m == 3:
        flags = {
            "c1^2+e1^2 != 0": b[0, 1] ** 2 + b[0, 2] ** 2 != 0.0,
            "b2^2+e2^2 != 0": b[1, 0] ** 2 + b[1, 2] ** 2 != 0.0,
            "b3^2+c3^2 != 0": b[2, 0] ** 2 + b[2, 1] ** 2 != 0.0,
        }
        return NondegeneracyReport(True, flags, all(flags.values()))
    return NondegeneracyReport(
        False, {}, True, note=f"no nondegeneracy conditions recorded for m={model.m}"
    )
