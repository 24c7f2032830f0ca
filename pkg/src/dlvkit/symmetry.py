"""Infinitesimal operators admitted by DLV systems.

Operators are stored with evaluable coefficients (xi0, xi1, eta_1..eta_m),
an applicability predicate over models, and (for the translation/scaling
subalgebra) a finite flow acting on solution objects.  Invariance is
exercised through the two testable consequences used downstream: the
invariant-surface conditions Q(u^i) = 0 on ansatz-built solutions, and
residual preservation under the implemented flows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import DlvModel
from .solutions.base import DomainError, ediv, make_solution

__all__ = [
    "SymmetryOperator",
    "GFunction",
    "UnsupportedFlowError",
    "operator_catalog",
    "invariant_surface_residual",
    "lie_transform",
    "g_function",
    "rescale_operator",
    "pair_operator",
    "registered_pairs",
]

LIE = "Lie"
QCOND = "QConditional"
QCOND1 = "QConditionalFirstType"

_EQ_TOL = 1e-12


class UnsupportedFlowError(ValueError):
    """The operator has no implemented finite transformation."""


def _eq(x, y) -> bool:
    xf, yf = float(x), float(y)
    return abs(xf - yf) <= _EQ_TOL * (1.0 + max(abs(xf), abs(yf)))


def _zeros_like(u):
    return np.zeros_like(np.asarray(u, dtype=float))


@dataclass(frozen=True)
class SymmetryOperator:
    id: str
    kind: str
    m: int
    formula: str
    coeffs: object  # (t, x, u) -> (xi0, xi1, eta array shaped like u)
    applicability: object  # DlvModel -> bool
    applicability_note: str = ""
    domain: object = None  # (t, x, u) -> bool array, None = everywhere
    flow: object = None  # (eps, solution) -> transformed solution
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        lines = [f"{self.id}  [{self.kind}]", f"  coefficients: {self.formula}"]
        if self.applicability_note:
            lines.append(f"  applies when: {self.applicability_note}")
        if self.params:
            lines.append(f"  parameters: {self.params}")
        return "\n".join(lines)


def invariant_surface_residual(op: SymmetryOperator, sol, t, x) -> np.ndarray:
    """Q(u^i) = xi0 u_t + xi1 u_x - eta_i on the solution's analytic jet."""
    jet = sol.jet(t, x)
    u = np.asarray(jet.u, dtype=float)
    if u.shape[0] != op.m:
        raise ValueError(f"operator {op.id} is {op.m}-component, solution has {u.shape[0]}")
    if op.domain is not None:
        ok = np.asarray(op.domain(np.asarray(t, float), np.asarray(x, float), u))
        if not np.all(ok):
            raise DomainError(f"{op.id}: point outside the operator's domain")
    xi0, xi1, eta = op.coeffs(np.asarray(t, float), np.asarray(x, float), u)
    return np.asarray(xi0) * jet.u_t + np.asarray(xi1) * jet.u_x - eta


# ---------------------------------------------------------------------------
# flows
# ---------------------------------------------------------------------------


def _wrap(sol, sid, jet_fn, window, validity_fn):
    return make_solution(
        sid, sol.model, jet_fn, window,
        params=getattr(sol, "params", {}), validity_fn=validity_fn, check=False,
    )


def _flow_shift_t(eps, sol):
    def jet_fn(t, x):
        j = sol.jet(np.asarray(t, float) - eps, x)
        return j.u, j.u_t, j.u_x, j.u_xx

    def valid(t, x):
        return sol.validity(np.asarray(t, float) - eps, x)

    t0, t1, x0, x1 = sol.window
    return _wrap(sol, f"{sol.id}|P_t({eps})", jet_fn, (t0 + eps, t1 + eps, x0, x1), valid)


def _flow_shift_x(eps, sol):
    def jet_fn(t, x):
        j = sol.jet(t, np.asarray(x, float) - eps)
        return j.u, j.u_t, j.u_x, j.u_xx

    def valid(t, x):
        return sol.validity(t, np.asarray(x, float) - eps)

    t0, t1, x0, x1 = sol.window
    return _wrap(sol, f"{sol.id}|P_x({eps})", jet_fn, (t0, t1, x0 + eps, x1 + eps), valid)


def _flow_scaling(eps, sol):
    c2, c1 = math.exp(-2.0 * eps), math.exp(-eps)

    def jet_fn(t, x):
        j = sol.jet(c2 * np.asarray(t, float), c1 * np.asarray(x, float))
        return c2 * j.u, c2 * c2 * j.u_t, c2 * c1 * j.u_x, c2 * c2 * j.u_xx

    def valid(t, x):
        return sol.validity(c2 * np.asarray(t, float), c1 * np.asarray(x, float))

    t0, t1, x0, x1 = sol.window
    window = tuple(sorted((t0 / c2, t1 / c2))) + tuple(sorted((x0 / c1, x1 / c1)))
    return _wrap(sol, f"{sol.id}|D({eps})", jet_fn, window, valid)


def _flow_scale_component(idx):
    def flow(eps, sol):
        fac = math.exp(eps)

        def jet_fn(t, x):
            j = sol.jet(t, x)
            out = []
            for arr in (j.u, j.u_t, j.u_x, j.u_xx):
                arr = np.array(arr, dtype=float)
                arr[idx] = fac * arr[idx]
                out.append(arr)
            return tuple(out)

        return _wrap(sol, f"{sol.id}|scale{idx}({eps})", jet_fn, sol.window, sol.validity)

    return flow


def _flow_shear(src, dst):
    def flow(eps, sol):
        def jet_fn(t, x):
            j = sol.jet(t, x)
            out = []
            for arr in (j.u, j.u_t, j.u_x, j.u_xx):
                arr = np.array(arr, dtype=float)
                arr[dst] = arr[dst] + eps * arr[src]
                out.append(arr)
            return tuple(out)

        return _wrap(sol, f"{sol.id}|shear{src}{dst}({eps})", jet_fn, sol.window, sol.validity)

    return flow


def _flow_r(b1, lam):
    b1f, lamf = float(b1), float(lam)

    def flow(eps, sol):
        def jet_fn(t, x):
            j = sol.jet(t, x)
            t_arr = np.asarray(t, dtype=float)
            u, ut, ux, uxx = (np.array(a, dtype=float) for a in (j.u, j.u_t, j.u_x, j.u_xx))
            base_u = np.asarray(j.u, dtype=float)
            u[1] = u[1] + eps * (b1f * t_arr * base_u[0] + lamf)
            ut[1] = ut[1] + eps * b1f * (base_u[0] + t_arr * np.asarray(j.u_t, float)[0])
            ux[1] = ux[1] + eps * b1f * t_arr * np.asarray(j.u_x, float)[0]
            uxx[1] = uxx[1] + eps * b1f * t_arr * np.asarray(j.u_xx, float)[0]
            return u, ut, ux, uxx

        return _wrap(sol, f"{sol.id}|R({eps})", jet_fn, sol.window, sol.validity)

    return flow


def lie_transform(op: SymmetryOperator, eps: float, sol):
    """Apply the operator's finite transformation to a solution object."""
    if op.flow is None:
        raise UnsupportedFlowError(f"operator {op.id} has no implemented flow")
    if not op.applicability(sol.model):
        raise ValueError(f"operator {op.id} does not apply to the solution's model")
    return op.flow(float(eps), sol)


# ---------------------------------------------------------------------------
# operator constructors
# ---------------------------------------------------------------------------


def _const_ops(m):
    def pt_coeffs(t, x, u):
        return 1.0, 0.0, _zeros_like(u)

    def px_coeffs(t, x, u):
        return 0.0, 1.0, _zeros_like(u)

    pt = SymmetryOperator(
        "P_t", LIE, m, "d/dt", pt_coeffs, lambda model: True, "always",
        flow=_flow_shift_t,
    )
    px = SymmetryOperator(
        "P_x", LIE, m, "d/dx", px_coeffs, lambda model: True, "always",
        flow=_flow_shift_x,
    )
    return [pt, px]


def _scaling_op(m):
    def coeffs(t, x, u):
        return 2.0 * np.asarray(t, float), np.asarray(x, float), -2.0 * np.asarray(u, float)

    comps = "u,v,w"[: 2 * m - 1]
    return SymmetryOperator(
        "D", LIE, m, f"2t d/dt + x d/dx - 2({comps}) on the components",
        coeffs,
        lambda model: all(av == 0 for av in model.a_f),
        "all linear rates vanish",
        flow=_flow_scaling,
    )


def _vdv_op():
    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[1] = u[1]
        return 0.0, 0.0, eta

    return SymmetryOperator(
        "Vv", LIE, 2, "v d/dv", coeffs,
        lambda model: model.b_f[0, 1] == 0 and model.b_f[1, 1] == 0,
        "second column of the interaction matrix vanishes",
        flow=_flow_scale_component(1),
    )


def _udv_op():
    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[1] = u[0]
        return 0.0, 0.0, eta

    def applies(model):
        b = model.b_f
        return (
            _eq(model.lam_f[0], model.lam_f[1])
            and _eq(model.a_f[0], model.a_f[1])
            and _eq(b[0, 0], b[1, 0])
            and b[0, 1] == 0
            and b[1, 1] == 0
        )

    return SymmetryOperator(
        "Uv", LIE, 2, "u d/dv", coeffs, applies,
        "lam1 = lam2, a1 = a2, b1 = b2, second column vanishes",
        flow=_flow_shear(0, 1),
    )


def _expv_op(model):
    a1, b1, lam = model.a[0], model.b[0][0], model.lam[0]
    rate = float(ediv(a1, lam))
    a1f, b1f = float(a1), float(b1)

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[1] = (a1f + b1f * u[0]) * np.exp(rate * np.asarray(t, float))
        return 0.0, 0.0, eta

    def applies(mod):
        b = mod.b_f
        return (
            _eq(mod.lam_f[0], mod.lam_f[1])
            and _eq(mod.a_f[0], mod.a_f[1])
            and mod.a_f[0] != 0
            and _eq(b[0, 0], b[1, 0])
            and b[0, 1] == 0
            and b[1, 1] == 0
        )

    return SymmetryOperator(
        "EXPv", LIE, 2, "(a1 + b1 u) exp(a1 t / lam) d/dv", coeffs, applies,
        "lam1 = lam2, a1 = a2 != 0, b1 = b2, second column vanishes",
    )


def _r_op(model):
    b1, lam = model.b[0][0], model.lam[0]
    b1f, lamf = float(b1), float(lam)

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[1] = b1f * np.asarray(t, float) * u[0] + lamf
        return 0.0, 0.0, eta

    def applies(mod):
        b = mod.b_f
        return (
            _eq(mod.lam_f[0], mod.lam_f[1])
            and mod.a_f[0] == 0
            and mod.a_f[1] == 0
            and b[0, 1] == 0
            and b[1, 1] == 0
            and _eq(b[0, 0], b[1, 0])
            and b[0, 0] != 0
        )

    return SymmetryOperator(
        "R", LIE, 2, "(b1 t u + lam) d/dv", coeffs, applies,
        "lam1 = lam2, zero rates, b1 = b2 != 0, second column vanishes",
        flow=_flow_r(b1, lam),
    )


def _table1_ops(model):
    ops = []
    b = model.b_f
    a = model.a_f
    lam = model.lam_f
    if a[0] == 0 and a[1] == 0:
        ops.append(_scaling_op(2))
    col2_zero = b[0, 1] == 0 and b[1, 1] == 0
    if col2_zero:
        ops.append(_vdv_op())
        if _eq(lam[0], lam[1]) and _eq(a[0], a[1]) and _eq(b[0, 0], b[1, 0]):
            ops.append(_udv_op())
            if a[0] != 0:
                ops.append(_expv_op(model))
            if a[0] == 0 and b[0, 0] != 0:
                ops.append(_r_op(model))
    return [op for op in ops if op.applicability(model)]


# -- m=3 Lie table -----------------------------------------------------------


def _udu_op():
    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[0] = u[0]
        return 0.0, 0.0, eta

    return SymmetryOperator(
        "Uu", LIE, 3, "u d/du", coeffs,
        lambda model: np.all(model.b_f[:, 0] == 0),
        "first column of the interaction matrix vanishes",
        flow=_flow_scale_component(0),
    )


def _wdw_op():
    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = u[2]
        return 0.0, 0.0, eta

    return SymmetryOperator(
        "Ww", LIE, 3, "w d/dw", coeffs,
        lambda model: np.all(model.b_f[:, 2] == 0),
        "third column of the interaction matrix vanishes",
        flow=_flow_scale_component(2),
    )


def _vdw_op():
    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = u[1]
        return 0.0, 0.0, eta

    def applies(model):
        b = model.b_f
        return (
            _eq(model.lam_f[1], model.lam_f[2])
            and _eq(model.a_f[1], model.a_f[2])
            and np.all(b[:, 2] == 0)
            and _eq(b[1, 0], b[2, 0])
            and _eq(b[1, 1], b[2, 1])
        )

    return SymmetryOperator(
        "Vw", LIE, 3, "v d/dw", coeffs, applies,
        "lam2 = lam3, rows 2 and 3 match, third column vanishes",
        flow=_flow_shear(1, 2),
    )


def _exp_vdw_op(model):
    a2 = float(model.a_f[1])

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = np.exp(-a2 * np.asarray(t, float)) * u[1]
        return 0.0, 0.0, eta

    def applies(mod):
        b = mod.b_f
        return (
            _eq(mod.lam_f[1], 1.0)
            and _eq(mod.lam_f[2], 1.0)
            and np.all(b[:, 2] == 0)
            and mod.a_f[2] == 0
            and _eq(b[1, 0], b[2, 0])
            and _eq(b[1, 1], b[2, 1])
        )

    return SymmetryOperator(
        "EXPVw", LIE, 3, "exp(-a2 t) v d/dw", coeffs, applies,
        "lam2 = lam3 = 1, a3 = 0, rows 2 and 3 interactions match, third column vanishes",
    )


def _exp_udw_op(model, rate_key):
    r = float(model.a_f[0] if rate_key == "a1" else model.a_f[1])
    src = 0 if rate_key == "a1" else 1

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = np.exp(-r * np.asarray(t, float)) * u[src]
        return 0.0, 0.0, eta

    comp = "u" if src == 0 else "v"
    return SymmetryOperator(
        f"EXP{comp.upper()}w", LIE, 3, f"exp(-{rate_key} t) {comp} d/dw", coeffs,
        _t2c6_applies,
        "equal unit diffusivities, rows built on u+v, zero third column",
    )


def _t2c6_pattern(model):
    b = model.b_f
    ones = (
        np.all(b[:, 2] == 0)
        and all(_eq(b[i, 0], 1.0) and _eq(b[i, 1], 1.0) for i in range(3))
        and all(_eq(v, 1.0) for v in model.lam_f)
        and model.a_f[2] == 0
    )
    return ones


def _t2c6_applies(model):
    return _t2c6_pattern(model) and model.a_f[0] != 0 and model.a_f[1] != 0


def _t2c6_mix_op(model):
    a1, a2 = float(model.a_f[0]), float(model.a_f[1])

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = a2 * (u[0] + a1) + a1 * u[1]
        return 0.0, 0.0, eta

    return SymmetryOperator(
        "MIXw", LIE, 3, "(a2 (u + a1) + a1 v) d/dw", coeffs,
        lambda mod: _t2c6_applies(mod) and not _eq(mod.a_f[0], mod.a_f[1]),
        "unit diffusivities, u+v rows, a1 a2 (a1 - a2) != 0",
    )


def _t2c7_mix_op(model):
    a = float(model.a_f[0])

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = u[0] + a + a * u[1] * np.asarray(t, float)
        return 0.0, 0.0, eta

    return SymmetryOperator(
        "MIX7w", LIE, 3, "(u + a + a v t) d/dw", coeffs,
        lambda mod: _t2c6_pattern(mod) and mod.a_f[1] == 0 and mod.a_f[0] != 0,
        "unit diffusivities, u+v rows, a2 = a3 = 0, a1 != 0",
    )


def _t2c8_mix_op(model):
    bb = float(model.b_f[0, 0])
    cc = float(model.b_f[1, 1])

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[2] = (bb - 1.0) * u[0] + (1.0 - cc) * u[1]
        return 0.0, 0.0, eta

    def applies(mod):
        b = mod.b_f
        return (
            np.all(mod.a_f == 0)
            and all(_eq(v, 1.0) for v in mod.lam_f)
            and np.all(b[:, 2] == 0)
            and _eq(b[0, 1], 1.0)
            and _eq(b[1, 0], 1.0)
            and _eq(b[2, 0], b[0, 0])
            and _eq(b[2, 1], b[1, 1])
            and ((b[0, 0] - 1.0) ** 2 + (b[1, 1] - 1.0) ** 2) != 0
        )

    return SymmetryOperator(
        "MIX8w", LIE, 3, "((b - 1) u + (1 - c) v) d/dw", coeffs, applies,
        "zero rates, unit diffusivities, third column zero, (b-1)^2 + (c-1)^2 != 0",
    )


def _table2_ops(model):
    ops = []
    a = model.a_f
    b = model.b_f
    if np.all(a == 0):
        ops.append(_scaling_op(3))
    if np.all(b[:, 0] == 0):
        ops.append(_udu_op())
    if np.all(b[:, 2] == 0):
        ops.append(_wdw_op())
        ops.append(_vdw_op())
        ops.append(_exp_vdw_op(model))
        if _t2c6_applies(model):
            ops.append(_exp_udw_op(model, "a1"))
            ops.append(_exp_udw_op(model, "a2"))
            ops.append(_t2c6_mix_op(model))
        ops.append(_t2c7_mix_op(model))
        ops.append(_t2c8_mix_op(model))
    return [op for op in ops if op.applicability(model)]


# ---------------------------------------------------------------------------
# structure detection and rescaling
# ---------------------------------------------------------------------------


def _detect_uniform_rows(model):
    """All rows of b equal with nonzero entries -> scales mapping to the
    all-ones normalized system."""
    b = model.b_f
    row = b[0]
    if np.any(row == 0):
        return None
    for i in range(1, model.m):
        if not all(_eq(b[i, j], row[j]) for j in range(model.m)):
            return None
    return tuple(model.b[0])


def _detect_proportional_rows(model):
    """m=2 rows with row2 = (lam2/lam1) row1: the first-type conditional pair."""
    if model.m != 2:
        return None
    b = model.b_f
    if b[0, 0] == 0 or b[0, 1] == 0:
        return None
    ratio = float(ediv(model.lam[1], model.lam[0]))
    if _eq(model.lam_f[0], model.lam_f[1]):
        return None
    if _eq(b[1, 0], ratio * b[0, 0]) and _eq(b[1, 1], ratio * b[0, 1]):
        return tuple(model.b[0])
    return None


def rescale_operator(op: SymmetryOperator, scales, new_id=None) -> SymmetryOperator:
    """Conjugate an operator by the component scaling u_i -> s_i u_i.

    ``op`` acts on the normalized variables U_i = s_i u_i; the returned
    operator acts on the raw ones.
    """
    s = np.array([float(v) for v in scales])

    def coeffs(t, x, u):
        shape = (len(s),) + (1,) * (np.asarray(u).ndim - 1)
        sv = s.reshape(shape)
        xi0, xi1, eta = op.coeffs(t, x, np.asarray(u, float) * sv)
        return xi0, xi1, eta / sv

    return SymmetryOperator(
        new_id or op.id,
        op.kind,
        op.m,
        op.formula + f"  [rescaled by {tuple(float(v) for v in s)}]",
        coeffs,
        op.applicability,
        op.applicability_note,
        domain=op.domain,
        flow=None,
        params=dict(op.params),
    )


# -- conditional operators on the equal-rows two-component system ------------


def _t3c1_op(a1, a2, lam1, lam2):
    a1f, a2f = float(a1), float(a2)
    dl = float(lam1 - lam2)

    def coeffs(t, x, u):
        val = a1f * u[1] + a2f * u[0] + a1f * a2f
        eta = np.stack([-val, val])
        return dl, 0.0, eta

    def applies(model):
        return (
            model.m == 2
            and _detect_uniform_rows(model) is not None
            and not _eq(model.lam_f[0], model.lam_f[1])
            and not _eq(model.a_f[0], model.a_f[1])
            and model.a_f[0] != 0
            and model.a_f[1] != 0
        )

    return SymmetryOperator(
        "T3C1", QCOND, 2,
        "(lam1 - lam2) d/dt - (a1 v + a2 u + a1 a2)(d/du - d/dv)",
        coeffs, applies, "equal interaction rows, a1 != a2, a1 a2 != 0, lam1 != lam2",
    )


def _t3c2_ops(model):
    a = model.a[0]
    lam1, lam2 = model.lam
    dl = float(lam1 - lam2)
    af = float(a)
    l1f, l2f = float(lam1), float(lam2)
    ops = []
    if af != 0:
        def coeffs_a(t, x, u):
            val = af * (u[1] + u[0] + af)
            return dl, 0.0, np.stack([-val, val])

        ops.append(SymmetryOperator(
            "T3C2a", QCOND, 2,
            "(lam1 - lam2) d/dt - a (v + u + a)(d/du - d/dv)",
            coeffs_a, lambda m: True, "equal rows, a1 = a2 = a != 0, lam1 != lam2",
        ))

    def coeffs_b(t, x, u):
        val = l1f * u[1] + l2f * u[0]
        return dl * np.asarray(t, float), 0.0, np.stack([-val, val])

    ops.append(SymmetryOperator(
        "T3C2b", QCOND, 2,
        "(lam1 - lam2) t d/dt - (lam1 v + lam2 u)(d/du - d/dv)",
        coeffs_b, lambda m: True, "equal rows, a1 = a2, lam1 != lam2",
    ))
    return ops


def _t3c3_ops(model, alpha=1):
    lam1, lam2 = model.lam
    a = ediv(model.a[0], lam1)
    af = float(a)
    l1f, l2f = float(lam1), float(lam2)
    dl = l1f - l2f

    def coeffs_a(t, x, u):
        val = af * (l1f * u[1] + l2f * u[0] + af * l1f * l2f)
        return dl, 0.0, np.stack([-val, val])

    op_a = SymmetryOperator(
        "T3C3a", QCOND, 2,
        "(lam1 - lam2) d/dt - a (lam1 v + lam2 u + a lam1 lam2)(d/du - d/dv)",
        coeffs_a, lambda m: True, "equal rows, a_i = a lam_i, a != 0, lam1 != lam2",
    )
    alf = float(alpha)

    def denom(t):
        return np.exp(-af * np.asarray(t, float)) - alf * dl

    def coeffs_d(t, x, u):
        val = af * alf * (l1f * u[1] + l2f * u[0] + af * l1f * l2f) / denom(t)
        return 1.0, 0.0, np.stack([val, -val])

    def domain(t, x, u):
        return np.abs(denom(t)) > 1e-9 * (1.0 + np.exp(-af * np.asarray(t, float)))

    op_d = SymmetryOperator(
        "T3C3d", QCOND, 2,
        "d/dt + a alpha (lam1 v + lam2 u + a lam1 lam2)/(exp(-a t) - alpha (lam1 - lam2)) (d/du - d/dv)",
        coeffs_d, lambda m: True,
        "equal rows, a_i = a lam_i, a != 0; excludes the zero of the denominator",
        domain=domain, params={"alpha": alpha},
    )
    return [op_a, op_d]


def _qij_op(model, i, j, scales):
    rate = float(ediv(model.a[i] - model.a[j], model.lam[i] - model.lam[j]))

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        eta[i] = rate * u[i]
        eta[j] = -rate * u[i]
        return 1.0, 0.0, eta

    op = SymmetryOperator(
        f"Q{i + 1}{j + 1}", QCOND1, model.m,
        f"d/dt + ((a{i + 1} - a{j + 1})/(lam{i + 1} - lam{j + 1})) u{i + 1} (d/du{i + 1} - d/du{j + 1})",
        coeffs, lambda m: True,
        "uniform interaction rows, (a_i - a_j)(lam_i - lam_j) != 0",
    )
    return rescale_operator(op, scales, new_id=op.id) if any(s != 1 for s in scales) else op


def _q4_op(model, k, alpha, scales):
    """The six first-type operators with the shear parameter alpha (m = 3)."""
    pairs = {1: (0, 1), 2: (1, 0), 3: (0, 2), 4: (2, 0), 5: (1, 2), 6: (2, 1)}
    i, j = pairs[k]
    rate = float(ediv(model.a[i] - model.a[j], model.lam[i] - model.lam[j]))
    alf = float(alpha)

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        if k == 1:
            eta[0] = rate * u[0]
            eta[1] = -rate * u[0] + alf * u[0]
            eta[2] = -alf * u[0]
        elif k == 2:
            eta[1] = rate * u[1]
            eta[0] = -rate * u[1] + alf * u[1]
            eta[2] = -alf * u[1]
        elif k == 3:
            eta[0] = rate * u[0]
            eta[2] = -rate * u[0] - alf * u[0]
            eta[1] = alf * u[0]
        elif k == 4:
            eta[2] = rate * u[2]
            eta[0] = -rate * u[2] + alf * u[2]
            eta[1] = -alf * u[2]
        elif k == 5:
            eta[1] = rate * u[1]
            eta[2] = -rate * u[1] - alf * u[1]
            eta[0] = alf * u[1]
        else:
            eta[2] = rate * u[2]
            eta[1] = -rate * u[2] + alf * u[2]
            eta[0] = -alf * u[2]
        return 1.0, 0.0, eta

    op = SymmetryOperator(
        f"Q4_{k}", QCOND1, 3,
        f"d/dt + rate u (d/d first - d/d second) + alpha u (d/d third shear), rate = {rate}",
        coeffs, lambda m: True,
        "uniform rows, nonzero pair denominator, weighted rate balance",
        params={"alpha": alpha},
    )
    return rescale_operator(op, scales, new_id=op.id) if any(s != 1 for s in scales) else op


def _t5c3_extra(model, beta, scales):
    rate = float(ediv(model.a[1] - model.a[2], model.lam[1] - model.lam[2]))
    bf = float(beta)

    def coeffs(t, x, u):
        eta = _zeros_like(u)
        grow = bf * np.exp(rate * np.asarray(t, float)) * u[0]
        eta[1] = grow
        eta[2] = -grow
        return 1.0, 0.0, eta

    op = SymmetryOperator(
        "T5C3x", QCOND1, 3,
        "d/dt + beta exp(((a2 - a3)/(lam2 - lam3)) t) u (d/dv - d/dw)",
        coeffs, lambda m: True,
        "uniform rows, (lam2 - lam3) a1 - lam2 a3 + lam3 a2 = 0, a2 != a3",
        params={"beta": beta},
    )
    return rescale_operator(op, scales, new_id=op.id) if any(s != 1 for s in scales) else op


def _t5c1_ops(model):
    b = model.b_f
    a = model.a_f
    lam = model.lam_f
    pattern = (
        all(_eq(b[0, j], b[1, j]) for j in range(3))
        and _eq(b[0, 0], b[0, 1])
        and _eq(b[2, 0], 1.0)
        and _eq(b[2, 1], 1.0)
        and ((b[0, 0] - 1.0) ** 2 + (b[0, 2] - b[2, 2]) ** 2) != 0
        and not _eq(a[0], a[1])
        and len({float(v) for v in lam}) == 3
    )
    if not pattern:
        return []
    rate = float(ediv(model.a[0] - model.a[1], model.lam[0] - model.lam[1]))
    ops = []
    for name, i, j in (("T5C1u", 0, 1), ("T5C1v", 1, 0)):
        def coeffs(t, x, u, i=i, j=j):
            eta = _zeros_like(u)
            eta[i] = rate * u[i]
            eta[j] = -rate * u[i]
            return 1.0, 0.0, eta

        ops.append(SymmetryOperator(
            name, QCOND1, 3,
            "d/dt +- ((a1 - a2)/(lam1 - lam2)) comp (d/dself - d/dother)",
            coeffs, lambda m: True,
            "matched first two rows, third row (1,1,e3); a1 != a2, lam pairwise distinct",
        ))
    return ops


def _phi_family_op(model):
    """Documentation-only first-type family for the semi-coupled system with
    u(a1 + u) and v u reactions; no flow and no cataloged solution pair."""
    a1 = float(model.a_f[0])
    lam1, lam2 = (float(v) for v in model.lam_f)
    alpha1, alpha2 = 1.0, 0.0
    # phi solves lam2^2 phi'' + lam2 (a1 - 2 alpha1^2) phi' + alpha1^2 (alpha1^2 - a1) phi = 0
    aa = lam2 * lam2
    bb = lam2 * (a1 - 2 * alpha1**2)
    cc = alpha1**2 * (alpha1**2 - a1)
    disc = bb * bb - 4 * aa * cc

    def phi_pair(t):
        t = np.asarray(t, float)
        if disc >= 0:
            r1 = (-bb + math.sqrt(disc)) / (2 * aa)
            r2 = (-bb - math.sqrt(disc)) / (2 * aa)
            if abs(r1 - r2) < 1e-14:
                phi = np.exp(r1 * t) * (1.0 + t)
                dphi = np.exp(r1 * t) * (r1 * (1.0 + t) + 1.0)
            else:
                phi = np.exp(r1 * t)
                dphi = r1 * phi
        else:
            re = -bb / (2 * aa)
            im = math.sqrt(-disc) / (2 * aa)
            phi = np.exp(re * t) * np.cos(im * t)
            dphi = np.exp(re * t) * (re * np.cos(im * t) - im * np.sin(im * t))
        return phi, dphi

    def coeffs(t, x, u):
        phi, dphi = phi_pair(t)
        ex = np.exp(alpha1 * np.asarray(x, float))
        eta = _zeros_like(u)
        eta[1] = phi * ex * u[0] + ex * (lam2 * dphi + a1 * phi - alpha1**2 * phi) + alpha2 * u[1]
        return 1.0, 2 * alpha1 / (lam1 - lam2), eta

    return SymmetryOperator(
        "PHI_FAMILY", QCOND, 2,
        "d/dt + (2 alpha1/(lam1 - lam2)) d/dx + (phi(t) e^{alpha1 x} u + ... + alpha2 v) d/dv",
        coeffs, lambda m: True,
        "semi-coupled u(a1 + u), v u system, lam1 != lam2; documentation-only "
        "(no flow, no cataloged solution pair)",
        params={"alpha1": alpha1, "alpha2": alpha2},
    )


def _table4_case1_ops(model, scales):
    gs = g_function(model, (1, 1, 1))
    ops = []
    for name, gi, i, j in (("Qu1", gs[0], 0, 1), ("Qv1", gs[1], 1, 0)):
        def coeffs(t, x, u, gi=gi, i=i, j=j):
            ratio = gi.g_x(t, x) / gi.g(t, x)
            eta = _zeros_like(u)
            eta[i] = ratio * u[i]
            eta[j] = -ratio * u[i]
            return 0.0, 1.0, eta

        def domain(t, x, u, gi=gi):
            return np.abs(gi.g(t, x)) > 1e-12 * (1.0 + np.abs(gi.g(t, x)))

        op = SymmetryOperator(
            name, QCOND1, 2,
            f"d/dx + (g_x/g) {'u' if i == 0 else 'v'} (d/dself - d/dother), g of branch "
            f"{gi.branch}", coeffs, lambda m: True,
            "proportional interaction rows, lam1 != lam2",
            domain=domain, params={"alphas": gi.alphas},
        )
        ops.append(rescale_operator(op, scales, new_id=op.id) if any(s != 1 for s in scales) else op)
    return ops


def operator_catalog(model: DlvModel, q4_alpha=1, t5c3_beta=1, t3c3_alpha=1):
    """Translations plus every implemented table operator accepted by the model."""
    ops = _const_ops(model.m)
    if model.m == 2:
        ops += _table1_ops(model)
        b = model.b_f
        if b[0, 1] == 0 and b[1, 1] == 0 and _eq(b[0, 0], 1.0) and _eq(b[1, 0], 1.0) \
                and model.a_f[1] == 0 and not _eq(model.lam_f[0], model.lam_f[1]):
            ops.append(_phi_family_op(model))
    if model.m == 3:
        ops += _table2_ops(model)
        ops += _t5c1_ops(model)
    uniform = _detect_uniform_rows(model)
    if uniform is not None:
        lam = model.lam_f
        a = model.a_f
        # the pairwise family, any m
        for i in range(model.m):
            for j in range(model.m):
                if i != j and not _eq(lam[i], lam[j]) and not _eq(a[i], a[j]):
                    ops.append(_qij_op(model, i, j, uniform))
        if model.m == 2 and not _eq(lam[0], lam[1]):
            if _eq(a[0], a[1]):
                ops += [
                    rescale_operator(o, uniform, new_id=o.id)
                    if any(s != 1 for s in uniform) else o
                    for o in _t3c2_ops(model)
                ]
            else:
                if a[0] != 0 and a[1] != 0:
                    op = _t3c1_op(model.a[0], model.a[1], model.lam[0], model.lam[1])
                    ops.append(
                        rescale_operator(op, uniform, new_id=op.id)
                        if any(s != 1 for s in uniform) else op
                    )
            if _eq(float(ediv(model.a[0], model.lam[0])), float(ediv(model.a[1], model.lam[1]))) \
                    and model.a_f[0] != 0:
                ops += [
                    rescale_operator(o, uniform, new_id=o.id)
                    if any(s != 1 for s in uniform) else o
                    for o in _t3c3_ops(model, t3c3_alpha)
                ]
        if model.m == 3:
            case4 = _eq(
                float((model.lam_f[1] - model.lam_f[2]) * model.a_f[0]
                      - (model.lam_f[0] - model.lam_f[2]) * model.a_f[1]
                      + (model.lam_f[0] - model.lam_f[1]) * model.a_f[2]),
                0.0,
            )
            if case4 and ((model.a_f[0] - model.a_f[1]) ** 2 + float(q4_alpha) ** 2) != 0:
                pair_lams = {1: (0, 1), 2: (0, 1), 3: (0, 2), 4: (0, 2), 5: (1, 2), 6: (1, 2)}
                for k in range(1, 7):
                    i, j = pair_lams[k]
                    if not _eq(lam[i], lam[j]):
                        ops.append(_q4_op(model, k, q4_alpha, uniform))
            case3 = _eq(
                float((model.lam_f[1] - model.lam_f[2]) * model.a_f[0]
                      - model.lam_f[1] * model.a_f[2] + model.lam_f[2] * model.a_f[1]),
                0.0,
            ) and not _eq(model.a_f[1], model.a_f[2]) and not _eq(lam[1], lam[2])
            if case3 and t5c3_beta != 0:
                ops.append(_t5c3_extra(model, t5c3_beta, uniform))
    if model.m == 2:
        det4 = _detect_proportional_rows(model)
        if det4 is not None:
            ops += _table4_case1_ops(model, det4)
    seen = {}
    for op in ops:
        seen.setdefault(op.id, op)
    return list(seen.values())


# ---------------------------------------------------------------------------
# g functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GFunction:
    branch: str  # "trig" | "exp" | "poly"
    lam: float
    kappa2: object  # exact where inputs are rational
    alphas: tuple

    @property
    def kappa(self) -> float:
        return math.sqrt(abs(float(self.kappa2)))

    def g(self, t, x):
        a0, a1, a2 = (float(v) for v in self.alphas)
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        k = self.kappa
        if self.branch == "trig":
            return a0 * np.exp(k * k * t / self.lam) + a1 * np.sin(k * x) + a2 * np.cos(k * x)
        if self.branch == "exp":
            return a0 * np.exp(-k * k * t / self.lam) + a1 * np.exp(k * x) + a2 * np.exp(-k * x)
        return a0 + a1 * x + a2 * self.lam * x * x + 2 * a2 * t

    def g_x(self, t, x):
        a0, a1, a2 = (float(v) for v in self.alphas)
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        k = self.kappa
        if self.branch == "trig":
            return (a1 * np.cos(k * x) - a2 * np.sin(k * x)) * k + 0.0 * t
        if self.branch == "exp":
            return (a1 * np.exp(k * x) - a2 * np.exp(-k * x)) * k + 0.0 * t
        return a1 + 2 * a2 * self.lam * x + 0.0 * t

    def g_xx(self, t, x):
        a0, a1, a2 = (float(v) for v in self.alphas)
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        k = self.kappa
        if self.branch == "trig":
            return -k * k * (a1 * np.sin(k * x) + a2 * np.cos(k * x)) + 0.0 * t
        if self.branch == "exp":
            return k * k * (a1 * np.exp(k * x) + a2 * np.exp(-k * x)) + 0.0 * t
        return 2 * a2 * self.lam + 0.0 * (t + x)

    def g_t(self, t, x):
        a0, a1, a2 = (float(v) for v in self.alphas)
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        k = self.kappa
        if self.branch == "trig":
            return a0 * (k * k / self.lam) * np.exp(k * k * t / self.lam) + 0.0 * x
        if self.branch == "exp":
            return -a0 * (k * k / self.lam) * np.exp(-k * k * t / self.lam) + 0.0 * x
        return 2 * a2 + 0.0 * (t + x)

    def defining_residual(self, t, x):
        """lam g_t - g_xx - kappa2_signed g, with the branch sign restored."""
        signed = float(self.kappa2)
        return self.lam * self.g_t(t, x) - self.g_xx(t, x) - signed * self.g(t, x)


def g_function(model: DlvModel, alphas):
    """The pair (g1, g2) entering the first-type conditional operators."""
    if model.m != 2:
        raise ValueError("g functions are defined for two-component systems")
    lam1, lam2 = model.lam
    if float(lam1) == float(lam2):
        raise ValueError("lam1 != lam2 required")
    a1, a2 = model.a
    kappa2 = ediv(lam1 * a2 - lam2 * a1, lam1 - lam2)
    if float(kappa2) > 0:
        branch = "trig"
    elif float(kappa2) < 0:
        branch = "exp"
    else:
        branch = "poly"
    alphas = tuple(alphas)
    return (
        GFunction(branch, float(lam1), kappa2, alphas),
        GFunction(branch, float(lam2), kappa2, alphas),
    )


# ---------------------------------------------------------------------------
# registered operator/solution pairs (provenance of the ansatz construction)
# ---------------------------------------------------------------------------

PAIRED_ENTRIES = (
    "CD11_EXP", "CD11_TRIG", "CD11_TANH2", "CD11_TANH3", "CD11_COMP",
    "CD21_CASE1", "CD13_3COMP",
)


def pair_operator(sol) -> SymmetryOperator:
    """The operator whose invariant-surface conditions generated the entry."""
    sid = sol.id
    model = sol.model
    scales = tuple(model.b[0])
    if sid.startswith("CD11"):
        op = _t3c1_op(model.a[0], model.a[1], model.lam[0], model.lam[1])
        if any(float(s) != 1 for s in scales):
            op = rescale_operator(op, scales, new_id=f"T3C1@{sid}")
        return op
    if sid == "CD21_CASE1":
        p = sol.params
        gs = g_function(model, (p["alpha0"], p["alpha1"], p["alpha2"]))
        g1 = gs[0]

        def coeffs(t, x, u):
            ratio = g1.g_x(t, x) / g1.g(t, x)
            eta = np.stack([ratio * u[0], -ratio * u[0]])
            return 0.0, 1.0, eta

        op = SymmetryOperator(
            "Qu1", QCOND1, 2, "d/dx + (g_x/g) u (d/du - d/dv)", coeffs,
            lambda m: True, "proportional rows", params={"alphas": g1.alphas},
        )
        return rescale_operator(op, scales, new_id=f"Qu1@{sid}") \
            if any(float(s) != 1 for s in scales) else op
    if sid == "CD13_3COMP":
        op = _q4_op(
            DlvModel(model.lam, model.a, ((1, 1, 1),) * 3), 1, sol.params["alpha"], (1, 1, 1)
        )
        return rescale_operator(op, scales, new_id=f"Q4_1@{sid}")
    raise KeyError(f"no registered operator for {sid}")


def registered_pairs():
    """(solution, operator) pairs built from the default catalog instances."""
    from . import solutions

    out = []
    for sid in PAIRED_ENTRIES:
        sol = solutions.default_solution(sid)
        out.append((sol, pair_operator(sol)))
    return out
