"""Three-component catalog entries: tanh fronts and the sine-mode family."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..model import DlvModel
from .base import CatalogEntry, TanhData, ediv, make_solution
from .two_component import _require, _tanh_solution


def build_hung11(p):
    a, alpha = p["a"], p["alpha"]
    _require(alpha + 2 < a < 4 * (alpha + 2), "alpha + 2 < a < 4*(alpha + 2)",
             "positivity of all three components")
    _require(a != 0, "a != 0")
    den1 = 8 - a + 4 * alpha
    den2 = 2 + alpha - a
    _require(den1 != 0, "8 - a + 4*alpha != 0")
    _require(den2 != 0, "2 + alpha - a != 0")
    rows = (
        (-1, ediv(4 * alpha - a - 16, a), ediv(a - 4 - 2 * alpha, den2)),
        (ediv(a - 24, den1), -1, ediv(a - 4 + 2 * alpha, den2)),
        (ediv(a - 4 - 2 * alpha, den1), ediv(2 * alpha - a - 4, a), -1),
    )
    model = DlvModel.three_component((1, 1, 1), (a, a, a), rows, name="equal-rates-front")
    cu = 2 + alpha - ediv(a, 4)
    cv = ediv(a, 4)
    cw = a - 2 - alpha
    data = TanhData(
        "tanh", 1.0, float(alpha),
        ((cu, -2 * cu, cu), (cv, 2 * cv, cv), (cw, -cw)),
    )
    if alpha > 0:
        asym = (4 * cu, 0, 2 * cw)
    elif alpha < 0:
        asym = (0, a, 0)
    else:
        asym = None
    return _tanh_solution(
        "HUNG11_TW", model, data, (0.0, 2.0, -5.0, 5.0), p,
        {"u_amp": cu, "v_amp": cv, "w_amp": cw}, asym, nonnegative=True,
    )


def build_ch12(p):
    a, e = p["a"], p["e"]
    _require(e > 1, "e > 1")
    _require(a > 0, "a > 0")
    alpha = ediv(a - 4 + 20 * e - a * e, 2 * (e - 1))
    den = a * (e - 1)
    rows = (
        (-1, ediv(8 * (1 - 3 * e), den), -e),
        (ediv(8 + 3 * a + e * (24 - 3 * a), den), -1, ediv((a - 24) * (1 - e), 16)),
        (ediv(2 * (a + 8 * e - a * e), den), ediv(8 * (1 - 3 * e), den), -1),
    )
    model = DlvModel.three_component((1, 1, 1), (a, a, a), rows, name="equal-rates-front-2")
    half_a = ediv(a, 2)
    quarter_a = ediv(a, 4)
    we = ediv(4, e - 1)
    data = TanhData(
        "tanh", 1.0, float(alpha),
        ((half_a, half_a), (quarter_a, -2 * quarter_a, quarter_a), (we, 0, -we)),
    )
    if alpha > 0:
        asym = (0, a, 0)
    elif alpha < 0:
        asym = (a, 0, 0)
    else:
        asym = None
    return _tanh_solution(
        "CH12_TW", model, data, (0.0, 2.0, -5.0, 5.0), p,
        {"alpha": alpha}, asym, nonnegative=True,
    )


def build_cpp_front(p):
    a1, a2, a3 = p["a1"], p["a2"], p["a3"]
    b1, b2, b3 = p["b1"], p["b2"], p["b3"]
    c1, c2, c3 = p["c1"], p["c2"], p["c3"]
    for k in ("a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"):
        _require(p[k] > 0, f"{k} > 0")
    _require(a3 != 16, "a3 != 16")
    lhs = (24 + a3) * (b1 * c2 - b2 * c1)
    rhs = (8 - a1) * (b2 * c3 - b3 * c2) + (8 - a2) * (b3 * c1 - b1 * c3)
    scale = 1 + max(abs(float(lhs)), abs(float(rhs)))
    _require(abs(float(lhs - rhs)) <= 1e-12 * scale,
             "(24+a3)(b1c2-b2c1) = (8-a1)(b2c3-b3c2) + (8-a2)(b3c1-b1c3)",
             f"mismatch {float(lhs - rhs):.3e}")
    lam1 = ediv(2 * (4 + a1), 16 - a3)
    lam2 = ediv(2 * (4 + a2), 16 - a3)
    _require(lam1 > 0 and lam2 > 0, "lam1, lam2 > 0", "requires a3 < 16 for positive rates")
    den = b3 * c2 - b2 * c3
    _require(den != 0, "b3*c2 - b2*c3 != 0")
    Au = ediv((8 - a2) * c3 + (24 + a3) * c2, 2 * den)
    Av = ediv((a2 - 8) * b3 - (24 + a3) * b2, 2 * den)
    speed = ediv(16 - a3, 4)
    model = DlvModel.three_component(
        (lam1, lam2, 1), (a1, a2, -a3),
        ((-b1, -c1, -1), (-b2, -c2, -1), (b3, c3, -3)),
        name="competition-prey-predator",
    )
    # front written on the reflected profile 1 - tanh so the wave speed is
    # (16 - a3)/4 in the omega = x - speed*t convention
    data = TanhData(
        "tanh", 1.0, float(speed),
        ((Au, -Au), (Av, -Av), (2, -4, 2)),
    )
    nonneg = float(Au) >= 0 and float(Av) >= 0
    asym = (2 * Au, 2 * Av, 8)  # T -> -1 as t -> +infinity (speed > 0)
    return _tanh_solution(
        "CPP_FRONT", model, data, (0.0, 2.0, -5.0, 5.0), p,
        {"lam1": lam1, "lam2": lam2, "speed": speed, "u_amp": Au, "v_amp": Av, "w_amp": 2},
        asym, nonneg,
    )


def build_cd13_3comp(p):
    keys = ("a1", "a2", "lam1", "lam2", "b", "c", "e", "alpha", "v0", "C1", "C2")
    a1, a2, l1, l2, b, c, e, alpha, v0, C1, C2 = (p[k] for k in keys)
    for k in ("a2", "b", "c", "e"):
        _require(p[k] > 0, f"{k} > 0")
    _require(a1 != a2, "a1 != a2")
    _require(l1 != l2, "lam1 != lam2")
    delta = ediv(a1 - a2, l1 - l2)
    _require(delta < 0, "delta = (a1-a2)/(lam1-lam2) < 0", f"got {delta}")
    if C1 == 0 and C2 == 1:
        # nonnegativity bracket for the unit-sine profile
        if alpha <= delta:
            ok = 0 <= v0 <= a2 - ediv(alpha, delta)
            label = "0 <= v0 <= a2 - alpha/delta (alpha <= delta)"
        elif alpha <= 0:
            ok = 1 - ediv(alpha, delta) <= v0 <= a2 - ediv(alpha, delta)
            label = "1 - alpha/delta <= v0 <= a2 - alpha/delta (delta < alpha <= 0)"
        else:
            ok = 1 - ediv(alpha, delta) <= v0 <= a2
            label = "1 - alpha/delta <= v0 <= a2 (alpha > 0)"
        _require(ok, label, f"v0 = {v0}")
        nonneg = True
    else:
        nonneg = False
    model = DlvModel.three_component(
        (l1, l2, l2), (a1, a2, a2),
        ((-b, -c, -e), (-b, -c, -e), (-b, -c, -e)),
        name="three-species-competition",
    )
    s = math.sqrt(float(-delta * l2))
    bf, cf, ef = float(b), float(c), float(e)
    C1f, C2f, alf, dlf = float(C1), float(C2), float(alpha), float(delta)
    v0f, a2f = float(v0), float(a2)
    cu = 1.0 / bf
    cv = (alf / dlf - 1.0) / cf
    cw = -alf / (ef * dlf)

    def jet(t, x):
        E = np.exp(dlf * t)
        sn, cs = np.sin(s * x), np.cos(s * x)
        f = (C1f * cs + C2f * sn) * E
        fx = s * (-C1f * sn + C2f * cs) * E
        u = cu * f
        v = v0f / cf + cv * f
        w = (a2f - v0f) / ef + cw * f
        ut, vt, wt = dlf * u, dlf * cv * f, dlf * cw * f
        ux, vx, wx = cu * fx, cv * fx, cw * fx
        uxx, vxx, wxx = -s * s * u, -s * s * cv * f, -s * s * cw * f
        return (
            np.stack([u, v, w]),
            np.stack([ut, vt, wt]),
            np.stack([ux, vx, wx]),
            np.stack([uxx, vxx, wxx]),
        )

    def phi_profiles(x):
        x = np.asarray(x, float)
        f = C1f * np.cos(s * x) + C2f * np.sin(s * x)
        df = s * (-C1f * np.sin(s * x) + C2f * np.cos(s * x))
        zero = np.zeros_like(f)
        return (
            np.stack([f, v0f + zero, a2f - v0f + zero]),
            np.stack([df, zero, zero]),
            np.stack([-s * s * f, zero, zero]),
        )

    strip = math.pi / s
    return make_solution(
        "CD13_3COMP", model, jet, (0.0, 2.0, 0.0, strip),
        params=p,
        derived={"delta": delta, "root": s, "strip": strip},
        asymptote=(0, ediv(v0, c), ediv(a2 - v0, e)),
        nonnegative=nonneg,
        reduction_info={"ansatz": "A73", "profile_x": phi_profiles},
    )


ENTRIES = (
    CatalogEntry(
        "HUNG11_TW", 3, "tanh traveling front, equal diffusivities",
        (("a", "common linear rate"), ("alpha", "wave speed")),
        ("alpha + 2 < a < 4*(alpha + 2)",),
        {"a": 6, "alpha": 1},
        build_hung11,
    ),
    CatalogEntry(
        "CH12_TW", 3, "tanh traveling front, equal diffusivities (mixed degrees)",
        (("a", "common linear rate"), ("e", "interaction parameter")),
        ("a > 0", "e > 1"),
        {"a": 25, "e": 2},
        build_ch12,
    ),
    CatalogEntry(
        "CPP_FRONT", 3, "competition-prey-predator tanh front",
        (
            ("a1", "growth rate, first competitor"), ("a2", "growth rate, second competitor"),
            ("a3", "predator death rate"),
            ("b1", "interaction"), ("b2", "interaction"), ("b3", "interaction"),
            ("c1", "interaction"), ("c2", "interaction"), ("c3", "interaction"),
        ),
        ("all parameters > 0", "a3 < 16",
         "(24+a3)(b1c2-b2c1) = (8-a1)(b2c3-b3c2) + (8-a2)(b3c1-b1c3)"),
        {"a1": 11, "a2": 9, "a3": 4, "b1": Fraction(1, 2), "b2": Fraction(1, 6), "b3": 5,
         "c1": 6, "c2": 2, "c3": 7},
        build_cpp_front,
    ),
    CatalogEntry(
        "CD13_3COMP", 3, "sine-mode family for three competing species",
        (
            ("a1", "growth rate of the dying species"), ("a2", "common rate of the survivors"),
            ("lam1", "inverse diffusivity, first"), ("lam2", "inverse diffusivity, second/third"),
            ("b", "interaction column"), ("c", "interaction column"), ("e", "interaction column"),
            ("alpha", "operator parameter"), ("v0", "boundary density of the second species"),
            ("C1", "cos amplitude"), ("C2", "sin amplitude"),
        ),
        ("a2, b, c, e > 0", "a1 != a2", "lam1 != lam2", "delta < 0",
         "v0 bracket when (C1, C2) = (0, 1)"),
        {"a1": Fraction(9, 2), "a2": 2, "lam1": 1, "lam2": 2, "b": Fraction(1, 2),
         "c": Fraction(3, 4), "e": Fraction(1, 7), "alpha": -1, "v0": Fraction(3, 2),
         "C1": 0, "C2": 1},
        build_cd13_3comp,
    ),
)
