"""Two-component catalog entries.

Traveling fronts (tanh-method families, a Fisher-type tie and the prey-predator
front) plus the separable families built from the time-exponential ansatz.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from ..model import DlvModel
from .base import (
    GUARD_BAND,
    CatalogEntry,
    RestrictionError,
    TanhData,
    ediv,
    make_solution,
    tanh_front_jet,
    tanh_validity,
)

SQRT6 = math.sqrt(6.0)


def _require(cond, restriction, detail=""):
    if not cond:
        raise RestrictionError(restriction, detail)


def _tanh_solution(sol_id, model, data, window, params, derived,
                   asymptote, nonnegative):
    return make_solution(
        sol_id,
        model,
        tanh_front_jet(data),
        window,
        params=params,
        derived=derived,
        asymptote=asymptote,
        nonnegative=nonnegative,
        validity_fn=tanh_validity(data),
        tanh_data=data,
    )


# ---------------------------------------------------------------------------
# tanh-method competition fronts (the two parameter rows with fixed shapes)
# ---------------------------------------------------------------------------


def build_rm2000_a(p):
    a, lam = p["a"], p["lam"]
    _require(a > 0, "a > 0")
    _require(lam > 0, "lam > 0")
    b2 = 2 * lam + ediv(5 * a, 3) - ediv(a * lam, 3)
    model = DlvModel.two_component(
        1, lam, 1, a, -1, Fraction(-1, 3), -b2, -1, name="rm2000-a"
    )
    mu = math.sqrt(float(a)) / (2 * SQRT6)
    speed = float(a - 6) / math.sqrt(6.0 * float(a))
    half = Fraction(1, 2)
    q = ediv(a, 4)
    data = TanhData("tanh", mu, speed, ((half, half), (q, -2 * q, q)))
    if speed < 0:
        asym = (1, 0)
    elif speed > 0:
        asym = (0, a)
    else:
        asym = None
    return _tanh_solution(
        "RM2000_A", model, data, (0.0, 2.0, -6.0, 6.0), p,
        {"mu": mu, "speed": speed, "b2": b2}, asym, nonnegative=True,
    )


def build_rm2000_b(p):
    a, c = p["a"], p["c"]
    _require(a > 0, "a > 0")
    _require(c > 0, "c > 0")
    _require(5 - a * c != 0, "5 - a*c != 0")
    lam2 = ediv(1 + a * (c - 6), 5 - a * c)
    _require(lam2 > 0, "lam2 = (1+a(c-6))/(5-ac) > 0", f"got {lam2}")
    b2 = a * c + 1 - a
    model = DlvModel.two_component(1, lam2, 1, a, -1, -c, -b2, -1, name="rm2000-b")
    mu = math.sqrt(1 + float(a * c)) / (2 * SQRT6)
    speed = float(a * c - 5) / math.sqrt(6 + 6 * float(a * c))
    qu = Fraction(1, 4)
    qv = ediv(a, 4)
    data = TanhData("tanh", mu, speed, ((qu, 2 * qu, qu), (qv, -2 * qv, qv)))
    asym = (1, 0) if speed < 0 else ((0, a) if speed > 0 else None)
    return _tanh_solution(
        "RM2000_B", model, data, (0.0, 2.0, -6.0, 6.0), p,
        {"mu": mu, "speed": speed, "lam2": lam2, "b2": b2}, asym, nonnegative=True,
    )


# ---------------------------------------------------------------------------
# Fisher-type front via the linear tie v = beta0 + beta1*u
# ---------------------------------------------------------------------------


def _fisher_constants(p):
    a1, a2 = p["a1"], p["a2"]
    b1, b2 = p["b1"], p["b2"]
    c1, c2 = p["c1"], p["c2"]
    branch = p["branch"]
    if branch not in ("zero", "nonzero"):
        raise RestrictionError("branch in {zero, nonzero}", f"got {branch!r}")
    if c1 != c2 and b1 != b2:
        beta1 = ediv(b1 - b2, c2 - c1)
    elif c1 == c2 and b1 == b2:
        _require(a1 != 0 and c1 != 0, "a1*c1 != 0 for the equal-row tie")
        beta1 = -ediv(a2 * b1, a1 * c1)
    else:
        raise RestrictionError(
            "tie coefficient defined", "need c1 != c2, b1 != b2 or c1 == c2, b1 == b2"
        )
    if branch == "zero":
        beta0 = 0
        _require(a1 == a2, "a1 == a2 when beta0 = 0")
        a = a1
    else:
        _require(c2 != 0, "c2 != 0 for beta0 = a2/c2")
        beta0 = ediv(a2, c2)
        a = a1 - ediv(a2 * c1, c2)
    b = b1 + c1 * beta1
    # the tie must be consistent with both reduced equations
    resid = float(-beta1 * a + beta1 * (a2 - c2 * beta0) - beta0 * (b2 + c2 * beta1))
    scale = 1 + max(abs(float(v)) for v in (a, a2, b2, beta0, beta1))
    _require(abs(resid) <= 1e-12 * scale, "parameter row consistent with the tie v = beta0 + beta1*u",
             f"linear-coefficient mismatch {resid:.3e}")
    _require(a > 0, "a > 0", f"derived a = {a}")
    _require(b != 0, "b != 0")
    return a, b, beta0, beta1


def _build_fisher(p, kind):
    a1, a2 = p["a1"], p["a2"]
    b1, b2 = p["b1"], p["b2"]
    c1, c2 = p["c1"], p["c2"]
    a, b, beta0, beta1 = _fisher_constants(p)
    model = DlvModel.two_component(
        1, 1, a1, a2, -b1, -c1, -b2, -c2, name="fisher-tie"
    )
    mu = math.sqrt(float(a) / 24.0)
    speed = (5.0 * float(a) / 12.0) / mu
    amp = ediv(a, 4 * b)
    ucoef = (amp, -2 * amp, amp)
    vcoef = (beta0 + beta1 * amp, -2 * beta1 * amp, beta1 * amp)
    data = TanhData(kind, mu, speed, (ucoef, vcoef))
    ulim = ediv(a, b)
    vlim = beta0 + beta1 * ulim
    asym = None if kind == "coth" else (ulim, vlim)
    nonneg = kind == "tanh" and float(ulim) > 0 and float(beta0) >= 0 and float(vlim) >= -1e-15
    window = (0.0, 1.5, -8.0, 8.0) if kind == "tanh" else (0.0, 0.4, 1.5, 6.0)
    return _tanh_solution(
        "FISHER_FRONT" if kind == "tanh" else "FISHER_COTH",
        model, data, window, p,
        {"a": a, "b": b, "beta0": beta0, "beta1": beta1, "mu": mu, "speed": speed},
        asym, nonneg,
    )


def build_fisher_front(p):
    return _build_fisher(p, "tanh")


def build_fisher_coth(p):
    return _build_fisher(p, "coth")


# ---------------------------------------------------------------------------
# prey-predator front
# ---------------------------------------------------------------------------


def build_predprey(p):
    a1, a2, b1, b2, c = (p[k] for k in ("a1", "a2", "b1", "b2", "c"))
    for name in ("a1", "a2", "b1", "b2", "c"):
        _require(p[name] > 0, f"{name} > 0")
    vnum = a1 * b2 - a2 * b1
    _require(vnum > 0, "a1*b2 - a2*b1 > 0", "otherwise the component v nonpositive")
    lam_num = a2 * (5 * b1 + b2) - 2 * a1 * b2
    lam_den = a2 * b1 - 3 * a1 * (2 * b1 + b2)
    _require(lam_den != 0, "lam denominator != 0")
    lam = ediv(lam_num, lam_den)
    _require(lam > 0, "lam > 0", f"got {lam}")
    alpha = float(lam_den) / math.sqrt(2 * float((3 * b1 + b2) * vnum))
    mu = math.sqrt(float(vnum) / (8 * float(3 * b1 + b2)))
    model = DlvModel.two_component(
        1, lam, a1, -a2, -b1, -c, b2, -3 * c, name="prey-predator"
    )
    u0 = ediv(3 * a1 + a2, 2 * (3 * b1 + b2))
    v0 = ediv(vnum, 4 * c * (3 * b1 + b2))
    data = TanhData("tanh", mu, alpha, ((u0, u0), (v0, 2 * v0, v0)))
    asym = (2 * u0, 4 * v0)  # alpha < 0, so T -> +1 as t -> +infinity
    return _tanh_solution(
        "PREDPREY_FRONT", model, data, (0.0, 2.0, -6.0, 6.0), p,
        {"lam": lam, "alpha": alpha, "mu": mu, "u_amp": u0, "v_amp": v0},
        asym, nonnegative=True,
    )


# ---------------------------------------------------------------------------
# separable family u+v = phi1(x): exponential-in-t ansatz solutions
# ---------------------------------------------------------------------------


def _sep_jet(a1, a2, beta, phi_parts):
    """Jet for u = (-E*phi2 + a1*phi1 + a1*a2)/(a1-a2), v = (E*phi2 - a2*phi1 - a1*a2)/(a1-a2).

    phi_parts(x) -> (phi1, dphi1, ddphi1, phi2, dphi2, ddphi2), vectorized.
    """
    a1f, a2f, betaf = float(a1), float(a2), float(beta)
    den = a1f - a2f

    def jet(t, x):
        p1, dp1, ddp1, p2, dp2, ddp2 = phi_parts(x)
        E = np.exp(betaf * t)
        Ep2 = E * p2
        u = (-Ep2 + a1f * p1 + a1f * a2f) / den
        v = (Ep2 - a2f * p1 - a1f * a2f) / den
        ut = -betaf * Ep2 / den
        vt = -ut
        ux = (-E * dp2 + a1f * dp1) / den
        vx = (E * dp2 - a2f * dp1) / den
        uxx = (-E * ddp2 + a1f * ddp1) / den
        vxx = (E * ddp2 - a2f * ddp1) / den
        return np.stack([u, v]), np.stack([ut, vt]), np.stack([ux, vx]), np.stack([uxx, vxx])

    return jet


def _sep_model(a1, a2, lam1, lam2):
    _require(a1 != a2, "a1 != a2")
    _require(lam1 != lam2, "lam1 != lam2")
    return DlvModel.two_component(lam1, lam2, a1, a2, 1, 1, 1, 1, name="coupled-equal-rows")


def build_cd11_exp(p):
    a1, a2, l1, l2, C1, C2 = (p[k] for k in ("a1", "a2", "lam1", "lam2", "C1", "C2"))
    model = _sep_model(a1, a2, l1, l2)
    beta = ediv(a1 - a2, l1 - l2)
    _require(beta > 0, "exp branch requires beta > 0", f"beta = {beta}")
    s = math.sqrt(float(beta * l1))
    C1f, C2f = float(C1), float(C2)

    def parts(x):
        ep, em = np.exp(s * x), np.exp(-s * x)
        f = C1f * ep + C2f * em
        df = s * (C1f * ep - C2f * em)
        ddf = s * s * f
        zero = np.zeros_like(f)
        return -float(a1) + zero, zero, zero, f, df, ddf

    def phi_profiles(x):
        x = np.asarray(x, float)
        p1, dp1, ddp1, p2, dp2, ddp2 = parts(x)
        return np.stack([p1, p2]), np.stack([dp1, dp2]), np.stack([ddp1, ddp2])

    return make_solution(
        "CD11_EXP", model, _sep_jet(a1, a2, beta, parts), (0.0, 1.5, -3.0, 3.0),
        params=p, derived={"beta": beta, "root": s}, asymptote=None,
        nonnegative=False,
        reduction_info={"ansatz": "A64", "profile_x": phi_profiles},
    )


def build_cd11_trig(p):
    a1, a2, l1, l2, C1, C2 = (p[k] for k in ("a1", "a2", "lam1", "lam2", "C1", "C2"))
    model = _sep_model(a1, a2, l1, l2)
    beta = ediv(a1 - a2, l1 - l2)
    _require(beta < 0, "trig branch requires beta < 0", f"beta = {beta}")
    s = math.sqrt(float(-beta * l1))
    C1f, C2f = float(C1), float(C2)

    def parts(x):
        cs, sn = np.cos(s * x), np.sin(s * x)
        f = C1f * cs + C2f * sn
        df = s * (-C1f * sn + C2f * cs)
        ddf = -s * s * f
        zero = np.zeros_like(f)
        return -float(a1) + zero, zero, zero, f, df, ddf

    def phi_profiles(x):
        x = np.asarray(x, float)
        p1, dp1, ddp1, p2, dp2, ddp2 = parts(x)
        return np.stack([p1, p2]), np.stack([dp1, dp2]), np.stack([ddp1, ddp2])

    return make_solution(
        "CD11_TRIG", model, _sep_jet(a1, a2, beta, parts), (0.0, 1.5, -3.0, 3.0),
        params=p, derived={"beta": beta, "root": s}, asymptote=(-a1, 0),
        nonnegative=False,
        reduction_info={"ansatz": "A64", "profile_x": phi_profiles},
    )


def _quad_from(ref, integrand, xs):
    """int_ref^x integrand, adaptive quadrature per unique query point."""
    xs = np.asarray(xs, dtype=float)
    flat = xs.ravel()
    uniq, inv = np.unique(flat, return_inverse=True)
    vals = np.empty_like(uniq)
    for i, xv in enumerate(uniq):
        vals[i], _ = quad(integrand, ref, float(xv), epsabs=1e-13, epsrel=1e-13, limit=400)
    return vals[inv].reshape(xs.shape)


def _build_cd11_tanh(p, variant):
    """Nonconstant phi1 = phi - a1 branch; variant 2: lam1 = (9/5) lam2, variant 3: 4/3."""
    a1, a2, l2, C1, C2 = (p[k] for k in ("a1", "a2", "lam2", "C1", "C2"))
    _require(a1 > a2, "a1 > a2")
    _require(l2 > 0, "lam2 > 0")
    ratio = Fraction(9, 5) if variant == 2 else Fraction(4, 3)
    l1 = ratio * l2
    model = _sep_model(a1, a2, l1, l2)
    beta = ediv(a1 - a2, l1 - l2)
    s = math.sqrt(float(a1 - a2)) / 2.0
    a1f = float(a1)
    delta = float(a1 - a2)
    C1f, C2f = float(C1), float(C2)

    if variant == 2:
        ref = 0.0

        def fbase(x):
            return np.cosh(s * x) ** 3

        def dfbase(x):
            return 3 * s * np.cosh(s * x) ** 2 * np.sinh(s * x)

        def ddfbase(x):
            th = np.tanh(s * x)
            return 3 * s * s * np.cosh(s * x) ** 3 * (1 + 2 * th * th)

    else:
        ref = 1.0

        def fbase(x):
            return np.sinh(s * x) * np.cosh(s * x) ** 3

        def dfbase(x):
            th = np.tanh(s * x)
            return s * np.cosh(s * x) ** 4 * (1 + 3 * th * th)

        def ddfbase(x):
            th = np.tanh(s * x)
            return s * s * np.sinh(s * x) * np.cosh(s * x) ** 3 * (10 + 6 * th * th)

    def integrand(x):
        return 1.0 / fbase(x) ** 2

    def parts(x):
        x = np.asarray(x, dtype=float)
        th = np.tanh(s * x)
        phi = 1.5 * delta * (1 - th * th)
        p1 = phi - a1f
        dp1 = -3.0 * delta * s * th * (1 - th * th)
        ddp1 = -3.0 * delta * s * s * (1 - th * th) * (1 - 3 * th * th)
        f = fbase(x)
        F = _quad_from(ref, integrand, x)
        cc = C1f + C2f * F
        p2 = f * cc
        dp2 = dfbase(x) * cc + C2f / f
        ddp2 = ddfbase(x) * cc
        return p1, dp1, ddp1, p2, dp2, ddp2

    def phi_profiles(x):
        p1, dp1, ddp1, p2, dp2, ddp2 = parts(x)
        return np.stack([p1, p2]), np.stack([dp1, dp2]), np.stack([ddp1, ddp2])

    validity = None
    if variant == 3:
        def validity(t, x):  # noqa: F811 - simple zero guard on the f2 root
            _, xb = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
            return xb > GUARD_BAND

    window = (0.0, 1.0, -2.5, 2.5) if variant == 2 else (0.0, 1.0, 0.3, 3.5)
    return make_solution(
        f"CD11_TANH{variant}", model, _sep_jet(a1, a2, beta, parts), window,
        params=p, derived={"beta": beta, "lam1": l1, "s": s},
        asymptote=None, nonnegative=False, validity_fn=validity,
        reduction_info={"ansatz": "A64", "profile_x": phi_profiles},
    )


def build_cd11_tanh2(p):
    return _build_cd11_tanh(p, 2)


def build_cd11_tanh3(p):
    return _build_cd11_tanh(p, 3)


def build_cd11_comp(p):
    a1, a2, b, c, l1, l2, C2 = (p[k] for k in ("a1", "a2", "b", "c", "lam1", "lam2", "C2"))
    for name in ("a1", "a2", "b", "c"):
        _require(p[name] > 0, f"{name} > 0")
    _require(l1 != l2, "lam1 != lam2")
    beta = ediv(a1 - a2, l1 - l2)
    _require(beta < 0, "beta = (a1-a2)/(lam1-lam2) < 0", f"beta = {beta}")
    model = DlvModel.two_component(l1, l2, a1, a2, -b, -c, -b, -c, name="competition-equal-rows")
    s = math.sqrt(float(-beta * l1))
    a1f, a2f, bf, cf, C2f, betaf = (float(v) for v in (a1, a2, b, c, C2, beta))

    def jet(t, x):
        f = C2f * np.sin(s * x) * np.exp(betaf * t)
        fx = s * C2f * np.cos(s * x) * np.exp(betaf * t)
        u = a1f / bf + f / ((a1f - a2f) * bf)
        v = f / ((a2f - a1f) * cf)
        ut = betaf * f / ((a1f - a2f) * bf)
        vt = betaf * f / ((a2f - a1f) * cf)
        ux = fx / ((a1f - a2f) * bf)
        vx = fx / ((a2f - a1f) * cf)
        uxx = -s * s * f / ((a1f - a2f) * bf)
        vxx = -s * s * f / ((a2f - a1f) * cf)
        return np.stack([u, v]), np.stack([ut, vt]), np.stack([ux, vx]), np.stack([uxx, vxx])

    def phi_profiles(x):
        # normalized profiles of the equal-rows form: phi1 = -a1, phi2 = C2 sin(s x)
        x = np.asarray(x, float)
        f = C2f * np.sin(s * x)
        df = s * C2f * np.cos(s * x)
        zero = np.zeros_like(f)
        return (
            np.stack([-a1f + zero, f]),
            np.stack([zero, df]),
            np.stack([zero, -s * s * f]),
        )

    nonneg = abs(float(C2)) <= abs(float(a1 - a2)) * float(a1) and float(ediv(C2, a2 - a1)) >= 0
    strip = math.pi / s
    return make_solution(
        "CD11_COMP", model, jet, (0.0, 2.0, 0.0, strip),
        params=p, derived={"beta": beta, "root": s, "strip": strip},
        asymptote=(ediv(a1, b), 0), nonnegative=nonneg,
        reduction_info={"ansatz": "A64", "profile_x": phi_profiles},
    )


# ---------------------------------------------------------------------------
# rational-in-time family for the proportional-rows system
# ---------------------------------------------------------------------------


def build_cd21_case1(p):
    keys = ("a1", "a2", "lam1", "lam2", "b", "c", "alpha0", "alpha1", "alpha2", "C1", "C2")
    a1, a2, l1, l2, b, c, al0, al1, al2, C1, C2 = (p[k] for k in keys)
    _require(l1 != l2, "lam1 != lam2")
    _require(a1 != 0 and a2 != 0, "a1*a2 != 0")
    _require(b != 0 and c != 0, "b != 0, c != 0")
    kap2 = ediv(l1 * a2 - l2 * a1, l1 - l2)
    _require(kap2 > 0, "kappa^2 = (lam1*a2 - lam2*a1)/(lam1 - lam2) > 0", f"got {kap2}")
    if b > 0 and c > 0 and al2 == 0:
        # boundedness/nonnegativity conditions stated for the competition form
        _require(al0 > abs(al1), "alpha0 > |alpha1|")
        bound = max(ediv(-(al0 * b + C1), l2), ediv(b * a1 * abs(al1), a2 * l1))
        _require(C2 > bound, "C2 > max(-(alpha0*b+C1)/lam2, b*a1*|alpha1|/(a2*lam1))",
                 f"need C2 > {bound}")
        nonneg = True
    else:
        nonneg = False
    model = DlvModel.two_component(
        l1, l2, a1, a2, -b, -c, -ediv(l2 * b, l1), -ediv(l2 * c, l1),
        name="competition-proportional-rows",
    )
    kap = math.sqrt(float(kap2))
    r1, r2, rk = float(ediv(a1, l1)), float(ediv(a2, l2)), float(ediv(kap2, l1))
    a1f, a2f, l1f, l2f = (float(v) for v in (a1, a2, l1, l2))
    bf, cf = float(b), float(c)
    al0f, al1f, al2f, C1f, C2f = (float(v) for v in (al0, al1, al2, C1, C2))

    def pieces(t):
        E1, E2, Ek = np.exp(r1 * t), np.exp(r2 * t), np.exp(-rk * t)
        D = C1f + al0f * bf * E1 + C2f * l2f * E2
        Dp = al0f * bf * r1 * E1 + C2f * a2f * E2
        N = al0f * a1f * bf * E1 + C2f * a2f * l1f * E2
        Np = al0f * a1f * bf * r1 * E1 + C2f * a2f * l1f * r2 * E2
        return E1, E2, Ek, D, Dp, N, Np

    def jet(t, x):
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        E1, E2, Ek, D, Dp, N, Np = pieces(t)
        sn, cs = np.sin(kap * x), np.cos(kap * x)
        S = al1f * sn + al2f * cs
        G = al0f + Ek * S
        Gt = -rk * Ek * S
        A = a1f * E1 / D
        At = a1f * r1 * E1 / D - a1f * E1 * Dp / D**2
        u = A * G
        ut = At * G + A * Gt
        ux = A * Ek * kap * (al1f * cs - al2f * sn)
        uxx = -kap * kap * A * Ek * S
        v = N / (cf * D) - bf / cf * u
        vt = Np / (cf * D) - N * Dp / (cf * D**2) - bf / cf * ut
        vx = -bf / cf * ux
        vxx = -bf / cf * uxx
        return np.stack([u, v]), np.stack([ut, vt]), np.stack([ux, vx]), np.stack([uxx, vxx])

    def validity(t, x):
        t = np.asarray(t, float)
        _, _, _, D, _, _, _ = pieces(t)
        mag = abs(C1f) + np.abs(al0f * bf) * np.exp(r1 * t) + np.abs(C2f * l2f) * np.exp(r2 * t)
        ok = np.abs(D) > 1e-9 * (1.0 + mag)
        ok_b, _ = np.broadcast_arrays(ok, np.asarray(x, float))
        return ok_b

    if ediv(a1, l1) > ediv(a2, l2):
        asym = (ediv(a1, b), 0)
    else:
        asym = (0, ediv(a2 * l1, c * l2))

    def profile_t(t):
        t = np.asarray(t, float)
        E1, E2, Ek, D, Dp, N, Np = pieces(t)
        phi = a1f * E1 / D  # profile of the normalized (equal-rows) variables
        psi = -N / D
        dphi = phi * (a1f + psi) / l1f
        dpsi = ((a2f + l2f / l1f * psi) * psi + (-bf * al0f) * (a1f * l2f / l1f - a2f) * phi) / l2f
        return np.stack([phi, psi]), np.stack([dphi, dpsi])

    return make_solution(
        "CD21_CASE1", model, jet, (0.0, 2.0, 0.0, math.pi / kap),
        params=p, derived={"kappa2": kap2, "kappa": kap}, asymptote=asym,
        nonnegative=nonneg, validity_fn=validity,
        reduction_info={
            "ansatz": "A619",
            "profile_t": profile_t,
            "alphas": (-b * al0, -b * al1, -b * al2),
        },
    )


# ---------------------------------------------------------------------------
# registry rows
# ---------------------------------------------------------------------------

ENTRIES = (
    CatalogEntry(
        "RM2000_A", 2, "tanh traveling front (competition, mixed degrees)",
        (("a", "linear rate of the second species"), ("lam", "inverse diffusivity of the second species")),
        ("a > 0", "lam > 0"),
        {"a": 1, "lam": 1},
        build_rm2000_a,
    ),
    CatalogEntry(
        "RM2000_B", 2, "tanh traveling front (competition, both squared)",
        (("a", "linear rate of the second species"), ("c", "cross-interaction coefficient")),
        ("a > 0", "c > 0", "(1+a(c-6))/(5-ac) > 0"),
        {"a": Fraction(1, 8), "c": 2},
        build_rm2000_b,
    ),
    CatalogEntry(
        "FISHER_FRONT", 2, "Fisher-type front via the linear tie v = beta0 + beta1*u",
        (
            ("a1", "linear rate, first species"), ("a2", "linear rate, second species"),
            ("b1", "self-interaction, first"), ("b2", "cross-interaction, second on first"),
            ("c1", "cross-interaction, first on second"), ("c2", "self-interaction, second"),
            ("branch", "'zero' (beta0 = 0) or 'nonzero' (beta0 = a2/c2)"),
        ),
        ("derived a > 0", "derived b != 0", "tie consistency", "branch-specific equalities"),
        {"a1": 1, "a2": 1, "b1": 1, "b2": 2, "c1": 3, "c2": 1, "branch": "zero"},
        build_fisher_front,
    ),
    CatalogEntry(
        "FISHER_COTH", 2, "coth variant of the Fisher-type front (blows up on a plane)",
        (
            ("a1", "linear rate, first species"), ("a2", "linear rate, second species"),
            ("b1", "self-interaction, first"), ("b2", "cross-interaction, second on first"),
            ("c1", "cross-interaction, first on second"), ("c2", "self-interaction, second"),
            ("branch", "'zero' or 'nonzero'"),
        ),
        ("derived a > 0", "derived b != 0", "tie consistency"),
        {"a1": 1, "a2": 1, "b1": 1, "b2": 2, "c1": 3, "c2": 1, "branch": "zero"},
        build_fisher_coth,
    ),
    CatalogEntry(
        "PREDPREY_FRONT", 2, "tanh traveling front (prey-predator)",
        (
            ("a1", "prey growth rate"), ("a2", "predator death rate"),
            ("b1", "prey self-limitation"), ("b2", "predation gain"),
            ("c", "predation loss scale"),
        ),
        ("all parameters > 0", "a1*b2 - a2*b1 > 0", "derived lam > 0"),
        {"a1": 2, "a2": 1, "b1": 1, "b2": 10, "c": 1},
        build_predprey,
    ),
    CatalogEntry(
        "CD11_EXP", 2, "separable family, exponential spatial profile",
        (
            ("a1", "linear rate, first"), ("a2", "linear rate, second"),
            ("lam1", "inverse diffusivity, first"), ("lam2", "inverse diffusivity, second"),
            ("C1", "free constant"), ("C2", "free constant"),
        ),
        ("a1 != a2", "lam1 != lam2", "beta = (a1-a2)/(lam1-lam2) > 0"),
        {"a1": 3, "a2": 1, "lam1": 2, "lam2": 1, "C1": 1, "C2": Fraction(1, 2)},
        build_cd11_exp,
    ),
    CatalogEntry(
        "CD11_TRIG", 2, "separable family, trigonometric spatial profile",
        (
            ("a1", "linear rate, first"), ("a2", "linear rate, second"),
            ("lam1", "inverse diffusivity, first"), ("lam2", "inverse diffusivity, second"),
            ("C1", "free constant"), ("C2", "free constant"),
        ),
        ("a1 != a2", "lam1 != lam2", "beta < 0"),
        {"a1": 3, "a2": 4, "lam1": 2, "lam2": 1, "C1": 1, "C2": Fraction(1, 2)},
        build_cd11_trig,
    ),
    CatalogEntry(
        "CD11_TANH2", 2, "separable family, sech^2 hump profile (lam1 = 9/5 lam2)",
        (
            ("a1", "linear rate, first"), ("a2", "linear rate, second"),
            ("lam2", "inverse diffusivity, second"),
            ("C1", "free constant"), ("C2", "free constant of the reduced-order quadrature"),
        ),
        ("a1 > a2", "lam2 > 0"),
        {"a1": 2, "a2": 1, "lam2": Fraction(5, 4), "C1": 1, "C2": Fraction(1, 10)},
        build_cd11_tanh2,
    ),
    CatalogEntry(
        "CD11_TANH3", 2, "separable family, sech^2 hump profile (lam1 = 4/3 lam2)",
        (
            ("a1", "linear rate, first"), ("a2", "linear rate, second"),
            ("lam2", "inverse diffusivity, second"),
            ("C1", "free constant"), ("C2", "free constant of the reduced-order quadrature"),
        ),
        ("a1 > a2", "lam2 > 0", "domain restricted to x > 0"),
        {"a1": 2, "a2": 1, "lam2": Fraction(3, 4), "C1": 1, "C2": Fraction(1, 10)},
        build_cd11_tanh3,
    ),
    CatalogEntry(
        "CD11_COMP", 2, "competition form of the trigonometric separable family",
        (
            ("a1", "growth rate, surviving species"), ("a2", "growth rate, dying species"),
            ("b", "self/cross interaction scale, first column"), ("c", "second column"),
            ("lam1", "inverse diffusivity, first"), ("lam2", "inverse diffusivity, second"),
            ("C2", "profile amplitude"),
        ),
        ("a1, a2, b, c > 0", "beta < 0"),
        {"a1": 3, "a2": 4, "b": Fraction(1, 2), "c": Fraction(1, 5), "lam1": 2, "lam2": 1,
         "C2": Fraction(1, 3)},
        build_cd11_comp,
    ),
    CatalogEntry(
        "CD21_CASE1", 2, "rational-in-time family for the proportional-rows system",
        (
            ("a1", "linear rate, first"), ("a2", "linear rate, second"),
            ("lam1", "inverse diffusivity, first"), ("lam2", "inverse diffusivity, second"),
            ("b", "interaction scale, first column"), ("c", "interaction scale, second column"),
            ("alpha0", "constant mode amplitude"), ("alpha1", "sin mode amplitude"),
            ("alpha2", "cos mode amplitude"), ("C1", "free constant"), ("C2", "free constant"),
        ),
        ("kappa^2 > 0", "a1*a2 != 0", "lam1 != lam2",
         "for b,c > 0, alpha2 = 0: alpha0 > |alpha1| and the C2 lower bound"),
        {"a1": 3, "a2": 2, "lam1": Fraction(3, 4), "lam2": 1, "b": Fraction(3, 2), "c": 3,
         "alpha0": 2, "alpha1": 1, "alpha2": 0, "C1": -2, "C2": 5},
        build_cd21_case1,
    ),
)
