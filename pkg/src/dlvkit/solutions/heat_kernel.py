"""Heat-kernel solution family for the three-species system with linearly
dependent reaction factors.

The third component solves the plain diffusion equation,
    w(t, x) = w0 + pi^{-1/2} * int exp(-s^2) f(x + 2 sqrt(t) s) ds,
and u, v are affine in w.  The kernel integral is evaluated by Gauss-Hermite
quadrature after the substitution y = x + 2 sqrt(t) s; at t = 0 it returns
f(x) directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from ..model import DlvModel
from .base import CatalogEntry, RestrictionError, ediv, make_solution

DEFAULT_NODES = 64


# -- bounded profile descriptors ---------------------------------------------


@dataclass(frozen=True)
class SinProfile:
    beta: float
    gamma: float
    kernel_limit = 0.0

    def f(self, y):
        return float(self.beta) * np.sin(float(self.gamma) * np.asarray(y, float))

    def df(self, y):
        return float(self.beta * self.gamma) * np.cos(float(self.gamma) * np.asarray(y, float))

    def d2f(self, y):
        return -float(self.gamma) ** 2 * self.f(y)


@dataclass(frozen=True)
class GaussianBumpProfile:
    height: float
    center: float = 0.0
    width: float = 1.0
    kernel_limit = 0.0

    def _z(self, y):
        return (np.asarray(y, float) - float(self.center)) / float(self.width)

    def f(self, y):
        return float(self.height) * np.exp(-self._z(y) ** 2)

    def df(self, y):
        return self.f(y) * (-2.0 * self._z(y) / float(self.width))

    def d2f(self, y):
        z = self._z(y)
        return self.f(y) * (4.0 * z * z - 2.0) / float(self.width) ** 2


class TabulatedProfile:
    """Cubic interpolation inside the table, clamped to the boundary values
    (zero slope) outside, so the profile stays bounded."""

    def __init__(self, ys, fs):
        ys = np.asarray(ys, float)
        fs = np.asarray(fs, float)
        if ys.ndim != 1 or ys.size < 4 or ys.shape != fs.shape:
            raise ValueError("need matching 1-d tables with at least 4 points")
        self._lo, self._hi = float(ys[0]), float(ys[-1])
        self._flo, self._fhi = float(fs[0]), float(fs[-1])
        self._spline = CubicSpline(ys, fs, bc_type="clamped")
        self.kernel_limit = 0.5 * (self._flo + self._fhi)

    def _masked(self, y, inner, lo_val, hi_val):
        y = np.asarray(y, float)
        out = np.asarray(inner(np.clip(y, self._lo, self._hi)), float).copy()
        out[y < self._lo] = lo_val
        out[y > self._hi] = hi_val
        return out

    def f(self, y):
        return self._masked(y, self._spline, self._flo, self._fhi)

    def df(self, y):
        return self._masked(y, self._spline.derivative(1), 0.0, 0.0)

    def d2f(self, y):
        return self._masked(y, self._spline.derivative(2), 0.0, 0.0)


def profile_from_params(p):
    kind = p["profile"]
    if not isinstance(kind, str):
        return kind  # already a descriptor object
    if kind == "sin":
        return SinProfile(p["beta"], p["gamma"])
    if kind == "bump":
        return GaussianBumpProfile(p["height"], p.get("center", 0.0), p.get("width", 1.0))
    raise RestrictionError("profile in {sin, bump}", f"got {kind!r}")


# -- coefficient derivation ---------------------------------------------------


def _closure_coefficients(c1, b2, e1, e2):
    """Affine weights of u, v in w plus the (b3, c3) closing the third reaction.

    Also returns the (A, B, C) linear dependence among the three reaction
    factors, normalized so C = -1.
    """
    den = c1 * b2 - 1
    if den == 0:
        raise RestrictionError("c1*b2 != 1")
    P = ediv(c1 - 1, den)
    R = ediv(b2 - 1, den)
    Qu = ediv(e1 - c1 * e2, den)
    Qv = ediv(e2 - b2 * e1, den)
    M = np.array([[float(c1 - 1), float(b2 - 1)], [float(e1 - c1 * e2), float(e2 - b2 * e1)]])
    rhs = np.array([float(den), -float(den)])
    sol, res, rank, _ = np.linalg.lstsq(M, rhs, rcond=None)
    if np.max(np.abs(M @ sol - rhs)) > 1e-9 * (1 + np.max(np.abs(rhs))):
        raise RestrictionError("third reaction factor closes the linear dependence",
                               "no (b3, c3) solves the closure equations")
    b3, c3 = float(sol[0]), float(sol[1])
    # dependence L3 = p*L1 + q*L2 among the affine reaction factors
    A4 = np.array([
        [1.0, 1.0],
        [-1.0, -float(b2)],
        [-float(c1), -1.0],
        [-float(e1), -float(e2)],
    ])
    t4 = np.array([1.0, -b3, -c3, -1.0])
    pq, _, _, _ = np.linalg.lstsq(A4, t4, rcond=None)
    if np.max(np.abs(A4 @ pq - t4)) > 1e-9:
        raise RestrictionError("reaction factors linearly dependent",
                               "no affine combination reproduces the third factor")
    ABC = (float(pq[0]), float(pq[1]), -1.0)
    return P, R, Qu, Qv, b3, c3, ABC


def _hk_model(c1, b2, e1, e2, c2, e3, b3, c3):
    return DlvModel.three_component(
        (1, 1, 1), (1, c2, e3),
        (
            (-1, -c1, -e1),
            (-c2 * b2, -c2, -c2 * e2),
            (-e3 * b3, -e3 * c3, -e3),
        ),
        name="linearly-dependent-reactions",
    )


def _assemble(sol_id, profile, w0, c1, b2, e1, e2, c2, e3, kernel, params, nodes):
    P, R, Qu, Qv, b3, c3, ABC = _closure_coefficients(c1, b2, e1, e2)
    model = _hk_model(c1, b2, e1, e2, c2, e3, b3, c3)
    Pf, Rf, Quf, Qvf, w0f = (float(v) for v in (P, R, Qu, Qv, w0))

    def jet(t, x):
        W, Wx, Wxx = kernel(t, x)
        Wt = Wxx  # the kernel term solves the heat equation
        u = Pf + Quf * W
        v = Rf + Qvf * W
        return (
            np.stack([u, v, W]),
            np.stack([Quf * Wt, Qvf * Wt, Wt]),
            np.stack([Quf * Wx, Qvf * Wx, Wx]),
            np.stack([Quf * Wxx, Qvf * Wxx, Wxx]),
        )

    def validity(t, x):
        tb, xb = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
        return tb >= 0.0

    lim = getattr(profile, "kernel_limit", None)
    asym = None
    if lim is not None:
        L = w0f + float(lim)
        asym = (Pf + Quf * L, Rf + Qvf * L, L)
    return make_solution(
        sol_id, model, jet, (0.0, 2.0, -3.0, 3.0),
        params=params,
        derived={"P": P, "R": R, "Qu": Qu, "Qv": Qv, "b3": b3, "c3": c3,
                 "dependence": ABC, "nodes": nodes},
        asymptote=asym, nonnegative=False, validity_fn=validity,
    )


def heat_kernel_family(profile, w0, coeffs, c2=1, e3=1, nodes=DEFAULT_NODES,
                       params=None, sol_id="HK_FAMILY"):
    """Kernel-integral solution for a bounded profile descriptor.

    ``coeffs`` is (c1, b2, e1, e2); c2 and e3 multiply reaction factors that
    vanish identically on the family, so they stay free.
    """
    c1, b2, e1, e2 = coeffs
    s_nodes, s_weights = np.polynomial.hermite.hermgauss(int(nodes))
    s_weights = s_weights / math.sqrt(math.pi)
    w0f = float(w0)

    def kernel(t, x):
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        tb, xb = np.broadcast_arrays(t, x)
        y = xb[..., None] + 2.0 * np.sqrt(tb[..., None]) * s_nodes
        W = w0f + np.asarray(profile.f(y), float) @ s_weights
        Wx = np.asarray(profile.df(y), float) @ s_weights
        Wxx = np.asarray(profile.d2f(y), float) @ s_weights
        at0 = tb == 0.0
        if np.any(at0):
            W = np.where(at0, w0f + np.asarray(profile.f(xb), float), W)
            Wx = np.where(at0, np.asarray(profile.df(xb), float), Wx)
            Wxx = np.where(at0, np.asarray(profile.d2f(xb), float), Wxx)
        return W, Wx, Wxx

    if params is None:
        params = {"profile": profile, "w0": w0, "c1": c1, "b2": b2, "e1": e1, "e2": e2}
    return _assemble(sol_id, profile, w0, c1, b2, e1, e2, c2, e3, kernel, params, nodes)


def build_hk_family(p):
    profile = profile_from_params(p)
    return heat_kernel_family(
        profile, p["w0"], (p["c1"], p["b2"], p["e1"], p["e2"]), params=p,
    )


def build_hk_sin(p):
    beta, gamma, w0 = p["beta"], p["gamma"], p["w0"]
    c1, b2, e1, e2 = p["c1"], p["b2"], p["e1"], p["e2"]
    if gamma == 0 or beta == 0:
        raise RestrictionError("beta != 0, gamma != 0")
    profile = SinProfile(beta, gamma)
    bf, gf, w0f = float(beta), float(gamma), float(w0)

    def kernel(t, x):
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        decay = np.exp(-gf * gf * t)
        W = w0f + bf * np.sin(gf * x) * decay
        Wx = bf * gf * np.cos(gf * x) * decay
        Wxx = -gf * gf * bf * np.sin(gf * x) * decay
        Wb, Wxb, Wxxb = np.broadcast_arrays(W, Wx, Wxx)
        return Wb, Wxb, Wxxb

    return _assemble("HK_SIN", profile, w0, c1, b2, e1, e2, 1, 1, kernel, p, 0)


ENTRIES = (
    CatalogEntry(
        "HK_FAMILY", 3, "heat-kernel family (quadrature of a bounded profile)",
        (
            ("profile", "'sin', 'bump', or a descriptor object"),
            ("w0", "constant offset of the third component"),
            ("c1", "interaction"), ("b2", "interaction"),
            ("e1", "interaction"), ("e2", "interaction"),
            ("height", "bump height (profile='bump')"),
            ("beta", "sin amplitude (profile='sin')"),
            ("gamma", "sin frequency (profile='sin')"),
        ),
        ("c1*b2 != 1", "profile bounded and continuous"),
        {"profile": "bump", "height": 0.5, "w0": 1, "c1": 2, "b2": 3, "e1": 4, "e2": 5},
        build_hk_family,
    ),
    CatalogEntry(
        "HK_SIN", 3, "heat-kernel family, closed sine mode",
        (
            ("w0", "constant offset"), ("beta", "sin amplitude"), ("gamma", "sin frequency"),
            ("c1", "interaction"), ("b2", "interaction"),
            ("e1", "interaction"), ("e2", "interaction"),
        ),
        ("c1*b2 != 1", "beta != 0", "gamma != 0"),
        {"w0": 1, "beta": 0.5, "gamma": 2, "c1": 2, "b2": 3, "e1": 4, "e2": 5},
        build_hk_sin,
    ),
)
