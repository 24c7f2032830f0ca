"""Hand-built exact solutions for semi-coupled systems with scaling symmetry.

The catalog families all carry nonzero linear rates, so they never meet the
zero-rate restriction of the scaling generator.  These fields do, which makes
them the natural probes for the scaling and component-shear flows.
"""
from __future__ import annotations

import numpy as np

from ..model import DlvModel
from .base import GUARD_BAND, make_solution

__all__ = ["heat_mode_solution", "semicoupled_power_solution"]


def heat_mode_solution(b1, b2, k, amplitude=1.0):
    """(u, v) = (0, A sin(kx) e^{-k^2 t}) for the zero-rate semi-coupled system
    u_t = u_xx + b1*u^2, v_t = v_xx + b2*u*v."""
    model = DlvModel.two_component(1, 1, 0, 0, b1, 0, b2, 0, name="semi-coupled-heat")
    kf, A = float(k), float(amplitude)

    def jet(t, x):
        decay = np.exp(-kf * kf * t)
        v = A * np.sin(kf * x) * decay
        vx = A * kf * np.cos(kf * x) * decay
        vxx = -kf * kf * v
        zero = np.zeros_like(v)
        return (
            np.stack([zero, v]),
            np.stack([zero, vxx]),
            np.stack([zero, vx]),
            np.stack([zero, vxx]),
        )

    return make_solution(
        "HEAT_MODE", model, jet, (0.0, 1.0, -3.0, 3.0),
        params={"b1": b1, "b2": b2, "k": k, "amplitude": amplitude},
    )


def semicoupled_power_solution(b, C=1.0, D=0.0):
    """Steady pair (u, v) = (-6/(b x^2), C x^3 + D x^{-2}) for
    u_t = u_xx + b*u^2, v_t = v_xx + b*u*v, valid on x > 0."""
    model = DlvModel.two_component(1, 1, 0, 0, b, 0, b, 0, name="semi-coupled-power")
    bf, Cf, Df = float(b), float(C), float(D)

    def jet(t, x):
        tt, xx = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
        u = -6.0 / (bf * xx**2)
        ux = 12.0 / (bf * xx**3)
        uxx = -36.0 / (bf * xx**4)
        v = Cf * xx**3 + Df * xx**-2
        vx = 3 * Cf * xx**2 - 2 * Df * xx**-3
        vxx = 6 * Cf * xx + 6 * Df * xx**-4
        zero = np.zeros_like(u)
        return (
            np.stack([u, v]),
            np.stack([zero, zero]),
            np.stack([ux, vx]),
            np.stack([uxx, vxx]),
        )

    def validity(t, x):
        tb, xb = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
        return xb > GUARD_BAND

    return make_solution(
        "POWER_PAIR", model, jet, (0.0, 1.0, 0.5, 3.0),
        params={"b": b, "C": C, "D": D}, validity_fn=validity,
    )
