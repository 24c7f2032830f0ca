"""Figure and boundary-value-problem presets (caption parameters baked in)."""
from __future__ import annotations

import math
from fractions import Fraction

from . import simulate as sim
from . import solutions

__all__ = ["FIGURES", "figure_solution", "BVP_PRESETS", "bvp_preset"]

# figure id -> (solution id, parameters, x-window builder)
FIGURES = {
    "4-1": (
        "CH12_TW",
        {"a": 25, "e": 2},
        lambda sol: (-10.0, 10.0),
    ),
    "6-1": (
        "CD11_COMP",
        {"a1": 3, "a2": 4, "b": Fraction(1, 2), "c": Fraction(1, 5),
         "lam1": 2, "lam2": 1, "C2": Fraction(1, 3)},
        lambda sol: (0.0, math.pi / float(sol.derived["root"])),
    ),
    "6-2": (
        "CD21_CASE1",
        {"a1": 3, "a2": 2, "lam1": Fraction(3, 4), "lam2": 1, "b": Fraction(3, 2),
         "c": 3, "alpha0": 2, "alpha1": 1, "alpha2": 0, "C1": -2, "C2": 5},
        lambda sol: (
            math.pi / (2 * float(sol.derived["kappa"])),
            3 * math.pi / (2 * float(sol.derived["kappa"])),
        ),
    ),
    "7-1": (
        "CD13_3COMP",
        {"a1": Fraction(9, 2), "a2": 2, "lam1": 1, "lam2": 2, "b": Fraction(1, 2),
         "c": Fraction(3, 4), "e": Fraction(1, 7), "alpha": -1, "v0": Fraction(3, 2),
         "C1": 0, "C2": 1},
        lambda sol: (0.0, math.pi / float(sol.derived["root"])),
    ),
    "7-2": (
        "CD13_3COMP",
        {"a1": Fraction(9, 2), "a2": 2, "lam1": 1, "lam2": 2, "b": Fraction(1, 2),
         "c": Fraction(3, 4), "e": Fraction(1, 7), "alpha": Fraction(3, 2), "v0": 2,
         "C1": 0, "C2": 1},
        lambda sol: (0.0, math.pi / float(sol.derived["root"])),
    ),
}


def figure_solution(fig_id):
    """(solution, t-range, x-range) for a figure preset."""
    sid, params, window = FIGURES[fig_id]
    sol = solutions.instantiate(sid, dict(params))
    x0, x1 = window(sol)
    return sol, (0.0, 3.0), (x0, x1)


def _thm_front_preset(nx):
    sol = solutions.default_solution("FISHER_FRONT")
    a = float(sol.derived["a"])
    half = 40.0 / math.sqrt(a)
    grid = sim.Grid1D(-half, half, nx)
    bc = sim.BoundaryCondition.neumann_zero(2)
    return sol, grid, bc, "rk4", 1.0


def _example1_preset(nx):
    sol, _, (x0, x1) = figure_solution("6-1")
    grid = sim.Grid1D(x0, x1, nx)
    a1, b = float(sol.params["a1"]), float(sol.params["b"])
    bc = sim.BoundaryCondition.dirichlet_constant((a1 / b, 0.0), (a1 / b, 0.0))
    return sol, grid, bc, "rk4", 1.0


def _sec7_preset(nx):
    sol, _, (x0, x1) = figure_solution("7-1")
    lims = [float(v) for v in sol.asymptote]
    grid = sim.Grid1D(x0, x1, nx)
    bc = sim.BoundaryCondition.dirichlet_constant((0.0, lims[1], lims[2]), (0.0, lims[1], lims[2]))
    return sol, grid, bc, "imex", 10.0


BVP_PRESETS = {
    "front-neumann": (_thm_front_preset, 801),
    "competition-dirichlet": (_example1_preset, 801),
    "three-species-dirichlet": (_sec7_preset, 201),
}


def bvp_preset(name, nx=None):
    """(reference solution, grid, boundary conditions, scheme, t_end)."""
    builder, default_nx = BVP_PRESETS[name]
    return builder(nx or default_nx)
