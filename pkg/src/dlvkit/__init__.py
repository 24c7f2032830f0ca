"""Exact solutions, symmetry reductions and a method-of-lines simulator for
diffusive Lotka-Volterra systems."""

from . import reduction, solutions, symmetry, tanh_engine, textio
from .model import (
    DlvModel,
    JetPoint,
    ModelError,
    NondegeneracyReport,
    SteadyState,
    SteadyStateReport,
    nondegeneracy,
    pde_residual,
    residual_scale,
    steady_states,
)

__version__ = "0.1.0"

__all__ = [
    "reduction",
    "solutions",
    "symmetry",
    "tanh_engine",
    "textio",
    "DlvModel",
    "JetPoint",
    "ModelError",
    "NondegeneracyReport",
    "SteadyState",
    "SteadyStateReport",
    "nondegeneracy",
    "pde_residual",
    "residual_scale",
    "steady_states",
    "__version__",
]
