"""Catalog of closed-form solutions."""
from __future__ import annotations

from .base import (
    ClosedFormSolution,
    CatalogEntry,
    DomainError,
    RestrictionError,
    TanhData,
    UnknownSolutionError,
    make_solution,
)
from .heat_kernel import (
    ENTRIES as _HK_ENTRIES,
    GaussianBumpProfile,
    SinProfile,
    TabulatedProfile,
    heat_kernel_family,
)
from .three_component import ENTRIES as _THREE_ENTRIES
from .two_component import ENTRIES as _TWO_ENTRIES

__all__ = [
    "ClosedFormSolution",
    "CatalogEntry",
    "DomainError",
    "RestrictionError",
    "UnknownSolutionError",
    "TanhData",
    "REGISTRY",
    "SOLUTION_IDS",
    "TANH_IDS",
    "catalog",
    "entry",
    "instantiate",
    "default_solution",
    "time_asymptote",
    "heat_kernel_family",
    "SinProfile",
    "GaussianBumpProfile",
    "TabulatedProfile",
    "make_solution",
]

REGISTRY: dict[str, CatalogEntry] = {
    e.id: e for e in (*_TWO_ENTRIES, *_THREE_ENTRIES, *_HK_ENTRIES)
}
SOLUTION_IDS = tuple(REGISTRY)

#: entries whose components are polynomials in T = tanh (or coth)
TANH_IDS = (
    "RM2000_A", "RM2000_B", "FISHER_FRONT", "FISHER_COTH",
    "PREDPREY_FRONT", "HUNG11_TW", "CH12_TW", "CPP_FRONT",
)


def entry(sol_id: str) -> CatalogEntry:
    try:
        return REGISTRY[sol_id]
    except KeyError:
        raise UnknownSolutionError(sol_id) from None


def catalog():
    """(id, metadata) rows for every entry."""
    rows = []
    for e in REGISTRY.values():
        rows.append(
            (
                e.id,
                {
                    "m": e.m,
                    "family": e.family,
                    "free_parameters": e.param_names(),
                    "restrictions": e.restrictions,
                },
            )
        )
    return rows


def instantiate(sol_id: str, raw: dict) -> ClosedFormSolution:
    e = entry(sol_id)
    names = set(e.param_names())
    missing = [n for n in e.param_names() if n not in raw and n not in e.defaults]
    if missing:
        raise RestrictionError("all free parameters supplied", f"missing {missing}")
    unknown = sorted(set(raw) - names)
    if unknown:
        raise RestrictionError("parameters belong to the entry", f"unknown {unknown}")
    params = {**e.defaults, **raw}
    params = {k: v for k, v in params.items() if k in names}
    return e.build(params)


def default_solution(sol_id: str) -> ClosedFormSolution:
    e = entry(sol_id)
    return e.build(dict(e.defaults))


def time_asymptote(sol: ClosedFormSolution):
    """x-uniform t -> +infinity limit, when the entry has one."""
    return sol.asymptote
