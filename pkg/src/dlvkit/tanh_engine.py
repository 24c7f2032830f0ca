"""The tanh-method pipeline as exact polynomial algebra.

With T = tanh(mu*(x - alpha*t)) (or coth; both satisfy dT/domega =
mu*(1 - T^2)) a polynomial ansatz U_i(T) turns the plane-wave reduction into
a polynomial identity in T.  Collecting powers gives one algebraic equation
per (component, power); the engine builds that system over a caller-chosen
unknown set and solves it with a damped Newton iteration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DlvModel
from .solutions import TANH_IDS, ClosedFormSolution, default_solution

__all__ = [
    "TanhAnsatz",
    "AlgebraicSystem",
    "NewtonResult",
    "balance_degrees",
    "build_system",
    "newton_solve",
    "multistart_solve",
    "verify_catalog_instance",
    "ansatz_from_solution",
    "unknown_names",
]

#: fixed seed for the documented coarse multistart (bytes of the system tag)
MULTISTART_SEED = int.from_bytes(b"DLV", "big")


@dataclass(frozen=True)
class TanhAnsatz:
    """Polynomial-in-T traveling-wave ansatz."""

    degrees: tuple  # N_i per component, each 1 or 2
    coeffs: tuple  # per component, tuple of N_i + 1 floats, low -> high
    mu: float
    alpha: float
    kind: str = "tanh"

    def __post_init__(self):
        if any(n not in (1, 2) for n in self.degrees):
            raise ValueError("component degrees must be 1 or 2")
        for n, cs in zip(self.degrees, self.coeffs):
            if len(cs) != n + 1:
                raise ValueError("coefficient row length must be degree + 1")


def balance_degrees(model: DlvModel, request=None):
    """Balancing the second derivative (degree N+2) against the quadratic
    reaction (degree 2N) forces N = 2; mixed rows of 1s and 2s are accepted
    on request for solutions whose leading coefficients vanish."""
    if request is None:
        return (2,) * model.m
    request = tuple(int(n) for n in request)
    if len(request) != model.m or any(n not in (1, 2) for n in request):
        raise ValueError("requested degrees must be 1 or 2 per component")
    return request


# -- unknown bookkeeping ------------------------------------------------------

_REF_KINDS = ("A", "mu", "alpha", "lam", "a", "b")


def _ref_name(ref):
    kind = ref[0]
    if kind == "A":
        return f"A[{ref[1]}][{ref[2]}]"
    if kind in ("mu", "alpha"):
        return kind
    if kind in ("lam", "a"):
        return f"{kind}{ref[1] + 1}"
    return f"b[{ref[1]}][{ref[2]}]"


def unknown_names(unknowns):
    return tuple(_ref_name(r) for r in unknowns)


def _apply_unknowns(model, ansatz, unknowns, x):
    lam = [float(v) for v in model.lam]
    a = [float(v) for v in model.a]
    b = [[float(v) for v in row] for row in model.b]
    coeffs = [list(map(float, row)) for row in ansatz.coeffs]
    mu, alpha = float(ansatz.mu), float(ansatz.alpha)
    for ref, val in zip(unknowns, x):
        kind = ref[0]
        if kind == "A":
            coeffs[ref[1]][ref[2]] = val
        elif kind == "mu":
            mu = val
        elif kind == "alpha":
            alpha = val
        elif kind == "lam":
            lam[ref[1]] = val
        elif kind == "a":
            a[ref[1]] = val
        elif kind == "b":
            b[ref[1]][ref[2]] = val
        else:
            raise ValueError(f"unknown reference kind {kind!r}")
    return lam, a, b, coeffs, mu, alpha


def _collect(lam, a, b, coeffs, mu, alpha, maxdeg):
    """Coefficient rows of the reduced equations as polynomials in T."""
    m = len(lam)
    omt2 = np.array([1.0, 0.0, -1.0])  # 1 - T^2
    rows = []
    for i in range(m):
        U = np.asarray(coeffs[i], float)
        dU = np.polynomial.polynomial.polyder(U) if U.size > 1 else np.zeros(1)
        ddU = np.polynomial.polynomial.polyder(dU) if dU.size > 1 else np.zeros(1)
        inner = np.polynomial.polynomial.polysub(
            np.polynomial.polynomial.polymul(omt2, ddU),
            2.0 * np.polynomial.polynomial.polymulx(dU),
        )
        second = mu * mu * np.polynomial.polynomial.polymul(omt2, inner)
        drift = alpha * lam[i] * mu * np.polynomial.polynomial.polymul(omt2, dU)
        lin = np.array([a[i]])
        for j in range(m):
            lin = np.polynomial.polynomial.polyadd(lin, b[i][j] * np.asarray(coeffs[j], float))
        reaction = np.polynomial.polynomial.polymul(U, lin)
        total = np.polynomial.polynomial.polyadd(
            np.polynomial.polynomial.polyadd(second, drift), reaction)
        row = np.zeros(maxdeg + 1)
        row[: total.size] = total
        rows.append(row)
    return rows


@dataclass(frozen=True)
class AlgebraicSystem:
    model: DlvModel
    ansatz: TanhAnsatz
    unknowns: tuple
    names: tuple
    n_equations: int
    maxdeg: int

    def residual(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        if x.size != len(self.unknowns):
            raise ValueError(f"expected {len(self.unknowns)} unknowns, got {x.size}")
        lam, a, b, coeffs, mu, alpha = _apply_unknowns(self.model, self.ansatz, self.unknowns, x)
        rows = _collect(lam, a, b, coeffs, mu, alpha, self.maxdeg)
        return np.concatenate(rows)

    def residual_at_ansatz(self) -> np.ndarray:
        return self.residual(self.current_values())

    def current_values(self) -> np.ndarray:
        lam = [float(v) for v in self.model.lam]
        a = [float(v) for v in self.model.a]
        b = [[float(v) for v in row] for row in self.model.b]
        coeffs = [list(map(float, row)) for row in self.ansatz.coeffs]
        vals = []
        for ref in self.unknowns:
            kind = ref[0]
            if kind == "A":
                vals.append(coeffs[ref[1]][ref[2]])
            elif kind == "mu":
                vals.append(float(self.ansatz.mu))
            elif kind == "alpha":
                vals.append(float(self.ansatz.alpha))
            elif kind == "lam":
                vals.append(lam[ref[1]])
            elif kind == "a":
                vals.append(a[ref[1]])
            else:
                vals.append(b[ref[1]][ref[2]])
        return np.array(vals)

    def dump(self) -> str:
        """One line per equation: component, power, monomial coefficients."""
        lam, a, b, coeffs, mu, alpha = _apply_unknowns(
            self.model, self.ansatz, (), ())
        rows = _collect(lam, a, b, coeffs, mu, alpha, self.maxdeg)
        lines = [f"# equations over unknowns: {', '.join(self.names) or '(none)'}"]
        for i, row in enumerate(rows):
            for k, c in enumerate(row):
                lines.append(f"component {i + 1} T^{k}: {c!r}")
        return "\n".join(lines)


def build_system(model: DlvModel, ansatz: TanhAnsatz, unknowns=()) -> AlgebraicSystem:
    unknowns = tuple(tuple(r) for r in unknowns)
    for ref in unknowns:
        if ref[0] not in _REF_KINDS:
            raise ValueError(f"bad unknown reference {ref!r}")
    maxdeg = 2 * max(ansatz.degrees) + 2
    return AlgebraicSystem(
        model, ansatz, unknowns, unknown_names(unknowns),
        n_equations=model.m * (maxdeg + 1), maxdeg=maxdeg,
    )


# -- damped Newton ------------------------------------------------------------


@dataclass(frozen=True)
class NewtonResult:
    ok: bool
    x: np.ndarray
    residual: float
    iterations: int
    failure: str | None = None

    def __bool__(self):
        return self.ok


def _fd_jacobian(fun, x, f0):
    n = x.size
    J = np.empty((f0.size, n))
    for k in range(n):
        h = 1e-7 * (1.0 + abs(x[k]))
        xp = x.copy()
        xp[k] += h
        J[:, k] = (fun(xp) - f0) / h
    return J


def newton_solve(system: AlgebraicSystem, seed, tol=1e-10, maxit=60) -> NewtonResult:
    """Damped Newton on the normal equations (systems are overdetermined).

    Success requires both a small residual and a full-column-rank Jacobian at
    the accepted point; zero-residual points on solution manifolds (e.g. the
    all-zero ansatz with free mu, alpha) report a singular Jacobian instead.
    """
    fun = system.residual
    x = np.asarray(seed, dtype=float).copy()
    f = fun(x)
    best_x, best_r = x.copy(), float(np.max(np.abs(f)))
    for it in range(maxit):
        res = float(np.max(np.abs(f)))
        if res < best_r:
            best_x, best_r = x.copy(), res
        J = _fd_jacobian(fun, x, f)
        rank = np.linalg.matrix_rank(J, tol=1e-8 * max(1.0, float(np.abs(J).max())))
        if res <= tol:
            if rank < x.size:
                return NewtonResult(False, x, res, it, "singular Jacobian")
            return NewtonResult(True, x, res, it)
        if rank < x.size:
            return NewtonResult(False, best_x, best_r, it, "singular Jacobian")
        step, *_ = np.linalg.lstsq(J, -f, rcond=None)
        lam = 1.0
        norm0 = float(np.linalg.norm(f))
        for _ in range(40):
            trial = x + lam * step
            ftrial = fun(trial)
            if float(np.linalg.norm(ftrial)) < norm0 * (1.0 - 1e-4 * lam):
                x, f = trial, ftrial
                break
            lam *= 0.5
        else:
            return NewtonResult(False, best_x, best_r, it, "line search stalled")
    res = float(np.max(np.abs(f)))
    if res < best_r:
        best_x, best_r = x.copy(), res
    return NewtonResult(False, best_x, best_r, maxit, "maximum iterations reached")


def multistart_solve(system: AlgebraicSystem, n_starts=64, box=3.0, tol=1e-10,
                     maxit=60, seed=MULTISTART_SEED):
    """Coarse random multistart; results merged deterministically by start index."""
    rng = np.random.default_rng(seed)
    n = len(system.unknowns)
    results = []
    for k in range(int(n_starts)):
        x0 = rng.uniform(-box, box, size=n)
        results.append(newton_solve(system, x0, tol=tol, maxit=maxit))
    winners = [r for r in results if r.ok]
    if winners:
        return winners[0], results
    best = min(results, key=lambda r: r.residual)
    return best, results


# -- catalog glue -------------------------------------------------------------


def ansatz_from_solution(sol: ClosedFormSolution) -> TanhAnsatz:
    data = sol.tanh_data
    if data is None:
        raise ValueError(f"{sol.id} is not a tanh-type entry")
    degrees = tuple(len(cs) - 1 for cs in data.coeffs)
    coeffs = tuple(tuple(float(c) for c in cs) for cs in data.coeffs)
    return TanhAnsatz(degrees, coeffs, float(data.mu), float(data.alpha), data.kind)


@dataclass(frozen=True)
class InstanceReport:
    sol_id: str
    max_residual: float
    n_equations: int
    tol: float

    @property
    def ok(self):
        return self.max_residual <= self.tol


def verify_catalog_instance(sol, tol=1e-12) -> InstanceReport:
    """Substitute a tanh entry's coefficients into its algebraic system."""
    if isinstance(sol, str):
        if sol not in TANH_IDS:
            raise ValueError(f"{sol} is not a tanh-type catalog entry")
        sol = default_solution(sol)
    ansatz = ansatz_from_solution(sol)
    system = build_system(sol.model, ansatz, ())
    res = system.residual(np.empty(0))
    scale = 1.0 + max(
        float(np.abs(np.asarray(row, float)).max() if len(row) else 0.0)
        for row in ansatz.coeffs
    ) ** 2
    return InstanceReport(sol.id, float(np.max(np.abs(res))), system.n_equations, tol * scale)
