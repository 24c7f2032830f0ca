"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with  pytest tests/test_acceptance.py -v -s  to see the per-criterion lines.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from dlvkit import reduction, simulate as sim, solutions, symmetry, tanh_engine
from dlvkit.model import pde_residual, residual_scale, steady_states
from dlvkit.solutions.manufactured import heat_mode_solution
from dlvkit import presets


def report(num, ok, detail):
    line = f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def scaled_residual_max(sol, nt=21, nx=21):
    tt, xx = sol.window_grid(nt, nx)
    jet = sol.jet(tt, xx)
    res = np.abs(pde_residual(sol.model, jet))
    scale = residual_scale(sol.model, jet)
    return float(np.max(res / (1.0 + scale)))


def test_01_residual_suite():
    t0 = time.time()
    worst = {}
    for sid in solutions.SOLUTION_IDS:
        worst[sid] = scaled_residual_max(solutions.default_solution(sid))
    elapsed = time.time() - t0
    bad = {k: v for k, v in worst.items() if v > 1e-9}
    ok = not bad and len(worst) >= 15 and elapsed < 10.0
    report(1, ok, f"{len(worst)} entries on 21x21 grids, max scaled residual "
                  f"{max(worst.values()):.2e}, runtime {elapsed:.2f}s" +
                  (f", failures {bad}" if bad else ""))


def test_02_competition_prey_predator_instance():
    sol = solutions.instantiate(
        "CPP_FRONT",
        {"a1": 11, "a2": 9, "a3": 4, "b1": Fraction(1, 2), "b2": Fraction(1, 6),
         "b3": 5, "c1": 6, "c2": 2, "c3": 7})
    exact = (
        sol.derived["lam1"] == Fraction(5, 2)
        and sol.derived["lam2"] == Fraction(13, 6)
        and sol.derived["speed"] == 3
        and sol.derived["u_amp"] == Fraction(147, 53)
        and sol.derived["v_amp"] == Fraction(1, 53)
        and sol.derived["w_amp"] == 2
    )
    res = scaled_residual_max(sol)
    ok = exact and res <= 1e-9
    report(2, ok, f"rational constants exact = {exact}, residual {res:.2e}")


def test_03_figure_caption_constants():
    checks = [
        ("CH12_TW", {"a": 25, "e": 2}, "alpha", Fraction(11, 2)),
        ("CD11_COMP", {"a1": 3, "a2": 4, "lam1": 2, "lam2": 1,
                       "b": Fraction(1, 2), "c": Fraction(1, 5), "C2": Fraction(1, 3)},
         "beta", -1),
        ("CD21_CASE1", {"a1": 3, "a2": 2, "lam1": Fraction(3, 4), "lam2": 1,
                        "b": Fraction(3, 2), "c": 3, "alpha0": 2, "alpha1": 1,
                        "alpha2": 0, "C1": -2, "C2": 5},
         "kappa2", 6),
        ("CD13_3COMP", {"a1": Fraction(9, 2), "a2": 2, "lam1": 1, "lam2": 2,
                        "b": Fraction(1, 2), "c": Fraction(3, 4), "e": Fraction(1, 7),
                        "alpha": -1, "v0": Fraction(3, 2), "C1": 0, "C2": 1},
         "delta", Fraction(-5, 2)),
    ]
    details = []
    ok = True
    for sid, params, key, expect in checks:
        got = solutions.instantiate(sid, params).derived[key]
        good = abs(float(got) - float(expect)) <= 1e-14
        ok &= good
        details.append(f"{sid}:{key}={got}")
    report(3, ok, "; ".join(details))


def test_04_tanh_engine():
    worst = 0.0
    ok = True
    for sid in solutions.TANH_IDS:
        rep = tanh_engine.verify_catalog_instance(sid, tol=1e-12)
        worst = max(worst, rep.max_residual)
        ok &= rep.max_residual <= 1e-12  # raw bound, stricter than the scaled one
    sol = solutions.default_solution("PREDPREY_FRONT")
    ansatz = tanh_engine.ansatz_from_solution(sol)
    unknowns = [("A", 0, 0), ("A", 0, 1), ("A", 1, 0), ("A", 1, 1), ("A", 1, 2),
                ("mu",), ("alpha",)]
    system = tanh_engine.build_system(sol.model, ansatz, unknowns)
    truth = system.current_values()
    res = tanh_engine.newton_solve(system, truth * 1.1, tol=1e-12)
    newton_err = float(np.max(np.abs(res.x - truth))) if res.ok else float("inf")
    ok &= res.ok and newton_err <= 1e-8
    report(4, ok, f"{len(solutions.TANH_IDS)} tanh entries verified (worst raw "
                  f"{worst:.2e} <= 1e-12); Newton recovery error {newton_err:.2e}")


def test_05_invariant_surface_pairs():
    worst = 0.0
    pairs = symmetry.registered_pairs()
    for sol, op in pairs:
        t0, t1, x0, x1 = sol.window
        tt, xx = np.meshgrid(np.linspace(t0, t1, 9), np.linspace(x0, x1, 9),
                             indexing="ij")
        r = symmetry.invariant_surface_residual(op, sol, tt, xx)
        worst = max(worst, float(np.max(np.abs(r))))
    covered = {sol.id for sol, _ in pairs}
    need = {"CD11_EXP", "CD11_TRIG", "CD11_TANH2", "CD11_TANH3", "CD11_COMP",
            "CD21_CASE1", "CD13_3COMP"}
    ok = worst <= 1e-10 and need <= covered
    report(5, ok, f"{len(pairs)} registered pairs, max |Q(u)| = {worst:.2e}")


def test_06_reduction_triples():
    worst_lift = 0.0
    worst_red = 0.0
    rows = reduction.registered_triples()
    for sol, aid, field, rs, profile, omegas in rows:
        tt, xx = sol.window_grid(7, 7)
        ref = np.asarray(sol.eval(tt, xx), float)
        diff = float(np.max(np.abs(field.eval(tt, xx) - ref)))
        worst_lift = max(worst_lift, diff)
        red = float(np.max(np.abs(reduction.reduced_residual(rs, profile, omegas))))
        worst_red = max(worst_red, red)
    ok = worst_lift <= 1e-12 and worst_red <= 1e-10 and len(rows) >= 15
    report(6, ok, f"{len(rows)} triples; pointwise lift mismatch {worst_lift:.2e} "
                  f"<= 1e-12, reduced residual {worst_red:.2e} <= 1e-10")


def test_07_simulator_convergence():
    trig = solutions.instantiate(
        "CD11_TRIG", {"a1": 3, "a2": 4, "lam1": 2, "lam2": 1, "C1": 0, "C2": 0.5})
    kap = float(trig.derived["root"])
    grids_t = [sim.Grid1D(math.pi / (2 * kap), 3 * math.pi / (2 * kap), n)
               for n in (101, 201, 401)]
    p_trig, _ = sim.convergence_order(
        trig.model, trig, grids_t, lambda g: sim.BoundaryCondition.neumann_zero(2), 0.5)

    fisher = solutions.default_solution("FISHER_FRONT")
    half = 40.0 / math.sqrt(float(fisher.derived["a"]))
    grids_f = [sim.Grid1D(-half, half, n) for n in (101, 201, 401)]
    p_fish, _ = sim.convergence_order(
        fisher.model, fisher, grids_f, lambda g: sim.BoundaryCondition.neumann_zero(2), 0.5)
    ok = p_trig >= 1.9 and p_fish >= 1.9
    report(7, ok, f"observed spatial orders: trig family {p_trig:.2f}, front {p_fish:.2f}")


def test_08_bvp_reproduction():
    details = []
    ok = True
    for name in ("front-neumann", "competition-dirichlet"):
        sol, grid, bc, scheme, t_end = presets.bvp_preset(name)
        st = sim.init_from_solution(sol, grid, 0.0)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=t_end, scheme=scheme)
        out = sim.run(sol.model, st, bc, cfg)
        linf, _ = sim.error_vs_solution(out.final, sol)
        bound = 5 * grid.dx**2 + 1e-6
        ok &= linf <= bound
        details.append(f"{name}: {linf:.2e} <= {bound:.2e}")
    sol, grid, bc, scheme, t_end = presets.bvp_preset("three-species-dirichlet")
    st = sim.init_from_solution(sol, grid, 0.0)
    cfg = sim.SimConfig(dt=2e-3, t_end=t_end, scheme=scheme)
    out = sim.run(sol.model, st, bc, cfg)
    target = np.array([float(v) for v in sol.asymptote])
    dev = float(np.max(np.abs(out.final.values - target[:, None])))
    ok &= dev <= 1e-3
    details.append(f"three-species t=10 deviation {dev:.2e} <= 1e-3")
    report(8, ok, "; ".join(details))


def test_09_asymptotes_are_steady_states():
    checked = 0
    ok = True
    for sid in solutions.SOLUTION_IDS:
        sol = solutions.default_solution(sid)
        if sol.asymptote is None:
            continue
        rep = steady_states(sol.model)
        good = rep.contains([float(v) for v in sol.asymptote], tol=1e-10)
        ok &= good
        checked += 1
    # exclusive-competition tie (v dies out)
    tie = solutions.instantiate(
        "FISHER_FRONT",
        {"a1": 3, "a2": 4, "b1": 1, "b2": 2, "c1": 1, "c2": 4, "branch": "nonzero"})
    ok &= np.allclose([float(v) for v in tie.asymptote], [3.0, 0.0], atol=1e-14)
    ok &= steady_states(tie.model).contains([3.0, 0.0], tol=1e-10)
    checked += 1
    # soft competition (interior coexistence) is the default zero branch
    soft = solutions.default_solution("FISHER_FRONT")
    interior = [float(v) for v in soft.asymptote]
    ok &= all(v > 0 for v in interior)
    # dominance switch of the proportional-rows family
    flip = solutions.instantiate(
        "CD21_CASE1", {"a1": 2, "a2": 3, "lam1": 1, "lam2": Fraction(3, 4),
                       "b": Fraction(3, 2), "c": 3, "alpha0": 2, "alpha1": 1,
                       "alpha2": 0, "C1": -2, "C2": 5})
    ok &= float(flip.asymptote[0]) == 0.0
    ok &= steady_states(flip.model).contains([float(v) for v in flip.asymptote], tol=1e-10)
    checked += 1
    # survivor selection of the three-species family: v0 in {0, interior, a2}
    base = {"a1": Fraction(9, 2), "a2": 2, "lam1": 1, "lam2": 2, "b": Fraction(1, 2),
            "c": Fraction(3, 4), "e": Fraction(1, 7), "C1": 0, "C2": 1}
    scen = {
        "interior": {**base, "alpha": -1, "v0": Fraction(3, 2)},
        "second-dominates": {**base, "alpha": Fraction(3, 2), "v0": 2},
        "third-dominates": {**base, "alpha": -3, "v0": 0},
    }
    for label, params in scen.items():
        s = solutions.instantiate("CD13_3COMP", params)
        a = [float(v) for v in s.asymptote]
        ok &= steady_states(s.model).contains(a, tol=1e-10)
        if label == "second-dominates":
            ok &= a[1] > 0 and a[2] == 0
        if label == "third-dominates":
            ok &= a[1] == 0 and a[2] > 0
        if label == "interior":
            ok &= a[1] > 0 and a[2] > 0
        checked += 1
    report(9, ok, f"{checked} asymptote/steady-state agreements at 1e-10")


def test_10_heat_kernel_family():
    family = solutions.instantiate(
        "HK_FAMILY", {"profile": "sin", "beta": 0.5, "gamma": 2, "w0": 1,
                      "c1": 2, "b2": 3, "e1": 4, "e2": 5})
    closed = solutions.default_solution("HK_SIN")
    tt, xx = closed.window_grid(15, 15)
    quad_diff = float(np.max(np.abs(family.eval(tt, xx) - closed.eval(tt, xx))))
    A, B, C = family.derived["dependence"]
    jet = family.jet(tt, xx)
    heat_res = float(np.max(np.abs(
        (A * jet.u_t[0] + B * jet.u_t[1] + C * jet.u_t[2])
        - (A * jet.u_xx[0] + B * jet.u_xx[1] + C * jet.u_xx[2]))))
    ok = quad_diff <= 1e-8 and heat_res <= 1e-8
    report(10, ok, f"64-node quadrature vs closed sine: {quad_diff:.2e}; "
                   f"linear-combination heat residual {heat_res:.2e}")


def test_11_lie_flow_closure():
    def scaled_res(sol):
        tt, xx = sol.window_grid(7, 7)
        jet = sol.jet(tt, xx)
        return float(np.max(np.abs(pde_residual(sol.model, jet))
                            / (1 + residual_scale(sol.model, jet))))

    ok = True
    worst = 0.0
    fisher = solutions.default_solution("FISHER_FRONT")
    fops = {o.id: o for o in symmetry.operator_catalog(fisher.model)}
    heat = heat_mode_solution(1.5, 2.5, 2.0)
    hops = {o.id: o for o in symmetry.operator_catalog(heat.model)}
    for eps in (-1.0, -0.5, 0.5, 1.0):
        for op, sol in ((fops["P_t"], fisher), (fops["P_x"], fisher), (hops["D"], heat)):
            moved = symmetry.lie_transform(op, eps, sol)
            worst = max(worst, scaled_res(moved))
    ok &= worst <= 1e-9
    law = 0.0
    tt, xx = np.meshgrid(np.linspace(0.1, 0.6, 5), np.linspace(-1.5, 1.5, 5), indexing="ij")
    for op, sol in ((fops["P_x"], fisher), (hops["D"], heat)):
        two = symmetry.lie_transform(op, 0.3, symmetry.lie_transform(op, 0.45, sol))
        one = symmetry.lie_transform(op, 0.75, sol)
        law = max(law, float(np.max(np.abs(two.eval(tt, xx) - one.eval(tt, xx)))))
    ok &= law <= 1e-12
    report(11, ok, f"flow residual {worst:.2e} <= 1e-9; group law defect {law:.2e} <= 1e-12")
