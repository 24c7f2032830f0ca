"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import presets, reduction, simulate as sim, solutions, symmetry, tanh_engine
from .model import nondegeneracy, pde_residual, residual_scale, steady_states
from .solutions.base import RestrictionError, UnknownSolutionError
from .textio import fmt17, load_model, load_solution_spec, parse_number, write_csv

RESIDUAL_TOL = 1e-9
SURFACE_TOL = 1e-10
TANH_TOL = 1e-12


class UsageError(Exception):
    pass


def _collect_params(pairs, passthrough):
    params = {}
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--param wants k=v, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = parse_number(v)
    it = iter(passthrough or ())
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        name = tok[2:]
        try:
            val = next(it)
        except StopIteration:
            raise UsageError(f"flag --{name} needs a value") from None
        params[name] = parse_number(val)
    return params


def _instantiate(sol_id, params):
    entry = solutions.entry(sol_id)
    unknown = sorted(set(params) - set(entry.param_names()))
    if unknown:
        raise UsageError(f"{sol_id} has no parameter(s) {unknown}; "
                         f"it takes {list(entry.param_names())}")
    return solutions.instantiate(sol_id, params)


def _grid_samples(sol, grid_spec, n=21):
    t0, t1, x0, x1 = sol.window
    if grid_spec:
        parts = grid_spec.split(",")
        if len(parts) != 3:
            raise UsageError("--grid wants A,B,nx")
        x0, x1 = float(parts[0]), float(parts[1])
        n = int(parts[2])
    tt, xx = np.meshgrid(np.linspace(t0, t1, n), np.linspace(x0, x1, n), indexing="ij")
    return tt, xx


def _residual_check(sol, grid_spec, tol):
    tt, xx = _grid_samples(sol, grid_spec)
    jet = sol.jet(tt, xx)
    res = np.abs(pde_residual(sol.model, jet))
    scale = residual_scale(sol.model, jet)
    return float(np.max(res / (1.0 + scale))), tol


def _verify_one(sol, grid_spec, tol, lines):
    ok = True
    worst, bound = _residual_check(sol, grid_spec, tol)
    status = "ok" if worst <= bound else "FAIL"
    ok &= worst <= bound
    lines.append(f"{sol.id} residual {status} {worst:.3e}")
    if sol.id in symmetry.PAIRED_ENTRIES:
        op = symmetry.pair_operator(sol)
        t0, t1, x0, x1 = sol.window
        tt, xx = np.meshgrid(np.linspace(t0, t1, 9), np.linspace(x0, x1, 9), indexing="ij")
        surf = float(np.max(np.abs(symmetry.invariant_surface_residual(op, sol, tt, xx))))
        status = "ok" if surf <= SURFACE_TOL else "FAIL"
        ok &= surf <= SURFACE_TOL
        lines.append(f"{sol.id} invariant-surface[{op.id}] {status} {surf:.3e}")
    if sol.tanh_data is not None:
        rep = tanh_engine.verify_catalog_instance(sol, tol=TANH_TOL)
        status = "ok" if rep.ok else "FAIL"
        ok &= rep.ok
        lines.append(f"{sol.id} tanh-system {status} {rep.max_residual:.3e}")
    return ok


def cmd_verify(args, passthrough):
    params = _collect_params(args.param, passthrough)
    lines = []
    ok = True
    if args.all:
        if params:
            raise UsageError("--all uses the default instances; drop the parameters")
        checked = []
        for sid in solutions.SOLUTION_IDS:
            sol = solutions.default_solution(sid)
            ok &= _verify_one(sol, args.grid, args.tol, lines)
            checked.append(sid)
        missing = set(solutions.SOLUTION_IDS) - set(checked)
        if missing:
            ok = False
            lines.append(f"coverage FAIL missing {sorted(missing)}")
        else:
            lines.append(f"coverage ok {len(checked)} entries")
    else:
        sol = _instantiate(args.solution, params)
        ok &= _verify_one(sol, args.grid, args.tol, lines)
        if sol.derived:
            items = ", ".join(f"{k}={v}" for k, v in sol.derived.items())
            lines.append(f"{sol.id} derived {items}")
    failures = sum(1 for ln in lines if " FAIL " in f" {ln} ")
    lines.append(f"summary: {len(lines) - failures} checks passed, {failures} failed")
    report = "\n".join(lines)
    print(report)
    if args.out:
        Path(args.out).write_text(report + "\n")
    return 0 if ok else 1


def cmd_list(args, passthrough):
    if passthrough:
        raise UsageError(f"unexpected arguments {passthrough}")
    for sid, meta in solutions.catalog():
        params = ", ".join(meta["free_parameters"])
        print(f"{sid:15s} m={meta['m']}  {meta['family']}  params: {params}")
    return 0


def cmd_show(args, passthrough):
    if passthrough:
        raise UsageError(f"unexpected arguments {passthrough}")
    entry = solutions.entry(args.solution)
    print(f"{entry.id}: {entry.family} (m = {entry.m})")
    print("parameters:")
    for name, doc in entry.params:
        default = entry.defaults.get(name, "")
        print(f"  {name:8s} {doc} (default {default})")
    print("restrictions:")
    for r in entry.restrictions:
        print(f"  {r}")
    sol = solutions.default_solution(entry.id)
    print("operators admitted by the default instance:")
    for op in symmetry.operator_catalog(sol.model):
        print("  " + op.describe().replace("\n", "\n  "))
    return 0


def cmd_steady(args, passthrough):
    params = _collect_params(args.param, passthrough)
    if args.model:
        model = load_model(args.model)
    elif args.solution:
        model = _instantiate(args.solution, params).model
    else:
        raise UsageError("steady wants --model FILE or --solution ID")
    rep = steady_states(model)
    nd = nondegeneracy(model)
    print(f"nondegeneracy: applicable={nd.applicable} passed={nd.passed}")
    for st in rep.states:
        comps = " ".join(fmt17(v) for v in st.u)
        active = ",".join(str(i + 1) for i in sorted(st.active_set)) or "-"
        print(f"steady [{active}] {comps}")
    for sub in rep.degenerate:
        print(f"degenerate subset {{{','.join(str(i + 1) for i in sorted(sub))}}}")
    return 0


def cmd_figure(args, passthrough):
    if passthrough:
        raise UsageError(f"unexpected arguments {passthrough}")
    sol, (t0, t1), (x0, x1) = presets.figure_solution(args.figure)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    ts = np.linspace(t0, t1, args.nt)
    xs = np.linspace(x0, x1, args.nx)
    tt, xx = np.meshgrid(ts, xs, indexing="ij")
    vals = sol.eval(tt, xx)
    m = sol.model.m
    header = "t,x," + ",".join(f"u{i + 1}" for i in range(m))
    cols = [tt.ravel(), xx.ravel()] + [vals[i].ravel() for i in range(m)]
    path = outdir / f"figure-{args.figure}.csv"
    write_csv(path, header, cols)
    print(f"wrote {path} ({sol.id}, {args.nt}x{args.nx} samples)")
    return 0


def _dump_snapshots(result, outdir, m):
    outdir.mkdir(parents=True, exist_ok=True)
    for k, snap in enumerate(result.snapshots):
        xs = snap.grid.nodes()
        header = "t,x," + ",".join(f"u{i + 1}" for i in range(m))
        cols = [np.full(xs.size, snap.t), xs] + [snap.values[i] for i in range(m)]
        write_csv(outdir / f"snapshot-{k:04d}.csv", header, cols)
    (outdir / "manifest.txt").write_text(result.manifest)


def cmd_simulate(args, passthrough):
    params = _collect_params(args.param, passthrough)
    sol = None
    if args.preset:
        if args.preset not in presets.BVP_PRESETS:
            raise UsageError(
                f"unknown preset {args.preset!r}; presets: {sorted(presets.BVP_PRESETS)}")
        sol, grid, bc, scheme, t_end = presets.bvp_preset(args.preset, args.nx)
        model = sol.model
        scheme = args.scheme or scheme
        t_end = args.T if args.T is not None else t_end
    else:
        if args.solution:
            sol = _instantiate(args.solution, params)
            model = sol.model
        elif args.spec:
            sid, sparams = load_solution_spec(args.spec)
            sol = solutions.instantiate(sid, sparams)
            model = sol.model
        elif args.model:
            model = load_model(args.model)
        else:
            raise UsageError("simulate wants --preset, --solution, --spec or --model")
        if not args.grid:
            raise UsageError("simulate wants --grid A,B,nx")
        a, b, nx = args.grid.split(",")
        grid = sim.Grid1D(float(a), float(b), int(nx))
        scheme = args.scheme or "rk4"
        t_end = args.T if args.T is not None else 1.0
        if args.bc == "neumann":
            bc = sim.BoundaryCondition.neumann_zero(model.m)
        elif sol is not None:
            bc = sim.BoundaryCondition.from_solution(sol)
        else:
            raise UsageError("dirichlet boundary data needs a reference solution")
    if sol is None:
        raise UsageError("simulate needs a reference solution for initial data")
    state0 = sim.init_from_solution(sol, grid, 0.0)
    dt = args.dt or (sim.cfl_limit(model, grid) if scheme == "rk4"
                     else max(grid.dx**2, 1e-3))
    if scheme == "rk4" and dt > sim.cfl_limit(model, grid) * (1 + 1e-12):
        raise UsageError(
            f"dt = {dt:g} violates the explicit CFL bound; use dt <= "
            f"{sim.cfl_limit(model, grid):.6g} or --scheme imex")
    cfg = sim.SimConfig(dt=dt, t_end=t_end, scheme=scheme,
                        snapshot_stride=args.stride)
    result = sim.run(model, state0, bc, cfg)
    linf, l2 = sim.error_vs_solution(result.final, sol)
    print(f"final t = {result.final.t:g}  L_inf error = {linf:.6e}  L2 error = {l2:.6e}")
    rep = steady_states(model)
    final_mean = result.final.values.mean(axis=1)
    for st in rep.states:
        if np.max(np.abs(final_mean - np.array(st.u))) < 5e-2 * (1 + np.max(np.abs(st.u))):
            comps = ", ".join(fmt17(v) for v in st.u)
            print(f"final state near steady state ({comps})")
            break
    if args.out:
        _dump_snapshots(result, Path(args.out), model.m)
        print(f"wrote snapshots to {args.out}")
    return 0


def cmd_tanh(args, passthrough):
    params = _collect_params(args.param, passthrough)
    if args.solution not in solutions.TANH_IDS:
        raise UsageError(f"{args.solution} is not a tanh-type entry; "
                         f"tanh entries: {list(solutions.TANH_IDS)}")
    sol = _instantiate(args.solution, params)
    rep = tanh_engine.verify_catalog_instance(sol, tol=args.tol)
    status = "ok" if rep.ok else "FAIL"
    print(f"{sol.id} tanh-system {status} max residual {rep.max_residual:.3e} "
          f"over {rep.n_equations} equations")
    if args.dump:
        system = tanh_engine.build_system(
            sol.model, tanh_engine.ansatz_from_solution(sol), ())
        Path(args.dump).write_text(system.dump() + "\n")
        print(f"wrote {args.dump}")
    if args.newton:
        ansatz = tanh_engine.ansatz_from_solution(sol)
        unknowns = [("A", i, k) for i, cs in enumerate(ansatz.coeffs) for k in range(len(cs))]
        unknowns += [("mu",), ("alpha",)]
        system = tanh_engine.build_system(sol.model, ansatz, unknowns)
        truth = system.current_values()
        res = tanh_engine.newton_solve(system, truth * 1.1)
        err = float(np.max(np.abs(res.x - truth))) if res.ok else float("nan")
        print(f"newton from +10% seed: ok={res.ok} iterations={res.iterations} "
              f"max coefficient error={err:.3e}")
        if not res.ok:
            return 1
    return 0 if rep.ok else 1


def cmd_reduce(args, passthrough):
    params = _collect_params(args.param, passthrough)
    if params:
        raise UsageError("reduce uses the registered default instances; no parameters")
    rows = reduction.registered_triples()
    ok = True
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for sol, aid, field, rs, profile, omegas in rows:
        if args.solution and sol.id != args.solution:
            continue
        tt = np.linspace(sol.window[0], sol.window[1], 7)
        xx = np.linspace(sol.window[2], sol.window[3], 7)
        rep = reduction.consistency_check(sol.model, field, rs, profile, tt, xx, omegas)
        tg, xg = np.meshgrid(tt, xx, indexing="ij")
        diff = float(np.max(np.abs(field.eval(tg, xg) - sol.eval(tg, xg))))
        status = "ok" if (rep.ok and diff <= 1e-10) else "FAIL"
        ok &= status == "ok"
        print(f"{sol.id:15s} {aid:5s} {status} lift-match {diff:.3e} "
              f"reduced {rep.max_reduced_residual:.3e} pde {rep.max_pde_residual:.3e}")
        if outdir:
            reduction.dump_profile(profile, omegas, outdir / f"profile-{sol.id}.csv")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dlv",
        allow_abbrev=False,
        description="Exact solutions, symmetry reductions and simulation for "
                    "diffusive Lotka-Volterra systems",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", allow_abbrev=False, help="list the solution catalog")
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("show", allow_abbrev=False, help="entry metadata and admitted operators")
    p.add_argument("solution")
    p.set_defaults(fn=cmd_show)

    p = sub.add_parser("verify", allow_abbrev=False, help="residual / invariant-surface / tanh suites")
    p.add_argument("solution", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--grid", metavar="A,B,nx")
    p.add_argument("--tol", type=float, default=RESIDUAL_TOL)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("steady", allow_abbrev=False, help="constant steady states of a model")
    p.add_argument("--model", metavar="FILE")
    p.add_argument("--solution", metavar="ID")
    p.add_argument("--param", action="append", metavar="k=v")
    p.set_defaults(fn=cmd_steady)

    p = sub.add_parser("figure", allow_abbrev=False, help="emit surface-sampling CSV for a preset figure")
    p.add_argument("figure", choices=sorted(presets.FIGURES))
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--nt", type=int, default=61)
    p.add_argument("--nx", type=int, default=121)
    p.set_defaults(fn=cmd_figure)

    p = sub.add_parser("simulate", allow_abbrev=False, help="method-of-lines run with error report")
    p.add_argument("--preset", metavar="NAME")
    p.add_argument("--solution", metavar="ID")
    p.add_argument("--spec", metavar="FILE")
    p.add_argument("--model", metavar="FILE")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--grid", metavar="A,B,nx")
    p.add_argument("--nx", type=int)
    p.add_argument("--bc", choices=["neumann", "dirichlet"], default="dirichlet")
    p.add_argument("--scheme", choices=["rk4", "imex"])
    p.add_argument("--dt", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--stride", type=int, default=0)
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("tanh", allow_abbrev=False, help="verify a tanh entry against its algebraic system")
    p.add_argument("solution")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--tol", type=float, default=TANH_TOL)
    p.add_argument("--newton", action="store_true")
    p.add_argument("--dump", metavar="FILE")
    p.set_defaults(fn=cmd_tanh)

    p = sub.add_parser("reduce", allow_abbrev=False, help="ansatz/reduction consistency for registered triples")
    p.add_argument("solution", nargs="?")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--out", metavar="DIR", help="dump reduced profiles as CSV")
    p.set_defaults(fn=cmd_reduce)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args, passthrough = ap.parse_known_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        if args.command == "verify" and not args.all and not args.solution:
            raise UsageError("verify wants a solution id or --all")
        return args.fn(args, passthrough)
    except (UsageError, UnknownSolutionError, RestrictionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (sim.CflError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except sim.BlowUpError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
