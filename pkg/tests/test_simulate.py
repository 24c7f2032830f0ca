import math

import numpy as np
import pytest

from dlvkit import simulate as sim
from dlvkit import solutions
from dlvkit.model import DlvModel
from dlvkit.solutions.manufactured import heat_mode_solution


def pure_diffusion(m=2):
    zeros = ((0,) * m,) * m
    return DlvModel(tuple([1] * m), (0,) * m, zeros)


class TestGridAndState:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            sim.Grid1D(0.0, 1.0, 4)
        with pytest.raises(ValueError):
            sim.Grid1D(1.0, 0.0, 16)

    def test_init_from_solution_matches_closed_form(self):
        sol = solutions.default_solution("FISHER_FRONT")
        grid = sim.Grid1D(-5.0, 5.0, 33)
        st = sim.init_from_solution(sol, grid, 0.0)
        assert np.array_equal(st.values, np.asarray(sol.eval(0.0, grid.nodes())))

    def test_init_constant_steady(self):
        sol = solutions.default_solution("CD11_COMP")
        grid = sim.Grid1D(0.0, 1.0, 16)
        # the asymptote is constant in x; emulate via direct array
        st = sim.FieldState(0.0, np.broadcast_to([[6.0], [0.0]], (2, 16)).copy(), grid)
        assert np.all(st.values[0] == 6.0)

    def test_init_rejects_singular_node(self):
        sol = solutions.default_solution("FISHER_COTH")
        a = float(sol.derived["a"])
        x_star = (5 * a / 12) * 0.0 / math.sqrt(a / 24)  # plane passes x=0 at t=0
        grid = sim.Grid1D(x_star - 1.0, x_star + 1.0, 17)  # node exactly on the plane
        with pytest.raises(ValueError, match="validity"):
            sim.init_from_solution(sol, grid, 0.0)

    def test_init_on_strip(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        grid = sim.Grid1D(0.0, strip, 41)
        st = sim.init_from_solution(sol, grid, 0.0)
        assert st.values.shape == (2, 41)


class TestStep:
    def test_heat_mode_decay(self):
        model = pure_diffusion()
        grid = sim.Grid1D(0.0, math.pi, 129)
        k = 2.0
        vals = np.stack([np.cos(k * grid.nodes()), 0.3 * np.cos(k * grid.nodes())])
        st = sim.FieldState(0.0, vals, grid)
        dt = sim.cfl_limit(model, grid)
        out = sim.step(model, st, sim.BoundaryCondition.neumann_zero(2), dt)
        factor = out.values[0, 30] / vals[0, 30]
        expect = math.exp(-k * k * dt)
        assert abs(factor - expect) <= 10 * (dt**3 + dt * grid.dx**2)

    def test_steady_state_unchanged(self):
        sol = solutions.default_solution("CD11_COMP")
        grid = sim.Grid1D(0.0, 1.0, 21)
        vals = np.broadcast_to([[6.0], [0.0]], (2, 21)).copy()
        st = sim.FieldState(0.0, vals.copy(), grid)
        out = sim.step(sol.model, st, sim.BoundaryCondition.neumann_zero(2),
                       sim.cfl_limit(sol.model, grid))
        assert np.max(np.abs(out.values - vals)) <= 1e-14

    def test_single_rk4_step_local_error(self):
        # C1 = 0 puts sine nodes at the ends, so the Dirichlet data is constant
        sol = solutions.instantiate(
            "CD11_TRIG", {"a1": 3, "a2": 4, "lam1": 2, "lam2": 1, "C1": 0, "C2": 0.5})
        s = float(sol.derived["root"])
        grid = sim.Grid1D(0.0, math.pi / s, 201)
        st = sim.init_from_solution(sol, grid, 0.0)
        dt = sim.cfl_limit(sol.model, grid)
        out = sim.step(sol.model, st, sim.BoundaryCondition.from_solution(sol), dt)
        linf, _ = sim.error_vs_solution(out, sol)
        # local error: C*(dt^5 + dt*dx^2) with a modest constant
        assert linf <= 100 * (dt**5 + dt * grid.dx**2)


class TestRun:
    def test_deterministic_bitwise(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        grid = sim.Grid1D(0.0, strip, 65)
        st = sim.init_from_solution(sol, grid, 0.0)
        bc = sim.BoundaryCondition.from_solution(sol)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=0.05,
                            snapshot_stride=10)
        r1 = sim.run(sol.model, st, bc, cfg)
        r2 = sim.run(sol.model, st, bc, cfg)
        for s1, s2 in zip(r1.snapshots, r2.snapshots):
            assert np.array_equal(s1.values, s2.values)

    def test_mass_conservation_probe(self):
        model = pure_diffusion()
        grid = sim.Grid1D(-2.0, 2.0, 101)
        xs = grid.nodes()
        vals = np.stack([np.exp(-xs**2), 0.5 * np.exp(-(xs - 0.3) ** 2)])
        st = sim.FieldState(0.0, vals, grid)
        cfg = sim.SimConfig(dt=sim.cfl_limit(model, grid), t_end=1.0)
        out = sim.run(model, st, sim.BoundaryCondition.neumann_zero(2), cfg)
        drift = np.max(np.abs(sim.trapezoid_mass(out.final) - sim.trapezoid_mass(st)))
        assert drift <= 1e-10  # per unit time (t_end = 1)

    def test_cfl_guard(self):
        model = pure_diffusion()
        grid = sim.Grid1D(0.0, 1.0, 51)
        st = sim.FieldState(0.0, np.zeros((2, 51)), grid)
        with pytest.raises(sim.CflError):
            sim.run(model, st, sim.BoundaryCondition.neumann_zero(2),
                    sim.SimConfig(dt=1.0, t_end=2.0))

    def test_blowup_detection(self):
        # strong positive feedback: u_t = u_xx + u(1 + 5u) from a large bump
        model = DlvModel.two_component(1, 1, 1, 1, 5, 0, 0, 5)
        grid = sim.Grid1D(-1.0, 1.0, 65)
        xs = grid.nodes()
        vals = np.stack([50 * np.exp(-20 * xs**2), 50 * np.exp(-20 * xs**2)])
        st = sim.FieldState(0.0, vals, grid)
        cfg = sim.SimConfig(dt=sim.cfl_limit(model, grid), t_end=5.0, snapshot_stride=100)
        with pytest.raises(sim.BlowUpError) as err:
            sim.run(model, st, sim.BoundaryCondition.neumann_zero(2), cfg)
        assert err.value.t > 0
        assert len(err.value.snapshots) >= 1

    def test_coth_front_near_plane_blows_up_loudly(self):
        # initial data hugging the singular plane reports, never silent NaNs
        sol = solutions.default_solution("FISHER_COTH")
        grid = sim.Grid1D(0.01, 2.0, 33)
        st = sim.init_from_solution(sol, grid, 0.0)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=0.5,
                            snapshot_stride=50)
        with pytest.raises(sim.BlowUpError) as err:
            sim.run(sol.model, st, sim.BoundaryCondition.neumann_zero(2), cfg)
        for snap in err.value.snapshots:
            assert np.all(np.isfinite(snap.values))

    def test_snapshot_stride_and_manifest(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        grid = sim.Grid1D(0.0, strip, 33)
        st = sim.init_from_solution(sol, grid, 0.0)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=0.02,
                            snapshot_stride=3)
        out = sim.run(sol.model, st, sim.BoundaryCondition.from_solution(sol), cfg)
        assert out.snapshots[0].t == 0.0
        assert out.final.t == pytest.approx(0.02)
        assert "model_hash" in out.manifest and "scheme = rk4" in out.manifest


class TestErrors:
    def test_error_zero_on_init(self):
        sol = solutions.default_solution("CD11_TRIG")
        grid = sim.Grid1D(-1.0, 1.0, 33)
        st = sim.init_from_solution(sol, grid, 0.0)
        linf, l2 = sim.error_vs_solution(st, sol)
        assert linf == 0.0 and l2 == 0.0

    def test_error_ratio_under_refinement(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        bc = sim.BoundaryCondition.from_solution(sol)
        errs = []
        for nx in (41, 81):
            grid = sim.Grid1D(0.0, strip, nx)
            st = sim.init_from_solution(sol, grid, 0.0)
            cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=0.2)
            out = sim.run(sol.model, st, bc, cfg)
            errs.append(sim.error_vs_solution(out.final, sol)[0])
        ratio = errs[0] / errs[1]
        assert 3.0 <= ratio <= 5.0

    def test_perturbed_data_decays_to_asymptote(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        grid = sim.Grid1D(0.0, strip, 65)
        st = sim.init_from_solution(sol, grid, 0.0)
        bump = 1e-3 * np.sin(np.pi * (grid.nodes() - grid.a) / (strip))
        vals = st.values.copy()
        vals[0] += bump
        target = np.array([6.0, 0.0])
        bc = sim.BoundaryCondition.dirichlet_constant(target, target)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=3.0)
        out = sim.run(sol.model, sim.FieldState(0.0, vals, grid), bc, cfg)
        dev0 = np.max(np.abs(vals - target[:, None]))
        dev1 = np.max(np.abs(out.final.values - target[:, None]))
        assert dev1 < 0.1 * dev0

    def test_pure_diffusion_convergence_order(self):
        model = pure_diffusion(2)
        k = 2.0
        heat = heat_mode_solution(0.0, 0.0, k)  # v solves the heat equation

        # reuse only the v-component: build a 2-component exact field
        class Wrap:
            model_ = model

            def __init__(self, base):
                self.base = base
                self.model = model

            def eval(self, t, x):
                return self.base.eval(t, x)

            def validity(self, t, x):
                return self.base.validity(t, x)

        ref = Wrap(heat)
        # window between slope-zero points of sin(kx): Neumann compatible
        grids = [sim.Grid1D(math.pi / (2 * k), 3 * math.pi / (2 * k), n)
                 for n in (33, 65, 129)]
        p, _ = sim.convergence_order(model, ref, grids,
                                     lambda g: sim.BoundaryCondition.neumann_zero(2),
                                     0.1)
        assert p >= 1.9


class TestBvpRefinement:
    """The boundary-value problems tied to catalog entries stay within C*dx^2
    in time; C comes from the refinement study itself and is reported."""

    @staticmethod
    def _uniform_error(sol, grid, bc, t_end, stride):
        st = sim.init_from_solution(sol, grid, 0.0)
        cfg = sim.SimConfig(dt=sim.cfl_limit(sol.model, grid), t_end=t_end,
                            snapshot_stride=stride)
        out = sim.run(sol.model, st, bc, cfg)
        return max(sim.error_vs_solution(s, sol)[0] for s in out.snapshots)

    def _study(self, sol, window, bc_builder, sizes=(41, 81, 161), t_end=1.0):
        errs, dxs = [], []
        for nx in sizes:
            grid = sim.Grid1D(window[0], window[1], nx)
            bc = bc_builder(grid)
            stride = max(1, int(round(t_end / sim.cfl_limit(sol.model, grid) / 8)))
            errs.append(self._uniform_error(sol, grid, bc, t_end, stride))
            dxs.append(grid.dx)
        slope = float(np.polyfit(np.log(dxs), np.log(errs), 1)[0])
        C = max(e / d**2 for e, d in zip(errs, dxs))
        print(f"{sol.id}: C = {C:.3g}, slope = {slope:.2f}, errors {errs}")
        assert slope >= 1.9
        assert all(e <= 1.5 * C * d**2 for e, d in zip(errs, dxs))
        return C

    def test_neumann_window_of_the_rational_family(self):
        sol = solutions.default_solution("CD21_CASE1")
        kap = float(sol.derived["kappa"])
        window = (math.pi / (2 * kap), 3 * math.pi / (2 * kap))
        self._study(sol, window, lambda g: sim.BoundaryCondition.neumann_zero(2))

    def test_dirichlet_interval_of_the_three_species_family(self):
        sol = solutions.default_solution("CD13_3COMP")
        strip = float(sol.derived["strip"])
        lims = [float(v) for v in sol.asymptote]
        bc_vals = (0.0, lims[1], lims[2])

        def bc(_grid):
            return sim.BoundaryCondition.dirichlet_constant(bc_vals, bc_vals)

        self._study(sol, (0.0, strip), bc)


class TestImex:
    def test_imex_tracks_closed_form(self):
        sol = solutions.default_solution("CD11_COMP")
        strip = float(sol.derived["strip"])
        grid = sim.Grid1D(0.0, strip, 101)
        st = sim.init_from_solution(sol, grid, 0.0)
        bc = sim.BoundaryCondition.from_solution(sol)
        cfg = sim.SimConfig(dt=2e-4, t_end=0.2, scheme="imex")
        out = sim.run(sol.model, st, bc, cfg)
        linf, _ = sim.error_vs_solution(out.final, sol)
        assert linf <= 5e-4

    def test_imex_unconditionally_stable_for_diffusion(self):
        model = pure_diffusion()
        grid = sim.Grid1D(0.0, math.pi, 101)
        k = 4.0
        vals = np.stack([np.cos(k * grid.nodes()), np.cos(k * grid.nodes())])
        st = sim.FieldState(0.0, vals, grid)
        # dt far above the explicit limit
        cfg = sim.SimConfig(dt=0.01, t_end=0.5, scheme="imex")
        out = sim.run(model, st, sim.BoundaryCondition.neumann_zero(2), cfg)
        assert np.max(np.abs(out.final.values)) < 1.0
