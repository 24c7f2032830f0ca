import numpy as np
import pytest

from dlvkit import solutions, tanh_engine as te


@pytest.fixture(scope="module")
def predprey_system():
    sol = solutions.default_solution("PREDPREY_FRONT")
    ansatz = te.ansatz_from_solution(sol)
    unknowns = [("A", 0, 0), ("A", 0, 1), ("A", 1, 0), ("A", 1, 1), ("A", 1, 2),
                ("mu",), ("alpha",)]
    return sol, te.build_system(sol.model, ansatz, unknowns)


class TestBalance:
    def test_default_is_two_per_component(self):
        m = solutions.default_solution("RM2000_A").model
        assert te.balance_degrees(m) == (2, 2)

    def test_mixed_request_accepted(self):
        m = solutions.default_solution("RM2000_A").model
        assert te.balance_degrees(m, (1, 2)) == (1, 2)

    def test_three_component_mixed(self):
        m = solutions.default_solution("CPP_FRONT").model
        assert te.balance_degrees(m, (1, 1, 2)) == (1, 1, 2)

    def test_bad_degree_rejected(self):
        m = solutions.default_solution("RM2000_A").model
        with pytest.raises(ValueError):
            te.balance_degrees(m, (3, 2))
        with pytest.raises(ValueError):
            te.TanhAnsatz((3,) * 2, ((0, 0, 0, 0),) * 2, 1.0, 1.0)


class TestBuildSystem:
    def test_zero_ansatz_satisfies_everything(self):
        m = solutions.default_solution("RM2000_A").model
        ansatz = te.TanhAnsatz((2, 2), ((0, 0, 0), (0, 0, 0)), 0.7, 1.3)
        system = te.build_system(m, ansatz, ())
        assert np.all(system.residual(np.empty(0)) == 0.0)

    @pytest.mark.parametrize("sid", solutions.TANH_IDS)
    def test_catalog_coefficients_satisfy_system(self, sid):
        rep = te.verify_catalog_instance(sid, tol=1e-12)
        assert rep.ok, (sid, rep.max_residual)

    def test_coth_uses_the_same_algebra(self):
        # identical polynomial identity under T = coth, checked numerically
        rep = te.verify_catalog_instance("FISHER_COTH", tol=1e-12)
        assert rep.ok
        sol = solutions.default_solution("FISHER_COTH")
        tt, xx = sol.window_grid(5, 5)
        from dlvkit.model import pde_residual, residual_scale
        jet = sol.jet(tt, xx)
        worst = np.max(np.abs(pde_residual(sol.model, jet))
                       / (1 + residual_scale(sol.model, jet)))
        assert worst <= 1e-9

    def test_non_tanh_entry_unsupported(self):
        with pytest.raises(ValueError):
            te.verify_catalog_instance("CD11_TRIG")
        with pytest.raises(ValueError):
            te.ansatz_from_solution(solutions.default_solution("HK_SIN"))

    def test_polynomial_identity_at_seven_points(self):
        # coefficient collection agrees with direct substitution; 7 sample
        # values exceed the maximal degree 6
        model = solutions.default_solution("CPP_FRONT").model
        rng = np.random.default_rng(42)
        mu, alpha = 0.7, 1.3
        lam, av, bm = model.lam_f, model.a_f, model.b_f
        for _ in range(5):
            coeffs = (tuple(rng.normal(size=2)), tuple(rng.normal(size=2)),
                      tuple(rng.normal(size=3)))
            ansatz = te.TanhAnsatz((1, 1, 2), coeffs, mu, alpha)
            rows = np.split(te.build_system(model, ansatz, ()).residual(np.empty(0)), 3)
            Ts = np.linspace(-0.9, 0.9, 7)
            P = np.polynomial.polynomial
            for i in range(3):
                via_coeffs = P.polyval(Ts, rows[i])
                U = [P.polyval(Ts, np.asarray(c)) for c in coeffs]
                dU = [P.polyval(Ts, P.polyder(np.asarray(c))) for c in coeffs]
                ddU = [P.polyval(Ts, P.polyder(np.asarray(c), 2)) for c in coeffs]
                direct = (mu * mu * (1 - Ts**2) * ((1 - Ts**2) * ddU[i] - 2 * Ts * dU[i])
                          + alpha * lam[i] * mu * (1 - Ts**2) * dU[i]
                          + U[i] * (av[i] + sum(bm[i][j] * U[j] for j in range(3))))
                scale = 1 + np.max(np.abs(direct))
                assert np.max(np.abs(via_coeffs - direct)) <= 1e-12 * scale

    def test_dump_lists_monomials(self):
        sol = solutions.default_solution("RM2000_A")
        system = te.build_system(sol.model, te.ansatz_from_solution(sol), ())
        text = system.dump()
        assert "component 1 T^0" in text and "component 2 T^6" in text


class TestNewton:
    def test_perturbed_seed_recovers_front(self, predprey_system):
        sol, system = predprey_system
        truth = system.current_values()
        res = te.newton_solve(system, truth * 1.1, tol=1e-12)
        assert res.ok
        assert np.max(np.abs(res.x - truth)) <= 1e-8

    def test_zero_seed_reports_singular_jacobian(self, predprey_system):
        _, system = predprey_system
        res = te.newton_solve(system, np.zeros(len(system.unknowns)), tol=1e-12)
        assert not res.ok
        assert res.failure == "singular Jacobian"
        assert res.residual == 0.0  # the zero ansatz does satisfy the equations

    def test_recovers_diffusivities_of_the_three_species_instance(self):
        sol = solutions.default_solution("CPP_FRONT")
        ansatz = te.ansatz_from_solution(sol)
        unknowns = [("lam", 0), ("lam", 1),
                    ("A", 0, 0), ("A", 0, 1), ("A", 1, 0), ("A", 1, 1),
                    ("A", 2, 0), ("A", 2, 1), ("A", 2, 2)]
        system = te.build_system(sol.model, ansatz, unknowns)
        truth = system.current_values()
        res = te.newton_solve(system, truth * 1.05, tol=1e-12)
        assert res.ok
        assert abs(res.x[0] - 2.5) <= 1e-10
        assert abs(res.x[1] - 13 / 6) <= 1e-10

    def test_deterministic(self, predprey_system):
        _, system = predprey_system
        seed = system.current_values() * 1.07
        r1 = te.newton_solve(system, seed)
        r2 = te.newton_solve(system, seed)
        assert np.array_equal(r1.x, r2.x)
        assert r1.iterations == r2.iterations

    def test_failure_carries_best_iterate(self):
        sol = solutions.default_solution("RM2000_A")
        ansatz = te.ansatz_from_solution(sol)
        system = te.build_system(sol.model, ansatz, [("A", 0, 0), ("mu",)])
        res = te.newton_solve(system, np.array([50.0, 80.0]), maxit=2)
        assert not res.ok
        assert res.failure is not None
        assert np.all(np.isfinite(res.x))

    def test_multistart_deterministic(self):
        sol = solutions.default_solution("PREDPREY_FRONT")
        ansatz = te.ansatz_from_solution(sol)
        system = te.build_system(sol.model, ansatz, [("A", 0, 0), ("A", 0, 1)])
        best1, all1 = te.multistart_solve(system, n_starts=8)
        best2, all2 = te.multistart_solve(system, n_starts=8)
        assert np.array_equal(best1.x, best2.x)
        assert len(all1) == len(all2) == 8


class TestUnknownRefs:
    def test_names(self):
        refs = [("A", 0, 1), ("mu",), ("alpha",), ("lam", 1), ("a", 0), ("b", 1, 0)]
        assert te.unknown_names(refs) == ("A[0][1]", "mu", "alpha", "lam2", "a1", "b[1][0]")

    def test_bad_ref_rejected(self):
        sol = solutions.default_solution("RM2000_A")
        ansatz = te.ansatz_from_solution(sol)
        with pytest.raises(ValueError):
            te.build_system(sol.model, ansatz, [("zz", 0)])

    def test_model_parameter_unknowns_change_residual(self):
        sol = solutions.default_solution("RM2000_A")
        ansatz = te.ansatz_from_solution(sol)
        system = te.build_system(sol.model, ansatz, [("a", 1)])
        good = system.residual(system.current_values())
        bad = system.residual(system.current_values() + 0.5)
        assert np.max(np.abs(good)) <= 1e-12
        assert np.max(np.abs(bad)) > 1e-3
