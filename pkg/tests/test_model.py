import numpy as np
import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dlvkit.model import (
    DlvModel,
    JetPoint,
    ModelError,
    nondegeneracy,
    pde_residual,
    residual_scale,
    steady_states,
)


def rm2000_row_model():
    # two-species competition row: lam=(1,1), a=(1,1), b2 = 2 + 5/3 - 1/3
    b2 = 2 + Fraction(5, 3) - Fraction(1, 3)
    return DlvModel.two_component(1, 1, 1, 1, -1, Fraction(-1, 3), -b2, -1)


class TestBuild:
    def test_competition_row(self):
        m = rm2000_row_model()
        assert m.m == 2
        assert m.b[1][0] == Fraction(-10, 3)

    def test_zero_interaction_accepted(self):
        m = DlvModel.two_component(1, 1, 0, 0, 0, 0, 0, 0)
        rep = nondegeneracy(m)
        assert rep.applicable and not rep.passed

    def test_three_component_instance(self):
        m = DlvModel.three_component(
            (Fraction(5, 2), Fraction(13, 6), 1),
            (11, 9, -4),
            ((Fraction(-1, 2), -6, -1), (Fraction(-1, 6), -2, -1), (5, 7, -3)),
        )
        assert m.m == 3
        assert m.lam[0] == Fraction(5, 2)

    def test_dimension_mismatch(self):
        with pytest.raises(ModelError):
            DlvModel((1, 1), (1,), ((1, 1), (1, 1)))
        with pytest.raises(ModelError):
            DlvModel((1, 1), (1, 1), ((1, 1, 1), (1, 1)))

    def test_nonpositive_lambda(self):
        with pytest.raises(ModelError):
            DlvModel((1, 0), (1, 1), ((0, 0), (0, 0)))
        with pytest.raises(ModelError):
            DlvModel((1, -2), (1, 1), ((0, 0), (0, 0)))

    def test_rescale_components(self):
        m = DlvModel.two_component(1, 2, 3, 4, 1, 1, 1, 1)
        r = m.rescale_components((-Fraction(1, 2), -3))
        assert r.b[0] == (Fraction(-1, 2), -3)
        assert r.a == m.a and r.lam == m.lam


class TestReaction:
    def test_zero_density(self):
        m = rm2000_row_model()
        assert np.all(m.reaction(np.zeros(2)) == 0.0)

    def test_competition_point(self):
        # u*(a1 - b u - c v) rows with a1=3, b=1/2, c=1/5 at u=(6, 0)
        m = DlvModel.two_component(1, 1, 3, 2, -0.5, -0.2, -0.5, -0.2)
        r = m.reaction(np.array([6.0, 0.0]))
        assert r[0] == 0.0 and r[1] == 0.0

    def test_unit_density(self):
        m = DlvModel.two_component(1, 1, 1.5, 2.5, 0.25, -0.5, 1.0, 2.0)
        r = m.reaction(np.array([1.0, 1.0]))
        assert np.allclose(r, [1.5 + 0.25 - 0.5, 2.5 + 1.0 + 2.0], rtol=0, atol=1e-15)

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(0, 1),
        st.floats(-10, 10, allow_nan=False),
        st.floats(-5, 5, allow_nan=False),
    )
    def test_zero_component_is_bit_exact(self, k, other, coeff):
        m = DlvModel.two_component(1, 2, 1, coeff, 2, -1, coeff, 3)
        u = np.array([other, other])
        u[k] = 0.0
        assert m.reaction(u)[k] == 0.0


def random_jet(m, rng):
    return JetPoint(
        t=0.3,
        x=-0.4,
        u=rng.normal(size=m),
        u_t=rng.normal(size=m),
        u_x=rng.normal(size=m),
        u_xx=rng.normal(size=m),
    )


class TestResidual:
    def test_steady_jet_is_zero(self):
        m = rm2000_row_model()
        for state in steady_states(m):
            u = np.array(state.u)
            jet = JetPoint(0.0, 0.0, u, np.zeros(2), np.zeros(2), np.zeros(2))
            assert np.max(np.abs(pde_residual(m, jet))) <= 1e-12 * (1 + np.max(np.abs(u)))

    def test_ut_perturbation_is_exactly_linear(self):
        m = DlvModel.two_component(Fraction(5, 2), 2, 1, -1, 0.5, 1, -2, 0.25)
        rng = np.random.default_rng(7)
        jet = random_jet(2, rng)
        base = pde_residual(m, jet)
        for i in range(2):
            for delta in (1e-3, 0.7):
                ut = jet.u_t.copy()
                ut[i] += delta
                pert = pde_residual(m, JetPoint(jet.t, jet.x, jet.u, ut, jet.u_x, jet.u_xx))
                expect = np.zeros(2)
                expect[i] = float(m.lam[i]) * delta
                assert np.max(np.abs((pert - base) - expect)) <= 1e-12 * (1 + abs(delta))

    def test_uxx_coefficient_is_minus_one(self):
        m = rm2000_row_model()
        rng = np.random.default_rng(8)
        jet = random_jet(2, rng)
        base = pde_residual(m, jet)
        uxx = jet.u_xx.copy()
        uxx[1] += 0.37
        pert = pde_residual(m, JetPoint(jet.t, jet.x, jet.u, jet.u_t, jet.u_x, uxx))
        assert abs((pert - base)[1] + 0.37) <= 1e-13
        assert (pert - base)[0] == 0.0

    def test_u_perturbation_matches_analytic_change(self):
        m = DlvModel.two_component(1, 3, 2, -1, 0.5, 1.5, -2, 0.25)
        rng = np.random.default_rng(9)
        jet = random_jet(2, rng)
        base = pde_residual(m, jet)
        delta = 0.31
        for j in range(2):
            u = jet.u.copy()
            u[j] += delta
            pert = pde_residual(m, JetPoint(jet.t, jet.x, u, jet.u_t, jet.u_x, jet.u_xx))
            jac = m.reaction_jacobian(jet.u)
            expect = -jac[:, j] * delta
            expect[j] -= m.b_f[j, j] * delta**2  # the only quadratic remainder
            assert np.max(np.abs((pert - base) - expect)) <= 1e-12 * (1 + np.max(np.abs(base)))

    def test_residual_scale_positive(self):
        m = rm2000_row_model()
        jet = random_jet(2, np.random.default_rng(10))
        assert np.all(residual_scale(m, jet) >= 0)


class TestSteadyStates:
    def test_competition_proportional_rows(self):
        # a1=3, a2=2, b=3/2, c=3, lam1=3/4, lam2=1: second row scaled by lam2/lam1
        lam1, lam2 = Fraction(3, 4), 1
        b, c = Fraction(3, 2), 3
        m = DlvModel.two_component(
            lam1, lam2, 3, 2, -b, -c, -lam2 * b / lam1, -lam2 * c / lam1
        )
        rep = steady_states(m)
        pts = {tuple(np.round(s.u, 12)) for s in rep.states}
        assert (0.0, 0.0) in pts
        assert (2.0, 0.0) in pts
        assert (0.0, 0.5) in pts
        # interior 2x2 subsystem is singular here and must be reported
        assert frozenset({0, 1}) in rep.degenerate

    def test_origin_always_present(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            vals = rng.normal(size=8)
            m = DlvModel.two_component(1, 2, *vals[:6])
            assert any(max(abs(v) for v in s.u) == 0.0 for s in steady_states(m))

    def test_soft_competition_interior_state(self):
        # the linear-tie front with beta0=0: interior coexistence state
        a = 1.0
        b1, b2, c1, c2 = 1.0, 2.0, 3.0, 1.0
        m = DlvModel.two_component(1, 1, a, a, -b1, -c1, -b2, -c2)
        B, C = b1 / b2, c1 / c2
        expect = np.array([a * (C - 1) / (b2 * (C - B)), a * (1 - B) / (c2 * (C - B))])
        rep = steady_states(m)
        assert rep.contains(expect, tol=1e-12)

    def test_every_state_satisfies_reaction(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            m = DlvModel((1, 2, 3), tuple(rng.normal(size=3)),
                         tuple(tuple(rng.normal(size=3)) for _ in range(3)))
            for s in steady_states(m):
                u = np.array(s.u)
                assert np.max(np.abs(m.reaction(u))) <= 1e-12 * (1 + np.max(np.abs(u)))


class TestNondegeneracy:
    def test_two_component_flags(self):
        m = DlvModel.two_component(1, 1, 1, 1, 0, 0, 1, 1)  # b1 = c1 = 0
        rep = nondegeneracy(m)
        assert not rep.flags["b1^2+c1^2 != 0"]
        assert not rep.passed

    def test_predprey_system_passes(self):
        m = DlvModel.two_component(1, 0.5, 2, -1, -1, -1, 10, -3)
        rep = nondegeneracy(m)
        assert rep.passed

    def test_three_component_flags(self):
        m = DlvModel.three_component((1, 1, 1), (1, 1, 1),
                                     ((1, 0, 0), (1, 1, 1), (1, 1, 1)))
        rep = nondegeneracy(m)
        assert not rep.flags["c1^2+e1^2 != 0"]

    def test_unsupported_m_not_applicable(self):
        m = DlvModel((1, 1, 1, 1), (0, 0, 0, 0), ((0,) * 4,) * 4)
        rep = nondegeneracy(m)
        assert not rep.applicable and rep.passed

    def test_pure_predicate(self):
        m = rm2000_row_model()
        assert nondegeneracy(m).flags == nondegeneracy(m).flags
