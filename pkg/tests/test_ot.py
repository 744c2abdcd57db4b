import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from otrl import GroundSpace, Q, collapsed, dirac, make_measure, solve_exact, wasserstein
from otrl.errors import NotLipschitzError, NotRationalError, OTRLError, SpaceMismatchError, WrongSpaceError
from otrl.maps import collapse_plan
from otrl.ot import (
    MINUS_INF,
    PLUS_INF,
    Coupling,
    DualPotentials,
    brute_force_oracle,
    check_coupling,
    check_dual_certificate,
    cost_matrix,
    kr_lower_bound,
    transport_simplex,
    unit_expansion,
    w1_interval_closed_form,
)
from otrl.rigidity.sampling import random_rational_measure

from conftest import SPACES, dyadic_measures, measures

IQ = GroundSpace.interval_q(10)
I = GroundSpace.interval()
PQ = GroundSpace.plane_q()


def lp_reference(a, b, C):
    """Transport optimum from a generic LP solver, as an independent check."""
    m, n = C.shape
    A = np.zeros((m + n, m * n))
    for i in range(m):
        A[i, i * n:(i + 1) * n] = 1
    for j in range(n):
        A[m + j, j::n] = 1
    res = linprog(C.ravel(), A_eq=A, b_eq=np.concatenate([a, b]), bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


class TestSolveExact:
    def test_q_to_zero(self):
        res = solve_exact(dirac(IQ, Q), dirac(IQ, 0.0), 1)
        assert res.distance == 10

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
    def test_identical_measures(self, space, p):
        rng = np.random.default_rng(0)
        mu = random_rational_measure(rng, space, 6)
        res = solve_exact(mu, mu, p)
        assert res.distance == 0
        assert np.array_equal(res.plan.plan, np.diag(mu.weight_array))

    def test_collapse_pair_on_plane_q(self):
        mu = make_measure(PQ, [(Q, 0.5), ((3, 4), 0.5)])
        res = solve_exact(mu, collapsed(PQ, 0.5), 2)
        assert res.cost == pytest.approx(12.5, abs=1e-12)
        assert res.distance == pytest.approx(math.sqrt(12.5), abs=1e-12)
        assert brute_force_oracle(mu, collapsed(PQ, 0.5), 2, 2) == pytest.approx(math.sqrt(12.5), abs=1e-12)

    def test_p_below_one(self):
        with pytest.raises(OTRLError, match="p must be"):
            solve_exact(dirac(I, 0.1), dirac(I, 0.2), 0.5)

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            solve_exact(dirac(I, 0.1), dirac(IQ, 0.2))

    def test_against_generic_lp(self, space):
        rng = np.random.default_rng(5)
        for _ in range(60):
            mu = random_rational_measure(rng, space, 12, max_atoms=5)
            nu = random_rational_measure(rng, space, 12, max_atoms=5)
            for p in (1.0, 2.0):
                C = cost_matrix(mu, nu, p)
                ref = lp_reference(mu.weight_array, nu.weight_array, C)
                assert solve_exact(mu, nu, p).cost == pytest.approx(ref, rel=1e-9, abs=1e-12)

    def test_degenerate_simplex(self):
        # equal marginals with ties in the cost force degenerate pivots
        a = np.full(6, 1 / 6)
        C = np.ones((6, 6)) - np.eye(6)[::-1]
        sol = transport_simplex(a, a, C)
        assert sol.cost == pytest.approx(0.0, abs=1e-15)
        C = np.zeros((5, 5))
        assert transport_simplex(np.full(5, 0.2), np.full(5, 0.2), C).cost == 0.0

    def test_simplex_potentials_certify(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            m, n = rng.integers(2, 7, 2)
            a = rng.dirichlet(np.ones(m))
            b = rng.dirichlet(np.ones(n))
            C = rng.random((m, n))
            sol = transport_simplex(a, b, C)
            reduced = C - sol.u[:, None] - sol.v[None, :]
            assert reduced.min() >= -1e-12
            assert abs(a @ sol.u + b @ sol.v - sol.cost) <= 1e-12


@pytest.mark.parametrize("name", sorted(SPACES))
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_wasserstein_symmetric_and_triangle(name, data):
    space = SPACES[name]
    a, b, c = (data.draw(measures(space)) for _ in range(3))
    for p in (1.0, 2.0):
        ab = wasserstein(a, b, p)
        assert ab == pytest.approx(wasserstein(b, a, p), abs=1e-10)
        assert ab <= wasserstein(a, c, p) + wasserstein(c, b, p) + 1e-10


@pytest.mark.parametrize("name", sorted(SPACES))
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_every_plan_is_a_coupling(name, data):
    space = SPACES[name]
    mu, nu = data.draw(measures(space, 5)), data.draw(measures(space, 5))
    res = solve_exact(mu, nu, data.draw(st.sampled_from([1.0, 2.0])))
    verdict = check_coupling(res.plan)
    assert verdict.passed, verdict.worst_violation
    assert res.plan.cost(res.p) == pytest.approx(res.cost, abs=1e-12)


class TestClosedForm:
    def test_examples(self):
        assert w1_interval_closed_form(dirac(I, 0.0), dirac(I, 1.0)) == 1
        half = dirac(I, 0.5)
        ends = make_measure(I, [(0.0, 0.5), (1.0, 0.5)])
        # each half unit of mass travels 1/2
        assert w1_interval_closed_form(half, ends) == pytest.approx(0.5, abs=1e-15)
        assert solve_exact(half, ends).distance == pytest.approx(0.5, abs=1e-15)
        assert w1_interval_closed_form(ends, ends) == 0

    @given(dyadic_measures(I, 6), dyadic_measures(I, 6))
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_solver(self, mu, nu):
        assert w1_interval_closed_form(mu, nu) == pytest.approx(solve_exact(mu, nu).distance, abs=1e-12)

    def test_rejects_q(self):
        with pytest.raises(WrongSpaceError):
            w1_interval_closed_form(dirac(IQ, Q), dirac(IQ, 0.5))


class TestOracle:
    def test_examples(self):
        assert brute_force_oracle(dirac(IQ, Q), dirac(IQ, 0.0), 1, 1) == 10
        ends = make_measure(I, [(0.0, 0.5), (1.0, 0.5)])
        assert brute_force_oracle(ends, dirac(I, 0.5), 1, 2) == pytest.approx(0.5, abs=1e-15)
        mu = make_measure(PQ, [(Q, 1 / 3), ((1, 0), 2 / 3)])
        for p in (1, 2, 3):
            assert brute_force_oracle(mu, mu, p, 3) == 0

    def test_not_rational(self):
        with pytest.raises(NotRationalError):
            unit_expansion(make_measure(I, [(0.0, 0.3), (1.0, 0.7)]), 4)

    def test_hungarian_path_matches_solver(self):
        rng = np.random.default_rng(9)
        for space in SPACES.values():
            for _ in range(20):
                mu = random_rational_measure(rng, space, 30, 6)
                nu = random_rational_measure(rng, space, 30, 6)
                assert brute_force_oracle(mu, nu, 2, 30) == pytest.approx(wasserstein(mu, nu, 2), rel=1e-9)


class TestCheckCoupling:
    def test_diagonal_and_product(self):
        mu = make_measure(IQ, [(Q, 0.25), (0.5, 0.75)])
        nu = make_measure(IQ, [(0.1, 0.5), (0.9, 0.5)])
        assert check_coupling(Coupling.diagonal(mu)).passed
        assert check_coupling(Coupling.product(mu, nu)).passed

    def test_negative_entry_reported(self):
        mu = make_measure(I, [(0.0, 0.5), (1.0, 0.5)])
        plan = np.array([[0.5 + 1e-6, -1e-6], [-1e-6, 0.5 + 1e-6]])
        verdict = check_coupling(Coupling(mu, mu, plan))
        assert not verdict.passed
        assert verdict.worst_violation == pytest.approx(1e-6, rel=1e-9)

    def test_shape_checked(self):
        with pytest.raises(OTRLError):
            Coupling(dirac(I, 0.1), dirac(I, 0.2), np.ones((2, 2)))


def _collapse_potentials():
    def psi(x):
        return 0.0 if x is Q else -(x[0] ** 2 + x[1] ** 2)

    def phi(z):
        return 0.0 if z is Q or z == (0.0, 0.0) else MINUS_INF

    return DualPotentials(psi, phi)


class TestDualCertificate:
    def test_collapse_plan_certified(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            t = float(rng.uniform(0.05, 1.0))
            pts = [tuple(map(float, rng.uniform(-3, 3, 2))) for _ in range(3)]
            mu = make_measure(PQ, [(Q, 1 - t)] + [(p, t / 3) for p in pts])
            verdict = check_dual_certificate(_collapse_potentials(), collapse_plan(mu))
            assert verdict.passed, verdict
            assert verdict.dual_value == pytest.approx(t * sum((x * x + y * y) / 3 for x, y in pts), abs=1e-10)

    def test_zero_potentials_on_diagonal(self):
        mu = make_measure(IQ, [(Q, 0.5), (0.3, 0.5)])
        pot = DualPotentials(lambda x: 0.0, lambda z: 0.0)
        assert check_dual_certificate(pot, Coupling.diagonal(mu), p=1).passed

    def test_infeasible_potential_detected(self):
        mu = make_measure(PQ, [((0.0, 0.0), 0.5), ((1.0, 0.0), 0.5)])
        big = mu.space.cost((0.0, 0.0), (1.0, 0.0), 2) + 1
        pot = DualPotentials(lambda x: 0.0, lambda z: big if z == (1.0, 0.0) else 0.0)
        verdict = check_dual_certificate(pot, Coupling.diagonal(mu))
        assert not verdict.feasible
        assert verdict.worst_feasibility_violation == pytest.approx(big, abs=1e-12)

    def test_wrong_infinite_side(self):
        mu = dirac(PQ, Q)
        pot = DualPotentials(lambda x: MINUS_INF, lambda z: 0.0)
        with pytest.raises(OTRLError):
            check_dual_certificate(pot, Coupling.diagonal(mu))
        pot = DualPotentials(lambda x: PLUS_INF, lambda z: 0.0)
        assert not check_dual_certificate(pot, Coupling.diagonal(mu)).passed


class TestKantorovichRubinstein:
    def test_tight_identity_witness(self):
        assert kr_lower_bound(lambda x: x, dirac(I, 0.0), dirac(I, 1.0)) == 1 == wasserstein(dirac(I, 0.0), dirac(I, 1.0))

    def test_zero_witness(self):
        assert kr_lower_bound(lambda x: 0.0, dirac(I, 0.2), dirac(I, 0.9)) == 0

    def test_q_witness_gives_base_mass(self):
        mu = make_measure(IQ, [(Q, 0.25), (0.5, 0.5), (0.9, 0.25)])
        value = kr_lower_bound(lambda x: 10.0 if x is Q else 0.0, mu, dirac(IQ, Q))
        assert value == pytest.approx(10 * 0.75, abs=1e-12)

    def test_rejects_non_lipschitz(self):
        with pytest.raises(NotLipschitzError):
            kr_lower_bound(lambda x: 2 * x, dirac(I, 0.0), dirac(I, 1.0))

    @given(dyadic_measures(IQ), dyadic_measures(IQ), st.floats(-1, 1), st.floats(1, 9))
    @settings(max_examples=200, deadline=None)
    def test_bound_never_exceeds_w1(self, mu, nu, slope, level):
        f = lambda x: level if x is Q else slope * x  # noqa: E731
        assert kr_lower_bound(f, mu, nu) <= wasserstein(mu, nu) + 1e-12
