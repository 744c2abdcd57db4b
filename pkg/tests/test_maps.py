import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from otrl import GroundSpace, Identity, PlaneRigidMotion, Q, ReflectInterval, barycenter, collapsed, dirac, make_measure, wasserstein
from otrl.errors import MixedQPairingError, NonLinearMotionError, OTRLError, QMassPresentError, WrongSpaceError
from otrl.maps import (
    MeasureMap,
    collapse_plan,
    flip_J,
    geodesic_point,
    isometry_distortion,
    kloeckner,
    lift,
    map_by_name,
    pairs_from,
    projection_P,
    slice_action,
)
from otrl.measures import q_mixture
from otrl.ot import Coupling, check_coupling
from otrl.rigidity.sampling import random_base_measure, random_measure

from conftest import dyadic_measures

I = GroundSpace.interval()
IQ = GroundSpace.interval_q(10)
P = GroundSpace.plane()
PQ = GroundSpace.plane_q()
MU_PRIME = make_measure(P, [((0.0, 0.0), 1 / 3), ((1.0, 0.0), 2 / 3)])


def close(a, b, tol=1e-12):
    """Same support up to ``tol`` in coordinates and weights."""
    if a.space != b.space or len(a) != len(b):
        return False
    for (p, w), (r, v) in zip(a.atoms, b.atoms):
        if (p is Q) != (r is Q) or abs(w - v) > tol:
            return False
        if p is not Q and np.max(np.abs(np.subtract(p, r))) > tol:
            return False
    return True


class TestLift:
    def test_identity(self):
        mu = make_measure(IQ, [(Q, 0.3), (0.4, 0.7)])
        assert lift(Identity())(mu) == mu

    def test_reflection(self):
        assert lift(ReflectInterval())(dirac(I, 0.0)) == dirac(I, 1.0)
        mu = make_measure(IQ, [(Q, 0.5), (0.2, 0.5)])
        assert lift(ReflectInterval())(mu) == make_measure(IQ, [(Q, 0.5), (0.8, 0.5)])

    @given(dyadic_measures(PQ), st.integers(0, 3), st.integers(0, 3), st.booleans())
    @settings(max_examples=150, deadline=None)
    def test_composition(self, mu, j, k, flip):
        f = PlaneRigidMotion(j * math.pi / 2, flip)
        g = PlaneRigidMotion(k * math.pi / 2)
        assert lift(f)(lift(g)(mu)) == lift(g.then(f))(mu)
        assert lift(f).after(lift(g))(mu) == lift(g.then(f))(mu)

    def test_distortion_of_reflection(self):
        rng = np.random.default_rng(4)
        ms = [random_measure(rng, IQ) for _ in range(15)]
        pairs = pairs_from(ms)[:100]
        report = isometry_distortion(lift(ReflectInterval()), pairs, 1)
        assert report.n_pairs == 100
        assert report.max_distortion <= 1e-9


class TestFlip:
    def test_half_dirac(self):
        assert flip_J(dirac(I, 0.5)) == make_measure(I, [(0.0, 0.5), (1.0, 0.5)])

    def test_endpoint_dirac(self):
        assert flip_J(dirac(I, 0.0)) == dirac(I, 1.0)
        assert wasserstein(flip_J(dirac(I, 0.0)), flip_J(dirac(I, 0.5))) == pytest.approx(0.5, abs=1e-15)

    def test_two_ends(self):
        ends = make_measure(I, [(0.0, 0.5), (1.0, 0.5)])
        assert flip_J(ends) == dirac(I, 0.5)

    @given(dyadic_measures(I, max_atoms=8))
    @settings(max_examples=400, deadline=None)
    def test_involution_exact_on_dyadic(self, mu):
        assert flip_J(flip_J(mu)) == mu

    @given(st.floats(0.0, 1.0, exclude_min=True, exclude_max=True))
    def test_interior_dirac_splits(self, x):
        assert len(flip_J(dirac(I, x))) == 2

    def test_distortion(self):
        rng = np.random.default_rng(8)
        ms = [random_base_measure(rng, I, 6) for _ in range(15)]
        assert isometry_distortion(MeasureMap("flip", flip_J), pairs_from(ms)[:100], 1).max_distortion <= 1e-9

    def test_rejects_q_mass(self):
        with pytest.raises(WrongSpaceError):
            flip_J(make_measure(IQ, [(Q, 0.5), (0.3, 0.5)]))


class TestKloeckner:
    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.5, 4.0, 5.9])
    def test_rotation_formula(self, theta):
        c, s = math.cos(theta), math.sin(theta)
        x0 = (2 / 3, 0.0)
        expected = make_measure(
            P,
            [((x0[0] - 2 / 3 * c, -2 / 3 * s), 1 / 3), ((x0[0] + c / 3, s / 3), 2 / 3)],
        )
        assert close(kloeckner(PlaneRigidMotion(theta), MU_PRIME), expected)

    def test_half_turn(self):
        image = kloeckner(PlaneRigidMotion(math.pi), MU_PRIME)
        assert close(image, make_measure(P, [((4 / 3, 0.0), 1 / 3), ((1 / 3, 0.0), 2 / 3)]), 1e-15)
        assert barycenter(image) == pytest.approx((2 / 3, 0.0), abs=1e-15)

    @given(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), st.floats(0, 2 * math.pi), st.booleans())
    def test_diracs_fixed(self, x, theta, refl):
        mu = dirac(P, x)
        assert kloeckner(PlaneRigidMotion(theta, refl), mu) == mu

    def test_barycenter_and_w2_preserved(self):
        rng = np.random.default_rng(12)
        for _ in range(60):
            mu = random_base_measure(rng, P, 5)
            nu = random_base_measure(rng, P, 5)
            phi = PlaneRigidMotion(float(rng.uniform(0, 2 * math.pi)), bool(rng.random() < 0.5))
            a, b = kloeckner(phi, mu), kloeckner(phi, nu)
            assert np.allclose(barycenter(a), barycenter(mu), atol=1e-12)
            assert wasserstein(a, b, 2) == pytest.approx(wasserstein(mu, nu, 2), abs=1e-9)

    def test_errors(self):
        with pytest.raises(NonLinearMotionError):
            kloeckner(PlaneRigidMotion(0.1, False, (1.0, 0.0)), MU_PRIME)
        with pytest.raises(QMassPresentError):
            kloeckner(PlaneRigidMotion(0.1), make_measure(PQ, [(Q, 0.5), ((1, 0), 0.5)]))


class TestProjection:
    def test_examples(self):
        mu = make_measure(PQ, [(Q, 1 / 3), ((1.0, 0.0), 2 / 3)])
        assert projection_P(mu) == make_measure(PQ, [((0.0, 0.0), 1 / 3), ((1.0, 0.0), 2 / 3)])
        full = make_measure(PQ, [((1.0, 2.0), 0.5), ((0.0, 1.0), 0.5)])
        assert projection_P(full) == full
        assert projection_P(dirac(PQ, Q)) == dirac(PQ, (0.0, 0.0))

    @given(dyadic_measures(PQ))
    @settings(max_examples=200, deadline=None)
    def test_idempotent(self, mu):
        once = projection_P(mu)
        assert once.q_mass == 0.0
        assert projection_P(once) == once

    def test_needs_q(self):
        with pytest.raises(WrongSpaceError):
            projection_P(dirac(P, (0, 0)))


class TestSliceAction:
    def test_identity_assignment(self):
        rng = np.random.default_rng(2)
        act = slice_action(lambda t: "id")
        for _ in range(20):
            mu = random_measure(rng, IQ)
            assert act(mu) == mu

    def test_flip_on_slice(self):
        mu = q_mixture(IQ, 0.6, 0.5)
        expected = make_measure(IQ, [(Q, 0.4), (0.0, 0.3), (1.0, 0.3)])
        assert close(slice_action(lambda t: "J")(mu), expected, 1e-15)

    def test_reflection_on_slice(self):
        mu = make_measure(IQ, [(Q, 0.5), (0.2, 0.5)])
        assert slice_action(lambda t: "r")(mu) == make_measure(IQ, [(Q, 0.5), (0.8, 0.5)])

    def test_counterexample_distortion(self):
        t = 0.6
        mu = make_measure(IQ, [(Q, 1 - t), (0.0, t / 2), (1.0, t / 2)])
        nu = q_mixture(IQ, 2 * t / 3, 0.0)
        report = isometry_distortion(slice_action(lambda s: "J"), [(mu, nu)], 1)
        assert report.max_distortion == pytest.approx(0.1, abs=1e-9)

    def test_errors(self):
        with pytest.raises(WrongSpaceError):
            slice_action(lambda t: "id")(dirac(PQ, Q))
        with pytest.raises(OTRLError):
            slice_action(lambda t: "nope")(q_mixture(IQ, 0.5, 0.2))


class TestGeodesic:
    def test_endpoints(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            mu = random_measure(rng, PQ)
            pi = collapse_plan(mu)
            assert geodesic_point(pi, 0.0) == mu
            assert geodesic_point(pi, 1.0) == pi.nu

    def test_midpoint_of_collapse(self):
        mu = make_measure(PQ, [(Q, 0.5), ((3.0, 4.0), 0.5)])
        pi = collapse_plan(mu)
        assert pi.nu == collapsed(PQ, 0.5)
        mid = geodesic_point(pi, 0.5)
        assert mid == make_measure(PQ, [(Q, 0.5), ((1.5, 2.0), 0.5)])
        total = wasserstein(mu, pi.nu, 2)
        assert wasserstein(mu, mid, 2) == pytest.approx(total / 2, abs=1e-12)
        assert wasserstein(mid, pi.nu, 2) == pytest.approx(total / 2, abs=1e-12)

    def test_collapse_plan_is_coupling(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            assert check_coupling(collapse_plan(random_measure(rng, PQ))).passed

    def test_mixed_pairing_rejected(self):
        mu, nu = dirac(PQ, Q), dirac(PQ, (1.0, 0.0))
        with pytest.raises(MixedQPairingError):
            geodesic_point(Coupling.product(mu, nu), 0.5)


class TestByName:
    @pytest.mark.parametrize("name", ["trivial:id", "trivial:r", "flip", "project", "kloeckner:1.5"])
    def test_known(self, name):
        assert isinstance(map_by_name(name), MeasureMap)

    def test_unknown(self):
        with pytest.raises(OTRLError):
            map_by_name("warp")
        with pytest.raises(OTRLError):
            map_by_name("kloeckner:abc")
