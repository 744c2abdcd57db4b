import math

import pytest
from hypothesis import strategies as st

from otrl import GroundSpace, Q, make_measure

SPACES = {
    "interval": GroundSpace.interval(),
    "interval_q": GroundSpace.interval_q(10.0),
    "plane": GroundSpace.plane(),
    "plane_q": GroundSpace.plane_q(),
}


@pytest.fixture(params=sorted(SPACES))
def space(request):
    return SPACES[request.param]


@pytest.fixture
def interval_q():
    return GroundSpace.interval_q(10.0)


@pytest.fixture
def plane_q():
    return GroundSpace.plane_q()


def dyadic(bits=10):
    return st.integers(0, 2**bits).map(lambda k: k / 2**bits)


def points(space):
    if space.is_interval:
        base = st.floats(0.0, 1.0, allow_nan=False)
    else:
        c = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)
        base = st.tuples(c, c)
    if space.has_q:
        return st.one_of(st.just(Q), base)
    return base


@st.composite
def dyadic_measures(draw, space, max_atoms=5, bits=10):
    """Measures whose coordinates and weights are dyadic, so float sums are exact."""
    k = draw(st.integers(1, max_atoms))
    scale = 2**bits
    cuts = sorted(draw(st.sets(st.integers(1, scale - 1), min_size=k - 1, max_size=k - 1)))
    edges = [0, *cuts, scale]
    weights = [(b - a) / scale for a, b in zip(edges, edges[1:])]
    if space.is_interval:
        pt = dyadic(bits)
    else:
        c = st.integers(-4 * 32, 4 * 32).map(lambda v: v / 32)
        pt = st.tuples(c, c)
    if space.has_q:
        pt = st.one_of(st.just(Q), pt)
    pts = [draw(pt) for _ in range(k)]
    return make_measure(space, list(zip(pts, weights)))


@st.composite
def measures(draw, space, max_atoms=4):
    k = draw(st.integers(1, max_atoms))
    raw = [draw(st.floats(0.05, 1.0)) for _ in range(k)]
    total = math.fsum(raw)
    pts = [draw(points(space)) for _ in range(k)]
    return make_measure(space, [(p, w / total) for p, w in zip(pts, raw)])


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
