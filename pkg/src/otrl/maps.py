"""Transformations of discrete measures: lifted isometries, the interval flip,
rotations about the barycentre, projection onto the full slice, slice-wise
actions and displacement interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    MixedQPairingError,
    NonLinearMotionError,
    OTRLError,
    QMassPresentError,
    SpaceMismatchError,
    WrongSpaceError,
)
from .ground import BaseIsometry, GroundSpace, Identity, PlaneRigidMotion, Q, ReflectInterval
from .measures import (
    DiscreteMeasure,
    barycenter,
    make_measure,
    pushforward,
    recompose,
    slice_decompose,
)
from .ot import Coupling, solve_exact


@dataclass(frozen=True)
class MeasureMap:
    """Named map on measures. ``space=None`` means "whatever space the input lives in"."""

    name: str
    rule: Callable[[DiscreteMeasure], DiscreteMeasure]
    space: GroundSpace | None = None

    def __call__(self, mu: DiscreteMeasure) -> DiscreteMeasure:
        if self.space is not None and mu.space != self.space:
            raise SpaceMismatchError(f"map {self.name} is defined on {self.space}, got {mu.space}")
        return self.rule(mu)

    def after(self, inner: MeasureMap) -> MeasureMap:
        """``self`` composed with ``inner`` (``inner`` applied first)."""
        return MeasureMap(f"{self.name}.{inner.name}", lambda mu: self(inner(mu)), self.space or inner.space)


def lift(iso: BaseIsometry, space: GroundSpace | None = None) -> MeasureMap:
    """Push-forward along ``iso``, the trivial isometry it induces."""
    return MeasureMap(f"trivial:{iso.name}", lambda mu: pushforward(iso, mu), space)


def flip_J(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Flip of ``W1([0, 1])``: the measure whose CDF is the transposed CDF graph of ``mu``.

    With sorted atoms ``x_1 < ... < x_n`` and cumulative weights ``c_0 = 0, ..., c_n = 1``
    the image is ``sum_i (x_{i+1} - x_i) δ_{c_i}`` for ``i = 0..n``, where
    ``x_0 = 0`` and ``x_{n+1} = 1``; zero-weight terms are dropped.
    """
    if not mu.space.is_interval:
        raise WrongSpaceError(f"flip is defined on interval measures, got {mu.space.kind}")
    if mu.q_mass > 0.0:
        raise WrongSpaceError("flip needs a measure supported in [0, 1]")
    xs = [0.0, *mu.points, 1.0]
    cum = [0.0]
    for w in mu.weights[:-1]:
        cum.append(cum[-1] + w)
    cum.append(1.0)
    atoms = [(cum[i], xs[i + 1] - xs[i]) for i in range(len(cum))]
    return make_measure(mu.space, atoms)


def _interval_r_flip(mu: DiscreteMeasure) -> DiscreteMeasure:
    return pushforward(ReflectInterval(), flip_J(mu))


# the four isometries of W1([0, 1]) a slice action may use
SLICE_ISOMETRIES: dict[str, Callable[[DiscreteMeasure], DiscreteMeasure]] = {
    "id": lambda mu: mu,
    "r": lambda mu: pushforward(ReflectInterval(), mu),
    "J": flip_J,
    "rJ": _interval_r_flip,
}


def kloeckner(phi: PlaneRigidMotion, mu: DiscreteMeasure) -> DiscreteMeasure:
    """Apply the linear isometry ``phi`` to ``mu`` about its own barycentre."""
    if not isinstance(phi, PlaneRigidMotion) or not phi.is_linear:
        raise NonLinearMotionError("the barycentric map needs a linear plane isometry")
    if mu.q_mass > 0.0:
        raise QMassPresentError("the barycentric map is defined for plane measures only")
    gx, gy = barycenter(mu)
    atoms = []
    for (x, y), w in mu.atoms:
        rx, ry = phi.linear_part((x - gx, y - gy))
        atoms.append(((rx + gx, ry + gy), w))
    return make_measure(mu.space, atoms)


def projection_P(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Move the mass at ``q`` onto the base origin; the result has no ``q``-mass."""
    if not mu.space.has_q:
        raise WrongSpaceError(f"{mu.space.kind} has no point q")
    origin = mu.space.origin
    return make_measure(mu.space, [(origin if p is Q else p, w) for p, w in mu.atoms])


def slice_action(assignment: Callable[[float], str], space: GroundSpace | None = None) -> MeasureMap:
    """Map acting on each slice ``(1-t) δ_q + t mu'`` by ``assignment(t)`` applied to ``mu'``.

    ``assignment`` returns one of the keys of :data:`SLICE_ISOMETRIES`.
    """

    def rule(mu: DiscreteMeasure) -> DiscreteMeasure:
        if mu.space.kind != "interval_q":
            raise WrongSpaceError(f"slice actions live on interval_q, got {mu.space.kind}")
        dec = slice_decompose(mu)
        if dec.rest is None:
            return mu
        key = assignment(dec.t)
        try:
            iso = SLICE_ISOMETRIES[key]
        except KeyError:
            raise OTRLError(f"unknown slice isometry {key!r}") from None
        image = iso(dec.rest)
        if image == dec.rest:
            # spare the input the rounding of a decompose/recompose round trip
            return mu
        return recompose(mu.space, dec.t, image)

    return MeasureMap("slice_action", rule, space)


def collapse_plan(mu: DiscreteMeasure) -> Coupling:
    """Plan keeping the ``q``-mass in place and sending all base mass to the origin."""
    if not mu.space.has_q:
        raise WrongSpaceError(f"{mu.space.kind} has no point q")
    # base_mass rather than 1 - q_mass keeps the column sums exact
    target = make_measure(mu.space, [(Q, mu.q_mass), (mu.space.origin, mu.base_mass)])
    col = {p: j for j, p in enumerate(target.points)}
    plan = [[0.0] * len(target) for _ in range(len(mu))]
    for i, (p, w) in enumerate(mu.atoms):
        plan[i][col[Q if p is Q else mu.space.origin]] = w
    return Coupling(mu, target, plan)


def geodesic_point(pi: Coupling, s: float) -> DiscreteMeasure:
    """Displacement interpolation ``sum pi_ij δ_{(1-s) x_i + s y_j}``; mass at ``q`` stays put."""
    if not 0.0 <= s <= 1.0:
        raise OTRLError(f"interpolation parameter {s!r} outside [0, 1]")
    space = pi.mu.space
    if not space.is_plane:
        raise WrongSpaceError("displacement interpolation is implemented on the plane")
    atoms = []
    for i, j, w in pi.entries():
        x, y = pi.mu.points[i], pi.nu.points[j]
        if x is Q or y is Q:
            if x is not y:
                raise MixedQPairingError(f"plan moves mass {w!r} between {x!r} and {y!r}")
            atoms.append((Q, w))
            continue
        if s == 0.0:
            atoms.append((x, w))
        elif s == 1.0:
            atoms.append((y, w))
        else:
            atoms.append((((1 - s) * x[0] + s * y[0], (1 - s) * x[1] + s * y[1]), w))
    return make_measure(space, atoms)


@dataclass(frozen=True)
class DistortionReport:
    max_distortion: float
    worst_index: int
    worst_pair: tuple | None
    n_pairs: int


def isometry_distortion(
    phi: MeasureMap, pairs: Iterable[tuple[DiscreteMeasure, DiscreteMeasure]], p: float = 1.0
) -> DistortionReport:
    """Largest ``|W_p(phi mu, phi nu) - W_p(mu, nu)|`` over ``pairs``."""
    worst, at, worst_pair, n = 0.0, -1, None, 0
    for k, (mu, nu) in enumerate(pairs):
        if mu.space != nu.space or (phi.space is not None and mu.space != phi.space):
            raise SpaceMismatchError(f"pair {k} does not live on the map's space")
        before = solve_exact(mu, nu, p).distance
        after = solve_exact(phi(mu), phi(nu), p).distance
        gap = abs(after - before)
        if at < 0 or gap > worst:
            worst, at, worst_pair = gap, k, (mu, nu)
        n += 1
    return DistortionReport(worst, at, worst_pair, n)


def map_by_name(name: str) -> MeasureMap:
    """Resolve the map names used on the command line."""
    if name == "trivial:id":
        return lift(Identity())
    if name == "trivial:r":
        return lift(ReflectInterval())
    if name == "flip":
        return MeasureMap("flip", flip_J)
    if name == "project":
        return MeasureMap("project", projection_P)
    if name.startswith("kloeckner:"):
        try:
            theta = float(name.split(":", 1)[1])
        except ValueError:
            raise OTRLError(f"bad angle in {name!r}") from None
        motion = PlaneRigidMotion(theta)
        return MeasureMap(name, lambda mu: kloeckner(motion, mu))
    raise OTRLError(f"unknown map {name!r}")


def pairs_from(measures: Sequence[DiscreteMeasure]) -> list[tuple[DiscreteMeasure, DiscreteMeasure]]:
    return [(a, b) for i, a in enumerate(measures) for b in measures[i + 1 :]]


__all__ = [
    "MeasureMap",
    "lift",
    "flip_J",
    "SLICE_ISOMETRIES",
    "kloeckner",
    "projection_P",
    "slice_action",
    "collapse_plan",
    "geodesic_point",
    "DistortionReport",
    "isometry_distortion",
    "map_by_name",
    "pairs_from",
]
