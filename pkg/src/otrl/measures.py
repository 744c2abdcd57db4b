"""Finitely supported probability measures on the ground spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    EmptySupportError,
    MassNotOneError,
    NegativeWeightError,
    OTRLError,
    QMassPresentError,
    SpaceMismatchError,
    WrongSpaceError,
)
from .ground import (
    BaseIsometry,
    GroundPoint,
    GroundSpace,
    Q,
    apply_base_isometry,
    point_from_json,
    point_to_json,
)

MASS_TOL = 1e-12
INPUT_MASS_TOL = 1e-9


def _order_key(p: GroundPoint) -> tuple:
    if p is Q:
        return (0,)
    if isinstance(p, tuple):
        return (1,) + p
    return (1, p)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Probability measure with finitely many atoms.

    Atoms are kept merged and in a canonical order (``q`` first, then by
    coordinate), so two measures compare equal exactly when they have the
    same atoms with the same weights.
    """

    space: GroundSpace
    points: tuple
    weights: tuple

    def __len__(self) -> int:
        return len(self.points)

    @property
    def atoms(self) -> list[tuple[GroundPoint, float]]:
        return list(zip(self.points, self.weights))

    @property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def weight_of(self, p: GroundPoint) -> float:
        for x, w in zip(self.points, self.weights):
            if x == p and (x is Q) == (p is Q):
                return w
        return 0.0

    @property
    def q_mass(self) -> float:
        return self.weights[0] if self.points and self.points[0] is Q else 0.0

    @property
    def base_mass(self) -> float:
        return math.fsum(w for x, w in self.atoms if x is not Q)

    @property
    def is_dirac(self) -> bool:
        return len(self.points) == 1

    def __repr__(self) -> str:
        body = " + ".join(f"{w!r}*δ[{x!r}]" for x, w in self.atoms)
        return f"DiscreteMeasure({self.space.kind}: {body})"


def make_measure(
    space: GroundSpace,
    atoms: Iterable[tuple[Any, float]],
    *,
    tol: float = INPUT_MASS_TOL,
) -> DiscreteMeasure:
    """Validate and merge ``atoms`` into a measure on ``space``.

    Zero weights are dropped. If the total mass is off from one by more than
    ``MASS_TOL`` but at most ``tol`` the weights are renormalised; beyond
    ``tol`` the input is rejected.
    """
    merged: dict = {}
    for p, w in atoms:
        p = space.point(p)
        if isinstance(w, bool) or not isinstance(w, (int, float, np.floating)):
            raise NegativeWeightError(f"weight {w!r} is not a number")
        w = float(w)
        if not math.isfinite(w) or w < 0.0:
            raise NegativeWeightError(f"weight {w!r} at {p!r} is negative or not finite")
        if w == 0.0:
            continue
        merged.setdefault(p, []).append(w)
    merged = {p: math.fsum(ws) for p, ws in merged.items()}
    if not merged:
        raise EmptySupportError("measure has no atom with positive weight")
    total = math.fsum(merged.values())
    if abs(total - 1.0) > tol:
        raise MassNotOneError(f"weights sum to {total!r}, not 1")
    if abs(total - 1.0) > MASS_TOL:
        merged = {p: w / total for p, w in merged.items()}
    pts = sorted(merged, key=_order_key)
    return DiscreteMeasure(space, tuple(pts), tuple(merged[p] for p in pts))


def dirac(space: GroundSpace, p: Any) -> DiscreteMeasure:
    return make_measure(space, [(p, 1.0)])


def q_mixture(space: GroundSpace, t: float, p: Any) -> DiscreteMeasure:
    """``(1 - t) δ_q + t δ_p``."""
    if not space.has_q:
        raise WrongSpaceError(f"{space.kind} has no point q")
    if not 0.0 <= t <= 1.0:
        raise OTRLError(f"slice parameter {t!r} outside [0, 1]")
    return make_measure(space, [(Q, 1.0 - t), (p, t)])


def collapsed(space: GroundSpace, t: float) -> DiscreteMeasure:
    """The measure of the ``t``-slice nearest to ``δ_q``: ``(1 - t) δ_q + t δ_0``."""
    return q_mixture(space, t, space.origin)


def _interval_only(mu: DiscreteMeasure) -> None:
    if not mu.space.is_interval:
        raise WrongSpaceError(f"expected an interval measure, got {mu.space.kind}")
    if mu.q_mass > 0.0:
        raise WrongSpaceError("measure carries mass at q; expected support in [0, 1]")


def cdf(mu: DiscreteMeasure, x: float) -> float:
    """``mu([0, x])``."""
    _interval_only(mu)
    return min(1.0, math.fsum(w for p, w in mu.atoms if p <= x))


def quantile(mu: DiscreteMeasure, y: float) -> float:
    """Generalised inverse ``inf{x : F(x) >= y}`` for ``y`` in ``(0, 1]``."""
    _interval_only(mu)
    if not 0.0 < y <= 1.0:
        raise OTRLError(f"quantile level {y!r} outside (0, 1]")
    acc = 0.0
    for p, w in mu.atoms:
        acc += w
        if acc >= y:
            return p
    # cumulative rounding may leave the last partial sum just below 1
    return mu.points[-1]


def pushforward(iso: BaseIsometry, mu: DiscreteMeasure) -> DiscreteMeasure:
    """Relocate every atom of ``mu`` along ``iso``."""
    images = [(apply_base_isometry(iso, p, mu.space), w) for p, w in mu.atoms]
    return make_measure(mu.space, images)


def slice_mass(mu: DiscreteMeasure) -> float:
    """Base-space mass ``t = 1 - mu({q})``."""
    if not mu.space.has_q:
        raise WrongSpaceError(f"{mu.space.kind} has no point q")
    return 1.0 - mu.q_mass


@dataclass(frozen=True)
class SliceDecomposition:
    space: GroundSpace
    t: float
    rest: DiscreteMeasure | None

    def recompose(self) -> DiscreteMeasure:
        """Rebuild ``(1 - t) δ_q + t * rest``."""
        return recompose(self.space, self.t, self.rest)


def recompose(space: GroundSpace, t: float, rest: DiscreteMeasure | None) -> DiscreteMeasure:
    if t == 0.0 or rest is None:
        return dirac(space, Q)
    atoms = [(Q, 1.0 - t)] + [(p, t * w) for p, w in rest.atoms]
    return make_measure(space, atoms)


def slice_decompose(mu: DiscreteMeasure) -> SliceDecomposition:
    t = slice_mass(mu)
    if t == 0.0:
        return SliceDecomposition(mu.space, 0.0, None)
    rest = make_measure(mu.space.base, [(p, w / t) for p, w in mu.atoms if p is not Q])
    return SliceDecomposition(mu.space, t, rest)


def barycenter(mu: DiscreteMeasure) -> tuple[float, float]:
    """Centre of mass of a measure supported on the plane."""
    if not mu.space.is_plane:
        raise WrongSpaceError(f"barycenter needs a plane measure, got {mu.space.kind}")
    if mu.q_mass > 0.0:
        raise QMassPresentError("measure carries mass at q")
    gx = math.fsum(w * p[0] for p, w in mu.atoms)
    gy = math.fsum(w * p[1] for p, w in mu.atoms)
    return (gx + 0.0, gy + 0.0)


def rehome(mu: DiscreteMeasure, space: GroundSpace) -> DiscreteMeasure:
    """View ``mu`` as a measure on a compatible ``space`` (e.g. interval inside interval_q)."""
    if space == mu.space:
        return mu
    return make_measure(space, mu.atoms)


def same_space(mu: DiscreteMeasure, nu: DiscreteMeasure) -> GroundSpace:
    if mu.space != nu.space:
        raise SpaceMismatchError(f"measures live in {mu.space} and {nu.space}")
    return mu.space


# -- JSON ------------------------------------------------------------------


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {
        "space": mu.space.to_json(),
        "atoms": [{"point": point_to_json(p), "w": w} for p, w in mu.atoms],
    }


def measure_from_json(obj: Any, space: GroundSpace | None = None) -> DiscreteMeasure:
    """Decode a measure; ``space`` overrides or supplies the ``"space"`` entry.

    A measure that names its own space must agree with ``space`` when both are given.
    """
    if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
        raise OTRLError("measure JSON must be an object with an 'atoms' list")
    own = GroundSpace.from_json(obj["space"]) if "space" in obj else None
    if own is not None and space is not None and own != space:
        raise SpaceMismatchError(f"measure declares {own} but {space} was requested")
    sp = space or own
    if sp is None:
        raise OTRLError("no space given for measure")
    atoms: list = []
    for a in obj["atoms"]:
        if not isinstance(a, dict) or "point" not in a or "w" not in a:
            raise OTRLError(f"malformed atom {a!r}")
        atoms.append((point_from_json(a["point"]), a["w"]))
    return make_measure(sp, atoms)


def measures_equal(a: DiscreteMeasure, b: DiscreteMeasure, tol: float = 0.0) -> bool:
    """Same space and atom set; weights compared within ``tol``."""
    if a.space != b.space or a.points != b.points:
        return False
    return all(abs(x - y) <= tol for x, y in zip(a.weights, b.weights))


def support_union(*measures: DiscreteMeasure) -> list[GroundPoint]:
    seen: dict = {}
    for mu in measures:
        for p in mu.points:
            seen.setdefault(p, None)
    return sorted(seen, key=_order_key)


def mix(space: GroundSpace, parts: Sequence[tuple[float, DiscreteMeasure]]) -> DiscreteMeasure:
    """Convex combination ``sum c_k mu_k``."""
    return make_measure(space, [(p, c * w) for c, m in parts for p, w in m.atoms])
