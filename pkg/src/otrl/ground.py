"""Ground metric spaces and their point isometries.

Four spaces are supported: the unit interval, the unit interval plus an
isolated point ``q`` at uniform distance ``D``, the Euclidean plane, and the
plane plus a point ``q`` sitting at height one above the origin.

Points are plain Python values so they hash and compare exactly:

* ``Q`` is the isolated point,
* an interval point is a ``float`` in ``[0, 1]``,
* a plane point is a ``(float, float)`` tuple.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Union

from .errors import ConfigError, NonLinearMotionError, PointNotInSpaceError, WrongSpaceError


class _QPoint(enum.Enum):
    Q = "q"

    def __repr__(self) -> str:
        return "Q"


Q = _QPoint.Q

GroundPoint = Union[_QPoint, float, tuple]

INTERVAL = "interval"
INTERVAL_Q = "interval_q"
PLANE = "plane"
PLANE_Q = "plane_q"
KINDS = (INTERVAL, INTERVAL_Q, PLANE, PLANE_Q)

DEFAULT_D = 10.0


def _real(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PointNotInSpaceError(f"{what} must be a real number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise PointNotInSpaceError(f"{what} must be finite, got {value!r}")
    # normalise -0.0 so atoms at the origin merge
    return x + 0.0


def is_q(p: Any) -> bool:
    return p is Q


@dataclass(frozen=True)
class GroundSpace:
    """A metric descriptor: one of the four supported ground spaces.

    Use the classmethod constructors rather than building instances by hand.
    """

    kind: str
    D: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown space kind {self.kind!r}")
        if self.kind == INTERVAL_Q:
            if self.D is None:
                raise ConfigError("interval_q requires the far-distance parameter D")
            D = float(self.D)
            if not math.isfinite(D) or D <= 1.0:
                raise ConfigError(f"D must be > 1, got {self.D!r}")
            object.__setattr__(self, "D", D)
        elif self.D is not None:
            raise ConfigError(f"D is only meaningful for interval_q, got kind {self.kind!r}")

    @classmethod
    def interval(cls) -> GroundSpace:
        return cls(INTERVAL)

    @classmethod
    def interval_q(cls, D: float = DEFAULT_D) -> GroundSpace:
        return cls(INTERVAL_Q, D)

    @classmethod
    def plane(cls) -> GroundSpace:
        return cls(PLANE)

    @classmethod
    def plane_q(cls) -> GroundSpace:
        return cls(PLANE_Q)

    @property
    def has_q(self) -> bool:
        return self.kind in (INTERVAL_Q, PLANE_Q)

    @property
    def is_interval(self) -> bool:
        return self.kind in (INTERVAL, INTERVAL_Q)

    @property
    def is_plane(self) -> bool:
        return self.kind in (PLANE, PLANE_Q)

    @property
    def base(self) -> GroundSpace:
        """The space with ``q`` removed."""
        return GroundSpace.interval() if self.is_interval else GroundSpace.plane()

    @property
    def origin(self) -> GroundPoint:
        return 0.0 if self.is_interval else (0.0, 0.0)

    def with_q(self, D: float = DEFAULT_D) -> GroundSpace:
        if self.has_q:
            return self
        return GroundSpace.interval_q(D) if self.is_interval else GroundSpace.plane_q()

    def point(self, p: Any) -> GroundPoint:
        """Validate ``p`` and return its canonical form for this space."""
        if p is Q:
            if not self.has_q:
                raise PointNotInSpaceError(f"q is not a point of {self.kind}")
            return Q
        if self.is_interval:
            if isinstance(p, (tuple, list)):
                raise PointNotInSpaceError(f"plane point {p!r} in {self.kind}")
            x = _real(p, "interval coordinate")
            if not 0.0 <= x <= 1.0:
                raise PointNotInSpaceError(f"interval coordinate {x!r} outside [0, 1]")
            return x
        if not isinstance(p, (tuple, list)) or len(p) != 2:
            raise PointNotInSpaceError(f"{p!r} is not a plane point")
        return (_real(p[0], "plane coordinate"), _real(p[1], "plane coordinate"))

    def contains(self, p: Any) -> bool:
        try:
            self.point(p)
        except PointNotInSpaceError:
            return False
        return True

    def distance(self, a: GroundPoint, b: GroundPoint) -> float:
        a = self.point(a)
        b = self.point(b)
        return self._distance(a, b)

    def _distance(self, a: GroundPoint, b: GroundPoint) -> float:
        # callers guarantee canonical, admissible points
        if a is Q or b is Q:
            if a is b:
                return 0.0
            if self.kind == INTERVAL_Q:
                return self.D
            x = b if a is Q else a
            return math.hypot(1.0, x[0], x[1])
        if self.is_interval:
            return abs(a - b)
        return math.hypot(a[0] - b[0], a[1] - b[1])

    def cost(self, a: GroundPoint, b: GroundPoint, p: float) -> float:
        """Transport cost ``d(a, b) ** p``.

        For ``p == 2`` on the plane the squared norm is formed directly, which
        avoids a square root followed by a square.
        """
        if p == 2 and self.is_plane:
            if a is Q or b is Q:
                if a is b:
                    return 0.0
                x = b if a is Q else a
                return 1.0 + x[0] * x[0] + x[1] * x[1]
            dx = a[0] - b[0]
            dy = a[1] - b[1]
            return dx * dx + dy * dy
        d = self._distance(a, b)
        return d if p == 1 else d**p

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == INTERVAL_Q:
            out["D"] = self.D
        return out

    @classmethod
    def from_json(cls, obj: Any) -> GroundSpace:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ConfigError(f"space must be an object with a 'kind' key, got {obj!r}")
        kind = obj["kind"]
        if kind == INTERVAL_Q and "D" not in obj:
            raise ConfigError("interval_q requires 'D'")
        if kind != INTERVAL_Q and "D" in obj:
            raise ConfigError(f"'D' is not allowed for kind {kind!r}")
        return cls(kind, obj.get("D"))


def point_to_json(p: GroundPoint) -> Any:
    if p is Q:
        return "q"
    if isinstance(p, tuple):
        return {"v": [p[0], p[1]]}
    return {"x": p}


def point_from_json(obj: Any) -> GroundPoint:
    if obj == "q":
        return Q
    if isinstance(obj, dict) and len(obj) == 1:
        if "x" in obj:
            return _real(obj["x"], "interval coordinate")
        if "v" in obj and isinstance(obj["v"], list) and len(obj["v"]) == 2:
            return (_real(obj["v"][0], "plane coordinate"), _real(obj["v"][1], "plane coordinate"))
    raise PointNotInSpaceError(f"malformed point {obj!r}")


# -- base isometries -------------------------------------------------------


class BaseIsometry:
    """Distance-preserving self-map of a ground space that fixes ``q``."""

    name = "isometry"

    def admits(self, p: GroundPoint) -> bool:
        return True

    def _map(self, p: GroundPoint) -> GroundPoint:
        raise NotImplementedError

    def __call__(self, p: GroundPoint) -> GroundPoint:
        if p is Q:
            return Q
        if not self.admits(p):
            raise PointNotInSpaceError(f"{self.name} is not defined at {p!r}")
        return self._map(p)

    def then(self, outer: BaseIsometry) -> BaseIsometry:
        """``outer`` after ``self``."""
        return Composed(outer, self)


@dataclass(frozen=True)
class Identity(BaseIsometry):
    name = "id"

    def _map(self, p):
        return p


@dataclass(frozen=True)
class ReflectInterval(BaseIsometry):
    """``x -> 1 - x`` on the interval, ``q -> q``."""

    name = "r"

    def admits(self, p):
        return isinstance(p, float) and 0.0 <= p <= 1.0

    def _map(self, p):
        return (1.0 - p) + 0.0


def _cos_sin(theta: float) -> tuple[float, float]:
    # exact values at quarter turns keep lattice points on the lattice
    k = theta / (math.pi / 2)
    if k == round(k):
        return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][int(round(k)) % 4]
    return math.cos(theta), math.sin(theta)


@dataclass(frozen=True)
class PlaneRigidMotion(BaseIsometry):
    """``v -> R(theta) S v + translation`` with ``S`` the optional x-axis flip.

    An instance with zero translation is a linear isometry of the plane.
    """

    theta: float = 0.0
    reflect: bool = False
    translation: tuple = (0.0, 0.0)
    _cs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(
            self, "translation", (float(self.translation[0]), float(self.translation[1]))
        )
        object.__setattr__(self, "_cs", _cos_sin(self.theta))

    @property
    def name(self) -> str:
        parts = [f"rot({self.theta!r})"]
        if self.reflect:
            parts.append("flip")
        if self.translation != (0.0, 0.0):
            parts.append(f"shift{self.translation!r}")
        return "*".join(parts)

    @property
    def is_linear(self) -> bool:
        return self.translation == (0.0, 0.0)

    def admits(self, p):
        return isinstance(p, tuple) and len(p) == 2

    def linear_part(self, v: tuple) -> tuple:
        c, s = self._cs
        x, y = v
        if self.reflect:
            y = -y
        return (c * x - s * y, s * x + c * y)

    def _map(self, p):
        x, y = self.linear_part(p)
        return (x + self.translation[0] + 0.0, y + self.translation[1] + 0.0)


@dataclass(frozen=True)
class Composed(BaseIsometry):
    outer: BaseIsometry
    inner: BaseIsometry

    @property
    def name(self) -> str:
        return f"{self.outer.name}.{self.inner.name}"

    def admits(self, p):
        return self.inner.admits(p)

    def _map(self, p):
        return self.outer(self.inner(p))


def apply_base_isometry(iso: BaseIsometry, p: GroundPoint, space: GroundSpace | None = None) -> GroundPoint:
    """Image of ``p`` under ``iso``; when ``space`` is given, ``p`` is validated first."""
    if space is not None:
        p = space.point(p)
        if isinstance(iso, ReflectInterval) and not space.is_interval:
            raise WrongSpaceError("interval reflection applied in a plane space")
        if isinstance(iso, PlaneRigidMotion) and not space.is_plane:
            raise WrongSpaceError("plane motion applied in an interval space")
        if space.kind == PLANE_Q and not _fixes_origin(iso):
            # d(q, x) depends on |x|, so only motions fixing 0 keep distances to q
            raise NonLinearMotionError("on plane_q a rigid motion must fix the origin")
    return iso(p)


def _fixes_origin(iso: BaseIsometry) -> bool:
    if isinstance(iso, PlaneRigidMotion):
        return iso.is_linear
    if isinstance(iso, Composed):
        return _fixes_origin(iso.outer) and _fixes_origin(iso.inner)
    return True
