"""Kantorovich dual certificates and Kantorovich-Rubinstein lower bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

from ..errors import NotLipschitzError, OTRLError
from ..ground import GroundPoint
from ..measures import DiscreteMeasure, same_space, support_union
from .core import Coupling

DUAL_TOL = 1e-10


class Infinite(enum.Enum):
    """Tagged infinite potential value; never enters float arithmetic."""

    POS = "+inf"
    NEG = "-inf"


PLUS_INF = Infinite.POS
MINUS_INF = Infinite.NEG

PotentialValue = Union[float, Infinite]


@dataclass(frozen=True)
class DualPotentials:
    """Potentials ``psi`` (source side, values in R or +inf) and ``phi``
    (target side, values in R or -inf).

    The pair is feasible when ``phi(z) - psi(x) <= d(x, z)**2`` on the
    evaluation domain, which is both supports plus ``extra_points``.
    """

    psi: Callable[[GroundPoint], PotentialValue]
    phi: Callable[[GroundPoint], PotentialValue]
    extra_points: tuple = field(default=())


@dataclass(frozen=True)
class CertificateVerdict:
    passed: bool
    feasible: bool
    tight: bool
    dual_matches_cost: bool
    worst_feasibility_violation: float
    worst_slack_on_plan: float
    dual_value: float | None
    primal_cost: float

    def __bool__(self) -> bool:
        return self.passed


def _value(v: PotentialValue, allowed: Infinite, who: str) -> PotentialValue:
    if isinstance(v, Infinite):
        if v is not allowed:
            raise OTRLError(f"{who} may not take the value {v.value}")
        return v
    v = float(v)
    if not math.isfinite(v):
        raise OTRLError(f"{who}: use the Infinite tags instead of float infinities")
    return v


def check_dual_certificate(
    pot: DualPotentials, pi: Coupling, *, p: float = 2.0, tol: float = DUAL_TOL
) -> CertificateVerdict:
    """Verify that ``pot`` certifies the optimality of ``pi`` for the cost ``d ** p``.

    Three things are checked: feasibility on the evaluation domain, equality
    on every cell of ``pi`` carrying mass, and agreement of the dual value
    ``int phi dnu - int psi dmu`` with the cost of ``pi``.
    """
    space = same_space(pi.mu, pi.nu)
    domain = support_union(pi.mu, pi.nu)
    for x in pot.extra_points:
        x = space.point(x)
        if x not in domain:
            domain.append(x)
    psi = {x: _value(pot.psi(x), PLUS_INF, "psi") for x in domain}
    phi = {z: _value(pot.phi(z), MINUS_INF, "phi") for z in domain}

    worst = 0.0
    for x in domain:
        if psi[x] is PLUS_INF:
            continue
        for z in domain:
            if phi[z] is MINUS_INF:
                continue
            worst = max(worst, phi[z] - psi[x] - space.cost(x, z, p))
    feasible = worst <= tol

    slack = 0.0
    tight = True
    for i, j, _ in pi.entries():
        x, z = pi.mu.points[i], pi.nu.points[j]
        if isinstance(psi[x], Infinite) or isinstance(phi[z], Infinite):
            tight = False
            slack = math.inf
            continue
        slack = max(slack, abs(space.cost(x, z, p) - (phi[z] - psi[x])))
    tight = tight and slack <= tol

    primal = pi.cost(p)
    dual: float | None
    if any(isinstance(phi[z], Infinite) for z in pi.nu.points) or any(
        isinstance(psi[x], Infinite) for x in pi.mu.points
    ):
        dual = None
    else:
        dual = math.fsum(w * phi[z] for z, w in pi.nu.atoms) - math.fsum(
            w * psi[x] for x, w in pi.mu.atoms
        )
    matches = dual is not None and abs(dual - primal) <= tol
    return CertificateVerdict(
        feasible and tight and matches, feasible, tight, matches, worst, slack, dual, primal
    )


def kr_lower_bound(
    f: Callable[[GroundPoint], float],
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    *,
    tol: float = 1e-12,
) -> float:
    """``int f dnu - int f dmu`` for a 1-Lipschitz witness ``f``.

    The Lipschitz condition is checked on the union of the two supports; the
    returned value never exceeds ``W1(mu, nu)``.
    """
    space = same_space(mu, nu)
    pts = support_union(mu, nu)
    vals = {x: float(f(x)) for x in pts}
    for a in pts:
        for b in pts:
            if abs(vals[a] - vals[b]) > space.distance(a, b) + tol:
                raise NotLipschitzError(f"|f({a!r}) - f({b!r})| exceeds their distance")
    return math.fsum(w * vals[x] for x, w in nu.atoms) - math.fsum(w * vals[x] for x, w in mu.atoms)
