"""Exact Wasserstein distances between discrete measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import OTRLError, WrongSpaceError
from ..measures import DiscreteMeasure, same_space
from .simplex import transport_simplex

COUPLING_TOL = 1e-10


@dataclass(frozen=True)
class Coupling:
    """Joint weights ``plan[i, j]`` between atom ``i`` of ``mu`` and atom ``j`` of ``nu``.

    Construction does not validate the marginals; use :func:`check_coupling`.
    """

    mu: DiscreteMeasure
    nu: DiscreteMeasure
    plan: np.ndarray

    def __post_init__(self):
        plan = np.asarray(self.plan, dtype=float)
        if plan.shape != (len(self.mu), len(self.nu)):
            raise OTRLError(f"plan shape {plan.shape} does not match {len(self.mu)}x{len(self.nu)} atoms")
        plan.setflags(write=False)
        object.__setattr__(self, "plan", plan)

    @classmethod
    def product(cls, mu: DiscreteMeasure, nu: DiscreteMeasure) -> Coupling:
        return cls(mu, nu, np.outer(mu.weight_array, nu.weight_array))

    @classmethod
    def diagonal(cls, mu: DiscreteMeasure) -> Coupling:
        return cls(mu, mu, np.diag(mu.weight_array))

    def entries(self):
        """Yield ``(i, j, weight)`` for every cell carrying positive mass."""
        for i, j in zip(*np.nonzero(self.plan > 0.0)):
            yield int(i), int(j), float(self.plan[i, j])

    def cost(self, p: float = 1.0) -> float:
        space = same_space(self.mu, self.nu)
        return math.fsum(
            w * space.cost(self.mu.points[i], self.nu.points[j], p) for i, j, w in self.entries()
        )


@dataclass(frozen=True)
class OTResult:
    p: float
    cost: float
    distance: float
    plan: Coupling
    row_potential: np.ndarray | None = None
    col_potential: np.ndarray | None = None


@dataclass(frozen=True)
class CouplingVerdict:
    passed: bool
    worst_violation: float

    def __bool__(self) -> bool:
        return self.passed


def cost_matrix(mu: DiscreteMeasure, nu: DiscreteMeasure, p: float) -> np.ndarray:
    space = same_space(mu, nu)
    return np.array([[space.cost(x, y, p) for y in nu.points] for x in mu.points], dtype=float)


def _check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1.0) or not math.isfinite(p):
        raise OTRLError(f"p must be >= 1, got {p!r}")
    return p


def solve_exact(mu: DiscreteMeasure, nu: DiscreteMeasure, p: float = 1.0) -> OTResult:
    """Optimal transport between ``mu`` and ``nu`` for the cost ``d ** p``.

    Both measures must live on the same ground space. The plan is globally
    optimal; when several optimal plans exist which one is returned is not
    specified.
    """
    p = _check_p(p)
    same_space(mu, nu)
    C = cost_matrix(mu, nu, p)
    a, b = mu.weight_array, nu.weight_array
    if len(mu) == 1 or len(nu) == 1:
        plan = np.outer(a, b)
        cost = float(math.fsum((plan * C).ravel()))
        u = v = None
    else:
        sol = transport_simplex(a, b, C)
        plan, u, v = sol.plan, sol.u, sol.v
        cost = float(math.fsum((plan * C).ravel()))
    cost = max(cost, 0.0)
    dist = cost if p == 1.0 else cost ** (1.0 / p)
    return OTResult(p, cost, dist, Coupling(mu, nu, plan), u, v)


def wasserstein(mu: DiscreteMeasure, nu: DiscreteMeasure, p: float = 1.0) -> float:
    return solve_exact(mu, nu, p).distance


def check_coupling(pi: Coupling, tol: float = COUPLING_TOL) -> CouplingVerdict:
    """Check nonnegativity and both marginals of ``pi``; report the worst violation."""
    plan = pi.plan
    worst = max(0.0, float(-plan.min())) if plan.size else 0.0
    rows = np.abs(plan.sum(axis=1) - pi.mu.weight_array)
    cols = np.abs(plan.sum(axis=0) - pi.nu.weight_array)
    worst = max(worst, float(rows.max(initial=0.0)), float(cols.max(initial=0.0)))
    return CouplingVerdict(worst <= tol, worst)


def w1_interval_closed_form(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """``W1`` on ``[0, 1]`` as the integral of ``|F_mu - F_nu|``."""
    for m in (mu, nu):
        if not m.space.is_interval:
            raise WrongSpaceError(f"closed form needs interval measures, got {m.space.kind}")
        if m.q_mass > 0.0:
            raise WrongSpaceError("closed form needs measures supported in [0, 1]")
    # signed jump of F_mu - F_nu at every breakpoint
    jumps: dict[float, float] = {}
    for x, w in mu.atoms:
        jumps[x] = jumps.get(x, 0.0) + w
    for x, w in nu.atoms:
        jumps[x] = jumps.get(x, 0.0) - w
    xs = sorted(jumps)
    total = []
    level = 0.0
    for x, nxt in zip(xs, xs[1:]):
        level += jumps[x]
        total.append(abs(level) * (nxt - x))
    return math.fsum(total)
