"""Verification suites and the aggregate runner."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from ..errors import ConfigError
from .report import AggregateReport, Check, SuiteReport
from .suites import (
    verify_collapse_plan_optimality,
    verify_delta_q_characterization,
    verify_flip_isometry,
    verify_geodesic_slice_characterization,
    verify_interval_counterexample,
    verify_mass_holder_bound,
    verify_mass_identity,
    verify_plane_counterexample,
    verify_projection_commutes,
    verify_slice_minimizer,
    verify_slice_scaling,
    verify_solver_oracles,
)


@dataclass(frozen=True)
class VerifyConfig:
    D: float = 10.0
    seed: int = 42
    samples: int = 200
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.D, bool) or not isinstance(self.D, (int, float)) or not math.isfinite(self.D) or self.D <= 1:
            raise ConfigError(f"D must be > 1, got {self.D!r}")
        if int(self.samples) < 1:
            raise ConfigError(f"samples must be positive, got {self.samples!r}")
        if int(self.workers) < 1:
            raise ConfigError("workers must be positive")


Suite = Callable[[VerifyConfig], SuiteReport]

# sample counts below the suite minimums are lifted by the suites themselves
SUITES: dict[str, Suite] = {
    "delta_q_characterization": lambda c: verify_delta_q_characterization(c.D, max(50, c.samples // 4), c.seed),
    "mass_identity": lambda c: verify_mass_identity(c.D, c.samples, c.seed),
    "slice_scaling": lambda c: verify_slice_scaling(c.D, c.samples, c.seed),
    "interval_counterexample": lambda c: verify_interval_counterexample(c.D, 0.6, c.seed),
    "flip_isometry": lambda c: verify_flip_isometry(c.samples, c.seed),
    "collapse_plan_optimality": lambda c: verify_collapse_plan_optimality(c.samples, c.seed),
    "mass_holder_bound": lambda c: verify_mass_holder_bound(c.samples, c.seed),
    "slice_minimizer": lambda c: verify_slice_minimizer(20, c.seed),
    "geodesic_slice_characterization": lambda c: verify_geodesic_slice_characterization(max(50, c.samples // 4), c.seed),
    "plane_counterexample": lambda c: verify_plane_counterexample(36, min(c.samples, 200), c.seed),
    "projection_commutes": lambda c: verify_projection_commutes(c.samples, c.seed),
    "solver_oracles": lambda c: verify_solver_oracles(c.samples, c.seed, c.D),
}

GROUPS: dict[str, tuple[str, ...]] = {
    "thm1": ("delta_q_characterization", "interval_counterexample", "flip_isometry"),
    "slices": ("mass_identity", "slice_scaling", "projection_commutes"),
    "duality": ("collapse_plan_optimality", "solver_oracles"),
    "geodesics": ("geodesic_slice_characterization", "mass_holder_bound", "slice_minimizer"),
    "thm2": ("plane_counterexample", "projection_commutes", "slice_minimizer"),
}
GROUPS["all"] = tuple(SUITES)


def run_group(group: str, config: VerifyConfig | None = None) -> AggregateReport:
    """Run the suites of ``group`` deterministically; failures are reported, not raised."""
    config = config or VerifyConfig()
    if group not in GROUPS:
        raise ConfigError(f"unknown suite group {group!r}; choose from {sorted(GROUPS)}")
    names = GROUPS[group]
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            reports = list(pool.map(lambda n: SUITES[n](config), names))
    else:
        reports = [SUITES[n](config) for n in names]
    return AggregateReport(reports, group)


def run_all(config: VerifyConfig | None = None) -> AggregateReport:
    return run_group("all", config)


__all__ = [
    "AggregateReport",
    "Check",
    "SuiteReport",
    "VerifyConfig",
    "SUITES",
    "GROUPS",
    "run_group",
    "run_all",
    "verify_collapse_plan_optimality",
    "verify_delta_q_characterization",
    "verify_flip_isometry",
    "verify_geodesic_slice_characterization",
    "verify_interval_counterexample",
    "verify_mass_holder_bound",
    "verify_mass_identity",
    "verify_plane_counterexample",
    "verify_projection_commutes",
    "verify_slice_minimizer",
    "verify_slice_scaling",
    "verify_solver_oracles",
]
