"""Exact discrete optimal transport."""

from .core import (
    Coupling,
    CouplingVerdict,
    OTResult,
    check_coupling,
    cost_matrix,
    solve_exact,
    w1_interval_closed_form,
    wasserstein,
)
from .duality import (
    MINUS_INF,
    PLUS_INF,
    CertificateVerdict,
    DualPotentials,
    Infinite,
    check_dual_certificate,
    kr_lower_bound,
)
from .oracle import brute_force_oracle, unit_expansion
from .simplex import transport_simplex

__all__ = [
    "Coupling",
    "CouplingVerdict",
    "OTResult",
    "check_coupling",
    "cost_matrix",
    "solve_exact",
    "w1_interval_closed_form",
    "wasserstein",
    "MINUS_INF",
    "PLUS_INF",
    "CertificateVerdict",
    "DualPotentials",
    "Infinite",
    "check_dual_certificate",
    "kr_lower_bound",
    "brute_force_oracle",
    "unit_expansion",
    "transport_simplex",
]
