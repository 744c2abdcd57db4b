"""Exact discrete optimal transport over small ground spaces with an isolated point.

The package computes Wasserstein distances exactly, implements the measure
maps (trivial isometries, the flip of the interval, rotations about the
barycentre, projection onto the full slice) and runs verification suites
for the rigidity of Wasserstein spaces over ``[0, 1] + {q}`` and
``R^2 + {q}``.
"""

from .ground import (
    Q,
    BaseIsometry,
    GroundSpace,
    Identity,
    PlaneRigidMotion,
    ReflectInterval,
    apply_base_isometry,
)
from .measures import (
    DiscreteMeasure,
    SliceDecomposition,
    barycenter,
    cdf,
    collapsed,
    dirac,
    make_measure,
    pushforward,
    q_mixture,
    quantile,
    slice_decompose,
    slice_mass,
)
from .ot import solve_exact, wasserstein

__version__ = "0.1.0"

__all__ = [
    "Q",
    "BaseIsometry",
    "GroundSpace",
    "Identity",
    "PlaneRigidMotion",
    "ReflectInterval",
    "apply_base_isometry",
    "DiscreteMeasure",
    "SliceDecomposition",
    "barycenter",
    "cdf",
    "collapsed",
    "dirac",
    "make_measure",
    "pushforward",
    "q_mixture",
    "quantile",
    "slice_decompose",
    "slice_mass",
    "solve_exact",
    "wasserstein",
]
