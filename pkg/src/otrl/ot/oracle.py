"""Brute-force reference for :func:`otrl.ot.solve_exact`.

Each measure whose weights are multiples of ``1/N`` is split into ``N`` unit
atoms of mass ``1/N``. Since the transport polytope between two uniform
measures of equal size has permutation matrices as vertices, the optimal cost
is the best assignment between the unit atoms. Tiny instances enumerate every
permutation; larger ones fall back to the Hungarian method.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import InstanceTooLargeError, NotRationalError, OTRLError
from ..measures import DiscreteMeasure, same_space

RATIONAL_TOL = 1e-9
MAX_UNITS = 400
PERMUTATION_LIMIT = 10


def unit_expansion(mu: DiscreteMeasure, N: int) -> list:
    """Atom points of ``mu`` repeated ``N * weight`` times."""
    out = []
    for p, w in mu.atoms:
        k = w * N
        r = round(k)
        if abs(k - r) > RATIONAL_TOL or r < 1:
            raise NotRationalError(f"weight {w!r} is not a positive multiple of 1/{N}")
        out.extend([p] * r)
    if len(out) != N:
        raise NotRationalError(f"weights do not add up to {N}/{N}")
    return out


def brute_force_oracle(mu: DiscreteMeasure, nu: DiscreteMeasure, p: float, N: int) -> float:
    """Wasserstein distance of order ``p`` through the unit-mass assignment problem."""
    if p < 1:
        raise OTRLError(f"p must be >= 1, got {p!r}")
    if N < 1:
        raise OTRLError("denominator must be positive")
    if N > MAX_UNITS:
        raise InstanceTooLargeError(f"N={N} exceeds {MAX_UNITS} unit atoms")
    space = same_space(mu, nu)
    xs = unit_expansion(mu, N)
    ys = unit_expansion(nu, N)
    C = np.array([[space.cost(x, y, p) for y in ys] for x in xs])
    if N * max(len(mu), len(nu)) <= PERMUTATION_LIMIT and N <= 8:
        best = min(
            math.fsum(C[i, s] for i, s in enumerate(perm))
            for perm in itertools.permutations(range(N))
        )
    else:
        rows, cols = linear_sum_assignment(C)
        best = math.fsum(C[rows, cols])
    cost = best / N
    return cost if p == 1 else cost ** (1.0 / p)
