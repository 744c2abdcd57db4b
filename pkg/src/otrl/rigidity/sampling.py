"""Seeded random measure generators used by the verification suites."""

from __future__ import annotations

import zlib

import numpy as np

from ..ground import GroundSpace, Q
from ..measures import DiscreteMeasure, make_measure, recompose

GRID = 32


def suite_rng(seed: int, name: str) -> np.random.Generator:
    # string hash is salted per process; crc32 keeps streams reproducible
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, zlib.crc32(name.encode())])


def dyadic_weights(rng: np.random.Generator, k: int, bits: int = 10) -> list[float]:
    """``k`` positive weights that are multiples of ``2**-bits`` and sum to exactly 1."""
    scale = 2**bits
    cuts = np.sort(rng.choice(np.arange(1, scale), size=k - 1, replace=False)) if k > 1 else []
    edges = [0, *[int(c) for c in cuts], scale]
    return [(b - a) / scale for a, b in zip(edges, edges[1:])]


def rational_weights(rng: np.random.Generator, k: int, N: int) -> list[float]:
    """``k`` weights that are positive multiples of ``1/N`` (needs ``k <= N``)."""
    cuts = np.sort(rng.choice(np.arange(1, N), size=k - 1, replace=False)) if k > 1 else []
    edges = [0, *[int(c) for c in cuts], N]
    return [(b - a) / N for a, b in zip(edges, edges[1:])]


def random_weights(rng: np.random.Generator, k: int) -> list[float]:
    w = rng.dirichlet(np.ones(k))
    w = np.maximum(w, 1e-3)
    return list(w / w.sum())


def base_points(rng: np.random.Generator, space: GroundSpace, k: int, *, dyadic: bool = False,
                radius: float = 3.0) -> list:
    if space.is_interval:
        if dyadic:
            return [float(x) / 1024 for x in rng.choice(1025, size=k, replace=False)]
        return [float(x) for x in rng.random(k)]
    if dyadic:
        pts = rng.integers(-4 * GRID, 4 * GRID + 1, size=(k, 2)) / GRID
        return [(float(a), float(b)) for a, b in pts]
    pts = rng.uniform(-radius, radius, size=(k, 2))
    return [(float(a), float(b)) for a, b in pts]


def random_base_measure(rng: np.random.Generator, space: GroundSpace, max_atoms: int = 5, *,
                        dyadic: bool = False, radius: float = 3.0) -> DiscreteMeasure:
    """Random measure on the base of ``space`` (no mass at ``q``)."""
    base = space.base
    k = int(rng.integers(1, max_atoms + 1))
    pts = base_points(rng, base, k, dyadic=dyadic, radius=radius)
    w = dyadic_weights(rng, k) if dyadic else random_weights(rng, k)
    return make_measure(base, list(zip(pts, w)))


def random_measure(rng: np.random.Generator, space: GroundSpace, max_atoms: int = 5, *,
                   q_prob: float = 0.7, radius: float = 3.0) -> DiscreteMeasure:
    """Random measure on ``space``; when it has ``q``, a random share sits there."""
    rest = random_base_measure(rng, space, max_atoms, radius=radius)
    if not space.has_q:
        return rest
    roll = rng.random()
    if roll < 0.05:
        return make_measure(space, [(Q, 1.0)])
    if roll > q_prob:
        return make_measure(space, rest.atoms)
    t = float(rng.uniform(0.05, 0.95))
    return recompose(space, t, rest)


def random_rational_measure(rng: np.random.Generator, space: GroundSpace, N: int,
                            max_atoms: int = 4) -> DiscreteMeasure:
    """Weights in multiples of ``1/N``; the ``q`` point is one candidate atom."""
    k = int(rng.integers(1, min(max_atoms, N) + 1))
    w = rational_weights(rng, k, N)
    pts = base_points(rng, space.base, k)
    if space.has_q and rng.random() < 0.6:
        pts[0] = Q
    return make_measure(space, list(zip(pts, w)))
