"""Transportation simplex for small dense balanced transport problems.

The basis is kept as a spanning tree on the bipartite graph of rows and
columns (``m + n - 1`` basic cells, degenerate zeros included). Dual
potentials come from the tree, the entering cell is the most negative reduced
cost, and the pivot runs around the unique cycle the entering cell closes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_DEGENERATE_SWITCH = 50


@dataclass
class TransportSolution:
    plan: np.ndarray
    cost: float
    u: np.ndarray  # row potentials
    v: np.ndarray  # column potentials, with u[i] + v[j] <= C[i, j]
    iterations: int


def _initial_basis(a: np.ndarray, b: np.ndarray, C: np.ndarray):
    """Matrix-minimum rule; returns flows dict keyed by basic cell."""
    m, n = C.shape
    ra = a.astype(float).copy()
    rb = b.astype(float).copy()
    rows = set(range(m))
    cols = set(range(n))
    order = sorted(((C[i, j], i, j) for i in range(m) for j in range(n)))
    flows: dict[tuple[int, int], float] = {}
    for _, i, j in order:
        if i not in rows or j not in cols:
            continue
        x = min(ra[i], rb[j])
        flows[(i, j)] = x
        ra[i] -= x
        rb[j] -= x
        if len(rows) == 1 and len(cols) == 1:
            rows.clear()
            cols.clear()
            break
        # retire exactly one line per cell so the basis stays a spanning tree
        if (ra[i] <= rb[j] and len(rows) > 1) or len(cols) == 1:
            rows.discard(i)
            rb[j] += ra[i]
            ra[i] = 0.0
        else:
            cols.discard(j)
            ra[i] += rb[j]
            rb[j] = 0.0
    return flows


def _potentials(m: int, n: int, C: np.ndarray, adj: list[list[int]]):
    # nodes 0..m-1 are rows, m..m+n-1 columns
    u = np.zeros(m)
    v = np.zeros(n)
    seen = [False] * (m + n)
    seen[0] = True
    stack = [0]
    while stack:
        node = stack.pop()
        for nxt in adj[node]:
            if seen[nxt]:
                continue
            seen[nxt] = True
            if node < m:
                v[nxt - m] = C[node, nxt - m] - u[node]
            else:
                u[nxt] = C[nxt, node - m] - v[node - m]
            stack.append(nxt)
    return u, v


def _tree_path(adj: list[list[int]], src: int, dst: int) -> list[int]:
    parent = {src: -1}
    stack = [src]
    while stack:
        node = stack.pop()
        if node == dst:
            break
        for nxt in adj[node]:
            if nxt not in parent:
                parent[nxt] = node
                stack.append(nxt)
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def transport_simplex(a, b, C, *, max_iter: int = 100_000) -> TransportSolution:
    """Minimise ``<P, C>`` over nonnegative ``P`` with row sums ``a`` and column sums ``b``.

    ``a`` and ``b`` must have equal totals (up to rounding). Returns the optimal
    plan together with dual potentials certifying optimality.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    C = np.asarray(C, dtype=float)
    m, n = C.shape
    flows = _initial_basis(a, b, C)

    scale = 1.0 + float(np.max(np.abs(C))) if C.size else 1.0
    tol = 1e-13 * scale
    degenerate_run = 0
    it = 0
    while True:
        adj: list[list[int]] = [[] for _ in range(m + n)]
        for i, j in flows:
            adj[i].append(m + j)
            adj[m + j].append(i)
        u, v = _potentials(m, n, C, adj)
        reduced = C - u[:, None] - v[None, :]
        if degenerate_run < _DEGENERATE_SWITCH:
            k = int(np.argmin(reduced))
            ei, ej = divmod(k, n)
            if reduced[ei, ej] >= -tol:
                break
        else:
            # Bland's rule: first improving cell breaks degenerate cycling
            cand = np.argwhere(reduced < -tol)
            if cand.size == 0:
                break
            ei, ej = (int(x) for x in cand[0])
        it += 1
        if it > max_iter:
            raise RuntimeError("transportation simplex did not converge")

        path = _tree_path(adj, ei, m + ej)
        cells = []
        for s, t in zip(path, path[1:]):
            cells.append((s, t - m) if s < m else (t, s - m))
        minus = cells[0::2]
        plus = cells[1::2]
        theta = min(flows[c] for c in minus)
        leaving = min((c for c in minus if flows[c] == theta))
        degenerate_run = degenerate_run + 1 if theta == 0.0 else 0
        for c in minus:
            flows[c] = max(flows[c] - theta, 0.0)
        for c in plus:
            flows[c] += theta
        del flows[leaving]
        flows[(ei, ej)] = theta

    plan = np.zeros((m, n))
    for (i, j), x in flows.items():
        plan[i, j] = x
    cost = float(np.sum(plan * C))
    return TransportSolution(plan, cost, u, v, it)
