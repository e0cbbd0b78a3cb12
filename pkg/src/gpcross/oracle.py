"""Exhaustive embedding oracle for small graphs.

Independent correctness reference for the backtracking embedder: it
enumerates every rotation system (and every signature assignment on
non-tree edges) outright and face-traces each one, with no search-tree
pruning, so the two implementations share no failure modes.

Three sound reductions keep the enumeration finite at the guarded sizes:

* tree edges are fixed to +1 (always reachable by vertex flips),
* a sphere verdict only needs all-positive signatures, since any scheme
  with a negative cycle is nonorientable and has Euler genus >= 1,
* one vertex of degree >= 3 enumerates only half of its cyclic orders,
  because reversing every rotation at once gives a mirror scheme with
  the same face count.

The inner sweep is JIT-compiled when numba is importable and falls back
to the identical pure-Python loops otherwise.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .embedding import EmbeddingScheme, dart_vertices, euler_genus
from .errors import InvalidInputError
from .graphs import Graph

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        def deco(f):
            return f
        return deco

__all__ = ["brute_force_embed_oracle", "oracle_space_size"]

ORACLE_MAX_VERTICES = 10
ORACLE_MAX_EDGES = 15


@njit(cache=True)
def _sweep_orientable(n, m, rot_flat, rot_offsets, degs, choice_counts, budget, limit):
    """Sweep all-positive-signature rotation systems.

    Returns (status, tested, choices): status 1 = scheme with Euler genus
    <= budget found (choices valid), 0 = space exhausted, -1 = limit hit.
    """
    choices = np.zeros(n, dtype=np.int64)
    qn = np.zeros(2 * m, dtype=np.int64)
    seen = np.zeros(2 * m, dtype=np.int64)
    stamp = 0
    tested = 0
    while True:
        for v in range(n):
            base = rot_offsets[v] + choices[v] * degs[v]
            for j in range(degs[v]):
                d = rot_flat[base + j]
                d2 = rot_flat[base + (j + 1) % degs[v]]
                qn[d] = d2
        stamp += 1
        f = 0
        for d0 in range(2 * m):
            if seen[d0] == stamp:
                continue
            f += 1
            d = d0
            while seen[d] != stamp:
                seen[d] = stamp
                d = qn[d ^ 1]
        tested += 1
        if 2 - n + m - f <= budget:
            return 1, tested, choices
        if limit > 0 and tested >= limit:
            return -1, tested, choices
        v = 0
        while v < n:
            choices[v] += 1
            if choices[v] < choice_counts[v]:
                break
            choices[v] = 0
            v += 1
        if v == n:
            return 0, tested, choices


@njit(cache=True)
def _sweep_signed(n, m, rot_flat, rot_offsets, degs, choice_counts,
                  nontree, budget, limit):
    """Sweep rotation systems x signature assignments on non-tree edges.

    Returns (status, tested, choices, sigbits) with the same status codes
    as _sweep_orientable; sigbits has bit i set when nontree[i] is -1.
    """
    t = len(nontree)
    choices = np.zeros(n, dtype=np.int64)
    qn = np.zeros(2 * m, dtype=np.int64)
    qp = np.zeros(2 * m, dtype=np.int64)
    tw = np.zeros(m, dtype=np.int64)
    seen = np.zeros(4 * m, dtype=np.int64)
    stamp = 0
    tested = 0
    while True:
        for v in range(n):
            base = rot_offsets[v] + choices[v] * degs[v]
            for j in range(degs[v]):
                d = rot_flat[base + j]
                d2 = rot_flat[base + (j + 1) % degs[v]]
                qn[d] = d2
                qp[d2] = d
        for sigbits in range(1 << t):
            for i in range(t):
                tw[nontree[i]] = (sigbits >> i) & 1
            stamp += 1
            orbits = 0
            for fl0 in range(4 * m):
                if seen[fl0] == stamp:
                    continue
                orbits += 1
                fl = fl0
                while seen[fl] != stamp:
                    seen[fl] = stamp
                    d = fl >> 1
                    s2 = (fl & 1) ^ tw[d >> 1]
                    r = d ^ 1
                    d2 = qn[r] if s2 == 0 else qp[r]
                    fl = 2 * d2 + s2
            f = orbits // 2
            tested += 1
            if 2 - n + m - f <= budget:
                return 1, tested, choices, sigbits
            if limit > 0 and tested >= limit:
                return -1, tested, choices, sigbits
        v = 0
        while v < n:
            choices[v] += 1
            if choices[v] < choice_counts[v]:
                break
            choices[v] = 0
            v += 1
        if v == n:
            return 0, tested, choices, 0


def _spanning_tree_edges(g: Graph) -> set[int]:
    seen = [False] * g.vertex_count
    seen[0] = True
    stack = [0]
    tree: set[int] = set()
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                tree.add(g.edge_id(u, w))
                stack.append(w)
    return tree


def _choice_tables(g: Graph):
    """Per-vertex cyclic orders, with one mirror-halved vertex.

    Each cyclic order is anchored at the vertex's smallest dart; vertex
    orders are enumerated as permutations of the remaining darts.
    """
    vert = dart_vertices(g)
    darts_of = [[] for _ in range(g.vertex_count)]
    for d in range(2 * g.edge_count):
        darts_of[vert[d]].append(d)
    mirror_vertex = next(
        (v for v in range(g.vertex_count) if len(darts_of[v]) >= 3), None
    )
    tables: list[list[tuple[int, ...]]] = []
    for v in range(g.vertex_count):
        ds = darts_of[v]
        orders = []
        for p in permutations(ds[1:]):
            if v == mirror_vertex and p > tuple(reversed(p)):
                continue
            orders.append((ds[0],) + p)
        if not orders:
            orders.append(tuple(ds))
        tables.append(orders)
    return tables


def oracle_space_size(g: Graph, budget: int) -> int:
    """Number of schemes the oracle would enumerate for this call."""
    tables = _choice_tables(g)
    total = 1
    for t in tables:
        total *= len(t)
    if budget >= 1:
        total <<= g.edge_count - g.vertex_count + 1
    return total


def brute_force_embed_oracle(
    g: Graph, budget: int, max_schemes: int | None = None
) -> EmbeddingScheme | None:
    """Exhaustive embeddability decision for small connected graphs.

    Returns a scheme of Euler genus <= budget, or None after checking the
    whole space.  Guarded to graphs with at most 10 vertices or at most
    15 edges; max_schemes (if given) aborts over-long sweeps with
    InvalidInputError rather than returning a wrong verdict.
    """
    if budget < 0:
        raise InvalidInputError("budget must be nonnegative")
    if g.vertex_count > ORACLE_MAX_VERTICES and g.edge_count > ORACLE_MAX_EDGES:
        raise InvalidInputError(
            f"oracle guard: need <= {ORACLE_MAX_VERTICES} vertices or "
            f"<= {ORACLE_MAX_EDGES} edges, got {g.vertex_count}/{g.edge_count}"
        )
    if not g.is_connected():
        raise InvalidInputError("oracle requires a connected graph")
    if g.edge_count == 0:
        return EmbeddingScheme(rotations=((),) * g.vertex_count, signatures=())

    tables = _choice_tables(g)
    n, m = g.vertex_count, g.edge_count
    degs = np.array([g.degree(v) for v in range(n)], dtype=np.int64)
    choice_counts = np.array([len(t) for t in tables], dtype=np.int64)
    offsets = np.zeros(n, dtype=np.int64)
    flat: list[int] = []
    for v in range(n):
        offsets[v] = len(flat)
        for order in tables[v]:
            flat.extend(order)
    rot_flat = np.array(flat, dtype=np.int64)
    limit = np.int64(max_schemes if max_schemes is not None else 0)

    if budget == 0:
        status, _tested, choices = _sweep_orientable(
            n, m, rot_flat, offsets, degs, choice_counts, np.int64(0), limit
        )
        sigbits = 0
        nontree_list: list[int] = []
    else:
        tree = _spanning_tree_edges(g)
        nontree_list = [e for e in range(m) if e not in tree]
        nontree = np.array(nontree_list, dtype=np.int64)
        status, _tested, choices, sigbits = _sweep_signed(
            n, m, rot_flat, offsets, degs, choice_counts, nontree,
            np.int64(budget), limit,
        )
    if status == -1:
        raise InvalidInputError("oracle sweep exceeded max_schemes")
    if status == 0:
        return None
    rotations = tuple(tables[v][int(choices[v])] for v in range(n))
    sigs = [1] * m
    for i, e in enumerate(nontree_list):
        if (int(sigbits) >> i) & 1:
            sigs[e] = -1
    scheme = EmbeddingScheme(rotations=rotations, signatures=tuple(sigs))
    # Re-verify with the reference tracer before vouching for the result.
    if euler_genus(g, scheme) > budget:
        raise AssertionError("oracle returned a scheme above budget")
    return scheme
