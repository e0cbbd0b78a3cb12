"""Simple graphs, generalized Petersen graphs, and their edge partition.

The generalized Petersen graph P(n, k) has outer vertices u_1..u_n on a
cycle, inner vertices v_1..v_n, spokes u_i v_i, and inner edges v_i v_{i+k}
(subscripts mod n).  For n = 3k the inner edges split into k disjoint
triangles, which drives the block partition used by the crossing-number
machinery: block i holds inner triangle i plus its three spokes, rim
triple i holds the three outer edges u_j u_{j+1} with j = i, k+i, 2k+i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError

__all__ = [
    "Graph",
    "GPGraph",
    "EdgePartition",
    "build_generalized_petersen",
    "edge_partition",
    "inner_triangle",
    "delete_block",
    "suppress_degree_two",
    "symmetry_generators",
]


class Graph:
    """Immutable simple undirected graph with canonical edge indexing.

    Edges are stored sorted lexicographically as (low, high) pairs; the
    index of an edge is its position in that list, which makes edge ids
    stable across runs and serialization round trips.
    """

    __slots__ = ("vertex_count", "edges", "adjacency", "_edge_index")

    def __init__(self, vertex_count: int, edges) -> None:
        if vertex_count < 0:
            raise InvalidInputError("vertex_count must be nonnegative")
        canon = []
        for a, b in edges:
            if a == b:
                raise InvalidInputError(f"loop at vertex {a}")
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise InvalidInputError(f"edge ({a},{b}) out of range")
            canon.append((a, b) if a < b else (b, a))
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise InvalidInputError(f"parallel edge {canon[i]}")
        self.vertex_count = vertex_count
        self.edges = tuple(canon)
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for a, b in canon:
            adj[a].append(b)
            adj[b].append(a)
        self.adjacency = tuple(tuple(sorted(ns)) for ns in adj)
        self._edge_index = {e: i for i, e in enumerate(canon)}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_id(self, a: int, b: int) -> int:
        """Index of edge {a, b}; raises KeyError if absent."""
        return self._edge_index[(a, b) if a < b else (b, a)]

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self._edge_index

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(ns) for ns in self.adjacency]

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = [False] * self.vertex_count
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.vertex_count

    def relabel(self, perm) -> "Graph":
        """Graph with vertex i renamed to perm[i]."""
        return Graph(self.vertex_count, [(perm[a], perm[b]) for a, b in self.edges])

    def delete_edges(self, edge_ids) -> "Graph":
        drop = set(edge_ids)
        kept = [e for i, e in enumerate(self.edges) if i not in drop]
        return Graph(self.vertex_count, kept)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


class GPGraph(Graph):
    """Generalized Petersen graph P(n, k) with named u_i / v_i vertices.

    Internally u_i is vertex i-1 and v_i is vertex n+i-1 (0-based storage,
    1-based names at the boundary).
    """

    __slots__ = ("n", "k")

    def __init__(self, n: int, k: int) -> None:
        if n < 3 or not (1 <= k < n):
            raise InvalidInputError(f"P({n},{k}) requires n >= 3 and 1 <= k < n")
        if n == 2 * k:
            raise InvalidInputError(f"P({n},{k}) is not simple (inner edges collapse)")
        edges = []
        for i in range(n):
            edges.append((i, (i + 1) % n))          # outer cycle
            edges.append((i, n + i))                # spoke
            edges.append((n + i, n + (i + k) % n))  # inner
        super().__init__(2 * n, edges)
        self.n = n
        self.k = k
        if self.edge_count != 3 * n:
            raise InvalidInputError(f"P({n},{k}) degenerates to {self.edge_count} edges")

    def u(self, i: int) -> int:
        """Internal index of outer vertex u_i (1-based, mod n)."""
        return (i - 1) % self.n

    def v(self, i: int) -> int:
        """Internal index of inner vertex v_i (1-based, mod n)."""
        return self.n + (i - 1) % self.n

    def vertex_name(self, x: int) -> str:
        if x < self.n:
            return f"u{x + 1}"
        return f"v{x - self.n + 1}"

    def names(self) -> dict[str, int]:
        return {self.vertex_name(x): x for x in range(self.vertex_count)}

    def __repr__(self) -> str:
        return f"GPGraph(P({self.n},{self.k}))"


def build_generalized_petersen(n: int, k: int) -> GPGraph:
    """Construct P(n, k); raises InvalidInputError for out-of-range parameters."""
    return GPGraph(n, k)


@dataclass(frozen=True)
class EdgePartition:
    """Edge partition of P(3k, k) into k blocks and k rim triples.

    blocks[i] is the 6-edge set of inner triangle i+1 plus its spokes,
    rim_triples[i] the matching 3 outer edges, block_edges their union
    over all blocks, inner_triangles[i] the triangle's vertex cycle, and
    spans[i] = blocks[i] | rim_triples[i] | blocks[i+1] (cyclic).
    """

    blocks: tuple[frozenset[int], ...]
    rim_triples: tuple[frozenset[int], ...]
    block_edges: frozenset[int]
    inner_triangles: tuple[tuple[int, int, int], ...]
    spans: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def rim_class_of(self, edge_id: int) -> int | None:
        """Index of the rim triple containing edge_id, or None for block edges."""
        for i, h in enumerate(self.rim_triples):
            if edge_id in h:
                return i
        return None


def _require_triangle_family(gp: GPGraph) -> int:
    if gp.n != 3 * gp.k:
        raise InvalidInputError(
            f"edge partition requires the P(3k,k) family, got P({gp.n},{gp.k})"
        )
    return gp.k


def edge_partition(gp: GPGraph) -> EdgePartition:
    """Block / rim-triple partition of E(P(3k,k))."""
    k = _require_triangle_family(gp)
    blocks = []
    rims = []
    triangles = []
    for i in range(1, k + 1):
        a, b, c = gp.v(i), gp.v(k + i), gp.v(2 * k + i)
        block = frozenset(
            {
                gp.edge_id(a, b),
                gp.edge_id(b, c),
                gp.edge_id(c, a),
                gp.edge_id(gp.u(i), a),
                gp.edge_id(gp.u(k + i), b),
                gp.edge_id(gp.u(2 * k + i), c),
            }
        )
        rim = frozenset(
            {
                gp.edge_id(gp.u(i), gp.u(i + 1)),
                gp.edge_id(gp.u(k + i), gp.u(k + i + 1)),
                gp.edge_id(gp.u(2 * k + i), gp.u(2 * k + i + 1)),
            }
        )
        blocks.append(block)
        rims.append(rim)
        triangles.append((a, b, c))
    spans = tuple(
        blocks[i] | rims[i] | blocks[(i + 1) % k] for i in range(k)
    )
    return EdgePartition(
        blocks=tuple(blocks),
        rim_triples=tuple(rims),
        block_edges=frozenset().union(*blocks),
        inner_triangles=tuple(triangles),
        spans=spans,
    )


def inner_triangle(gp: GPGraph, i: int) -> tuple[int, int, int]:
    """Vertex cycle v_i v_{k+i} v_{2k+i} (1 <= i <= k)."""
    k = _require_triangle_family(gp)
    if not 1 <= i <= k:
        raise InvalidInputError(f"triangle index {i} out of range 1..{k}")
    return (gp.v(i), gp.v(k + i), gp.v(2 * k + i))


def delete_block(gp: GPGraph, i: int) -> Graph:
    """P(3k,k) minus the 6 edges of block i (1 <= i <= k).

    After suppress_degree_two the result has the vertex and edge counts of
    P(3(k-1), k-1); for k >= 4 it is isomorphic to it, for k = 3 it is a
    plain graph outside the family.
    """
    k = _require_triangle_family(gp)
    if not 1 <= i <= k:
        raise InvalidInputError(f"block index {i} out of range 1..{k}")
    return gp.delete_edges(edge_partition(gp).blocks[i - 1])


def suppress_degree_two(g: Graph) -> Graph:
    """Smooth out degree-2 vertices and drop isolated ones.

    Each degree-2 vertex is replaced by an edge joining its neighbors;
    repeats until no degree-2 or degree-0 vertices remain.  Raises if a
    suppression would create a loop or a parallel edge, since the result
    would leave the simple-graph domain.
    """
    edges = {frozenset(e) for e in g.edges}
    alive = set(range(g.vertex_count))
    changed = True
    while changed:
        changed = False
        deg: dict[int, list[frozenset]] = {v: [] for v in alive}
        for e in edges:
            for v in e:
                deg[v].append(e)
        # One mutation per pass keeps the degree table consistent.
        for v in sorted(alive):
            incident = deg[v]
            if len(incident) == 0:
                alive.remove(v)
                changed = True
                break
            if len(incident) == 2:
                (a,) = incident[0] - {v}
                (b,) = incident[1] - {v}
                if a == b:
                    raise InvalidInputError(f"suppressing {v} would create a loop")
                new_edge = frozenset({a, b})
                if new_edge in edges:
                    raise InvalidInputError(
                        f"suppressing {v} would create a parallel edge {sorted(new_edge)}"
                    )
                edges.remove(incident[0])
                edges.remove(incident[1])
                edges.add(new_edge)
                alive.remove(v)
                changed = True
                break
    remap = {v: i for i, v in enumerate(sorted(alive))}
    return Graph(len(alive), [tuple(sorted(remap[x] for x in e)) for e in edges])


def _is_automorphism(g: Graph, perm) -> bool:
    return all(g.has_edge(perm[a], perm[b]) for a, b in g.edges)


def symmetry_generators(gp: GPGraph) -> list[tuple[int, ...]]:
    """Rotation and reflection generators of the dihedral symmetry of P(n,k).

    The rotation sends u_i to u_{i+1} and v_i to v_{i+1}; the reflection
    sends u_i to u_{-i} and v_i to v_{-i}.  Both are verified to map the
    edge set onto itself before being returned.
    """
    n = gp.n
    rotation = tuple(
        ((x + 1) % n) if x < n else (n + (x - n + 1) % n)
        for x in range(2 * n)
    )
    reflection = tuple(
        ((-x) % n) if x < n else (n + (-(x - n)) % n)
        for x in range(2 * n)
    )
    gens = [rotation, reflection]
    for perm in gens:
        if not _is_automorphism(gp, perm):
            raise AssertionError("symmetry generator is not an automorphism")
    return gens


def generate_group(vertex_count: int, generators) -> list[tuple[int, ...]]:
    """All permutations generated by the given ones (plus the identity).

    Plain closure by composition; intended for the small dihedral groups
    used in symmetry reduction (order at most a few dozen).
    """
    identity = tuple(range(vertex_count))
    group = {identity}
    frontier = [identity]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(vertex_count))
                if q not in group:
                    group.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(group)
