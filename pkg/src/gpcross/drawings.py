"""Combinatorial drawings: crossing configurations and planarizations.

A drawing of a graph in a surface is represented by the set of its edge
crossings (unordered pairs of edge indices, plus the order of crossings
along any edge that carries more than one) together with an embedding
scheme of the planarized graph, in which every crossing has become a
degree-4 vertex whose rotation alternates the two edges' strands.  This
captures everything that matters for crossing numbers; no coordinates
are ever involved.

Valid configurations obey the good-drawing rules: no edge crosses
itself, no two crossings share the same edge pair, and adjacent edges
never cross.

The counting helpers implement the crossing bookkeeping used throughout
the toolkit: crossings_between(A, B) counts crossings with one edge in A
and the other in B, and rim_charge gives a rim triple its internal
crossings plus half of its crossings with other rim triples, so that in
a drawing whose block edges are clean the charges sum exactly to the
total crossing number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .embed_search import embed_decide
from .embedding import EmbeddingScheme, cycle_one_sided, euler_genus
from .errors import InvalidInputError
from .graphs import EdgePartition, Graph

__all__ = [
    "HalfInteger",
    "CrossingConfig",
    "Violation",
    "Planarization",
    "Drawing",
    "validate_config",
    "planarize",
    "recover_from_planarization",
    "realize_drawing",
    "crossings_between",
    "is_clean",
    "is_block_clean",
    "rim_charge",
    "charge_identity_holds",
    "one_sided_triangles",
]


@dataclass(frozen=True)
class HalfInteger:
    """Exact multiple of 1/2, stored as twice its value."""

    doubled: int

    def __add__(self, other: "HalfInteger") -> "HalfInteger":
        return HalfInteger(self.doubled + other.doubled)

    def _other_doubled(self, other) -> int:
        if isinstance(other, HalfInteger):
            return other.doubled
        if isinstance(other, int):
            return 2 * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        d = self._other_doubled(other)
        return NotImplemented if d is NotImplemented else self.doubled == d

    def __hash__(self) -> int:
        return hash(("HalfInteger", self.doubled))

    def __lt__(self, other) -> bool:
        d = self._other_doubled(other)
        return NotImplemented if d is NotImplemented else self.doubled < d

    def __le__(self, other) -> bool:
        d = self._other_doubled(other)
        return NotImplemented if d is NotImplemented else self.doubled <= d

    def __ge__(self, other) -> bool:
        d = self._other_doubled(other)
        return NotImplemented if d is NotImplemented else self.doubled >= d

    def __gt__(self, other) -> bool:
        d = self._other_doubled(other)
        return NotImplemented if d is NotImplemented else self.doubled > d

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInteger({self.doubled})"


class CrossingConfig:
    """Set of pairwise edge crossings with per-edge crossing order.

    crossings is a tuple of (e, f) pairs with e < f; edge_order maps each
    edge crossed at least twice to the tuple of crossing indices in their
    order along the edge, read from the lower-indexed endpoint.  Missing
    orders default to appearance order in the crossing list.
    """

    __slots__ = ("crossings", "edge_order")

    def __init__(self, crossings, edge_order=None) -> None:
        canon = tuple(tuple(sorted(p)) for p in crossings)
        self.crossings = canon
        given = dict(edge_order or {})
        per_edge: dict[int, list[int]] = {}
        for i, (e, f) in enumerate(canon):
            per_edge.setdefault(e, []).append(i)
            per_edge.setdefault(f, []).append(i)
        order: dict[int, tuple[int, ...]] = {}
        for e, hits in per_edge.items():
            if len(hits) >= 2:
                order[e] = tuple(given.get(e, hits))
        for e in given:
            if e not in order:
                order[e] = tuple(given[e])
        self.edge_order = order

    def crossing_count(self) -> int:
        return len(self.crossings)

    def edges_crossed(self) -> set[int]:
        out: set[int] = set()
        for e, f in self.crossings:
            out.add(e)
            out.add(f)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrossingConfig)
            and self.crossings == other.crossings
            and self.edge_order == other.edge_order
        )

    def __hash__(self) -> int:
        return hash((self.crossings, tuple(sorted(self.edge_order.items()))))

    def __repr__(self) -> str:
        return f"CrossingConfig({list(self.crossings)})"


@dataclass(frozen=True)
class Violation:
    """One broken good-drawing rule, with the offending data."""

    rule: str
    detail: tuple

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


def validate_config(g: Graph, config: CrossingConfig) -> list[Violation]:
    """All good-drawing violations of the configuration (empty = valid)."""
    out: list[Violation] = []
    m = g.edge_count
    seen_pairs: set[tuple[int, int]] = set()
    per_edge: dict[int, list[int]] = {}
    for i, (e, f) in enumerate(config.crossings):
        if not (0 <= e < m and 0 <= f < m):
            out.append(Violation("edge index out of range", (e, f)))
            continue
        if e == f:
            out.append(Violation("edge paired with itself", (e, f)))
            continue
        if (e, f) in seen_pairs:
            out.append(Violation("pair multiplicity", (e, f)))
        seen_pairs.add((e, f))
        if set(g.edges[e]) & set(g.edges[f]):
            out.append(Violation("adjacent edges", (e, f)))
        per_edge.setdefault(e, []).append(i)
        per_edge.setdefault(f, []).append(i)
    for e, order in config.edge_order.items():
        hits = per_edge.get(e, [])
        if sorted(order) != sorted(hits):
            out.append(Violation("per-edge order inconsistent", (e, tuple(order))))
    return out


@dataclass(frozen=True)
class Planarization:
    """Planarized graph plus provenance back to the original drawing.

    edge_chains[e] lists the planarized edge ids along original edge e,
    from its lower endpoint; crossing_vertices[i] is the degree-4 vertex
    of crossing i; constraints give, per crossing vertex, the two strand
    edge pairs that must alternate in its rotation.
    """

    graph: Graph
    edge_chains: tuple[tuple[int, ...], ...]
    crossing_vertices: tuple[int, ...]
    constraints: dict[int, tuple[tuple[int, int], tuple[int, int]]] = field(hash=False)


def planarize(g: Graph, config: CrossingConfig) -> Planarization:
    """Replace each crossing by a degree-4 vertex.

    The planarized graph keeps the original vertex ids and appends one
    vertex per crossing, in crossing order; it has n + c vertices and
    m + 2c edges.
    """
    violations = validate_config(g, config)
    if violations:
        raise InvalidInputError(f"invalid crossing configuration: {violations[0]}")
    n = g.vertex_count
    c = len(config.crossings)
    cross_vertex = tuple(n + i for i in range(c))
    stations: list[list[int]] = []
    for e, (a, b) in enumerate(g.edges):
        hits = [i for i, pair in enumerate(config.crossings) if e in pair]
        order = config.edge_order.get(e, tuple(hits))
        stations.append([a] + [cross_vertex[i] for i in order] + [b])
    pairs = []
    for seq in stations:
        for x, y in zip(seq, seq[1:]):
            pairs.append((x, y))
    pgraph = Graph(n + c, pairs)
    chains = tuple(
        tuple(pgraph.edge_id(x, y) for x, y in zip(seq, seq[1:]))
        for seq in stations
    )
    constraints: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    for i, (e, f) in enumerate(config.crossings):
        w = cross_vertex[i]
        strands = []
        for orig in (e, f):
            seq = stations[orig]
            j = seq.index(w)
            strands.append(
                (
                    pgraph.edge_id(seq[j - 1], w),
                    pgraph.edge_id(w, seq[j + 1]),
                )
            )
        constraints[w] = (strands[0], strands[1])
    return Planarization(
        graph=pgraph,
        edge_chains=chains,
        crossing_vertices=cross_vertex,
        constraints=constraints,
    )


def recover_from_planarization(p: Planarization, n: int) -> tuple[Graph, CrossingConfig]:
    """Inverse of planarize: suppress crossing vertices back to (graph, config).

    n is the original vertex count; crossing vertices are the ids >= n.
    """
    cross_index = {w: i for i, w in enumerate(p.crossing_vertices)}
    edges = []
    hits_per_edge: list[list[int]] = []
    for chain in p.edge_chains:
        x, y = p.graph.edges[chain[0]]
        cur = x if x < n else y
        stations = [cur]
        for pe in chain:
            x, y = p.graph.edges[pe]
            cur = y if x == cur else x
            stations.append(cur)
        edges.append((stations[0], stations[-1]))
        hits_per_edge.append([cross_index[w] for w in stations[1:-1]])
    g = Graph(n, edges)
    order: dict[int, list[int]] = {}
    pair_of: dict[int, list[int]] = {}
    for raw_e, hits in enumerate(hits_per_edge):
        eid = g.edge_id(*edges[raw_e])
        if len(hits) >= 2:
            order[eid] = hits
        for i in hits:
            pair_of.setdefault(i, []).append(eid)
    crossings = [tuple(sorted(pair_of[i])) for i in range(len(p.crossing_vertices))]
    return g, CrossingConfig(crossings, order)


@dataclass(frozen=True)
class Drawing:
    """A realized drawing: base graph, crossings, and the embedded planarization."""

    base: Graph
    config: CrossingConfig
    planarization: Planarization
    scheme: EmbeddingScheme
    budget: int

    @property
    def crossing_count(self) -> int:
        return self.config.crossing_count()

    def genus(self) -> int:
        return euler_genus(self.planarization.graph, self.scheme)


def realize_drawing(
    g: Graph,
    config: CrossingConfig,
    budget: int,
    time_budget: float | None = None,
) -> Drawing | None:
    """Embed the planarization with alternating crossing rotations.

    Returns a Drawing bearing the witness scheme, or None when no
    embedding of Euler genus <= budget exists for this configuration.
    Raises ResourceExhaustedError when the time budget runs out first.
    """
    p = planarize(g, config)
    c = config.crossing_count()
    assert p.graph.vertex_count == g.vertex_count + c
    assert p.graph.edge_count == g.edge_count + 2 * c
    scheme = embed_decide(p.graph, budget, p.constraints, time_budget=time_budget)
    if scheme is None:
        return None
    return Drawing(base=g, config=config, planarization=p, scheme=scheme, budget=budget)


def _config_of(d) -> CrossingConfig:
    return d.config if isinstance(d, Drawing) else d


def crossings_between(d, edges_a, edges_b) -> int:
    """Crossings with one edge in edges_a and the other in edges_b.

    A crossing whose two edges both lie in both sets counts once, so
    crossings_between(d, A, A) is the internal crossing count of A.
    """
    config = _config_of(d)
    sa, sb = set(edges_a), set(edges_b)
    total = 0
    for e, f in config.crossings:
        if (e in sa and f in sb) or (f in sa and e in sb):
            total += 1
    return total


def is_clean(d, edges) -> bool:
    """True when no crossing involves an edge of the given set."""
    config = _config_of(d)
    s = set(edges)
    return all(e not in s and f not in s for e, f in config.crossings)


def is_block_clean(d, partition: EdgePartition) -> bool:
    """True when every spoke-and-triangle block edge is clean."""
    return is_clean(d, partition.block_edges)


def rim_charge(d, partition: EdgePartition, i: int) -> HalfInteger:
    """Crossing charge of rim triple i (1-based).

    Internal crossings count in full; crossings with a different rim
    triple count one half, so a crossing shared by two triples splits
    evenly between them.
    """
    k = partition.k
    if not 1 <= i <= k:
        raise InvalidInputError(f"rim index {i} out of range 1..{k}")
    config = _config_of(d)
    h = partition.rim_triples[i - 1]
    internal = crossings_between(config, h, h)
    cross = 0
    for j in range(k):
        if j != i - 1:
            cross += crossings_between(config, h, partition.rim_triples[j])
    return HalfInteger(2 * internal + cross)


def charge_identity_holds(d, partition: EdgePartition) -> bool:
    """Whether rim charges sum exactly to the total crossing number.

    Only defined for drawings whose block edges are clean; calling it on
    anything else is an error rather than a vacuous truth.
    """
    config = _config_of(d)
    if not is_block_clean(config, partition):
        raise InvalidInputError("charge identity requires clean block edges")
    total = HalfInteger(0)
    for i in range(1, partition.k + 1):
        total = total + rim_charge(config, partition, i)
    return total == config.crossing_count()


def one_sided_triangles(d: Drawing, partition: EdgePartition) -> tuple[bool, ...]:
    """One-sidedness of each inner triangle in the realized drawing.

    Requires clean block edges, so every triangle survives the
    planarization unsubdivided and its one-sidedness is the signature
    product along its three edges.
    """
    if not is_block_clean(d.config, partition):
        raise InvalidInputError("triangle profile requires clean block edges")
    out = []
    for tri in partition.inner_triangles:
        out.append(cycle_one_sided(d.planarization.graph, d.scheme, tri))
    return tuple(out)
