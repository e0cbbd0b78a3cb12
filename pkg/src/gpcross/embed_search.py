"""Exact bounded-genus embedding search.

Decides whether a connected graph has an embedding scheme of Euler genus
at most a given budget (0 = sphere, 1 = projective plane) by inserting
edges one at a time into a partial rotation system and tracking the face
structure incrementally.

Key facts driving the search:

* inserting an edge whose endpoints lie on a common face either splits
  that face (genus unchanged) or, with the opposite signature, sews the
  face into one longer walk through a crosscap (genus + 1);
* inserting across two distinct faces merges them (genus + 2);
* an edge to a brand-new vertex never changes the genus, and its
  signature can be fixed to +1 by a vertex flip.

Since every insertion is genus-monotone, a partial scheme already above
budget can be abandoned.  At each node the next edge is chosen
fail-first: the cycle-closing edge with the fewest placement options.
Degree-4 vertices may carry an interleaving constraint (their rotation
must alternate two given edge pairs), which is what planarized crossing
vertices require.
"""

from __future__ import annotations

import time

from .embedding import EmbeddingScheme, dart_vertices, euler_genus
from .errors import InvalidInputError, ResourceExhaustedError
from .graphs import Graph

__all__ = ["embed_decide", "EmbedStats"]

_DEADLINE_CHECK_INTERVAL = 512


class EmbedStats:
    """Mutable counters a caller may pass in to observe search effort."""

    __slots__ = ("nodes",)

    def __init__(self) -> None:
        self.nodes = 0


class _EmbedState:
    """Partial rotation system with incremental face bookkeeping.

    Corners are identified with darts: corner d is the gap following dart
    d in the rotation at its vertex.  face_of[corner] partitions placed
    corners into faces; the face count and placed vertex/edge counts are
    kept in lockstep by apply/undo pairs, so the running Euler genus is
    always 2 - np + mp - f.
    """

    def __init__(self, g: Graph, budget: int, constraints=None) -> None:
        self.g = g
        self.budget = budget
        n, m = g.vertex_count, g.edge_count
        self.n, self.m = n, m
        self.vert = dart_vertices(g)
        self.rot_next = [-1] * (2 * m)
        self.rot_prev = [-1] * (2 * m)
        self.twist = [0] * m
        self.face_of = [-1] * (2 * m)
        self.darts_at: list[list[int]] = [[] for _ in range(n)]
        self.edge_placed = [False] * m
        self.vertex_placed = [False] * n
        self.np = 0
        self.mp = 0
        self.f = 0
        self.next_face_id = 0
        # constraint_pair[d] = dart that must sit opposite d, or -1.
        self.constraint_pair = [-1] * (2 * m)
        self.constrained = [False] * n
        if constraints:
            for v, (pair_a, pair_b) in constraints.items():
                if g.degree(v) != 4:
                    raise InvalidInputError(f"constrained vertex {v} must have degree 4")
                darts = []
                for e1, e2 in (pair_a, pair_b):
                    d1 = self._dart_at(e1, v)
                    d2 = self._dart_at(e2, v)
                    self.constraint_pair[d1] = d2
                    self.constraint_pair[d2] = d1
                    darts.extend((d1, d2))
                if len(set(darts)) != 4:
                    raise InvalidInputError(f"constraint at {v} must name 4 distinct edges")
                self.constrained[v] = True

    def _dart_at(self, e: int, v: int) -> int:
        a, b = self.g.edges[e]
        if v == a:
            return 2 * e
        if v == b:
            return 2 * e + 1
        raise InvalidInputError(f"edge {e} not incident to vertex {v}")

    @property
    def genus(self) -> int:
        return 2 - self.np + self.mp - self.f

    # -- face walking -------------------------------------------------

    def _face_walk(self, start_flag: int):
        """Flags and corners of the face orbit through start_flag."""
        rot_next, rot_prev, twist = self.rot_next, self.rot_prev, self.twist
        flags = []
        corners = []
        fl = start_flag
        while True:
            flags.append(fl)
            d = fl >> 1
            s2 = (fl & 1) ^ twist[d >> 1]
            r = d ^ 1
            if s2 == 0:
                d2 = rot_next[r]
                corners.append(r)
            else:
                d2 = rot_prev[r]
                corners.append(d2)
            fl = (d2 << 1) | s2
            if fl == start_flag:
                return flags, corners

    def _mirror(self, fl: int) -> int:
        d = fl >> 1
        s = fl & 1
        return ((d ^ 1) << 1) | (1 - (s ^ self.twist[d >> 1]))

    # -- mutations ----------------------------------------------------

    def place_first_edge(self, e: int) -> None:
        a, b = self.g.edges[e]
        da, db = 2 * e, 2 * e + 1
        for d, v in ((da, a), (db, b)):
            self.rot_next[d] = d
            self.rot_prev[d] = d
            self.darts_at[v].append(d)
            self.vertex_placed[v] = True
        fid = self.next_face_id
        self.next_face_id += 1
        self.face_of[da] = fid
        self.face_of[db] = fid
        self.edge_placed[e] = True
        self.np, self.mp, self.f = 2, 1, 1

    def _splice_after(self, gap: int, d: int) -> None:
        nxt = self.rot_next[gap]
        self.rot_next[gap] = d
        self.rot_prev[d] = gap
        self.rot_next[d] = nxt
        self.rot_prev[nxt] = d

    def _unsplice(self, gap: int, d: int) -> None:
        nxt = self.rot_next[d]
        self.rot_next[gap] = nxt
        self.rot_prev[nxt] = gap
        self.rot_next[d] = -1
        self.rot_prev[d] = -1

    def extend_to_new_vertex(self, e: int, gap: int):
        """Insert edge e = (placed, new) at the given gap; genus unchanged."""
        a, b = self.g.edges[e]
        if self.vertex_placed[a] and not self.vertex_placed[b]:
            d_old, d_new, v_new = 2 * e, 2 * e + 1, b
        elif self.vertex_placed[b] and not self.vertex_placed[a]:
            d_old, d_new, v_new = 2 * e + 1, 2 * e, a
        else:
            raise InvalidInputError("extend_to_new_vertex needs exactly one placed endpoint")
        self._splice_after(gap, d_old)
        self.rot_next[d_new] = d_new
        self.rot_prev[d_new] = d_new
        self.darts_at[self.vert[d_old]].append(d_old)
        self.darts_at[v_new].append(d_new)
        self.vertex_placed[v_new] = True
        fid = self.face_of[gap]
        self.face_of[d_old] = fid
        self.face_of[d_new] = fid
        self.edge_placed[e] = True
        self.twist[e] = 0
        self.np += 1
        self.mp += 1
        return ("tree", e, gap, d_old, d_new, v_new)

    def close_edge(self, e: int, gap_u: int, gap_v: int, tw: int):
        """Insert edge e between two placed corners with the given twist.

        Returns an undo token, or None (state untouched) when the
        insertion would push the Euler genus over budget.
        """
        a, b = self.g.edges[e]
        du, dv = 2 * e, 2 * e + 1
        if self.vert[gap_u] != a:
            gap_u, gap_v = gap_v, gap_u
        fid_u = self.face_of[gap_u]
        fid_v = self.face_of[gap_v]
        consumed = 1 if fid_u == fid_v else 2
        self._splice_after(gap_u, du)
        self._splice_after(gap_v, dv)
        self.twist[e] = tw
        flags1, corners1 = self._face_walk(du << 1)
        other = (du << 1) | 1
        flagset1 = set(flags1)
        if other in flagset1 or self._mirror(other) in flagset1:
            walks = [corners1]
        else:
            _flags2, corners2 = self._face_walk(other)
            walks = [corners1, corners2]
        new_f = self.f - consumed + len(walks)
        if 2 - self.np + (self.mp + 1) - new_f > self.budget:
            self._unsplice(gap_v, dv)
            self._unsplice(gap_u, du)
            self.twist[e] = 0
            return None
        changes = []
        for corners in walks:
            fid = self.next_face_id
            self.next_face_id += 1
            for c in corners:
                changes.append((c, self.face_of[c]))
                self.face_of[c] = fid
        self.darts_at[a].append(du)
        self.darts_at[b].append(dv)
        self.edge_placed[e] = True
        old_f = self.f
        self.f = new_f
        self.mp += 1
        return ("close", e, gap_u, gap_v, du, dv, changes, old_f)

    def undo(self, token) -> None:
        if token[0] == "tree":
            _, e, gap, d_old, d_new, v_new = token
            self.face_of[d_old] = -1
            self.face_of[d_new] = -1
            self.darts_at[v_new].pop()
            self.darts_at[self.vert[d_old]].pop()
            self.vertex_placed[v_new] = False
            self.rot_next[d_new] = -1
            self.rot_prev[d_new] = -1
            self._unsplice(gap, d_old)
            self.edge_placed[e] = False
            self.np -= 1
            self.mp -= 1
        else:
            _, e, gap_u, gap_v, du, dv, changes, old_f = token
            for c, old in reversed(changes):
                self.face_of[c] = old
            a, b = self.g.edges[e]
            self.darts_at[b].pop()
            self.darts_at[a].pop()
            self._unsplice(gap_v, dv)
            self._unsplice(gap_u, du)
            self.twist[e] = 0
            self.edge_placed[e] = False
            self.f = old_f
            self.mp -= 1

    # -- queries ------------------------------------------------------

    def allowed_gaps(self, v: int, d_new: int) -> list[int]:
        """Gaps at placed vertex v where dart d_new may be inserted.

        For a constrained vertex placing its fourth dart, only gaps that
        leave d_new opposite its partner survive.
        """
        gaps = self.darts_at[v]
        if not self.constrained[v] or len(gaps) < 3:
            return list(gaps)
        partner = self.constraint_pair[d_new]
        out = []
        for gap in gaps:
            if gap != partner and self.rot_next[gap] != partner:
                out.append(gap)
        return out

    def rotation_scheme(self) -> EmbeddingScheme:
        rotations = []
        for v in range(self.n):
            if not self.darts_at[v]:
                rotations.append(())
                continue
            start = self.darts_at[v][0]
            rot = [start]
            d = self.rot_next[start]
            while d != start:
                rot.append(d)
                d = self.rot_next[d]
            rotations.append(tuple(rot))
        sigs = tuple(1 if t == 0 else -1 for t in self.twist)
        return EmbeddingScheme(rotations=tuple(rotations), signatures=sigs)


class _Searcher:
    def __init__(self, g: Graph, budget: int, constraints, deadline, stats) -> None:
        self.state = _EmbedState(g, budget, constraints)
        self.g = g
        self.budget = budget
        self.deadline = deadline
        self.stats = stats if stats is not None else EmbedStats()
        self.ticker = 0

    # Candidate edges: closing edges have both endpoints placed, frontier
    # edges exactly one.  Returns (closing, frontier).
    def _candidates(self):
        st = self.state
        closing = []
        frontier = []
        for e, (a, b) in enumerate(self.g.edges):
            if st.edge_placed[e]:
                continue
            pa, pb = st.vertex_placed[a], st.vertex_placed[b]
            if pa and pb:
                closing.append(e)
            elif pa or pb:
                frontier.append(e)
        return closing, frontier

    def _closing_options(self, e: int):
        """Same-face gap pairs for edge e, or None if e is stuck."""
        st = self.state
        a, b = self.g.edges[e]
        gaps_a = st.allowed_gaps(a, 2 * e)
        gaps_b = st.allowed_gaps(b, 2 * e + 1)
        face_of = st.face_of
        pairs = [
            (ga, gb)
            for ga in gaps_a
            for gb in gaps_b
            if face_of[ga] == face_of[gb]
        ]
        if not pairs and st.genus + 2 > self.budget:
            return None
        if st.genus + 2 <= self.budget:
            # Higher budgets admit cross-face merges as well.
            pairs = [(ga, gb) for ga in gaps_a for gb in gaps_b]
        return pairs

    def _tick(self) -> None:
        self.ticker += 1
        if self.deadline is not None and self.ticker % _DEADLINE_CHECK_INTERVAL == 0:
            if time.monotonic() > self.deadline:
                raise ResourceExhaustedError("embedding search hit its time budget")

    def run(self) -> EmbeddingScheme | None:
        g = self.g
        if g.edge_count == 0:
            return EmbeddingScheme(rotations=((),) * g.vertex_count, signatures=())
        root = max(range(g.vertex_count), key=lambda v: (g.degree(v), -v))
        first = g.edge_id(root, g.adjacency[root][0])
        self.state.place_first_edge(first)
        return self._search()

    def _search(self) -> EmbeddingScheme | None:
        self._tick()
        self.stats.nodes += 1
        st = self.state
        closing, frontier = self._candidates()
        if not closing and not frontier:
            scheme = st.rotation_scheme()
            if all(s == 1 for s in scheme.signatures):
                assert st.genus % 2 == 0, "orientable scheme with odd genus"
            return scheme

        if closing:
            best_e, best_pairs = None, None
            for e in closing:
                pairs = self._closing_options(e)
                if pairs is None:
                    return None
                if best_pairs is None or len(pairs) < len(best_pairs):
                    best_e, best_pairs = e, pairs
                    if not pairs:
                        break
            if not best_pairs:
                return None
            for ga, gb in best_pairs:
                for tw in (0, 1):
                    token = st.close_edge(best_e, ga, gb, tw)
                    if token is None:
                        continue
                    found = self._search()
                    if found is not None:
                        return found
                    st.undo(token)
            return None

        # No cycle to close: extend to the new vertex with the most placed
        # neighbors (ties to higher degree, then lower index), so closing
        # edges appear as soon as possible.
        def frontier_key(e):
            a, b = self.g.edges[e]
            w = b if st.vertex_placed[a] else a
            placed_n = sum(1 for x in self.g.adjacency[w] if st.vertex_placed[x])
            return (-placed_n, -self.g.degree(w), w, e)

        e = min(frontier, key=frontier_key)
        a, b = self.g.edges[e]
        anchor = a if st.vertex_placed[a] else b
        d_old = 2 * e if anchor == a else 2 * e + 1
        for gap in st.allowed_gaps(anchor, d_old):
            token = st.extend_to_new_vertex(e, gap)
            found = self._search()
            if found is not None:
                return found
            st.undo(token)
        return None


def embed_decide(
    g: Graph,
    budget: int,
    constraints=None,
    time_budget: float | None = None,
    stats: EmbedStats | None = None,
) -> EmbeddingScheme | None:
    """Find an embedding scheme of Euler genus <= budget, or prove none exists.

    constraints maps a degree-4 vertex to a pair of edge-id pairs whose
    darts must alternate in its rotation.  time_budget (seconds) turns a
    long search into ResourceExhaustedError; the default is unlimited.
    Exact: returns None only after exhausting the search space.
    """
    if budget < 0:
        raise InvalidInputError("budget must be nonnegative")
    if not g.is_connected():
        raise InvalidInputError("embed_decide requires a connected graph")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    searcher = _Searcher(g, budget, constraints, deadline, stats)
    scheme = searcher.run()
    if scheme is not None:
        if euler_genus(g, scheme) > budget:
            raise AssertionError("search returned a scheme above budget")
        if constraints:
            _check_alternation(g, scheme, constraints)
    return scheme


def _check_alternation(g: Graph, scheme: EmbeddingScheme, constraints) -> None:
    for v, (pair_a, pair_b) in constraints.items():
        rot = scheme.rotations[v]
        labels = []
        for d in rot:
            e = d >> 1
            if e in pair_a:
                labels.append("a")
            elif e in pair_b:
                labels.append("b")
            else:
                raise AssertionError(f"unexpected edge {e} at constrained vertex {v}")
        if labels not in (["a", "b", "a", "b"], ["b", "a", "b", "a"]):
            raise AssertionError(f"rotation at {v} does not alternate")
