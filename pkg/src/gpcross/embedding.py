"""Rotation systems with edge signatures and face tracing.

An embedding of a connected graph in a closed surface is encoded
combinatorially by a rotation system with signatures: a cyclic order of
darts around every vertex plus a sign in {+1, -1} per edge.  Edge e
contributes darts 2e (at the lower endpoint) and 2e+1 (at the higher);
dart d reverses to d ^ 1.

Faces are boundary walks of the band surface built from vertex disks and
edge bands (a -1 edge is a half-twisted band).  They are traced as orbits
of a successor map on flags, where a flag is a dart together with a side
bit: from (d, s) on edge e, flip the side across a twisted band
(s' = s xor twist(e)), then continue at the head of d with the rotation
successor of the reverse dart when s' = 0, or its predecessor when
s' = 1.  Every face is covered by exactly two mirror orbits, one per
traversal direction, so the face count is half the orbit count and face
degrees sum to twice the edge count.

The Euler genus of the scheme is 2 - n + m - f; 0 is the sphere and 1 the
projective plane.  In a scheme of Euler genus <= 1 a cycle is one-sided
(non-contractible in the projective plane) exactly when its signature
product is -1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .graphs import Graph

__all__ = [
    "SPHERE",
    "PROJECTIVE_PLANE",
    "EmbeddingScheme",
    "FaceCollection",
    "dart_vertices",
    "trace_faces",
    "euler_genus",
    "cycle_one_sided",
    "vertex_flip",
    "is_orientable",
]

SPHERE = 0
PROJECTIVE_PLANE = 1


@dataclass(frozen=True)
class EmbeddingScheme:
    """Per-vertex cyclic dart order plus a +-1 signature per edge."""

    rotations: tuple[tuple[int, ...], ...]
    signatures: tuple[int, ...]

    def rotation_of(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]


@dataclass(frozen=True)
class FaceCollection:
    """Closed dart walks of an embedding, one walk per face."""

    faces: tuple[tuple[int, ...], ...]

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def total_length(self) -> int:
        return sum(len(w) for w in self.faces)


def dart_vertices(g: Graph) -> list[int]:
    """vertex_of[d] for every dart d of g."""
    out = [0] * (2 * g.edge_count)
    for e, (a, b) in enumerate(g.edges):
        out[2 * e] = a
        out[2 * e + 1] = b
    return out


def _validate_scheme(g: Graph, s: EmbeddingScheme) -> None:
    m = g.edge_count
    if len(s.signatures) != m:
        raise InvalidInputError("signature array length != edge count")
    if any(x not in (-1, 1) for x in s.signatures):
        raise InvalidInputError("signatures must be +-1")
    if len(s.rotations) != g.vertex_count:
        raise InvalidInputError("rotation count != vertex count")
    vert = dart_vertices(g)
    seen = [False] * (2 * m)
    for v, rot in enumerate(s.rotations):
        for d in rot:
            if not 0 <= d < 2 * m:
                raise InvalidInputError(f"dart {d} out of range")
            if vert[d] != v:
                raise InvalidInputError(f"dart {d} listed at vertex {v}, lives at {vert[d]}")
            if seen[d]:
                raise InvalidInputError(f"dart {d} appears twice")
            seen[d] = True
    if not all(seen):
        raise InvalidInputError("some dart missing from rotations")


def _rotation_links(g: Graph, s: EmbeddingScheme) -> tuple[list[int], list[int]]:
    """Successor and predecessor arrays of the vertex rotations."""
    m = g.edge_count
    nxt = [0] * (2 * m)
    prv = [0] * (2 * m)
    for rot in s.rotations:
        k = len(rot)
        for i, d in enumerate(rot):
            nxt[d] = rot[(i + 1) % k]
            prv[d] = rot[(i - 1) % k]
    return nxt, prv


def trace_faces(g: Graph, s: EmbeddingScheme) -> FaceCollection:
    """Trace all face walks of the scheme; deterministic output order.

    Walks are reported once per face (mirror traversals are folded), each
    as the dart sequence of one traversal, starting from the smallest
    unvisited flag.
    """
    _validate_scheme(g, s)
    m = g.edge_count
    nxt, prv = _rotation_links(g, s)
    twist = [1 if x < 0 else 0 for x in s.signatures]

    n_flags = 4 * m
    visited = [False] * n_flags
    faces: list[tuple[int, ...]] = []
    for start in range(n_flags):
        if visited[start]:
            continue
        walk: list[int] = []
        orbit: list[int] = []
        flag = start
        while True:
            d, side = flag >> 1, flag & 1
            walk.append(d)
            orbit.append(flag)
            visited[flag] = True
            s2 = side ^ twist[d >> 1]
            r = d ^ 1
            d2 = nxt[r] if s2 == 0 else prv[r]
            flag = (d2 << 1) | s2
            if flag == start:
                break
        # Mark the mirror traversal, so each face is reported exactly once.
        for fl in orbit:
            d, side = fl >> 1, fl & 1
            mirror = ((d ^ 1) << 1) | (1 - (side ^ twist[d >> 1]))
            if visited[mirror] and mirror not in orbit:
                raise AssertionError("face tracing internal inconsistency")
            visited[mirror] = True
        faces.append(tuple(walk))
    total = sum(len(w) for w in faces)
    if total != 2 * m:
        raise AssertionError(f"face lengths sum to {total}, expected {2 * m}")
    return FaceCollection(faces=tuple(faces))


def euler_genus(g: Graph, s: EmbeddingScheme) -> int:
    """2 - n + m - f for the scheme; requires a connected graph."""
    if not g.is_connected():
        raise InvalidInputError("Euler genus is defined here for connected graphs only")
    f = trace_faces(g, s).face_count
    return 2 - g.vertex_count + g.edge_count - f


def cycle_one_sided(g: Graph, s: EmbeddingScheme, cycle) -> bool:
    """Whether the vertex cycle has signature product -1 in the scheme.

    For schemes of Euler genus <= 1 this is exactly non-contractibility
    in the projective plane (and always False on the sphere).
    """
    cyc = list(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise InvalidInputError("input is not a simple cycle")
    if euler_genus(g, s) > 1:
        raise InvalidInputError("one-sidedness test requires Euler genus <= 1")
    product = 1
    for i, a in enumerate(cyc):
        b = cyc[(i + 1) % len(cyc)]
        try:
            product *= s.signatures[g.edge_id(a, b)]
        except KeyError:
            raise InvalidInputError(f"({a},{b}) is not an edge") from None
    return product == -1


def vertex_flip(g: Graph, s: EmbeddingScheme, v: int) -> EmbeddingScheme:
    """Reverse the rotation at v and toggle signatures of its edges.

    Flips produce an equivalent embedding: face structure and Euler genus
    are unchanged.
    """
    rotations = list(s.rotations)
    rotations[v] = tuple(reversed(rotations[v]))
    sigs = list(s.signatures)
    for w in g.adjacency[v]:
        e = g.edge_id(v, w)
        sigs[e] = -sigs[e]
    return EmbeddingScheme(rotations=tuple(rotations), signatures=tuple(sigs))


def is_orientable(g: Graph, s: EmbeddingScheme) -> bool:
    """True when every cycle has signature product +1.

    Computed by propagating vertex potentials over a spanning tree and
    checking all non-tree edges, so it does not enumerate cycles.
    """
    if not g.is_connected():
        raise InvalidInputError("orientability check requires a connected graph")
    n = g.vertex_count
    pot = [-1] * n
    if n == 0:
        return True
    pot[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            t = 0 if s.signatures[g.edge_id(u, w)] > 0 else 1
            if pot[w] == -1:
                pot[w] = pot[u] ^ t
                stack.append(w)
    for e, (a, b) in enumerate(g.edges):
        t = 0 if s.signatures[e] > 0 else 1
        if pot[a] ^ pot[b] != t:
            return False
    return True
