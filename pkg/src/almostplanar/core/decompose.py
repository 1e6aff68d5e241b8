"""Degree-2 suppression (topological cores) and the two 3-separation completions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .connectivity import Separation
from .graph import Graph, GraphError, _norm


class SuppressionError(GraphError):
    """The graph is not a subdivision of a simple graph of minimum degree three."""


class CycleInputError(SuppressionError):
    pass


class DegreeOneError(SuppressionError):
    def __init__(self, vertex: int) -> None:
        super().__init__(f"vertex {vertex} has degree below 2")
        self.vertex = vertex


class ParallelEdgeError(SuppressionError):
    def __init__(self, vertex: int, ends: tuple[int, int]) -> None:
        super().__init__(f"suppressing through vertex {vertex} would create a loop or parallel edge at {ends}")
        self.vertex = vertex
        self.ends = ends


@dataclass(frozen=True)
class TopologicalCore:
    """``core`` plus the degree-2 paths of the input realising each core edge.

    ``branch[i]`` is the input vertex that became core vertex ``i``;
    ``path_map[(i, j)]`` (``i < j``) lists the suppressed input vertices in order
    from ``branch[i]`` to ``branch[j]``.
    """

    core: Graph
    branch: tuple[int, ...]
    path_map: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def subdivided_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, p in self.path_map.items() if p)

    def expand(self) -> Graph:
        """Re-subdivide the core along ``path_map`` (new vertices appended in path order)."""
        g = self.core
        n = g.order
        edges = []
        for u, v in g.sorted_edges():
            k = len(self.path_map.get((u, v), ()))
            chain = [u] + list(range(n, n + k)) + [v]
            n += k
            edges.extend(zip(chain, chain[1:]))
        return Graph(n, edges)


def suppress_degree2(g: Graph) -> TopologicalCore:
    """Replace every maximal path through degree-2 vertices by a single edge."""
    if not g.is_connected():
        raise GraphError("suppression needs a connected graph")
    degs = g.degrees()
    for v, d in enumerate(degs):
        if d < 2:
            raise DegreeOneError(v)
    branch = [v for v in range(g.order) if degs[v] >= 3]
    if not branch:
        raise CycleInputError("the graph is a cycle; it has no branch vertices")
    index = {v: i for i, v in enumerate(branch)}
    path_map: dict[tuple[int, int], tuple[int, ...]] = {}
    used = set()
    for b in branch:
        for w in g.neighbors(b):
            if (b, w) in used:
                continue
            prev, cur = b, w
            inner = []
            while degs[cur] == 2:
                inner.append(cur)
                a, c = g.neighbors(cur)
                prev, cur = cur, (c if a == prev else a)
            used.add((b, w))
            used.add((cur, prev))
            i, j = index[b], index[cur]
            if i == j:
                raise ParallelEdgeError(inner[0] if inner else b, (b, cur))
            key = _norm(i, j)
            if key in path_map:
                blocker = inner[0] if inner else (path_map[key][0] if path_map[key] else b)
                raise ParallelEdgeError(blocker, (b, cur))
            path_map[key] = tuple(inner) if i < j else tuple(reversed(inner))
    core = Graph(len(branch), path_map.keys())
    return TopologicalCore(core, tuple(branch), path_map)


def _complete_side(g: Graph, sep: Separation, side: str) -> tuple[list[int], list[tuple[int, int]]]:
    if sep.order != 3:
        raise GraphError(f"expected a 3-separation, got order {sep.order}")
    verts = sorted(sep.side(side))
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return verts, edges + [(index[u], index[v]) for u, v in combinations(sorted(sep.boundary), 2)]


def g_delta(g: Graph, sep: Separation, side: str) -> Graph:
    """The chosen side with its three boundary vertices made pairwise adjacent.

    Vertices are relabelled in ascending order of their ids in ``g``.
    """
    verts, edges = _complete_side(g, sep, side)
    return Graph(len(verts), edges)


def g_y(g: Graph, sep: Separation, side: str) -> Graph:
    """The chosen side plus one new vertex (the last id) joined to the boundary."""
    if sep.order != 3:
        raise GraphError(f"expected a 3-separation, got order {sep.order}")
    verts = sorted(sep.side(side))
    index = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    edges += [(index[b], k) for b in sep.boundary]
    return Graph(k + 1, edges)
