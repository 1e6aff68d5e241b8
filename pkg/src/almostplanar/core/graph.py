"""Simple undirected graphs on dense vertex ids and the basic minor operations."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when an operation's precondition on its graph arguments fails."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph with vertices ``0..order-1``.

    Adjacency is kept as one integer bitmask per vertex; equality and hashing are
    by labeled structure (use :func:`almostplanar.core.canon.is_isomorphic` for
    structural comparison).
    """

    __slots__ = ("_order", "_adj", "_edges", "_hash")

    def __init__(self, order: int, edges: Iterable[Iterable[int]] = ()) -> None:
        if order < 0:
            raise GraphError(f"negative order {order}")
        adj = [0] * order
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{order - 1}")
            es.add(_norm(u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._order = order
        self._adj = tuple(adj)
        self._edges = frozenset(es)
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        """Build from per-vertex neighbourhood bitmasks (must be symmetric, loop-free)."""
        adj = list(adj)
        n = len(adj)
        edges = []
        for u in range(n):
            m = adj[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    edges.append((u, v))
                m >>= 1
                v += 1
        g = cls(n, edges)
        if g._adj != tuple(adj):
            raise GraphError("adjacency masks are not symmetric or contain loops")
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def size(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    def __len__(self) -> int:
        return self._order

    def vertices(self) -> range:
        return range(self._order)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._order and bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self._order}, {self.sorted_edges()!r})"

    # -- derived graphs --------------------------------------------------

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled in ascending order of the kept vertices."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph(len(keep), ((index[u], index[v]) for u, v in self._edges if u in index and v in index))

    def edge_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Spanning subgraph with the given edges (which must belong to this graph)."""
        es = [_norm(*e) for e in edges]
        for e in es:
            if e not in self._edges:
                raise GraphError(f"{e} is not an edge")
        return Graph(self._order, es)

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self._order, ((perm[u], perm[v]) for u, v in self._edges))

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        return Graph(self._order, list(self._edges) + [tuple(e) for e in edges])

    def add_vertices(self, k: int = 1) -> "Graph":
        return Graph(self._order + k, self._edges)

    def complement(self) -> "Graph":
        return Graph(self._order, (e for e in combinations(range(self._order), 2) if e not in self._edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        n = self._order
        return Graph(n + other.order, list(self._edges) + [(u + n, v + n) for u, v in other.edges])

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, ordered by least vertex."""
        return [list(iter_bits(c)) for c in component_masks(self._adj, (1 << self._order) - 1)]

    def is_connected(self) -> bool:
        return self._order <= 1 or len(component_masks(self._adj, (1 << self._order) - 1)) == 1

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self._order) if not self._adj[v]]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def component_masks(adj: tuple[int, ...] | list[int], alive: int) -> list[int]:
    """Components of the subgraph induced on the vertex bitmask ``alive``."""
    comps = []
    rest = alive
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


# -- minor operations ----------------------------------------------------


def _require_edge(g: Graph, e: Iterable[int]) -> Edge:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"{(u, v)} is not an edge of the graph")
    return _norm(u, v)


def delete_edge(g: Graph, e: Iterable[int]) -> Graph:
    e = _require_edge(g, e)
    return Graph(g.order, g.edges - {e})


def contract_edge(g: Graph, e: Iterable[int]) -> Graph:
    """Merge the endpoints of ``e`` and simplify.

    The merged vertex keeps the smaller id; vertices above the larger endpoint
    shift down by one.
    """
    u, v = _require_edge(g, e)
    return _contract_pair(g, u, v)


def _contract_pair(g: Graph, u: int, v: int) -> Graph:
    # u < v; v is folded into u
    def f(x: int) -> int:
        if x == v:
            return u
        return x - 1 if x > v else x

    edges = set()
    for a, b in g.edges:
        a, b = f(a), f(b)
        if a != b:
            edges.add(_norm(a, b))
    return Graph(g.order - 1, edges)


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.order:
        raise GraphError(f"vertex {v} out of range 0..{g.order - 1}")
    return g.subgraph(x for x in range(g.order) if x != v)


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    drop = set(vs)
    for v in drop:
        if not 0 <= v < g.order:
            raise GraphError(f"vertex {v} out of range 0..{g.order - 1}")
    return g.subgraph(x for x in range(g.order) if x not in drop)


def delete_isolated(g: Graph) -> Graph:
    """The graph with all isolated vertices removed (``G*``)."""
    return g.subgraph(v for v in range(g.order) if g.adj[v])


def subdivide_edge(g: Graph, e: Iterable[int], times: int = 1) -> Graph:
    """Replace edge ``e`` by a path through ``times`` new vertices (appended at the end)."""
    u, v = _require_edge(g, e)
    if times < 0:
        raise GraphError("times must be non-negative")
    if times == 0:
        return g
    n = g.order
    chain = [u] + list(range(n, n + times)) + [v]
    edges = set(g.edges - {(u, v)})
    edges.update(_norm(a, b) for a, b in zip(chain, chain[1:]))
    return Graph(n + times, edges)
