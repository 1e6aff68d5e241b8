"""Named graph families, the obstruction graphs, and composition operators."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence, Union

from .core.canon import canonical_form
from .core.graph import Graph, GraphError, _norm, complete_bipartite, complete_graph, contract_edge, delete_edge
from .planarity import planar

Placement = Union[int, str]  # triangle slot 0, 1, 2 or "none"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def wheel(n: int) -> Graph:
    """Rim 0..n-1, hub n."""
    _need(n >= 3, "wheel needs n >= 3")
    rim = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n + 1, rim + [(i, n) for i in range(n)])


def double_wheel(n: int) -> Graph:
    """Rim 0..n-1, adjacent hubs n and n+1."""
    _need(n >= 3, "double wheel needs n >= 3")
    rim = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, h) for i in range(n) for h in (n, n + 1)]
    return Graph(n + 2, rim + spokes + [(n, n + 1)])


def mobius_ladder(n: int) -> Graph:
    """Cycle 0..2n-1 with chords i ~ i+n."""
    _need(n >= 3, "Möbius ladder needs n >= 3")
    m = 2 * n
    return Graph(m, [(i, (i + 1) % m) for i in range(m)] + [(i, i + n) for i in range(n)])


def squared_cycle(n: int) -> Graph:
    _need(n >= 5, "squared cycle needs n >= 5")
    return Graph(n, [(i, (i + d) % n) for i in range(n) for d in (1, 2)])


def alternating_double_wheel(m: int) -> Graph:
    """Rim 0..m-1 (m even); hub m sees the even rim positions, hub m+1 the odd ones."""
    _need(m >= 4 and m % 2 == 0, "alternating double wheel needs an even rim of length >= 4")
    rim = [(i, (i + 1) % m) for i in range(m)]
    spokes = [(i, m + i % 2) for i in range(m)]
    return Graph(m + 2, rim + spokes + [(m, m + 1)])


def line_graph_k33() -> Graph:
    """The 3x3 rook's graph; vertex 3*i + j is the K33 edge from i to j."""
    return Graph(9, [(a, b) for a, b in combinations(range(9), 2) if a // 3 == b // 3 or a % 3 == b % 3])


def cube_plus_v() -> Graph:
    """The 3-cube plus a vertex joined to one colour class (0, 3, 5, 6)."""
    cube = [(a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)]
    even = [a for a in range(8) if bin(a).count("1") % 2 == 0]
    return Graph(9, cube + [(a, 8) for a in even])


# -- class W ----------------------------------------------------------------


@dataclass(frozen=True)
class WheelPart:
    rim: int
    placement: Placement

    def __post_init__(self) -> None:
        if self.rim < 3:
            raise GraphError(f"wheel rim must be at least 3, got {self.rim}")
        if self.placement == "none":
            if self.rim != 3:
                raise GraphError("placement 'none' needs a rim of length 3")
        elif self.placement not in (0, 1, 2):
            raise GraphError(f"placement must be 0, 1, 2 or 'none', got {self.placement!r}")


@dataclass(frozen=True)
class WClassSpec:
    parts: tuple[WheelPart, WheelPart, WheelPart]

    @classmethod
    def of(cls, *parts: tuple[int, Placement]) -> "WClassSpec":
        _need(len(parts) == 3, "a W-class graph has exactly three wheels")
        return cls(tuple(WheelPart(n, p) for n, p in parts))  # type: ignore[arg-type]

    def key(self) -> str:
        return "Wclass:" + ";".join(f"{p.rim},{p.placement}" for p in self.parts)


def w_class_parts(spec: WClassSpec) -> tuple[Graph, tuple[frozenset[int], ...]]:
    """The glued graph and its partition (V0, V1, V2, V3); the common triangle is 0, 1, 2."""
    edges = [(0, 1), (0, 2), (1, 2)]
    nxt = 3
    blocks = [frozenset({0, 1, 2})]
    for part in spec.parts:
        if part.placement == "none":
            hub = nxt
            edges += [(hub, 0), (hub, 1), (hub, 2)]
            blocks.append(frozenset({hub}))
            nxt += 1
            continue
        hub = part.placement
        a, b = [s for s in (0, 1, 2) if s != hub]
        private = list(range(nxt, nxt + part.rim - 2))
        nxt += len(private)
        rim = [a, b] + private
        edges += [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
        edges += [(hub, x) for x in private]
        blocks.append(frozenset(private))
    return Graph(nxt, {_norm(u, v) for u, v in edges}), tuple(blocks)


def w_class(spec: WClassSpec) -> Graph:
    return w_class_parts(spec)[0]


# -- operators --------------------------------------------------------------


def triad_additions(h: Graph) -> list[Graph]:
    """One graph per isomorphism class of h plus a vertex joined to three vertices of h."""
    _need(h.order >= 3, "triad addition needs at least three vertices")
    n = h.order
    seen: dict[bytes, Graph] = {}
    for trio in combinations(range(n), 3):
        g = h.add_vertices(1).add_edges((v, n) for v in trio)
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


def pendant_addition(h: Graph, attach: int = 0) -> Graph:
    """h plus a new vertex (the last id) joined to ``attach``."""
    _need(0 <= attach < h.order, f"attachment vertex {attach} out of range")
    return h.add_vertices(1).add_edges([(attach, h.order)])


def oplus_edge(h: Graph) -> Graph:
    """h plus two new adjacent vertices."""
    return h.disjoint_union(Graph(2, [(0, 1)]))


def add_handle(h: Graph, v: int, a: int, b: int) -> Graph:
    """Subdivide edges va and vb and join the two new vertices (the new edge is the last pair)."""
    _need(h.has_edge(v, a) and h.has_edge(v, b) and a != b, "handle needs two edges at a common vertex")
    n = h.order
    es = set(h.edges) - {_norm(v, a), _norm(v, b)}
    es |= {_norm(v, n), (a, n), _norm(v, n + 1), _norm(b, n + 1), (n, n + 1)}
    return Graph(n + 2, es)


def three_sum(
    g1: Graph,
    t1: Sequence[int],
    g2: Graph,
    t2: Sequence[int],
    keep: Sequence[tuple[int, int]] | None = None,
) -> Graph:
    """Glue g2 onto g1 identifying t2[i] with t1[i].

    The vertices of g1 keep their ids and the other vertices of g2 follow in
    ascending order. ``keep`` lists which of the three identified edges survive,
    as pairs of g1 vertices; None keeps all three.
    """
    for g, t in ((g1, t1), (g2, t2)):
        _need(len(set(t)) == 3 and all(g.has_edge(x, y) for x, y in combinations(t, 2)),
              f"{tuple(t)} is not a triangle")
    tri = {_norm(x, y) for x, y in combinations(t1, 2)}
    kept = tri if keep is None else {_norm(*e) for e in keep}
    _need(kept <= tri, "kept edges must lie on the identified triangle")
    index = dict(zip(t2, t1))
    for v in range(g2.order):
        if v not in index:
            index[v] = g1.order + len([w for w in range(v) if w not in t2])
    es = {e for e in g1.edges if e not in tri}
    es |= {_norm(index[u], index[v]) for u, v in g2.edges}
    es = (es - tri) | kept
    return Graph(g1.order + g2.order - 3, es)


# -- obstructions -------------------------------------------------------------


K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)


def k33_triad_by_sides(same: int) -> Graph:
    """K33 plus a vertex joined to ``same`` vertices of one side and 3 - same of the other."""
    picks = list(range(same)) + list(range(3, 6 - same))
    return K33.add_vertices(1).add_edges((v, 6) for v in picks)


def obstruction_set_F() -> dict[str, Graph]:
    return {
        "EX1": complete_bipartite(3, 4),
        "EX2": K5.add_vertices(1).add_edges([(0, 5), (1, 5), (2, 5)]),
        "EX3": add_handle(K33, 0, 3, 4),
        "EX6": add_handle(K5, 0, 1, 2),
        "EX8": k33_triad_by_sides(2),
    }


def obstruction_set_Fprime() -> dict[str, Graph]:
    return {
        "K5+": pendant_addition(K5),
        "K33+": pendant_addition(K33),
        "K5h": add_handle(K5, 0, 1, 2),
        "K33h": add_handle(K33, 0, 3, 4),
        "K5oe": oplus_edge(K5),
        "K33oe": oplus_edge(K33),
    }


def obstruction_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose deletion and contraction both leave g nonplanar."""
    return [e for e in g.sorted_edges() if not planar(delete_edge(g, e)) and not planar(contract_edge(g, e))]


def validate_obstruction(g: Graph) -> bool:
    """True iff g is nonplanar and not almost-planar."""
    return not planar(g) and bool(obstruction_edges(g))


# -- registry -----------------------------------------------------------------

_FIXED: dict[str, Callable[[], Graph]] = {
    "K5": lambda: K5,
    "K33": lambda: K33,
    "Cube+v": cube_plus_v,
    "LK33": line_graph_k33,
    **{k: (lambda k=k: obstruction_set_F()[k]) for k in ("EX1", "EX2", "EX3", "EX6", "EX8")},
    **{k: (lambda k=k: obstruction_set_Fprime()[k]) for k in ("K5+", "K33+", "K5h", "K33h", "K5oe", "K33oe")},
}
_PARAM: dict[str, Callable[[int], Graph]] = {
    "K": complete_graph,
    "W": wheel,
    "DW": double_wheel,
    "M": mobius_ladder,
    "C2": squared_cycle,
    "AW": alternating_double_wheel,
}
REGISTRY_KEYS = list(_FIXED) + [f"{p}:n" for p in _PARAM] + ["Wclass:n1,p1;n2,p2;n3,p3"]


class RegistryError(KeyError):
    def __str__(self) -> str:
        return f"unknown graph name {self.args[0]!r}; known keys: {', '.join(REGISTRY_KEYS)}"


def parse_wclass(text: str) -> WClassSpec:
    parts = []
    for chunk in text.split(";"):
        n, p = chunk.split(",")
        parts.append((int(n), p.strip() if p.strip() == "none" else int(p)))
    return WClassSpec.of(*parts)


def named_graph(key: str) -> Graph:
    """Build a graph from its registry key, e.g. ``DW:5`` or ``Wclass:4,0;4,1;3,none``."""
    key = key.strip()
    if key in _FIXED:
        return _FIXED[key]()
    m = re.fullmatch(r"(K|W|DW|M|C2|AW):(\d+)", key)
    try:
        if m:
            return _PARAM[m.group(1)](int(m.group(2)))
        if key.startswith("Wclass:"):
            return w_class(parse_wclass(key[len("Wclass:"):]))
    except (GraphError, ValueError) as exc:
        raise RegistryError(key) from exc
    raise RegistryError(key)
