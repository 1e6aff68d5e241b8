"""Planarity decisions with checkable certificates.

Positive answers carry a rotation system, negative ones a Kuratowski
subdivision found by edge stripping. The decision engine is the left-right
test from networkx behind a small reduction step and a cache; certificate
checking below never calls it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import networkx as nx

from .core.canon import is_isomorphic
from .core.decompose import SuppressionError, suppress_degree2
from .core.graph import Graph, _norm, complete_bipartite, complete_graph, contract_edge, delete_edge, iter_bits

_K5 = complete_graph(5)
_K33 = complete_bipartite(3, 3)


def _reduce(g: Graph) -> tuple[int, int, list[set[int]]]:
    """Drop degree <= 1 vertices and smooth degree-2 vertices; planarity is unchanged."""
    nbr = [set(iter_bits(a)) for a in g.adj]
    alive = set(range(g.order))
    stack = [v for v in alive if len(nbr[v]) <= 2]
    while stack:
        v = stack.pop()
        if v not in alive or len(nbr[v]) > 2:
            continue
        ns = list(nbr[v])
        alive.discard(v)
        for u in ns:
            nbr[u].discard(v)
        nbr[v] = set()
        if len(ns) == 2:
            a, b = ns
            nbr[a].add(b)
            nbr[b].add(a)
        stack.extend(u for u in ns if len(nbr[u]) <= 2)
    m = sum(len(nbr[v]) for v in alive) // 2
    return len(alive), m, nbr


@lru_cache(maxsize=1 << 20)
def planar(g: Graph) -> bool:
    """Boolean planarity test (cached)."""
    if g.size <= 8 or g.order <= 4:
        return True
    if g.size > 3 * g.order - 6:
        return False
    n, m, nbr = _reduce(g)
    if m <= 8 or n <= 4:
        return True
    if m > 3 * n - 6:
        return False
    h = nx.Graph()
    h.add_edges_from((u, v) for u in range(len(nbr)) for v in nbr[u] if u < v)
    return nx.check_planarity(h, counterexample=False)[0]


@dataclass(frozen=True)
class Kuratowski:
    tag: str  # "K5" or "K33"
    edges: tuple[tuple[int, int], ...]
    branch: tuple[int, ...]


@dataclass(frozen=True)
class PlanarityCertificate:
    planar: bool
    rotation: tuple[tuple[int, ...], ...] | None = None
    kuratowski: Kuratowski | None = None

    def to_json(self) -> dict[str, Any]:
        k = self.kuratowski
        return {
            "verdict": "planar" if self.planar else "nonplanar",
            "rotation": [list(r) for r in self.rotation] if self.rotation is not None else None,
            "kuratowski": None if k is None else {
                "tag": k.tag,
                "edges": [list(e) for e in k.edges],
                "branch": list(k.branch),
            },
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "PlanarityCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        kd = data.get("kuratowski")
        rot = data.get("rotation")
        return cls(
            planar=data["verdict"] == "planar",
            rotation=None if rot is None else tuple(tuple(r) for r in rot),
            kuratowski=None if kd is None else Kuratowski(
                kd["tag"], tuple(tuple(e) for e in kd["edges"]), tuple(kd["branch"])
            ),
        )


def rotation_system(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Clockwise neighbour orders of a planar embedding of ``g``."""
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise ValueError("graph is not planar")
    return tuple(tuple(emb.neighbors_cw_order(v)) if g.adj[v] else () for v in range(g.order))


def kuratowski_subgraph(g: Graph) -> Kuratowski:
    """Strip edges while the remainder stays nonplanar; what is left is a Kuratowski subdivision."""
    if planar(g):
        raise ValueError("graph is planar")
    keep = set(g.edges)
    for e in g.sorted_edges():
        trial = keep - {e}
        if not planar(Graph(g.order, trial)):
            keep = trial
    h = Graph(g.order, keep)
    degs = h.degrees()
    branch = tuple(v for v in range(g.order) if degs[v] >= 3)
    tag = "K5" if len(branch) == 5 else "K33"
    return Kuratowski(tag, tuple(sorted(keep)), branch)


def is_planar(g: Graph) -> tuple[bool, PlanarityCertificate]:
    if planar(g):
        return True, PlanarityCertificate(True, rotation=rotation_system(g))
    return False, PlanarityCertificate(False, kuratowski=kuratowski_subgraph(g))


def certify(g: Graph) -> PlanarityCertificate:
    return is_planar(g)[1]


# -- independent audit ---------------------------------------------------


def count_faces(g: Graph, rotation: tuple[tuple[int, ...], ...]) -> list[tuple[int, int, int]]:
    """Per connected component ``(vertices, edges, faces)`` of the rotation system."""
    succ: dict[int, dict[int, int]] = {}
    for v, rot in enumerate(rotation):
        succ[v] = {rot[i]: rot[(i + 1) % len(rot)] for i in range(len(rot))}
    seen: set[tuple[int, int]] = set()
    face_of_comp: dict[int, int] = {}
    comps = g.components()
    comp_id = {v: i for i, c in enumerate(comps) for v in c}
    for u, v in g.edges:
        for dart in ((u, v), (v, u)):
            if dart in seen:
                continue
            a, b = dart
            while (a, b) not in seen:
                seen.add((a, b))
                a, b = b, succ[b][a]
            c = comp_id[dart[0]]
            face_of_comp[c] = face_of_comp.get(c, 0) + 1
    out = []
    for i, c in enumerate(comps):
        cs = set(c)
        e = sum(1 for x, y in g.edges if x in cs)
        out.append((len(c), e, face_of_comp.get(i, 1)))
    return out


def check_certificate(g: Graph, c: PlanarityCertificate) -> str | None:
    """Return None if ``c`` proves its verdict about ``g``, else a short reason."""
    if c.planar:
        rot = c.rotation
        if rot is None or c.kuratowski is not None:
            return "planar certificate must carry exactly a rotation system"
        if len(rot) != g.order:
            return "rotation system has wrong number of vertices"
        for v, r in enumerate(rot):
            if len(set(r)) != len(r) or set(r) != set(g.neighbors(v)):
                return f"rotation at vertex {v} is not a cyclic order of its neighbours"
        for vs, es, fs in count_faces(g, rot):
            if vs - es + fs != 2:
                return f"Euler characteristic {vs - es + fs} != 2 on a component"
        return None
    k = c.kuratowski
    if k is None or c.rotation is not None:
        return "nonplanar certificate must carry exactly a Kuratowski subgraph"
    if k.tag not in ("K5", "K33"):
        return f"unknown Kuratowski tag {k.tag!r}"
    es = [_norm(*e) for e in k.edges]
    if len(set(es)) != len(es):
        return "repeated edge in Kuratowski subgraph"
    if any(e not in g.edges for e in es):
        return "Kuratowski subgraph uses a non-edge"
    h = Graph(g.order, es)
    used = [v for v in range(g.order) if h.adj[v]]
    sub = h.subgraph(used)
    try:
        core = suppress_degree2(sub)
    except (SuppressionError, ValueError):
        return "Kuratowski subgraph is not a subdivision"
    target, deg = (_K5, 4) if k.tag == "K5" else (_K33, 3)
    if not is_isomorphic(core.core, target):
        return f"topological core is not {k.tag}"
    branch = sorted(used[b] for b in core.branch)
    if sorted(k.branch) != branch:
        return "listed branch vertices differ from the subdivision's"
    if any(h.degree(b) != deg for b in branch):
        return f"branch vertices must have degree {deg}"
    return None


def verify_certificate(g: Graph, c: PlanarityCertificate) -> bool:
    return check_certificate(g, c) is None


# -- edge sets -------------------------------------------------------------


def deletion_planar_set(g: Graph) -> frozenset[tuple[int, int]]:
    """Edges whose deletion leaves a planar graph."""
    return frozenset(e for e in g.edges if planar(delete_edge(g, e)))


def contraction_planar_set(g: Graph) -> frozenset[tuple[int, int]]:
    """Edges whose contraction leaves a planar graph."""
    return frozenset(e for e in g.edges if planar(contract_edge(g, e)))
