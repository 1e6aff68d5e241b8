"""Minor and topological-minor containment with checkable models.

``has_minor`` searches the contractions of the host. A connected pattern with
``n`` vertices is a minor of a connected host exactly when it is a spanning
subgraph of some quotient of the host by a partition into ``n`` connected
parts, and vertex deletions are never needed (folding an unused vertex into a
neighbouring part only adds edges). Quotients are explored depth first with
canonical-form deduplication and three prunings that are valid for any
pattern with ``m`` edges:

* fewer than ``n`` vertices left;
* fewer than ``m + (N - n)`` edges at ``N`` vertices (every contraction loses an edge);
* a planar quotient when the pattern is nonplanar (minors of planar graphs are planar).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .core.canon import canonical_form, canonical_labeling
from .core.graph import Graph, _norm, iter_bits
from .planarity import planar

MAX_PATTERN_ORDER = 10


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class MinorModel:
    """Branch sets in the host for every pattern vertex, and a host edge for every pattern edge."""

    branch_sets: dict[int, frozenset[int]]
    edge_witness: dict[tuple[int, int], tuple[int, int]]

    def to_json(self) -> dict[str, Any]:
        return {
            "branch_sets": {str(p): sorted(b) for p, b in sorted(self.branch_sets.items())},
            "edge_witness": [
                [[str(a), str(b)], [str(x), str(y)]] for (a, b), (x, y) in sorted(self.edge_witness.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "MinorModel":
        if isinstance(data, str):
            data = json.loads(data)
        bs = {int(k): frozenset(int(x) for x in v) for k, v in data["branch_sets"].items()}
        ew = {}
        for pe, he in data["edge_witness"]:
            ew[_norm(int(pe[0]), int(pe[1]))] = (int(he[0]), int(he[1]))
        return cls(bs, ew)


def check_model(host: Graph, pattern: Graph, m: MinorModel) -> str | None:
    """None when ``m`` is a valid model of ``pattern`` in ``host``, else the first problem found."""
    if set(m.branch_sets) != set(range(pattern.order)):
        return "branch sets must be indexed by exactly the pattern vertices"
    seen: set[int] = set()
    for p in range(pattern.order):
        b = m.branch_sets[p]
        if not b:
            return f"branch set of {p} is empty"
        if any(not 0 <= x < host.order for x in b):
            return f"branch set of {p} leaves the host"
        if seen & b:
            return f"branch set of {p} overlaps another"
        seen |= b
        if not _connected_set(host, b):
            return f"branch set of {p} is not connected"
    if set(m.edge_witness) != set(pattern.edges):
        return "edge witnesses must be indexed by exactly the pattern edges"
    used: set[tuple[int, int]] = set()
    for (a, b), (x, y) in m.edge_witness.items():
        if not host.has_edge(x, y):
            return f"witness {(x, y)} is not a host edge"
        ba, bb = m.branch_sets[a], m.branch_sets[b]
        if not ((x in ba and y in bb) or (x in bb and y in ba)):
            return f"witness {(x, y)} does not join the branch sets of {a} and {b}"
        e = _norm(x, y)
        if e in used:
            return f"witness {(x, y)} is used twice"
        used.add(e)
    return None


def verify_model(host: Graph, pattern: Graph, m: MinorModel) -> bool:
    return check_model(host, pattern, m) is None


def _connected_set(g: Graph, vs: Iterable[int]) -> bool:
    vs = set(vs)
    if not vs:
        return False
    mask = 0
    for v in vs:
        mask |= 1 << v
    start = next(iter(vs))
    comp = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


# -- subgraph embedding ---------------------------------------------------


def _pattern_order(p: Graph) -> list[int]:
    degs = p.degrees()
    order: list[int] = []
    placed = 0
    left = set(range(p.order))
    while left:
        v = max(left, key=lambda x: ((p.adj[x] & placed).bit_count(), degs[x], -x))
        order.append(v)
        placed |= 1 << v
        left.discard(v)
    return order


def _twin_links(p: Graph, order: list[int]) -> list[int]:
    """For each vertex, the previously ordered twin whose image must be smaller, or -1.

    Twins (equal open or equal closed neighbourhoods) can be permuted freely by
    automorphisms, so forcing their images to increase along ``order`` loses no
    solution. A vertex never has both kinds of twin, so the classes are disjoint.
    """
    link = [-1] * p.order
    last: dict[tuple[int, int], int] = {}
    for v in order:
        for key in ((0, p.adj[v]), (1, p.adj[v] | (1 << v))):
            others = [w for w in range(p.order) if w != v and (p.adj[w] | (key[0] << w)) == key[1]]
            if others:
                if key in last:
                    link[v] = last[key]
                last[key] = v
                break
    return link


def subgraph_embedding(pattern: Graph, host: Graph) -> list[int] | None:
    """Injective map of pattern vertices to host vertices preserving adjacency (not induced)."""
    n, N = pattern.order, host.order
    if n > N or pattern.size > host.size:
        return None
    pd, hd = pattern.degrees(), host.degrees()
    if any(a > b for a, b in zip(sorted(pd, reverse=True), sorted(hd, reverse=True))):
        return None
    order = _pattern_order(pattern)
    link = _twin_links(pattern, order)
    by_deg = [0] * (max(pd, default=0) + 1)
    for d in range(len(by_deg)):
        m = 0
        for v in range(N):
            if hd[v] >= d:
                m |= 1 << v
        by_deg[d] = m
    phi = [-1] * n
    hadj, padj = host.adj, pattern.adj

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        cand = by_deg[pd[v]] & ~used
        if link[v] >= 0:
            cand &= ~((2 << phi[link[v]]) - 1)
        for u in iter_bits(padj[v]):
            if phi[u] >= 0:
                cand &= hadj[phi[u]]
        while cand:
            low = cand & -cand
            cand ^= low
            phi[v] = low.bit_length() - 1
            if rec(i + 1, used | low):
                return True
        phi[v] = -1
        return False

    return list(phi) if rec(0, 0) else None


# -- contraction search -----------------------------------------------------


def _contract_state(g: Graph, parts: tuple[frozenset[int], ...], u: int, v: int):
    def f(x: int) -> int:
        if x == v:
            return u
        return x - 1 if x > v else x

    edges = set()
    for a, b in g.edges:
        a, b = f(a), f(b)
        if a != b:
            edges.add(_norm(a, b))
    new_parts = list(parts)
    new_parts[u] = parts[u] | parts[v]
    del new_parts[v]
    return Graph(g.order - 1, edges), tuple(new_parts)


def _model_from_parts(host: Graph, pattern: Graph, parts: Sequence[frozenset[int]], phi: list[int]) -> MinorModel:
    bs = {p: parts[phi[p]] for p in range(pattern.order)}
    ew = {}
    for a, b in pattern.sorted_edges():
        ba, bb = bs[a], bs[b]
        ew[(a, b)] = next(
            (x, y) for x in sorted(ba) for y in iter_bits(host.adj[x]) if y in bb
        )
    return MinorModel(bs, ew)


def _component_states(host: Graph, n: int):
    for comp in host.components():
        if len(comp) >= n:
            sub = host.subgraph(comp)
            yield sub, tuple(frozenset([v]) for v in comp)


def _search(host: Graph, pattern: Graph) -> MinorModel | None:
    n, m = pattern.order, pattern.size
    need_nonplanar = not planar(pattern)
    for start, parts0 in _component_states(host, n):
        seen: set[bytes] = set()
        stack = [(start, parts0)]
        while stack:
            g, parts = stack.pop()
            N = g.order
            if N == n or g is start:
                phi = subgraph_embedding(pattern, g)
                if phi is not None:
                    return _model_from_parts(host, pattern, parts, phi)
                if N == n:
                    continue
            children = []
            for u, v in g.sorted_edges():
                h, hp = _contract_state(g, parts, u, v)
                if h.size - (h.order - n) < m:
                    continue
                key = canonical_form(h)
                if key in seen:
                    continue
                seen.add(key)
                if need_nonplanar and planar(h):
                    continue
                children.append((h, hp))
            # denser quotients first
            children.sort(key=lambda s: s[0].size)
            stack.extend(children)
    return None


def _check_pattern(pattern: Graph, limit: int = MAX_PATTERN_ORDER) -> None:
    if pattern.order > limit:
        raise PatternError(f"pattern has {pattern.order} vertices; at most {limit} are supported")
    if pattern.order == 0:
        raise PatternError("pattern must be non-empty")
    if sum(len(c) > 2 for c in pattern.components()) > 1:
        raise PatternError("pattern may have at most one component with more than two vertices")


def _search_split(host: Graph, pattern: Graph) -> MinorModel | None:
    """Peel off K1 and K2 components of the pattern; the rest goes to ``_search``.

    P + K1 is a minor of G iff P is a minor of G - x for some vertex x, and
    P + K2 is a minor of G iff P is a minor of G - x - y for some edge xy (take
    the edge of G joining the two branch sets of the K2).
    """
    if pattern.order == 0:
        return MinorModel({}, {})
    comps = pattern.components()
    small = next((c for c in comps if len(c) <= 2), None)
    if small is None:
        return _search(host, pattern)
    rest = [v for v in range(pattern.order) if v not in small]
    sub_pattern = pattern.subgraph(rest)
    picks = [(x,) for x in range(host.order)] if len(small) == 1 else host.sorted_edges()
    for pick in picks:
        keep = [v for v in range(host.order) if v not in pick]
        model = _search_split(host.subgraph(keep), sub_pattern)
        if model is None:
            continue
        bs = {rest[p]: frozenset(keep[x] for x in b) for p, b in model.branch_sets.items()}
        ew = {_norm(rest[a], rest[b]): (keep[x], keep[y]) for (a, b), (x, y) in model.edge_witness.items()}
        for p, x in zip(small, pick):
            bs[p] = frozenset([x])
        if len(small) == 2:
            ew[_norm(*small)] = tuple(pick)  # type: ignore[assignment]
        return MinorModel(bs, ew)
    return None


class _Memo:
    """Thread-safe get-or-compute table keyed by canonical forms of host and pattern."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._data: dict[tuple[bytes, bytes], Any] = {}

    def get(self, key):
        with self._lock:
            return self._data.get(key, _MISSING)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_MISSING = object()
MEMO = _Memo()


def has_minor(
    host: Graph, pattern: Graph, *, memo: bool = True, limit: int = MAX_PATTERN_ORDER
) -> MinorModel | None:
    """A model of ``pattern`` as a minor of ``host``, or None if there is none.

    ``limit`` caps the pattern order; raising it is allowed when the host is
    only a few contractions larger than the pattern.
    """
    _check_pattern(pattern, limit)
    if pattern.order > host.order or pattern.size > host.size:
        return None
    if not memo:
        return _search_split(host, pattern)
    ho, po = canonical_labeling(host), canonical_labeling(pattern)
    hpos = {v: i for i, v in enumerate(ho)}
    ppos = {v: i for i, v in enumerate(po)}
    key = (canonical_form(host), canonical_form(pattern))
    cached = MEMO.get(key)
    if cached is _MISSING:
        ch = host.relabel([hpos[v] for v in range(host.order)])
        cp = pattern.relabel([ppos[v] for v in range(pattern.order)])
        cached = MEMO.put(key, _search_split(ch, cp))
    if cached is None:
        return None
    bs = {po[p]: frozenset(ho[x] for x in b) for p, b in cached.branch_sets.items()}
    ew = {_norm(po[a], po[b]): (ho[x], ho[y]) for (a, b), (x, y) in cached.edge_witness.items()}
    return MinorModel(bs, ew)


def free_of(g: Graph, patterns: Sequence[Graph]) -> tuple[int, MinorModel] | None:
    """The first pattern (cheapest first, by edge count) that is a minor of ``g``, with its model."""
    for p in patterns:
        _check_pattern(p)
    for i in sorted(range(len(patterns)), key=lambda i: (patterns[i].size, i)):
        model = has_minor(g, patterns[i])
        if model is not None:
            return i, model
    return None


class QuotientTable:
    """All quotients of a fixed host into ``n`` connected parts, up to isomorphism.

    Meant for a host that is queried against many patterns of the same order.
    With ``nonplanar_only`` planar quotients (and everything below them) are
    skipped, which is exact for nonplanar patterns.
    """

    def __init__(self, host: Graph, n: int, *, nonplanar_only: bool = True) -> None:
        self.host = host
        self.n = n
        self.nonplanar_only = nonplanar_only
        self.entries: list[tuple[Graph, tuple[frozenset[int], ...]]] = []
        for start, parts0 in _component_states(host, n):
            if nonplanar_only and planar(start):
                continue
            level = {canonical_form(start): (start, parts0)}
            while level and next(iter(level.values()))[0].order > n:
                nxt: dict[bytes, tuple[Graph, tuple[frozenset[int], ...]]] = {}
                labelled: set[Graph] = set()
                for g, parts in level.values():
                    for u, v in g.sorted_edges():
                        h, hp = _contract_state(g, parts, u, v)
                        if h in labelled:
                            continue
                        labelled.add(h)
                        if nonplanar_only and planar(h):
                            continue
                        nxt.setdefault(canonical_form(h), (h, hp))
                level = nxt
            self.entries.extend(level.values())
        self._degs = [sorted(q.degrees(), reverse=True) for q, _ in self.entries]

    def find(self, pattern: Graph) -> MinorModel | None:
        if pattern.order != self.n:
            raise PatternError(f"table holds {self.n}-vertex quotients, pattern has {pattern.order}")
        if self.nonplanar_only and planar(pattern):
            raise PatternError("table skips planar quotients; pattern must be nonplanar")
        pd = sorted(pattern.degrees(), reverse=True)
        for (q, parts), qd in zip(self.entries, self._degs):
            if q.size < pattern.size or any(a > b for a, b in zip(pd, qd)):
                continue
            phi = subgraph_embedding(pattern, q)
            if phi is not None:
                return _model_from_parts(self.host, pattern, parts, phi)
        return None


# -- topological minors ---------------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    """Branch vertex images and internally disjoint host paths, one per pattern edge."""

    branch: dict[int, int]
    paths: dict[tuple[int, int], tuple[int, ...]]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(_norm(a, b) for p in self.paths.values() for a, b in zip(p, p[1:]))


def has_topological_minor(host: Graph, pattern: Graph) -> Subdivision | None:
    """A subdivision of ``pattern`` inside ``host``, or None.

    Pattern vertices are placed one at a time; as soon as both ends of a pattern
    edge are placed it is routed along a path whose inner vertices are unused.
    All placements and routings are tried, so the answer is exact.
    """
    n = pattern.order
    if n > host.order or pattern.size > host.size:
        return None
    pd, hd = pattern.degrees(), host.degrees()
    if any(a > b for a, b in zip(sorted(pd, reverse=True), sorted(hd, reverse=True))):
        return None
    order = _pattern_order(pattern)
    link = _twin_links(pattern, order)
    rank = {v: i for i, v in enumerate(order)}
    back = [[u for u in pattern.neighbors(v) if rank[u] < rank[v]] for v in order]
    phi: dict[int, int] = {}
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    hadj = host.adj

    def routes(src: int, dst: int, blocked: int):
        # simple src-dst paths with all inner vertices outside ``blocked``
        stack = [(src, (src,), blocked | (1 << src))]
        while stack:
            x, path, seen = stack.pop()
            nb = hadj[x]
            if nb >> dst & 1:
                yield path + (dst,)
            for y in iter_bits(nb & ~seen & ~(1 << dst)):
                stack.append((y, path + (y,), seen | (1 << y)))

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        lo = phi[link[v]] + 1 if link[v] >= 0 else 0
        for x in range(lo, host.order):
            if used >> x & 1 or hd[x] < pd[v]:
                continue
            phi[v] = x
            if route(i, 0, used | (1 << x)):
                return True
            del phi[v]
        return False

    def route(i: int, j: int, used: int) -> bool:
        v = order[i]
        if j == len(back[i]):
            return place(i + 1, used)
        u = back[i][j]
        src, dst = phi[u], phi[v]
        for p in routes(src, dst, used):
            inner = 0
            for y in p[1:-1]:
                inner |= 1 << y
            paths[_norm(u, v)] = p if u < v else tuple(reversed(p))
            if route(i, j + 1, used | inner):
                return True
        paths.pop(_norm(u, v), None)
        return False

    if place(0, 0):
        return Subdivision(dict(phi), dict(paths))
    return None
