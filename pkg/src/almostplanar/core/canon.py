"""Canonical labelling, isomorphism testing and isomorph-free enumeration.

The labelling is an individualisation-refinement search: colour refinement to an
equitable ordered partition, then branching on the first non-singleton cell.
Each leaf yields a vertex order; the order giving the largest upper-triangle
adjacency code is canonical. Vertices that are twins (same neighbourhood up to
each other) are interchangeable, so only one of them is branched on.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator

from .graph import Graph, iter_bits

MAX_ENUMERATION_ORDER = 10


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(c)
                continue
            for k in keys:
                out.append([v for v in c if sig[v] == k])
        if len(out) == len(cells):
            return out
        cells = out


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    code = 0
    for i, v in enumerate(order):
        row = 0
        for u in iter_bits(adj[v]):
            j = pos[u]
            if j > i:
                row |= 1 << (n - 1 - j)
        code = (code << n) | row
    return code


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` with ``order[i]`` the original vertex placed at canonical position ``i``."""
    n = g.order
    if n == 0:
        return []
    adj = g.adj
    degs = g.degrees()
    init = [[v for v in range(n) if degs[v] == d] for d in sorted(set(degs))]
    best_code = -1
    best_order: list[int] = []

    def search(cells: list[list[int]]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if code > best_code:
                best_code, best_order = code, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(_twins(adj, v, w) for w in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(init)
    return best_order


def _twins(adj: tuple[int, ...], u: int, v: int) -> bool:
    mu, mv = 1 << u, 1 << v
    return (adj[u] & ~mv) == (adj[v] & ~mu)


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.order
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """A byte string equal for two graphs exactly when they are isomorphic.

    It is the graph6 encoding of the canonically relabelled graph, so it also
    determines the graph up to isomorphism.
    """
    from .graph6 import encode

    return encode(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A list ``phi`` with ``phi[v]`` in ``h`` for each ``v`` of ``g``, or None."""
    if not is_isomorphic(g, h):
        return None
    og, oh = canonical_labeling(g), canonical_labeling(h)
    phi = [0] * g.order
    for a, b in zip(og, oh):
        phi[a] = b
    return phi


def enumerate_graphs(
    n: int,
    predicate: Callable[[Graph], bool] | None = None,
    *,
    max_order: int = MAX_ENUMERATION_ORDER,
) -> Iterator[Graph]:
    """Yield one graph per isomorphism class on ``n`` vertices, optionally filtered.

    Classes on ``k`` vertices come from classes on ``k-1`` vertices by adding a
    vertex of minimum degree in the result; duplicates are removed by canonical
    form. Representatives are canonically labelled and emitted in ascending
    order of their canonical form.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_order:
        raise ValueError(f"enumeration is limited to n <= {max_order} (asked for n={n})")
    for g in _classes(n):
        if predicate is None or predicate(g):
            yield g


_CLASS_CACHE: dict[int, list[Graph]] = {}


def _classes(n: int) -> list[Graph]:
    if n in _CLASS_CACHE:
        return _CLASS_CACHE[n]
    if n == 0:
        out = [Graph(0)]
    else:
        seen: dict[bytes, Graph] = {}
        for parent in _classes(n - 1):
            degs = parent.degrees()
            base = list(parent.edges)
            k = n - 1
            for size in range(0, k + 1):
                for nbrs in combinations(range(k), size):
                    # new vertex must have minimum degree in the child
                    inc = set(nbrs)
                    if any(degs[v] + (v in inc) < size for v in range(k)):
                        continue
                    child = Graph(n, base + [(v, k) for v in nbrs])
                    cg = canonical_graph(child)
                    key = cg.adj
                    if key not in seen:
                        seen[key] = cg
        from .graph6 import encode

        out = sorted(seen.values(), key=encode)
    _CLASS_CACHE[n] = out
    return out
