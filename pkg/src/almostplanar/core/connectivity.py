"""Vertex connectivity, low-order separations and the 3-cut conditions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphError, component_masks, iter_bits


def local_connectivity(g: Graph, s: int, t: int, cutoff: int | None = None) -> int:
    """Maximum number of internally disjoint s-t paths for non-adjacent ``s``, ``t``.

    Augmenting paths on the split-vertex network: every vertex other than s and
    t becomes an arc of capacity one.
    """
    if s == t or g.has_edge(s, t):
        raise GraphError("local connectivity needs two distinct non-adjacent vertices")
    n = g.order
    # node 2v = v_in, 2v+1 = v_out
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap[(b, a)] = cap.get((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n + 1
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while cutoff is None or flow < cutoff:
        parent = {source: source}
        q = deque([source])
        while q and sink not in parent:
            a = q.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    q.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph, cutoff: int | None = None) -> int:
    """Smallest number of vertices whose removal disconnects ``g`` or leaves one vertex.

    Complete graphs ``K_n`` get ``n - 1``. With ``cutoff`` the search stops as soon
    as the answer is known to be at least ``cutoff`` and returns ``cutoff``.
    """
    n = g.order
    if n <= 1:
        return 0
    if not g.is_connected():
        return 0
    best = n - 1
    if cutoff is not None:
        best = min(best, cutoff)
    adj = g.adj
    # every minimum cut misses one of the first best+1 vertices, so fixing s among
    # them and scanning all targets is exact
    for s in range(n):
        if s > best:
            break
        for t in range(n):
            if t == s or adj[s] >> t & 1:
                continue
            if t < s and t <= best:
                continue
            k = local_connectivity(g, s, t, cutoff=best)
            if k < best:
                best = k
                if best == 0:
                    return 0
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    return g.order >= k + 1 and vertex_connectivity(g, cutoff=k) >= k


def brute_force_connectivity(g: Graph) -> int:
    """Reference value by trying all vertex subsets in increasing size."""
    n = g.order
    full = (1 << n) - 1
    for k in range(n - 1):
        for cut in combinations(range(n), k):
            m = 0
            for v in cut:
                m |= 1 << v
            if len(component_masks(g.adj, full & ~m)) > 1:
                return k
    return max(n - 1, 0)


@dataclass(frozen=True)
class Separation:
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.side_a & self.side_b)

    @property
    def boundary(self) -> frozenset[int]:
        return self.side_a & self.side_b

    def side(self, which: str) -> frozenset[int]:
        if which == "a":
            return self.side_a
        if which == "b":
            return self.side_b
        raise ValueError(f"side must be 'a' or 'b', not {which!r}")

    def is_valid(self, g: Graph) -> bool:
        a, b = self.side_a, self.side_b
        full = frozenset(range(g.order))
        if a | b != full or a == full or b == full:
            return False
        pa, pb = a - b, b - a
        return not any((u in pa and v in pb) or (u in pb and v in pa) for u, v in g.edges)


def separations_of_order(g: Graph, k: int) -> list[Separation]:
    """All separations ``{A, B}`` with ``|A & B| == k``, each listed once."""
    if not 0 <= k <= 3:
        raise ValueError("separation order must be between 0 and 3")
    n = g.order
    full = (1 << n) - 1
    out = []
    for cut in combinations(range(n), k):
        cm = 0
        for v in cut:
            cm |= 1 << v
        comps = component_masks(g.adj, full & ~cm)
        if len(comps) < 2:
            continue
        first, rest = comps[0], comps[1:]
        # comps[0] always on side a; side b gets a non-empty subset of the rest
        for r in range(1, len(rest) + 1):
            for chosen in combinations(range(len(rest)), r):
                bm = cm
                for i in chosen:
                    bm |= rest[i]
                am = full & ~bm | cm
                out.append(Separation(frozenset(iter_bits(am)), frozenset(iter_bits(bm))))
    return out


def _is_claw_side(g: Graph, side: frozenset[int], boundary: frozenset[int]) -> bool:
    inner = side - boundary
    if len(inner) != 1 or len(boundary) != 3:
        return False
    (x,) = inner
    bs = list(boundary)
    if any(g.has_edge(u, v) for u, v in combinations(bs, 2)):
        return False
    return all(g.has_edge(x, b) for b in bs)


def is_internally_4_connected(g: Graph) -> bool:
    if g.order < 5 or not is_k_connected(g, 3):
        return False
    for sep in separations_of_order(g, 3):
        b = sep.boundary
        claws = _is_claw_side(g, sep.side_a, b) + _is_claw_side(g, sep.side_b, b)
        if claws != 1:
            return False
    return True


def is_strongly_connected3(g: Graph) -> bool:
    """True iff removing any three vertices leaves at most two components (g must be 3-connected)."""
    if not is_k_connected(g, 3):
        raise GraphError("the strong 3-cut condition is only defined for 3-connected graphs")
    n = g.order
    full = (1 << n) - 1
    for cut in combinations(range(n), 3):
        cm = (1 << cut[0]) | (1 << cut[1]) | (1 << cut[2])
        if len(component_masks(g.adj, full & ~cm)) > 2:
            return False
    return True
