"""graph6 reading and writing (short form, up to 62 vertices)."""

from __future__ import annotations

from .graph import Graph

HEADER = ">>graph6<<"
MAX_ORDER = 62


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def encode(g: Graph) -> str:
    n = g.order
    if n > MAX_ORDER:
        raise ValueError(f"graph6 long form (n > {MAX_ORDER}) is not supported")
    bits = []
    adj = g.adj
    for j in range(1, n):
        for i in range(j):
            bits.append(adj[i] >> j & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        base = len(HEADER)
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"illegal character {ch!r}", base + i)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form order header is not supported", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for {n} vertices, found {len(body)}", base + 1)
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)
