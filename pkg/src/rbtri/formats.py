"""graph6 and plain-text graph formats.

graph6 follows the published byte layout: N(n) followed by the upper
triangle of the adjacency matrix read column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per byte, each
byte offset by 63.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph


def _encode_n(n):
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise ParseError(f"graph6 size field cannot hold n={n}")


def to_graph6(g):
    """graph6 string (no header, no newline)."""
    bitlist = [
        1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)
    ]
    bitlist += [0] * (-len(bitlist) % 6)
    body = bytes(
        63 + int("".join(map(str, bitlist[i:i + 6])), 2) for i in range(0, len(bitlist), 6)
    )
    return (_encode_n(g.n) + body).decode("ascii")


def from_graph6(text):
    if isinstance(text, bytes):
        text = text.decode("ascii")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    data = [ord(ch) - 63 for ch in text]
    if not data or any(not 0 <= x < 64 for x in data):
        raise ParseError("graph6 bytes must lie in 63..126")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ParseError("graph6 sizes beyond 258047 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    bitlist = [(x >> (5 - i)) & 1 for x in body for i in range(6)]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitlist[k]:
                edges.append((i, j))
            k += 1
    if any(bitlist[need:]):
        raise ParseError("graph6 padding bits must be zero")
    return Graph(n, edges)


def to_text(g):
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_text(text):
    """Plain format: a line with n, then one ``u v`` edge per line (0-based)."""
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError("empty graph description")
    try:
        n = int(rows[0])
        edges = []
        for r in rows[1:]:
            u, v = r.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise ParseError(f"bad adjacency text: {exc}") from None
    if len(set((min(e), max(e)) for e in edges)) != len(edges):
        raise ParseError("duplicate edge in adjacency text")
    return Graph(n, edges)


def parse_graph(text):
    """Accept either graph6 or the plain adjacency format."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r.startswith("#")]
    if not rows:
        raise ParseError("empty graph description")
    if rows[0][0].isdigit():
        return from_text(text)
    return from_graph6(rows[0])


def read_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def read_graph6_file(path):
    with open(path) as fh:
        return [from_graph6(line) for line in fh if line.strip()]
