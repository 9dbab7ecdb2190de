"""Edge colourings, rainbow matchings and representative subgraphs."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .errors import InvalidArgument, InvalidCertificate, ParseError
from .formats import from_graph6, to_graph6
from .graph import Graph

VERDICT = "no_rainbow_kK2"


def _check_k(k):
    if k < 1:
        raise InvalidArgument("k must be at least 1")


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Total surjective colouring; ``colors[i]`` is the colour of edge i."""

    host: Graph
    colors: tuple

    def __post_init__(self):
        if len(self.colors) != self.host.m:
            raise InvalidArgument(
                f"coloring has {len(self.colors)} entries for {self.host.m} edges"
            )
        used = set(self.colors)
        if used and used != set(range(1, len(used) + 1)):
            raise InvalidArgument("colors must be 1-based contiguous")

    @property
    def c(self):
        return len(set(self.colors))

    @classmethod
    def from_mapping(cls, host, mapping):
        """Build from ``{(u, v): color}``; endpoints may be in either order."""
        colors = [None] * host.m
        for (u, v), col in mapping.items():
            colors[host.edge_index(u, v)] = col
        if None in colors:
            raise InvalidArgument("coloring is not total")
        return cls(host, tuple(colors))

    @classmethod
    def from_classes(cls, host, classes):
        """Build from a list of edge-index collections, class i gets colour i+1."""
        colors = [None] * host.m
        for c, cls_edges in enumerate(classes, start=1):
            for e in cls_edges:
                if colors[e] is not None:
                    raise InvalidArgument(f"edge {e} appears in two classes")
                colors[e] = c
        if None in colors:
            raise InvalidArgument("coloring is not total")
        return cls(host, tuple(colors))

    def color_of(self, u, v):
        return self.colors[self.host.edge_index(u, v)]

    def classes(self):
        """Edge-index lists per colour, colour 1 first."""
        out = [[] for _ in range(self.c)]
        for i, col in enumerate(self.colors):
            out[col - 1].append(i)
        return out

    def canonical(self):
        """Restricted growth string: colours renumbered by first occurrence."""
        seen = {}
        return tuple(seen.setdefault(col, len(seen) + 1) for col in self.colors)

    def renamed(self, perm):
        """Apply ``perm`` (a mapping on 1..c) to every colour."""
        return EdgeColoring(self.host, tuple(perm[col] for col in self.colors))

    def merged(self, a, b):
        """Merge colour b into colour a and renumber to stay contiguous."""
        if a == b:
            return self
        raw = [a if col == b else col for col in self.colors]
        renumber = {col: i + 1 for i, col in enumerate(sorted(set(raw)))}
        return EdgeColoring(self.host, tuple(renumber[col] for col in raw))

    def __eq__(self, other):
        return isinstance(other, EdgeColoring) and self.host == other.host and self.colors == other.colors

    def __hash__(self):
        return hash((self.host, self.colors))


def is_rainbow(col, edge_indices):
    cs = [col.colors[e] for e in edge_indices]
    return len(set(cs)) == len(cs)


def _search(col, target):
    """Backtracking for a rainbow matching; stops early once size ``target``.

    Returns the best witness as a list of edge indices.
    """
    g = col.host
    edges = g.edges
    colors = col.colors
    m = g.m
    best = []
    cur = []
    # colours still present from position i onwards
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << colors[i])

    def rec(i, vused, cused):
        nonlocal best
        if len(cur) > len(best):
            best = list(cur)
            if len(best) >= target:
                return True
        room = min((suffix[i] & ~cused).bit_count(), (g.n - vused.bit_count()) // 2)
        if len(cur) + room <= len(best):
            return False
        for j in range(i, m):
            u, v = edges[j]
            cb = 1 << colors[j]
            if vused >> u & 1 or vused >> v & 1 or cused & cb:
                continue
            cur.append(j)
            if rec(j + 1, vused | 1 << u | 1 << v, cused | cb):
                return True
            cur.pop()
        return False

    rec(0, 0, 0)
    return best


def max_rainbow_matching(col):
    """Size of a largest rainbow matching and a witness (edge pairs)."""
    witness = _search(col, col.host.m + 1)
    assert is_rainbow(col, witness)
    return len(witness), [col.host.edges[e] for e in witness]


def find_rainbow_matching(col, k):
    """Edge pairs of some rainbow kK2, or None."""
    _check_k(k)
    witness = _search(col, k)
    if len(witness) < k:
        return None
    witness = witness[:k]
    assert is_rainbow(col, witness)
    return [col.host.edges[e] for e in witness]


def has_rainbow_matching(col, k):
    return find_rainbow_matching(col, k) is not None


def smallest_edge(col, cls_edges):
    return min(cls_edges)


def representative_subgraph(col, picker=smallest_edge):
    """Spanning subgraph with one edge per colour class.

    ``picker(col, class_edge_indices)`` chooses the representative; by
    default the smallest edge in the global order.  Any matching of the
    result is a rainbow matching of ``col``.
    """
    reps = [picker(col, cl) for cl in col.classes()]
    g = col.host
    return Graph(g.n, (g.edges[e] for e in reps))


# -- text and certificate formats --------------------------------------------


def coloring_to_text(col):
    lines = [f"c {col.c}"]
    lines += [f"{u} {v} {c}" for (u, v), c in zip(col.host.edges, col.colors)]
    return "\n".join(lines) + "\n"


def coloring_from_text(host, text):
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or not rows[0].startswith("c "):
        raise InvalidCertificate("coloring must start with a 'c <num_colors>' line")
    try:
        c = int(rows[0].split()[1])
    except (IndexError, ValueError):
        raise InvalidCertificate("bad 'c <num_colors>' header") from None
    colors = [None] * host.m
    for r in rows[1:]:
        parts = r.split()
        if len(parts) != 3:
            raise InvalidCertificate(f"bad coloring line {r!r}")
        try:
            u, v, col = (int(x) for x in parts)
        except ValueError:
            raise InvalidCertificate(f"bad coloring line {r!r}") from None
        if not (0 <= u < host.n and 0 <= v < host.n) or u == v or not host.has_edge(u, v):
            raise InvalidCertificate(f"({u}, {v}) is not an edge of the graph")
        i = host.edge_index(u, v)
        if colors[i] is not None:
            raise InvalidCertificate(f"edge ({u}, {v}) colored twice")
        if col < 1:
            raise InvalidCertificate("colors must be 1-based contiguous")
        colors[i] = col
    if None in colors:
        raise InvalidCertificate("coloring is not total")
    if set(colors) != set(range(1, c + 1)):
        raise InvalidCertificate("colors must be 1-based contiguous")
    return EdgeColoring(host, tuple(colors))


@dataclass(frozen=True)
class RainbowCertificate:
    """A colouring claimed to contain no rainbow kK2."""

    graph: Graph
    coloring: EdgeColoring
    k: int

    @property
    def colors(self):
        return self.coloring.c

    def to_json(self):
        return {
            "graph6": to_graph6(self.graph),
            "coloring": coloring_to_text(self.coloring),
            "k": self.k,
            "colors": self.colors,
            "verdict": VERDICT,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=1)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps() + "\n")

    @classmethod
    def from_json(cls, data, base_dir="."):
        try:
            g = from_graph6(data["graph6"])
            k = int(data["k"])
            if "coloring" in data:
                text = data["coloring"]
            else:
                with open(os.path.join(base_dir, data["coloring_path"])) as fh:
                    text = fh.read()
        except (KeyError, ValueError, TypeError, ParseError, OSError) as exc:
            raise InvalidCertificate(f"certificate does not parse: {exc}") from None
        if data.get("verdict", VERDICT) != VERDICT:
            raise InvalidCertificate(f"unknown verdict {data.get('verdict')!r}")
        col = coloring_from_text(g, text)
        if "colors" in data and int(data["colors"]) != col.c:
            raise InvalidCertificate("declared color count does not match the coloring")
        if k < 1:
            raise InvalidCertificate("k must be at least 1")
        return cls(g, col, k)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidCertificate(f"certificate is not JSON: {exc}") from None
        return cls.from_json(data, os.path.dirname(os.path.abspath(path)))


def verify_no_rainbow(cert):
    """True iff the certificate's colouring has no rainbow kK2.

    Uses only the rainbow-matching backtracking above, never the search
    that produced the certificate.
    """
    if not isinstance(cert, RainbowCertificate):
        cert = RainbowCertificate.from_json(cert)
    if cert.coloring.host != cert.graph:
        raise InvalidCertificate("coloring refers to a different graph")
    return find_rainbow_matching(cert.coloring, cert.k) is None
