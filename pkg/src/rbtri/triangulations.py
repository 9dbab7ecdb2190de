"""Isomorph-free generation of plane triangulations.

A triangulation carries its rotation system: ``rotation[v]`` is the cyclic
order of the neighbours of ``v``.  Faces are the orbits of the dart map
``(u, v) -> (v, pred_v(u))``; in a triangulation each has length three.

``generate(n)`` grows every class from K4 by inserting a vertex of degree
3, 4 or 5.  In rotation terms all three insertions are the same move: pick
a vertex ``a`` and ``j`` (0, 1 or 2) consecutive neighbours of it, delete
the ``j`` chords from ``a`` and put a new vertex in the resulting hole.
Conversely, deleting a vertex of degree <= 5 and re-triangulating its hole
with a fan from a suitable corner undoes one such move, and every
triangulation with n >= 5 has a vertex of degree <= 5, so the expansion set
reaches all classes.  ``oracle_generate`` checks this independently for
small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExhausted, InvalidArgument
from .graph import Graph, bits, is_maximal_planar, is_planar

GENERATOR_VERSION = "expand345-1"
DEFAULT_MAX_N = 14
ORACLE_MAX_N = 8


@dataclass(frozen=True, eq=False)
class Triangulation:
    graph: Graph
    rotation: tuple  # rotation[v] = neighbours of v in cyclic order

    @property
    def n(self):
        return self.graph.n

    @classmethod
    def from_rotation(cls, rotation):
        rotation = tuple(tuple(r) for r in rotation)
        edges = {(min(u, v), max(u, v)) for u, r in enumerate(rotation) for v in r}
        return cls(Graph(len(rotation), edges), rotation)

    @classmethod
    def from_graph(cls, g):
        """Embed a maximal planar graph; raises InvalidArgument otherwise."""
        if g.n < 3 or not is_maximal_planar(g):
            raise InvalidArgument("graph is not a plane triangulation")
        _, rotation = is_planar(g)
        return cls(g, rotation)

    def faces(self):
        return faces_of(self.rotation)

    def code(self):
        return canonical_form(self)


def _succ_table(rotation):
    succ = []
    pred = []
    for r in rotation:
        d = len(r)
        succ.append({r[i]: r[(i + 1) % d] for i in range(d)})
        pred.append({r[i]: r[(i - 1) % d] for i in range(d)})
    return succ, pred


def faces_of(rotation):
    """All faces as dart-orbit vertex tuples."""
    _, pred = _succ_table(rotation)
    seen = set()
    faces = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                a, b = b, pred[b][a]
            faces.append(tuple(face))
    return faces


def is_valid_triangulation(t):
    """Check the structural invariants of a Triangulation.

    Simple graph with e = 3n - 6, rotation consistent with the adjacency,
    all faces triangles and Euler characteristic 2 (so the map is plane).
    """
    g, rot = t.graph, t.rotation
    n = g.n
    if n < 3 or g.m != 3 * n - 6 or len(rot) != n:
        return False
    for v in range(n):
        if len(set(rot[v])) != len(rot[v]) or set(rot[v]) != set(bits(g.adj[v])):
            return False
    faces = faces_of(rot)
    if any(len(f) != 3 for f in faces):
        return False
    return n - g.m + len(faces) == 2


# -- canonical form ----------------------------------------------------------


def _bfs_code(rotation, start, first, forward, best):
    """Encode the map from dart ``start -> first``.

    Vertices are numbered 1, 2, ... in order of discovery; the neighbour
    list of each vertex is read starting at the vertex it was discovered
    from and terminated by 0.  Returns None as soon as the code is known to
    exceed ``best``.
    """
    n = len(rotation)
    label = [0] * n
    parent = [0] * n
    order = [start]
    label[start] = 1
    parent[start] = first
    nxt = 2
    code = []
    pos = 0
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        r = rotation[v]
        d = len(r)
        k = r.index(parent[v])
        for step in range(d):
            w = r[(k + step) % d] if forward else r[(k - step) % d]
            if not label[w]:
                label[w] = nxt
                parent[w] = v
                nxt += 1
                order.append(w)
            x = label[w]
            if best is not None and pos >= 0:
                b = best[pos]
                if x > b:
                    return None
                pos = -1 if x < b else pos + 1
            code.append(x)
        if best is not None and pos >= 0:
            if best[pos] != 0:
                return None
            pos += 1
        code.append(0)
    return code


def canonical_form(t):
    """Relabelling-invariant byte code of a triangulation.

    Minimum over starting darts and both orientations of the BFS encoding of
    the rotation system.  Only darts whose (tail, head) degree pair is
    largest are tried; that set is isomorphism invariant.  Triangulations on
    n >= 4 vertices are 3-connected, so their embedding is unique up to
    reflection and equal codes mean isomorphic graphs.
    """
    rot = t.rotation
    deg = [len(r) for r in rot]
    top = max((deg[u], deg[v]) for u in range(len(rot)) for v in rot[u])
    best = None
    for u in range(len(rot)):
        if deg[u] != top[0]:
            continue
        for v in rot[u]:
            if deg[v] != top[1]:
                continue
            for forward in (True, False):
                code = _bfs_code(rot, u, v, forward, best)
                if code is not None and (best is None or code < best):
                    best = code
    return bytes([len(rot)] + best)


def decode_canonical(code):
    """Rotation system from a canonical code (labels shifted to 0-based)."""
    n = code[0]
    rotation = [[] for _ in range(n)]
    v = 0
    for x in code[1:]:
        if x == 0:
            v += 1
        else:
            rotation[v].append(x - 1)
    return Triangulation.from_rotation(rotation)


# -- expansions --------------------------------------------------------------


def _insert(rotation, link):
    """Insert a new vertex whose neighbours in cyclic order are ``link``.

    For each link vertex b_i the neighbours strictly between b_{i+1} and
    b_{i-1} (the chords inside the hole) are replaced by the new vertex.
    """
    x = len(rotation)
    rot = [list(r) for r in rotation]
    d = len(link)
    for i, b in enumerate(link):
        nb, pb = link[(i + 1) % d], link[(i - 1) % d]
        r = rot[b]
        k = r.index(nb)
        out = [nb, x]
        j = (k + 1) % len(r)
        while r[j] != pb:
            j = (j + 1) % len(r)
        while True:
            out.append(r[j])
            j = (j + 1) % len(r)
            if r[j] == nb:
                break
        rot[b] = out
    rot.append(list(link))
    return rot


def expansions(t):
    """Yield rotation systems of all one-vertex expansions of ``t``."""
    rot = t.rotation
    for a, r in enumerate(rot):
        d = len(r)
        for j in (0, 1, 2):
            if d < j + 2:
                continue
            for p in range(d):
                link = [a] + [r[(p + i) % d] for i in range(j + 2)]
                yield _insert(rot, link)


def k4():
    return Triangulation.from_rotation(((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))


def _check_n(n, limit):
    if n < 4:
        raise InvalidArgument(f"plane triangulations need n >= 4, got {n}")
    if n > limit:
        raise BudgetExhausted(f"n={n} exceeds the configured limit {limit}")


def generate_levels(n, limit=DEFAULT_MAX_N, start=None):
    """Yield ``(order, sorted list of triangulations)`` for 4..n.

    ``start`` may supply an already known level ``(order, list)`` to resume
    from.
    """
    _check_n(n, limit)
    if start is None:
        level = [k4()]
        order = 4
    else:
        order, level = start
    yield order, level
    while order < n:
        seen = {}
        for t in level:
            for rot in expansions(t):
                child = Triangulation.from_rotation(rot)
                code = canonical_form(child)
                if code not in seen:
                    seen[code] = child
        order += 1
        level = [decode_canonical(c) for c in sorted(seen)]
        yield order, level


def generate(n, limit=DEFAULT_MAX_N):
    """All plane triangulations of order n, one per class, in code order.

    Emitted triangulations are relabelled to their canonical labelling, so
    the output is deterministic run to run.
    """
    level = None
    for _, level in generate_levels(n, limit):
        pass
    return list(level)


# -- independent oracle ------------------------------------------------------


def _invariant(adj):
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    tri = [0] * n
    for u in range(n):
        for v in bits(adj[u]):
            tri[u] += (adj[u] & adj[v]).bit_count()
    return tuple(sorted(
        (deg[v], tri[v], tuple(sorted(deg[w] for w in bits(adj[v]))))
        for v in range(n)
    ))


def _isomorphic(a, b):
    import networkx as nx

    return nx.is_isomorphic(Graph.from_adjacency(a).to_networkx(),
                            Graph.from_adjacency(b).to_networkx())


def oracle_generate(n):
    """Brute-force list of the plane triangulations of order n.

    Works on complements: a graph with 3n - 6 edges and minimum degree >= 3
    has a complement with C(n,2) - 3n + 6 edges and maximum degree <= n - 4.
    Those complements are grown one edge at a time, deduplicated up to
    isomorphism at every level, and the survivors are complemented and
    filtered through the planarity test.  Nothing here uses the expansion
    moves of ``generate``.
    """
    if not 4 <= n <= ORACLE_MAX_N:
        raise InvalidArgument(f"oracle_generate supports 4 <= n <= {ORACLE_MAX_N}")
    target = n * (n - 1) // 2 - (3 * n - 6)
    cap = n - 4
    level = [tuple([0] * n)]
    for _ in range(target):
        buckets = {}
        for adj in level:
            for u, v in combinations(range(n), 2):
                if adj[u] >> v & 1:
                    continue
                if adj[u].bit_count() >= cap or adj[v].bit_count() >= cap:
                    continue
                new = list(adj)
                new[u] |= 1 << v
                new[v] |= 1 << u
                new = tuple(new)
                bucket = buckets.setdefault(_invariant(new), [])
                if not any(_isomorphic(new, old) for old in bucket):
                    bucket.append(new)
        level = [a for b in buckets.values() for a in b]
    full = (1 << n) - 1
    found = {}
    for comp in level:
        g = Graph.from_adjacency([full & ~comp[v] & ~(1 << v) for v in range(n)])
        if is_maximal_planar(g):
            t = Triangulation.from_graph(g)
            found.setdefault(canonical_form(t), t)
    return [found[c] for c in sorted(found)]
