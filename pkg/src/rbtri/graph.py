"""Small undirected simple graphs and the primitive operations on them.

Vertices are ``0..n-1``.  Adjacency is stored as one integer bitmask per
vertex, and edges are indexed in lexicographic order of ``(u, v)`` with
``u < v``.  Every search in the package refers to edges by that index, so
results are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import networkx as nx

from .errors import InvalidArgument, InvalidVertex, InvalidWitness

MAX_VERTICES = 64


def bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "edges", "_index", "_inc", "_hash")

    def __init__(self, n, edges=()):
        if n < 0 or n > MAX_VERTICES:
            raise InvalidArgument(f"vertex count must be in 0..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self.edges = tuple(
            (u, v) for u in range(n) for v in bits(adj[u] >> (u + 1) << (u + 1))
        )
        self._index = {e: i for i, e in enumerate(self.edges)}
        self._inc = None
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj):
        n = len(adj)
        return cls(n, ((u, v) for u in range(n) for v in bits(adj[u]) if u < v))

    # -- basic queries -------------------------------------------------

    @property
    def m(self):
        return len(self.edges)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def degree(self, v):
        return self.adj[v].bit_count()

    def degrees(self):
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v):
        return list(bits(self.adj[v]))

    def edge_index(self, u, v):
        if u > v:
            u, v = v, u
        try:
            return self._index[(u, v)]
        except KeyError:
            raise InvalidArgument(f"({u}, {v}) is not an edge") from None

    @property
    def incidence(self):
        """Per-vertex bitmask over edge indices of the incident edges."""
        if self._inc is None:
            inc = [0] * self.n
            for i, (u, v) in enumerate(self.edges):
                inc[u] |= 1 << i
                inc[v] |= 1 << i
            self._inc = tuple(inc)
        return self._inc

    @property
    def full_mask(self):
        return (1 << self.m) - 1

    def edge_subgraph(self, edge_mask):
        """Spanning subgraph keeping the edges whose index bit is set."""
        return Graph(self.n, (self.edges[i] for i in bits(edge_mask)))

    def check_vertices(self, vertices):
        for v in vertices:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise InvalidVertex(f"vertex {v!r} not in 0..{self.n - 1}")

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def relabel(self, perm):
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))


# -- named graphs used throughout tests and docs ------------------------


def complete_graph(n):
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n):
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n):
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves):
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite_graph(a, b):
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def octahedron():
    """K_{2,2,2}; the antipodal pairs are (0,1), (2,3), (4,5)."""
    return Graph(6, ((u, v) for u, v in combinations(range(6), 2) if u // 2 != v // 2))


# -- subgraphs and edge buckets -----------------------------------------


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    labels: tuple  # labels[new] = old vertex

    def old(self, v):
        return self.labels[v]


def induced_subgraph(g, vertices):
    """G[X] relabelled to ``0..|X|-1`` in increasing order of old label."""
    xs = sorted(set(vertices))
    g.check_vertices(xs)
    new = {v: i for i, v in enumerate(xs)}
    sub = Graph(len(xs), ((new[u], new[v]) for u, v in g.edges if u in new and v in new))
    return InducedSubgraph(sub, tuple(xs))


def delete_vertices(g, vertices):
    keep = set(range(g.n)) - set(vertices)
    return induced_subgraph(g, keep)


def cross_edges(g, xs, ys=None):
    """E_G(X, Y) as a sorted tuple of edges; with one argument, E_G(X).

    ``e_G(X, Y)`` is ``len(cross_edges(g, X, Y))``.
    """
    xs = set(xs)
    g.check_vertices(xs)
    if ys is None:
        return tuple(e for e in g.edges if e[0] in xs and e[1] in xs)
    ys = set(ys)
    g.check_vertices(ys)
    if xs & ys:
        raise InvalidArgument("cross_edges needs disjoint vertex sets")
    return tuple(
        e for e in g.edges if (e[0] in xs and e[1] in ys) or (e[0] in ys and e[1] in xs)
    )


# -- connectivity --------------------------------------------------------


def component_masks(g, removed=0):
    """Vertex bitmasks of the components of G minus the vertices in ``removed``."""
    left = ((1 << g.n) - 1) & ~removed
    comps = []
    adj = g.adj
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def is_connected(g, removed=0):
    if g.n - removed.bit_count() <= 1:
        return True
    return len(component_masks(g, removed)) == 1


def components(g, removed=()):
    return [sorted(bits(c)) for c in component_masks(g, mask_of(removed))]


def odd_components(g, removed):
    """Odd-order components of G - S and their number o(G - S).

    Components are sorted by size descending, ties broken by smallest label.
    """
    removed = list(removed)
    g.check_vertices(removed)
    comps = components(g, removed)
    odd = [c for c in comps if len(c) % 2 == 1]
    odd.sort(key=lambda c: (-len(c), c[0]))
    return odd, len(odd)


CONNECTIVITY_CAP = 6


def vertex_connectivity(g):
    """min(kappa(G), 6) by brute force over candidate cuts of size <= 5."""
    if g.n < 2:
        raise InvalidArgument("vertex connectivity needs n >= 2")
    if not is_connected(g):
        return 0
    for size in range(1, min(CONNECTIVITY_CAP, g.n - 1)):
        for cut in combinations(range(g.n), size):
            if not is_connected(g, mask_of(cut)):
                return size
    return min(g.n - 1, CONNECTIVITY_CAP)


# -- planarity -------------------------------------------------------------


def is_planar(g):
    """Return ``(planar, rotation)``.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order of a
    plane embedding, or ``rotation`` is None when G is not planar.
    """
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return False, None
    return True, tuple(tuple(emb.neighbors_cw_order(v)) for v in range(g.n))


def is_maximal_planar(g):
    if g.n < 3:
        raise InvalidArgument("maximal planarity is defined here for n >= 3")
    if g.m != 3 * g.n - 6 or not is_connected(g):
        return False
    return is_planar(g)[0]


# -- Hamiltonian cycles ------------------------------------------------------


def hamiltonian_cycle(g):
    """A Hamiltonian cycle as a vertex list, or None.

    Depth-first path extension from vertex 0.  A branch dies as soon as some
    unvisited vertex has fewer than two usable neighbours left.
    """
    n = g.n
    if n < 3:
        return None
    adj = g.adj
    full = (1 << n) - 1
    if any(a.bit_count() < 2 for a in adj):
        return None
    path = [0]

    def viable(visited, end):
        # usable neighbours: unvisited ones plus the two path ends
        ends = (1 << end) | 1
        for v in bits(full & ~visited):
            if (adj[v] & (~visited | ends)).bit_count() < 2:
                return False
        return True

    def extend(visited, end):
        if visited == full:
            return bool(adj[end] & 1)
        if not viable(visited, end):
            return False
        for v in bits(adj[end] & ~visited):
            path.append(v)
            if extend(visited | (1 << v), v):
                return True
            path.pop()
        return False

    if extend(1, 0):
        return list(path)
    return None


def is_hamiltonian_cycle(g, cycle):
    if len(cycle) != g.n or set(cycle) != set(range(g.n)):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


def is_hamiltonian(g):
    """Return ``(hamiltonian, witness_cycle)``; the witness is re-verified."""
    if g.n < 3:
        raise InvalidArgument("Hamiltonicity is defined here for n >= 3")
    cycle = hamiltonian_cycle(g)
    if cycle is None:
        return False, None
    assert is_hamiltonian_cycle(g, cycle)
    return True, cycle


def is_hamiltonian_bruteforce(g):
    """Factorial-time oracle: try every cyclic order fixing vertex 0."""
    if g.n < 3:
        return False
    for rest in permutations(range(1, g.n)):
        if rest[0] > rest[-1]:
            continue
        if is_hamiltonian_cycle(g, (0,) + rest):
            return True
    return False


# -- K_{3,3} minor witnesses -------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """Six branch sets of a K_{3,3} minor: three on each side."""

    left: tuple
    right: tuple

    @classmethod
    def of(cls, left, right):
        return cls(tuple(frozenset(p) for p in left), tuple(frozenset(p) for p in right))


def check_minor_witness(g, w):
    """True iff ``w`` is a valid K_{3,3}-minor model in ``g``.

    Malformed witnesses (wrong arity, empty or overlapping parts, unknown
    vertices) raise InvalidWitness naming the violated clause.
    """
    parts = list(w.left) + list(w.right)
    if len(w.left) != 3 or len(w.right) != 3:
        raise InvalidWitness("a K_{3,3} witness needs exactly three parts per side")
    seen = set()
    for p in parts:
        if not p:
            raise InvalidWitness("branch sets must be nonempty")
        for v in p:
            if not (isinstance(v, int) and 0 <= v < g.n):
                raise InvalidWitness(f"branch set vertex {v!r} is not a vertex of the host")
        if seen & p:
            raise InvalidWitness("branch sets must be pairwise disjoint")
        seen |= p
    for p in parts:
        if len(component_masks(induced_subgraph(g, p).graph)) != 1:
            return False
    for a in w.left:
        for b in w.right:
            bm = mask_of(b)
            if not any(g.adj[v] & bm for v in a):
                return False
    return True
