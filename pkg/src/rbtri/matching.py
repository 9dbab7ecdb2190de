"""Maximum matchings and the Berge-Tutte / Gallai-Edmonds structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import bits, components, induced_subgraph, mask_of, odd_components


@dataclass(frozen=True)
class Matching:
    edges: tuple  # sorted (u, v) pairs

    @property
    def size(self):
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def vertices(self):
        return {x for e in self.edges for x in e}


def is_matching(g, edges):
    used = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True


# -- Edmonds' blossom algorithm ----------------------------------------------


def _edmonds(n, adj, mate):
    """Grow ``mate`` (list, -1 = free) to a maximum matching in place."""

    def find_path(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = [root]
        qi = 0

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for to in bits(adj[v]):
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to, parent
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1, parent

    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent = find_path(root)
        while end != -1:
            pv = parent[end]
            nv = mate[pv]
            mate[end] = pv
            mate[pv] = end
            end = nv
    return mate


def matching_number(g, removed=0):
    """nu(G - X) for a vertex bitmask X."""
    adj = [a & ~removed if not removed >> v & 1 else 0 for v, a in enumerate(g.adj)]
    mate = _edmonds(g.n, adj, [-1] * g.n)
    return sum(1 for v in range(g.n) if mate[v] > v)


def max_matching(g):
    """The lexicographically smallest maximum matching in edge order.

    Greedy over edges in order: keep an edge when the rest of the graph can
    still complete a maximum matching around it.
    """
    target = matching_number(g)
    chosen = []
    removed = 0
    for u, v in g.edges:
        if len(chosen) == target:
            break
        if removed >> u & 1 or removed >> v & 1:
            continue
        trial = removed | (1 << u) | (1 << v)
        if len(chosen) + 1 + matching_number(g, trial) == target:
            chosen.append((u, v))
            removed = trial
    m = Matching(tuple(chosen))
    assert m.size == target and is_matching(g, m.edges)
    return m


def max_matching_bruteforce(g):
    """Largest matching by exhaustive search over edge subsets."""
    best = 0
    edges = g.edges

    def rec(i, used, size):
        nonlocal best
        if size + (len(edges) - i) <= best:
            return
        if size > best:
            best = size
        for j in range(i, len(edges)):
            u, v = edges[j]
            if not (used >> u & 1 or used >> v & 1):
                rec(j + 1, used | 1 << u | 1 << v, size + 1)

    rec(0, 0, 0)
    return best


def is_perfectly_matchable(g):
    return g.n % 2 == 0 and 2 * matching_number(g) == g.n


def is_factor_critical(g):
    if g.n % 2 == 0:
        return False
    return all(2 * matching_number(g, 1 << v) == g.n - 1 for v in range(g.n))


# -- Berge-Tutte witnesses ---------------------------------------------------


@dataclass(frozen=True)
class BergeTutteDecomposition:
    """A set S attaining the Berge-Tutte formula, with the component data.

    ``odd_components`` are sorted by size descending (ties by least label);
    ``t`` is the 0-based index of the first singleton component (``q`` when
    there is none) and ``v0`` lists the vertex of each singleton component
    in component order.
    """

    n: int
    d: int
    S: tuple
    odd_components: tuple
    even_vertices: tuple
    v0: tuple = field(default=())

    @property
    def q(self):
        return len(self.odd_components)

    @property
    def sizes(self):
        return tuple(len(c) for c in self.odd_components)

    @property
    def t(self):
        for i, c in enumerate(self.odd_components):
            if len(c) == 1:
                return i
        return self.q

    @property
    def deficiency(self):
        return self.q - len(self.S)

    def v0_by_degree(self, g):
        """V0 reordered by degree in G, largest first (stable)."""
        return tuple(sorted(self.v0, key=lambda v: -g.degree(v)))

    def as_dict(self):
        return {
            "S": list(self.S),
            "component_sizes": list(self.sizes),
            "odd_components": [list(c) for c in self.odd_components],
            "B": list(self.even_vertices),
            "d": self.d,
            "q": self.q,
            "t": self.t,
            "V0": list(self.v0),
            "deficiency": self.deficiency,
        }


def berge_tutte_witness(g):
    """Gallai-Edmonds witness: S = A(G) = N(D) minus D.

    D is the set of vertices missed by some maximum matching, found with
    one matching computation per vertex.
    """
    d = matching_number(g)
    deficient = [v for v in range(g.n) if matching_number(g, 1 << v) == d]
    dmask = mask_of(deficient)
    nbr = 0
    for v in deficient:
        nbr |= g.adj[v]
    s = sorted(bits(nbr & ~dmask))
    odd, _ = odd_components(g, s)
    even = sorted(v for c in components(g, s) if len(c) % 2 == 0 for v in c)
    v0 = tuple(c[0] for c in odd if len(c) == 1)
    return BergeTutteDecomposition(
        n=g.n, d=d, S=tuple(s), odd_components=tuple(tuple(c) for c in odd),
        even_vertices=tuple(even), v0=v0,
    )


def tutte_bound(g, s):
    """The Berge-Tutte upper bound (n - (o(G-S) - |S|)) / 2 for a set S."""
    _, q = odd_components(g, s)
    return (g.n - (q - len(s))) / 2


def check_decomposition(g, dec):
    """Re-verify a decomposition from scratch; returns a list of problems."""
    problems = []
    d = max_matching_bruteforce(g) if g.m <= 30 else matching_number(g)
    if dec.d != d:
        problems.append(f"d={dec.d} but nu(G)={d}")
    odd, q = odd_components(g, dec.S)
    if [tuple(c) for c in odd] != list(dec.odd_components):
        problems.append("odd components do not match G - S")
    if 2 * d != g.n - (q - len(dec.S)):
        problems.append("Berge-Tutte equation fails")
    if len(dec.S) > d:
        problems.append("|S| > d")
    for c in dec.odd_components:
        if not is_factor_critical(induced_subgraph(g, c).graph):
            problems.append(f"component {list(c)} is not factor-critical")
    t = dec.t
    if any(len(c) != 1 for c in dec.odd_components[t:]) or any(
        len(c) < 3 for c in dec.odd_components[:t]
    ):
        problems.append("component sizes are not split at t")
    return problems


# -- bitmask helpers used by the searches ------------------------------------


class EdgeMatcher:
    """Fast k-matching queries on subsets of a fixed host's edges.

    Edge sets are bitmasks over the host's edge indices.
    """

    def __init__(self, g):
        self.g = g
        self.inc = g.incidence
        self.ends = [(1 << u) | (1 << v) for u, v in g.edges]
        self.end_edges = [self.inc[u] | self.inc[v] for u, v in g.edges]

    def find(self, emask, k):
        """Edge-index list of some k-matching inside ``emask``, or None."""
        if k <= 0:
            return []
        if emask.bit_count() < k:
            return None
        out = []
        if self._find(emask, k, out):
            return out
        return None

    def _find(self, emask, k, out):
        if k == 0:
            return True
        if emask.bit_count() < k:
            return False
        low = emask & -emask
        e = low.bit_length() - 1
        # either edge e is used, or it is dropped
        out.append(e)
        if self._find(emask & ~self.end_edges[e], k - 1, out):
            return True
        out.pop()
        return self._find(emask & ~low, k, out)

    def has(self, emask, k):
        return self.find(emask, k) is not None

    def nu(self, emask):
        k = 0
        while self.find(emask, k + 1) is not None:
            k += 1
        return k

    def all_matchings(self, k, emask=None):
        """Every k-matching inside ``emask`` as an edge bitmask."""
        if emask is None:
            emask = self.g.full_mask
        out = []

        def rec(avail, k, acc):
            if k == 0:
                out.append(acc)
                return
            while avail.bit_count() >= k:
                low = avail & -avail
                e = low.bit_length() - 1
                avail &= ~low
                rec(avail & ~self.end_edges[e], k - 1, acc | low)

        rec(emask, k, 0)
        return out


def brute_force_tutte_check(g, max_s=5):
    """Berge-Tutte inequality d <= bound(S) for every |S| <= max_s."""
    d = matching_number(g)
    for size in range(0, min(max_s, g.n) + 1):
        for s in combinations(range(g.n), size):
            if d > tutte_bound(g, s):
                return False, s
    return True, None
