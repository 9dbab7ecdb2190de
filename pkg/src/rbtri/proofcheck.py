"""Machine checks of the structural facts the rainbow-number proofs use.

Each audit runs over an explicit universe (all triangulations of one order,
all matchings of a triangulation, ...) and returns an AuditReport whose
verdict is ``pass`` only when every instance of the universe was checked
and none failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InvalidArgument
from .graph import Graph, bits, delete_vertices, is_hamiltonian, vertex_connectivity
from .matching import EdgeMatcher, is_matching
from .rainbow import EdgeColoring, find_rainbow_matching, is_rainbow
from .triangulations import canonical_form, generate

HYPO_NOTE = (
    "hypoHamiltonian is checked in the weak sense 'G - u is Hamiltonian for "
    "every vertex u'; the usual extra requirement that G itself is not "
    "Hamiltonian is not imposed"
)


@dataclass
class AuditReport:
    claim: str
    universe: str
    universe_size: int
    instances: int = 0
    failures: list = field(default_factory=list)
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def verdict(self):
        ok = not self.failures and self.instances == self.universe_size
        return "pass" if ok else "fail"

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        out = {
            "claim": self.claim,
            "universe": self.universe,
            "universe_size": self.universe_size,
            "instances": self.instances,
            "failures": sorted(self.failures),
            "verdict": self.verdict,
        }
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        return out


def _code(t):
    return canonical_form(t).hex()


def check_hypohamiltonian(n, triangulations=None):
    """Every vertex-deleted subgraph of every T in T_n is Hamiltonian.

    Claimed for 5 <= n <= 7; other orders run as exploration.
    """
    ts = triangulations if triangulations is not None else generate(n)
    rep = AuditReport("hypohamiltonian", f"all T in T_{n}", len(ts), note=HYPO_NOTE)
    if not 5 <= n <= 7:
        rep.details["exploration"] = True
    for t in ts:
        g = t.graph
        ok = all(is_hamiltonian(delete_vertices(g, [u]).graph)[0] for u in range(g.n))
        rep.instances += 1
        if not ok:
            rep.failures.append(_code(t))
    return rep


def check_three_connected(n, triangulations=None):
    ts = triangulations if triangulations is not None else generate(n)
    rep = AuditReport("three_connected", f"all T in T_{n}", len(ts))
    low = None
    for t in ts:
        kappa = vertex_connectivity(t.graph)
        low = kappa if low is None else min(low, kappa)
        rep.instances += 1
        if kappa < 3:
            rep.failures.append(_code(t))
    rep.details["min_connectivity"] = low
    return rep


def matching_closure_counts(g, matching):
    """Split E(G) around a matching M.

    With H = G[V(M)] and R = V(G) - V(M), returns the edge counts inside H,
    between V(H) and R, and inside R.
    """
    edges = [tuple(e) for e in matching]
    if not is_matching(g, edges):
        raise InvalidArgument("not a matching of the graph")
    h = 0
    for u, v in edges:
        h |= 1 << u | 1 << v
    e_h = e_cross = e_r = 0
    for u, v in g.edges:
        inside = (h >> u & 1) + (h >> v & 1)
        if inside == 2:
            e_h += 1
        elif inside == 1:
            e_cross += 1
        else:
            e_r += 1
    return {"eH": e_h, "eCross": e_cross, "eR": e_r}


def _edges_of(g, emask):
    return [g.edges[i] for i in bits(emask)]


def check_counting_bounds(t, k, samples=200, seed=0, exhaustive=None):
    """Replay the edge-counting chain for subgraphs without a kK2.

    Universe: the (k-1)-matchings M of T (all of them when ``exhaustive``,
    which defaults to n <= 8; otherwise ``samples`` drawn with ``seed``).
    For each M the largest candidate G is T minus the edges inside R (an
    edge there would extend M to a kK2), and every kK2-free G containing M
    lies inside it, so bounding that candidate's buckets
    (eH <= 6k - 12, eCross <= 2n - 4) covers all of them.  In addition a
    maximal kK2-free subgraph containing M is grown in random edge order
    and checked to have eR = 0 and, for k >= 5, e(G) <= 2n + 6k - 16.
    The eH bound needs |V(H)| >= 3, so it is only asserted for k >= 3.
    """
    g = getattr(t, "graph", t)
    n = g.n
    if k < 2:
        raise InvalidArgument("the counting chain needs k >= 2")
    matcher = EdgeMatcher(g)
    all_m = matcher.all_matchings(k - 1)
    if exhaustive is None:
        exhaustive = n <= 8
    rng = random.Random(seed)
    if exhaustive or len(all_m) <= samples:
        chosen = all_m
        universe = f"all {k - 1}-matchings of T"
    else:
        chosen = rng.sample(all_m, samples)
        universe = f"{samples} sampled {k - 1}-matchings of T (seed {seed})"
    rep = AuditReport(f"counting_bounds_k{k}", universe, len(chosen))
    if not all_m:
        rep.note = f"T has no {k - 1}K2; nothing to check"
    if k < 5:
        rep.note = (rep.note + "; " if rep.note else "") + (
            "k < 5: the 2n+6k-16 conclusion is not asserted, buckets only")
    h_cap = 3 * (2 * k - 2) - 6
    cross_cap = 2 * n - 4
    total_cap = 2 * n + 6 * k - 16
    worst = {"eH": 0, "eCross": 0, "e_found": 0}
    for mm in chosen:
        medges = _edges_of(g, mm)
        hv = 0
        for u, v in medges:
            hv |= 1 << u | 1 << v
        cand = [e for e in g.edges if hv >> e[0] & 1 or hv >> e[1] & 1]
        buckets = matching_closure_counts(Graph(n, cand), medges)
        ok = buckets["eR"] == 0 and buckets["eCross"] <= cross_cap
        if k >= 3:
            ok = ok and buckets["eH"] <= h_cap
        worst["eH"] = max(worst["eH"], buckets["eH"])
        worst["eCross"] = max(worst["eCross"], buckets["eCross"])
        # one concrete maximal kK2-free subgraph through M
        order = [i for i in range(g.m) if not mm >> i & 1]
        rng.shuffle(order)
        gmask = mm
        for i in order:
            if matcher.find(gmask | 1 << i, k) is None:
                gmask |= 1 << i
        sub = g.edge_subgraph(gmask)
        b2 = matching_closure_counts(sub, medges)
        size = gmask.bit_count()
        worst["e_found"] = max(worst["e_found"], size)
        ok = ok and b2["eR"] == 0
        if k >= 5:
            ok = ok and size <= total_cap
        rep.instances += 1
        if not ok:
            rep.failures.append(str(sorted(medges)))
    rep.details.update(worst)
    rep.details["caps"] = {"eH": h_cap, "eCross": cross_cap, "e": total_cap}
    return rep


def edge_disjoint_matchings(g, k, count):
    """``count`` pairwise edge-disjoint k-matchings of G, or None.

    Returns a list of edge lists; every witness is re-verified.
    """
    if k < 1 or count < 1:
        raise InvalidArgument("k and count must be positive")
    matcher = EdgeMatcher(g)
    ms = matcher.all_matchings(k)
    chosen = []

    def rec(start, used):
        if len(chosen) == count:
            return True
        for i in range(start, len(ms)):
            if ms[i] & used:
                continue
            chosen.append(ms[i])
            if rec(i + 1, used | ms[i]):
                return True
            chosen.pop()
        return False

    if not rec(0, 0):
        return None
    out = [_edges_of(g, mm) for mm in chosen]
    for mm in out:
        assert len(mm) == k and is_matching(g, mm)
    union = [e for mm in out for e in mm]
    assert len(set(union)) == len(union)
    return out


def has_edge_disjoint_matchings(g, k, count):
    return edge_disjoint_matchings(g, k, count) is not None


def check_disjoint_matching_claim(t, k, trials=100, seed=0, colors=None):
    """Constructive check of the two-disjoint-matchings argument.

    For random colourings of T: let G be the representative subgraph.  If
    G holds edge-disjoint kK2s M1, M2, then any edge e of T avoiding
    V(M1) and V(M2) shares its colour with at most one of them, so e plus
    the other one is a rainbow (k+1)K2.  The audit builds that matching
    explicitly and confirms it with the independent rainbow search.
    """
    g = getattr(t, "graph", t)
    rng = random.Random(seed)
    rep = AuditReport(f"disjoint_{k}K2_claim", f"{trials} random colorings (seed {seed})",
                      trials)
    scenarios = 0
    for trial in range(trials):
        c = colors or rng.randint(max(1, g.m // 2), g.m)
        raw = [rng.randint(1, c) for _ in range(g.m)]
        renumber = {col: i + 1 for i, col in enumerate(sorted(set(raw)))}
        col = EdgeColoring(g, tuple(renumber[x] for x in raw))
        reps = [min(cl) for cl in col.classes()]
        rg = g.edge_subgraph(sum(1 << e for e in reps))
        pair = edge_disjoint_matchings(rg, k, 2)
        rep.instances += 1
        if pair is None:
            continue
        covered = {x for mm in pair for e in mm for x in e}
        ok = True
        for u, v in g.edges:
            if u in covered or v in covered:
                continue
            scenarios += 1
            ce = col.color_of(u, v)
            built = None
            for mm in pair:
                if ce not in {col.color_of(*e) for e in mm}:
                    built = [(u, v)] + mm
                    break
            idx = [g.edge_index(*e) for e in built] if built else None
            if built is None or not is_rainbow(col, idx) or \
                    find_rainbow_matching(col, k + 1) is None:
                ok = False
        if not ok:
            rep.failures.append(f"trial {trial}")
    rep.details["scenarios"] = scenarios
    return rep
