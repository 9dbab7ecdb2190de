"""Exact anti-Ramsey values ar(G, kK2) and class rainbow numbers.

Two independent engines compute ar(G, kK2), the largest number of colours
in a colouring of G without a rainbow kK2:

* ``ar_partition_dfs`` walks set partitions of E(G) in restricted growth
  order.
* ``ar_representative_completion`` fixes the set R of class minima (a
  c-edge subgraph with no kK2, since its matchings are rainbow) and then
  searches for an assignment of the other edges to classes.

Only colourings with exactly c colours are ever tested: merging two colour
classes cannot create a rainbow matching, so a bad colouring with more
colours yields one with exactly c.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .budget import as_budget
from .errors import BudgetExhausted, Inconclusive, InvalidArgument
from .formats import to_graph6
from .graph import bits
from .matching import EdgeMatcher, matching_number
from .rainbow import EdgeColoring, RainbowCertificate, verify_no_rainbow
from .triangulations import canonical_form, generate

log = logging.getLogger(__name__)

ENGINES = ("partition_dfs", "representative_completion")


def _check_k(k):
    if k < 1:
        raise InvalidArgument("k must be at least 1")


class Host:
    """Per-(graph, k) precomputation shared by the searches."""

    def __init__(self, g, k):
        self.g = g
        self.k = k
        self.m = g.m
        self.matcher = EdgeMatcher(g)
        self._matchings = None

    @property
    def matchings(self):
        """Every kK2 of G as an edge bitmask."""
        if self._matchings is None:
            self._matchings = self.matcher.all_matchings(self.k)
        return self._matchings

    def kfree(self, emask):
        return self.matcher.find(emask, self.k) is None


@dataclass
class ArResult:
    graph_id: str
    k: int
    ar: int
    certificate: RainbowCertificate | None
    engine: str
    nodes: int = 0
    vacuous: bool = False

    def to_json(self):
        return {
            "code": self.graph_id,
            "k": self.k,
            "ar": self.ar,
            "engine": self.engine,
            "nodes_explored": self.nodes,
            "vacuous": self.vacuous,
        }


def _vacuous(g, k, engine):
    cert = RainbowCertificate(g, EdgeColoring(g, tuple(range(1, g.m + 1))), k)
    return ArResult(to_graph6(g), k, g.m, cert, engine, vacuous=True)


def _certificate(g, k, coloring):
    if coloring is None:
        return None
    cert = RainbowCertificate(g, coloring, k)
    if not verify_no_rainbow(cert):
        raise AssertionError("search produced a coloring with a rainbow matching")
    return cert


# -- engine 1: set partitions ------------------------------------------------


def ar_partition_dfs(g, k, budget=None):
    """ar(G, kK2) by DFS over set partitions of E(G).

    Edge i receives a colour in 1..(colours so far + 1).  A branch is cut
    when the coloured prefix already holds a rainbow kK2 (colouring more
    edges never destroys one) or when even giving every remaining edge a
    fresh colour cannot beat the best count found.
    """
    _check_k(k)
    budget = as_budget(budget)
    if matching_number(g) < k:
        return _vacuous(g, k, "partition_dfs")
    host = Host(g, k)
    m = g.m
    closing = [[] for _ in range(m)]
    for mm in host.matchings:
        idx = list(bits(mm))
        closing[idx[-1]].append(idx[:-1])
    colors = [0] * m
    best = 0
    best_colors = None

    def rec(i, used):
        nonlocal best, best_colors
        budget.tick()
        if used + (m - i) <= best:
            return
        if i == m:
            best = used
            best_colors = tuple(colors)
            return
        for col in range(used + 1, 0, -1):
            colors[i] = col
            bad = False
            for rest in closing[i]:
                seen = {col}
                for e in rest:
                    seen.add(colors[e])
                if len(seen) == k:
                    bad = True
                    break
            if not bad:
                rec(i + 1, used + 1 if col > used else used)
        colors[i] = 0

    try:
        rec(0, 0)
    except BudgetExhausted as exc:
        raise BudgetExhausted(
            f"ar_partition_dfs: budget exhausted, ar >= {best}",
            lo=best, hi=None, nodes=budget.nodes,
        ) from exc
    coloring = EdgeColoring(g, best_colors) if best_colors else None
    return ArResult(to_graph6(g), k, best, _certificate(g, k, coloring),
                    "partition_dfs", nodes=budget.nodes)


# -- subgraphs with bounded matching number ----------------------------------


def _hitting_sets(host, size, forbid, budget, k=None):
    """Yield edge masks D with |D| == size meeting every kK2 of G.

    Edges in ``forbid`` are never put in D.  Branching: take a kK2 that D
    misses and try each of its deletable edges in turn, forbidding the
    earlier ones, so each D is produced once.  A greedy packing of kK2s
    with disjoint deletable parts bounds the deletions still needed.
    """
    k = host.k if k is None else k
    find = host.matcher.find
    full = host.g.full_mask

    def need(dmask, fmask):
        avail = full & ~dmask
        count = 0
        first = None
        while True:
            mm = find(avail, k)
            if mm is None:
                return count, first
            mmask = 0
            for e in mm:
                mmask |= 1 << e
            free = mmask & ~fmask
            if not free:
                return None, None
            if first is None:
                first = mmask
            count += 1
            avail &= ~free

    def rec(dmask, fmask, dsize):
        budget.tick()
        count, first = need(dmask, fmask)
        if count is None or dsize + count > size:
            return
        if count == 0:
            spare = full & ~dmask & ~fmask
            extra = size - dsize
            for combo in combinations(list(bits(spare)), extra):
                x = 0
                for e in combo:
                    x |= 1 << e
                yield dmask | x
            return
        free = first & ~fmask
        f = fmask
        for e in bits(free):
            yield from rec(dmask | (1 << e), f, dsize + 1)
            f |= 1 << e

    yield from rec(0, forbid, 0)


def _kfree_subgraphs_by_addition(host, size, budget):
    """Yield edge masks R with |R| == size, edge 0 in R, and no kK2."""
    m = host.m
    find = host.matcher.find
    k = host.k

    def rec(i, rmask, rsize):
        budget.tick()
        if rsize == size:
            yield rmask
            return
        if rsize + (m - i) < size:
            return
        bit = 1 << i
        if find(rmask | bit, k) is None:
            yield from rec(i + 1, rmask | bit, rsize + 1)
        yield from rec(i + 1, rmask, rsize)

    if m and find(1, k) is None:
        yield from rec(1, 1, 1)


def kfree_subgraphs(host, size, budget, rep_order=False):
    """Edge masks of ``size``-edge subgraphs of G with no kK2.

    With ``rep_order`` only subgraphs containing edge 0 are produced (edge 0
    is the minimum of its colour class in every colouring).
    """
    m = host.m
    if size > m or size < 0:
        return
    forbid = 1 if rep_order else 0
    if m - size <= size:
        full = host.g.full_mask
        for d in _hitting_sets(host, m - size, forbid, budget):
            yield full & ~d
    elif rep_order:
        yield from _kfree_subgraphs_by_addition(host, size, budget)
    else:
        for d in _hitting_sets(host, m - size, 0, budget):
            yield host.g.full_mask & ~d


def max_edges_matching_bounded(g, b, budget=None):
    """Largest spanning subgraph F of G with nu(F) <= b.

    Returns ``(edge_count, witness_graph)``.  Searches for the smallest set
    of edges meeting every (b+1)-matching, one deletion count at a time.
    """
    if b < 0:
        raise InvalidArgument("b must be non-negative")
    budget = as_budget(budget)
    host = Host(g, b + 1)
    full = g.full_mask
    s = 0
    try:
        while True:
            for d in _hitting_sets(host, s, 0, budget):
                kept = full & ~d
                return g.m - s, g.edge_subgraph(kept)
            s += 1
    except BudgetExhausted as exc:
        raise BudgetExhausted(
            f"max_edges_matching_bounded: budget exhausted, M <= {g.m - s}",
            lo=None, hi=g.m - s, nodes=budget.nodes,
        ) from exc


# -- engine 2: representative completion --------------------------------------


def _complete(host, rmask, budget):
    """Assign every edge outside R to a class so that no rainbow kK2 remains.

    Classes are keyed by their minimum edge, which must lie in R and be
    smaller than every other edge of the class.  Returns ``{edge: rep}`` or
    None.
    """
    m = host.m
    dmask = host.g.full_mask & ~rmask
    dlist = list(bits(dmask))
    domain = {d: rmask & ((1 << d) - 1) for d in dlist}
    multi = []
    for mm in host.matchings:
        inter = mm & dmask
        if inter & (inter - 1):
            multi.append(mm)
        else:
            d = inter.bit_length() - 1
            domain[d] &= mm
            if not domain[d]:
                return None
    order = sorted(dlist, key=lambda d: (domain[d].bit_count(), d))
    pos = {d: i for i, d in enumerate(order)}
    checks = [[] for _ in order]
    for mm in multi:
        ds = [d for d in bits(mm & dmask)]
        last = max(pos[d] for d in ds)
        checks[last].append((mm, ds))
    rep = {}

    def killed(mm, ds):
        seen = 0
        for d in ds:
            r = rep[d]
            bit = 1 << r
            if mm & bit or seen & bit:
                return True
            seen |= bit
        return False

    def rec(i):
        budget.tick()
        if i == len(order):
            return True
        d = order[i]
        for r in bits(domain[d]):
            rep[d] = r
            if all(killed(mm, ds) for mm, ds in checks[i]) and rec(i + 1):
                return True
        del rep[d]
        return False

    if rec(0):
        return dict(rep)
    return None


def _coloring_from_reps(g, rmask, rep):
    reps = list(bits(rmask))
    color = {r: i + 1 for i, r in enumerate(reps)}
    colors = [0] * g.m
    for r in reps:
        colors[r] = color[r]
    for d, r in rep.items():
        colors[d] = color[r]
    return EdgeColoring(g, tuple(colors))


def find_bad_coloring(g, k, c, budget=None, host=None):
    """A surjective c-colouring of G with no rainbow kK2, or None.

    Exhaustive: every such colouring has its class minima forming a c-edge
    subgraph with no kK2, and all of those are tried.
    """
    _check_k(k)
    budget = as_budget(budget)
    host = host or Host(g, k)
    if c < 1 or c > g.m:
        return None
    for rmask in kfree_subgraphs(host, c, budget, rep_order=True):
        rep = _complete(host, rmask, budget)
        if rep is not None:
            return _coloring_from_reps(g, rmask, rep)
    return None


def ar_representative_completion(g, k, budget=None):
    """ar(G, kK2) by descending c over representative subgraphs.

    c starts at the largest edge count of a subgraph with no kK2; the first
    c with a completion is the answer.
    """
    _check_k(k)
    budget = as_budget(budget)
    if matching_number(g) < k:
        return _vacuous(g, k, "representative_completion")
    host = Host(g, k)
    hi = g.m
    try:
        hi, _ = max_edges_matching_bounded(g, k - 1, budget)
        for c in range(hi, 0, -1):
            col = find_bad_coloring(g, k, c, budget, host)
            if col is not None:
                return ArResult(to_graph6(g), k, c, _certificate(g, k, col),
                                "representative_completion", nodes=budget.nodes)
            hi = c - 1
    except BudgetExhausted as exc:
        tmpl = cover_template(g, k)
        lo = tmpl.c if tmpl is not None else None
        raise BudgetExhausted(
            f"ar_representative_completion: budget exhausted, {lo} <= ar <= {hi}",
            lo=lo, hi=hi, nodes=budget.nodes,
        ) from exc
    return ArResult(to_graph6(g), k, 0, None, "representative_completion",
                    nodes=budget.nodes)


def compute_ar(g, k, engine="representative_completion", budget=None):
    if engine == "partition_dfs":
        return ar_partition_dfs(g, k, budget)
    if engine == "representative_completion":
        return ar_representative_completion(g, k, budget)
    raise InvalidArgument(f"unknown engine {engine!r}")


# -- lower-bound certificates ------------------------------------------------


@dataclass(frozen=True)
class NotFound:
    reason: str

    def __bool__(self):
        return False


def cover_template(g, k):
    """Colouring from a (k-2)-set S meeting the most edges.

    Edges meeting S get distinct colours and all other edges share one.
    Any kK2 has at most k-2 edges meeting S, so two of its edges share the
    common colour.  Returns None when no such colouring exists (k < 2).
    """
    if k < 2:
        return None
    best = None
    for s in combinations(range(g.n), k - 2):
        smask = 0
        for v in s:
            smask |= 1 << v
        meet = [i for i, (u, v) in enumerate(g.edges) if smask >> u & 1 or smask >> v & 1]
        if best is None or len(meet) > len(best):
            best = meet
    colors = [0] * g.m
    nxt = 1
    rest_color = None
    for i in range(g.m):
        if i in best:
            colors[i] = nxt
            nxt += 1
        else:
            if rest_color is None:
                rest_color = nxt
                nxt += 1
            colors[i] = rest_color
    return EdgeColoring(g, tuple(colors))


def reduce_colors(col, target):
    """Merge classes (largest colours into colour 1) until ``target`` remain."""
    while col.c > target:
        col = col.merged(1, col.c)
    return col


def lower_bound_certificate(t, k, colors_target, budget=None):
    """A verified certificate with ``colors_target`` colours, or NotFound.

    NotFound only means nothing was found within the budget.
    """
    _check_k(k)
    g = getattr(t, "graph", t)
    if matching_number(g) < k:
        raise InvalidArgument("lower_bound_certificate needs nu(T) >= k")
    if colors_target < 1 or colors_target > g.m:
        return NotFound("target out of range")
    template = cover_template(g, k)
    if template is not None and template.c >= colors_target:
        cert = RainbowCertificate(g, reduce_colors(template, colors_target), k)
        if verify_no_rainbow(cert):
            return cert
    try:
        col = find_bad_coloring(g, k, colors_target, budget)
    except BudgetExhausted:
        return NotFound("budget_exhausted")
    if col is None:
        return NotFound("exhausted: no such coloring")
    cert = RainbowCertificate(g, col, k)
    assert verify_no_rainbow(cert)
    return cert


# -- class rainbow numbers -----------------------------------------------------


@dataclass
class RbClassResult:
    """rb(T_n, kK2) with its extremal witness.

    ``per_graph_ar`` holds exact values where they were pinned down;
    ``per_graph_bounds`` holds ``(lo, hi)`` for every triangulation that
    contains a kK2.
    """

    n: int
    k: int
    rb: int
    extremal_graph: str
    extremal_certificate: RainbowCertificate
    per_graph_ar: dict = field(default_factory=dict)
    per_graph_bounds: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)
    engine: str = "representative_completion"
    nodes: int = 0
    per_graph_nodes: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "rb": self.rb,
            "engine": self.engine,
            "extremal_graph": self.extremal_graph,
            "extremal_graph6": to_graph6(self.extremal_certificate.graph),
            "certificate_colors": self.extremal_certificate.colors,
            "triangulations": len(self.per_graph_bounds) + len(self.skipped),
            "skipped_nu_below_k": len(self.skipped),
            "per_graph_ar": dict(sorted(self.per_graph_ar.items())),
            "nodes_explored": self.nodes,
        }


def _code_hex(t):
    return canonical_form(t).hex()


def _decide(args):
    """Worker: does T admit a bad colouring with c colours?"""
    g, k, c, limit = args
    budget = as_budget(limit)
    try:
        col = find_bad_coloring(g, k, c, budget)
    except BudgetExhausted:
        return "budget", None, budget.nodes
    return ("yes" if col is not None else "no"), col, budget.nodes


def _exact_ar(args):
    g, k, engine, limit = args
    budget = as_budget(limit)
    try:
        res = compute_ar(g, k, engine, budget)
    except BudgetExhausted as exc:
        return None, exc.lo, exc.hi, budget.nodes
    return res, res.ar, res.ar, budget.nodes


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def rb_class(n, k, budget=None, engine="representative_completion",
             triangulations=None, jobs=1, exact=False):
    """rb(T_n, kK2) = 1 + max ar(T, kK2) over T in T_n containing a kK2.

    ``budget`` is a node limit per triangulation and per decision.  With
    ``exact`` (or the partition engine) every ar(T) is computed; otherwise
    the maximum is located by testing colour counts upward from the best
    cover-template certificate, dropping each T at the first count it
    cannot reach.
    """
    _check_k(k)
    if n < 4:
        raise InvalidArgument("plane triangulations need n >= 4")
    if n < 2 * k:
        raise InvalidArgument(f"n={n} < 2k={2 * k}: no triangulation contains kK2")
    if engine not in ENGINES:
        raise InvalidArgument(f"unknown engine {engine!r}")
    limit = as_budget(budget).limit
    ts = triangulations if triangulations is not None else generate(n)
    codes = [_code_hex(t) for t in ts]
    cand = []
    skipped = []
    for code, t in zip(codes, ts):
        if matching_number(t.graph) >= k:
            cand.append((code, t))
        else:
            skipped.append(code)
    if not cand:
        raise InvalidArgument("no triangulation of this order contains kK2")
    nodes = 0
    per_nodes = {code: 0 for code, _ in cand}

    if exact or engine == "partition_dfs":
        outs = _map(_exact_ar, [(t.graph, k, engine, limit) for _, t in cand], jobs)
        per_ar, bounds = {}, {}
        best = None
        pending = []
        for (code, t), (res, lo, hi, used) in zip(cand, outs):
            nodes += used
            per_nodes[code] = used
            bounds[code] = (lo, hi)
            if res is None:
                pending.append(code)
                continue
            per_ar[code] = res.ar
            if best is None or res.ar > best[1].ar:
                best = (code, res)
        if pending:
            los = [b[0] for b in bounds.values() if b[0] is not None]
            his = [b[1] for b in bounds.values()]
            raise Inconclusive(
                f"{len(pending)} triangulation(s) ran out of budget",
                lo=1 + max(los) if los else None,
                hi=None if None in his else 1 + max(his),
            )
        code, res = best
        return RbClassResult(n, k, res.ar + 1, code, res.certificate, per_ar, bounds,
                             skipped, engine, nodes, per_nodes)

    bounds = {}
    lo, lo_code, lo_cert = 0, None, None
    for code, t in cand:
        tmpl = cover_template(t.graph, k)
        c = tmpl.c if tmpl is not None else 0
        bounds[code] = [c, t.graph.m]
        if c > lo:
            lo, lo_code = c, code
            lo_cert = RainbowCertificate(t.graph, tmpl, k)
    if lo_cert is not None:
        assert verify_no_rainbow(lo_cert)
    alive = [(code, t) for code, t in cand]
    c = lo + 1
    inconclusive = []
    while alive and c <= max(t.graph.m for _, t in alive):
        outs = _map(_decide, [(t.graph, k, c, limit) for _, t in alive], jobs)
        nxt = []
        for (code, t), (verdict, col, used) in zip(alive, outs):
            nodes += used
            per_nodes[code] += used
            if verdict == "yes":
                bounds[code][0] = c
                nxt.append((code, t))
                if lo < c:
                    lo, lo_code = c, code
                    lo_cert = RainbowCertificate(t.graph, col, k)
                    assert verify_no_rainbow(lo_cert)
            elif verdict == "no":
                bounds[code][1] = c - 1
            else:
                inconclusive.append(code)
        log.info("rb_class n=%d k=%d: c=%d, %d of %d triangulations admit it",
                 n, k, c, len(nxt), len(alive))
        if inconclusive:
            raise Inconclusive(
                f"{len(inconclusive)} triangulation(s) undecided at c={c}",
                lo=lo + 1, hi=None,
            )
        if not nxt:
            break
        alive = nxt
        c += 1
    per_ar = {code: b[0] for code, b in bounds.items() if b[0] == b[1]}
    return RbClassResult(n, k, lo + 1, lo_code, lo_cert, per_ar,
                         {code: tuple(b) for code, b in bounds.items()},
                         skipped, engine, nodes, per_nodes)
