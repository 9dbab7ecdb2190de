"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as
``python tests/test_acceptance.py``.
"""

import json
import random
import sys
import time

import pytest

from rbtri.antiramsey import (
    ar_partition_dfs,
    ar_representative_completion,
    max_edges_matching_bounded,
    rb_class,
)
from rbtri.graph import vertex_connectivity
from rbtri.matching import berge_tutte_witness, check_decomposition, matching_number, max_matching
from rbtri.proofcheck import check_counting_bounds, check_hypohamiltonian, check_three_connected
from rbtri.rainbow import EdgeColoring, RainbowCertificate, max_rainbow_matching, verify_no_rainbow
from rbtri.triangulations import canonical_form

from expected import RB, TRIANGULATION_COUNTS
from helpers import oracle, random_graph, random_subgraph, triangulations
from oracles import matching_number_brute

SEED = 20240601


def _ts(n):
    return list(triangulations(n))


def _roundtrip(cert):
    back = RainbowCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    return back.coloring == cert.coloring and verify_no_rainbow(back)


def criterion_1():
    got = {}
    for n in range(4, 9):
        gen = sorted(canonical_form(t) for t in triangulations(n))
        orc = sorted(canonical_form(t) for t in oracle(n))
        if gen != orc:
            return False, f"n={n}: generator and oracle disagree"
        got[n] = len(gen)
    want = {n: TRIANGULATION_COUNTS[n] for n in range(4, 9)}
    return got == want, f"counts {list(got.values())}"


def criterion_2():
    got = {n: rb_class(n, 2, triangulations=_ts(n)).rb for n in range(4, 9)}
    want = {4: 4, 5: 2, 6: 2, 7: 2, 8: 2}
    return got == want, f"rb(T_n, 2K2) for n=4..8: {list(got.values())}"


def criterion_3():
    r6 = rb_class(6, 3, triangulations=_ts(6))
    r6_dfs = rb_class(6, 3, triangulations=_ts(6), engine="partition_dfs")
    r7 = rb_class(7, 3, triangulations=_ts(7), budget=10**9)
    ok = r6.rb == r6_dfs.rb == 8 and r7.rb == 8
    ok = ok and r7.extremal_certificate.colors == 7 and verify_no_rainbow(r7.extremal_certificate)
    return ok, f"n=6: {r6.rb} (completion) / {r6_dfs.rb} (partition); n=7: {r7.rb}"


def criterion_4():
    r = rb_class(8, 4, triangulations=_ts(8), budget=10**9)
    ok = r.rb == 15 and r.extremal_certificate.colors == 14
    ok = ok and verify_no_rainbow(r.extremal_certificate)
    return ok, f"rb(T_8, 4K2) = {r.rb} over {len(r.per_graph_bounds)} triangulations"


def criterion_5():
    ts = _ts(11)
    r = rb_class(11, 5, triangulations=ts, budget=10**9)
    cert = r.extremal_certificate
    lower = cert.colors == 22 and verify_no_rainbow(cert)
    # upper half: the class search found no 23-colouring on any T with nu >= 5
    upper = all(hi <= 22 for _, hi in r.per_graph_bounds.values())
    fast = sum(1 for t in ts if max_edges_matching_bounded(t.graph, 4)[0] <= 22)
    ok = r.rb == 23 and lower and upper
    return ok, (f"rb(T_11, 5K2) = {r.rb}; 22-colour certificate verified; "
                f"{fast}/{len(ts)} settled by the 22-edge fast path, rest by completion search")


def criterion_6():
    lines = []
    ok = True
    for (n, k), rb in sorted(RB.items()):
        if k != 5:
            continue
        lo, hi = 2 * n + 2 * k - 9, min(2 * n + 6 * k - 16, 3 * n - 5)
        ok = ok and lo <= rb <= hi
        lines.append(f"n={n}: {lo} <= {rb} <= {hi}")
    audits = 0
    for n in range(4, 9):
        for t in triangulations(n):
            for k in range(2, n // 2 + 2):
                rep = check_counting_bounds(t, k)
                ok = ok and rep.passed
                audits += 1
    return ok, "; ".join(lines) + f"; {audits} counting audits passed"


def criterion_7():
    hypo = [check_hypohamiltonian(n, triangulations(n)) for n in (5, 6, 7)]
    conn = [check_three_connected(n, triangulations(n)) for n in range(4, 11)]
    ok = all(r.passed for r in hypo + conn)
    hypo_count = sum(r.instances for r in hypo)
    conn_count = sum(r.instances for r in conn)
    return ok and hypo_count == 8, (f"hypohamiltonian on {hypo_count} triangulations, "
                                    f"3-connected on {conn_count}")


def criterion_8():
    rng = random.Random(SEED)
    cases = 0
    certs = []
    # engine equivalence
    for n in (4, 5, 6):
        for t in triangulations(n):
            for k in (2, 3):
                a = ar_partition_dfs(t.graph, k)
                b = ar_representative_completion(t.graph, k)
                if a.ar != b.ar:
                    return False, f"engines disagree on n={n}, k={k}"
                certs += [r.certificate for r in (a, b) if r.certificate is not None]
                cases += 1
    pool = [t.graph for n in (5, 6, 7) for t in triangulations(n)]
    for _ in range(50):
        g = rng.choice(pool)
        g = g.edge_subgraph(sum(1 << i for i in rng.sample(range(g.m), min(13, g.m))))
        k = rng.choice([2, 3])
        a = ar_partition_dfs(g, k)
        b = ar_representative_completion(g, k)
        if a.ar != b.ar:
            return False, "engines disagree on a random subgraph"
        certs += [r.certificate for r in (a, b) if r.certificate is not None]
        cases += 1
    # Berge-Tutte witness
    tri = [t.graph for n in range(4, 11) for t in triangulations(n)]
    subs = [random_subgraph(rng, rng.choice(tri), rng.uniform(0.2, 0.8)) for _ in range(500)]
    for g in tri + subs:
        if check_decomposition(g, berge_tutte_witness(g)):
            return False, "Berge-Tutte witness failed"
        cases += 1
    # max matching vs brute force
    for _ in range(7000):
        g = random_graph(rng, rng.randint(1, 10), rng.choice([0.15, 0.3, 0.5]))
        if max_matching(g).size != matching_number_brute(g):
            return False, "max_matching disagrees with brute force"
        cases += 1
    # merge monotonicity
    for _ in range(3000):
        g = rng.choice(pool)
        c = rng.randint(2, g.m)
        raw = [rng.randint(1, c) for _ in range(g.m)]
        ren = {x: i + 1 for i, x in enumerate(sorted(set(raw)))}
        col = EdgeColoring(g, tuple(ren[x] for x in raw))
        if col.c < 2:
            continue
        a, b = rng.sample(range(1, col.c + 1), 2)
        if max_rainbow_matching(col.merged(a, b))[0] > max_rainbow_matching(col)[0]:
            return False, "merging classes increased the rainbow matching number"
        cases += 1
    # certificate round trip for every emitted certificate
    for n, k in [(6, 3), (7, 3), (8, 4)]:
        certs.append(rb_class(n, k, triangulations=_ts(n)).extremal_certificate)
    for cert in certs:
        if not _roundtrip(cert):
            return False, "certificate round trip failed"
        cases += 1
    return cases >= 10**4, f"{cases} cases under seed {SEED}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _report(i, ok, detail, elapsed):
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}"


@pytest.mark.parametrize("i", range(1, 9))
def test_criterion(i, capsys):
    start = time.time()
    ok, detail = CRITERIA[i - 1]()
    line = _report(i, ok, detail, time.time() - start)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, start=1):
        start = time.time()
        ok, detail = fn()
        print(_report(i, ok, detail, time.time() - start), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
