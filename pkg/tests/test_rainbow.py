import itertools
import json
import random

import pytest

from rbtri.errors import InvalidArgument, InvalidCertificate
from rbtri.graph import Graph, complete_graph, octahedron
from rbtri.matching import matching_number
from rbtri.rainbow import (
    EdgeColoring,
    RainbowCertificate,
    coloring_from_text,
    coloring_to_text,
    find_rainbow_matching,
    has_rainbow_matching,
    is_rainbow,
    max_rainbow_matching,
    representative_subgraph,
    verify_no_rainbow,
)

from oracles import has_rainbow_brute, set_partitions

K4 = complete_graph(4)


def pm_coloring():
    # each perfect matching of K4 is one colour class
    return EdgeColoring.from_mapping(K4, {
        (0, 1): 1, (2, 3): 1, (0, 2): 2, (1, 3): 2, (0, 3): 3, (1, 2): 3,
    })


def distinct(g):
    return EdgeColoring(g, tuple(range(1, g.m + 1)))


def random_coloring(rng, g, c):
    raw = [rng.randint(1, c) for _ in range(g.m)]
    ren = {x: i + 1 for i, x in enumerate(sorted(set(raw)))}
    return EdgeColoring(g, tuple(ren[x] for x in raw))


def test_coloring_validation():
    with pytest.raises(InvalidArgument):
        EdgeColoring(K4, (1, 2, 3))
    with pytest.raises(InvalidArgument, match="1-based contiguous"):
        EdgeColoring(K4, (1, 1, 1, 3, 3, 3))
    with pytest.raises(InvalidArgument):
        EdgeColoring(K4, (0, 1, 1, 1, 1, 1))
    assert pm_coloring().c == 3


def test_max_rainbow_examples():
    assert max_rainbow_matching(pm_coloring())[0] == 1
    o = octahedron()
    assert max_rainbow_matching(distinct(o))[0] == matching_number(o) == 3
    assert max_rainbow_matching(EdgeColoring(o, (1,) * o.m))[0] == 1
    size, witness = max_rainbow_matching(distinct(o))
    assert len({x for e in witness for x in e}) == 2 * size


def test_has_rainbow_examples():
    assert not has_rainbow_matching(pm_coloring(), 2)
    assert has_rainbow_matching(distinct(Graph(2, [(0, 1)])), 1)
    # k above n/2: no kK2 exists, so the certificate holds trivially
    assert verify_no_rainbow(RainbowCertificate(K4, distinct(K4), 3))
    with pytest.raises(InvalidArgument):
        has_rainbow_matching(pm_coloring(), 0)


def test_every_4_coloring_of_k4_has_rainbow_2k2():
    seen = 0
    for part in set_partitions(list(range(K4.m))):
        if len(part) != 4:
            continue
        col = EdgeColoring.from_classes(K4, part)
        assert has_rainbow_matching(col, 2)
        seen += 1
    assert seen == 65  # Stirling number S(6, 4)


def test_rainbow_search_vs_brute_force():
    rng = random.Random(21)
    o = octahedron()
    for _ in range(300):
        col = random_coloring(rng, o, rng.randint(1, 8))
        for k in (1, 2, 3):
            found = find_rainbow_matching(col, k)
            assert (found is not None) == has_rainbow_brute(o, col.colors, k)
            if found:
                assert is_rainbow(col, [o.edge_index(*e) for e in found])


def test_representative_subgraph_examples():
    o = octahedron()
    assert representative_subgraph(distinct(o)) == o
    mono = representative_subgraph(EdgeColoring(o, (1,) * o.m))
    assert mono.m == 1
    col = pm_coloring()
    classes = col.classes()
    for picks in itertools.product(*classes):
        rep = representative_subgraph(col, lambda c, cl, p=picks: next(e for e in p if e in cl))
        assert rep.m == 3 and matching_number(rep) == 1


def test_rainbow_iff_some_picker_has_matching():
    rng = random.Random(22)
    o = octahedron()
    for _ in range(60):
        col = random_coloring(rng, o, rng.randint(3, 7))
        for k in (2, 3):
            anyrep = any(
                matching_number(Graph(o.n, [o.edges[e] for e in picks])) >= k
                for picks in itertools.product(*col.classes())
            )
            assert anyrep == has_rainbow_matching(col, k)


def test_merge_monotone_and_rename_invariant():
    rng = random.Random(23)
    o = octahedron()
    for _ in range(300):
        col = random_coloring(rng, o, rng.randint(2, 10))
        size = max_rainbow_matching(col)[0]
        assert size <= min(matching_number(o), col.c)
        a, b = rng.sample(range(1, col.c + 1), 2)
        assert max_rainbow_matching(col.merged(a, b))[0] <= size
        perm = list(range(1, col.c + 1))
        rng.shuffle(perm)
        renamed = col.renamed({i + 1: p for i, p in enumerate(perm)})
        assert max_rainbow_matching(renamed)[0] == size
        assert renamed.canonical() == col.canonical()


def test_text_format_roundtrip_and_errors():
    col = pm_coloring()
    text = coloring_to_text(col)
    assert text.startswith("c 3\n")
    assert coloring_from_text(K4, text) == col
    bad = text.replace("0 1 1", "0 1 0")
    with pytest.raises(InvalidCertificate, match="1-based contiguous"):
        coloring_from_text(K4, bad)
    with pytest.raises(InvalidCertificate):
        coloring_from_text(K4, "c 3\n0 1 1\n")
    with pytest.raises(InvalidCertificate):
        coloring_from_text(K4, text.replace("c 3", "c 4"))
    with pytest.raises(InvalidCertificate):
        coloring_from_text(K4, "0 1 1\n")


def test_certificate_examples(tmp_path):
    cert = RainbowCertificate(K4, pm_coloring(), 2)
    assert verify_no_rainbow(cert)
    assert not verify_no_rainbow(RainbowCertificate(K4, distinct(K4), 2))
    assert verify_no_rainbow(RainbowCertificate(K4, distinct(K4), 3))
    path = tmp_path / "c.json"
    cert.save(path)
    back = RainbowCertificate.load(path)
    assert back.coloring == cert.coloring and back.k == 2
    data = json.loads(path.read_text())
    assert data["verdict"] == "no_rainbow_kK2" and data["colors"] == 3
    (tmp_path / "col.txt").write_text(coloring_to_text(pm_coloring()))
    ext = {"graph6": "C~", "coloring_path": "col.txt", "k": 2, "colors": 3}
    (tmp_path / "ext.json").write_text(json.dumps(ext))
    assert verify_no_rainbow(RainbowCertificate.load(tmp_path / "ext.json"))
    data["colors"] = 4
    with pytest.raises(InvalidCertificate):
        RainbowCertificate.from_json(data)
    with pytest.raises(InvalidCertificate):
        RainbowCertificate.from_json({"graph6": "C~"})
