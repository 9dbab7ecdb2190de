"""Triangulation cache and the append-only result ledger."""

from __future__ import annotations

import hashlib
import json
import logging
import os

from .formats import from_graph6, to_graph6
from .triangulations import (
    GENERATOR_VERSION,
    DEFAULT_MAX_N,
    Triangulation,
    canonical_form,
    generate_levels,
    oracle_generate,
)

log = logging.getLogger(__name__)

LEDGER_NAME = "ledger.jsonl"


def default_cache_dir():
    return os.environ.get("RBTRI_CACHE") or os.path.join(
        os.path.expanduser("~"), ".cache", "rbtri")


def _paths(cache_dir, n, tag=""):
    base = os.path.join(cache_dir, f"T{n}{tag}")
    return base + ".g6", base + ".meta.json"


def write_triangulations(ts, n, out_dir, version=GENERATOR_VERSION, tag=""):
    os.makedirs(out_dir, exist_ok=True)
    g6_path, meta_path = _paths(out_dir, n, tag)
    with open(g6_path, "w") as fh:
        for t in ts:
            fh.write(to_graph6(t.graph) + "\n")
    meta = {"n": n, "count": len(ts), "generator_version": version}
    with open(meta_path, "w") as fh:
        json.dump(meta, fh, sort_keys=True)
        fh.write("\n")
    return g6_path


def read_cached(n, cache_dir):
    """Triangulations from ``Tn.g6`` if present and current, else None."""
    g6_path, meta_path = _paths(cache_dir, n)
    try:
        with open(meta_path) as fh:
            meta = json.load(fh)
        with open(g6_path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except (OSError, ValueError):
        return None
    if meta.get("generator_version") != GENERATOR_VERSION or meta.get("count") != len(lines):
        log.info("cache for n=%d is stale; regenerating", n)
        return None
    ts = [Triangulation.from_graph(from_graph6(line)) for line in lines]
    ts.sort(key=canonical_form)
    return ts


def load_triangulations(n, cache_dir=None, limit=DEFAULT_MAX_N, oracle=False):
    """Cache-first access to T_n.

    On a miss, generation resumes from the largest cached order below n and
    every new level is written back.
    """
    if oracle:
        return oracle_generate(n)
    start = None
    if cache_dir:
        for m in range(n, 3, -1):
            ts = read_cached(m, cache_dir)
            if ts is not None:
                if m == n:
                    return ts
                start = (m, ts)
                break
    level = None
    for order, level in generate_levels(n, limit, start):
        if cache_dir and (start is None or order > start[0]):
            try:
                write_triangulations(level, order, cache_dir)
            except OSError as exc:
                log.warning("could not write cache: %s", exc)
                cache_dir = None
    return list(level)


# -- result ledger ----------------------------------------------------------


def inputs_hash(params):
    blob = json.dumps(params, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def make_record(command, params, outputs, engine_versions, node_budget):
    return {
        "command": command,
        "parameters": params,
        "inputs_hash": inputs_hash(params),
        "outputs": outputs,
        "engine_versions": engine_versions,
        "node_budget": node_budget,
    }


def append_record(record, cache_dir):
    os.makedirs(cache_dir, exist_ok=True)
    with open(os.path.join(cache_dir, LEDGER_NAME), "a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def read_ledger(cache_dir):
    path = os.path.join(cache_dir, LEDGER_NAME)
    if not os.path.exists(path):
        return []
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
