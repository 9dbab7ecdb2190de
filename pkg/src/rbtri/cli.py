"""Command-line interface: ``rbtri <command> ...``.

Exit codes: 0 verified or computed, 1 error or counterexample, 2 inconclusive.
Every successful or failing run appends a ResultRecord to the ledger in the
cache directory; ``replay`` re-runs a record and compares output bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import os
import sys

from . import store
from .antiramsey import ENGINES, compute_ar, rb_class
from .budget import DEFAULT_NODES, Budget
from .errors import BudgetExhausted, Inconclusive, RbtriError
from .formats import from_graph6, parse_graph, to_graph6
from .matching import berge_tutte_witness, matching_number
from .proofcheck import (
    check_counting_bounds,
    check_disjoint_matching_claim,
    check_hypohamiltonian,
    check_three_connected,
)
from .rainbow import (
    RainbowCertificate,
    coloring_from_text,
    find_rainbow_matching,
)
from .triangulations import DEFAULT_MAX_N, GENERATOR_VERSION, ORACLE_MAX_N, canonical_form

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2

ENGINE_VERSIONS = {
    "generator": GENERATOR_VERSION,
    "partition_dfs": "1",
    "representative_completion": "1",
}


class Failure(Exception):
    """A comparison against a known value failed."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


def expected_rb(n, k):
    """Known closed forms for rb(T_n, kK2), or None where none is claimed."""
    if k == 2 and n >= 4:
        return 4 if n == 4 else 2
    if k == 3 and n >= 6:
        return 8 if n == 6 else n + 1
    if k == 4 and n >= 8:
        return 2 * n - 1
    if k == 5 and n >= 11:
        return 2 * n + 1
    return None


def rb_bounds(n, k):
    """Range every rb(T_n, kK2) must lie in, for k >= 5."""
    lo = 2 * n + 2 * k - 9
    hi = min(2 * n + 6 * k - 16, 3 * n - 5)
    return lo, hi


def parse_range(text):
    """``"4..8"`` or ``"7"`` to a list of ints."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


class Out:
    """Collects output so the exact bytes can be ledgered."""

    def __init__(self, fmt):
        self.fmt = fmt
        self.buf = io.StringIO()

    def emit(self, obj):
        if self.fmt == "json":
            self.buf.write(json.dumps(obj) + "\n")
        else:
            self.buf.write("  ".join(f"{k}={_cell(v)}" for k, v in obj.items()) + "\n")

    def line(self, text):
        self.buf.write(text + "\n")

    def text(self):
        return self.buf.getvalue()


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return "-" if v is None else str(v)


def _cache_dir(args):
    return args.cache_dir or store.default_cache_dir()


def _cert_dir(args):
    d = args.out or os.path.join(_cache_dir(args), "certificates")
    os.makedirs(d, exist_ok=True)
    return d


def _short(text):
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _load_graph(args):
    if args.graph6 is not None:
        return from_graph6(args.graph6)
    with open(args.graph) as fh:
        return parse_graph(fh.read())


def _triangulations(args, n):
    return store.load_triangulations(n, _cache_dir(args))


# -- commands ----------------------------------------------------------------


def cmd_gen(args, out):
    limit = ORACLE_MAX_N if args.oracle else DEFAULT_MAX_N
    if not 4 <= args.n <= limit:
        raise RbtriError(f"--n must lie in 4..{limit}")
    if args.oracle:
        ts = store.oracle_generate(args.n)
        version = "oracle"
    else:
        ts = _triangulations(args, args.n)
        version = GENERATOR_VERSION
    dest = args.out or _cache_dir(args)
    tag = ".oracle" if args.oracle else ""
    path = store.write_triangulations(ts, args.n, dest, version, tag)
    out.emit({"n": args.n, "count": len(ts), "path": path, "generator_version": version})
    return EXIT_OK


def cmd_ar(args, out):
    if args.n is not None:
        graphs = [(canonical_form(t).hex(), t.graph) for t in _triangulations(args, args.n)]
    else:
        g = _load_graph(args)
        graphs = [(to_graph6(g), g)]
    status = EXIT_OK
    for code, g in graphs:
        budget = Budget(args.budget_nodes)
        row = {"code": code, "n": g.n, "k": args.k}
        try:
            res = compute_ar(g, args.k, args.engine, budget)
        except BudgetExhausted as exc:
            row.update({"ar": None, "lo": exc.lo, "hi": exc.hi, "engine": args.engine,
                        "nodes_explored": budget.nodes, "certificate_path": None,
                        "status": "inconclusive"})
            out.emit(row)
            status = EXIT_INCONCLUSIVE
            continue
        path = None
        if res.certificate is not None and not res.vacuous:
            path = os.path.join(_cert_dir(args), f"ar_{_short(code)}_k{args.k}.json")
            res.certificate.save(path)
        row.update({"ar": res.ar, "engine": res.engine, "nodes_explored": res.nodes,
                    "certificate_path": path})
        if res.vacuous:
            row["vacuous"] = True
        out.emit(row)
    return status


def _run_rb(args, n, k, out, per_graph=True):
    ts = _triangulations(args, n)
    res = rb_class(n, k, Budget(args.budget_nodes).limit, args.engine, ts,
                   args.jobs, args.exact)
    cert_path = os.path.join(_cert_dir(args), f"rb_n{n}_k{k}.json")
    res.extremal_certificate.save(cert_path)
    if per_graph:
        for code, (lo, hi) in sorted(res.per_graph_bounds.items()):
            out.emit({
                "code": code, "n": n, "k": k,
                "ar": lo if lo == hi else None, "lo": lo, "hi": hi,
                "engine": res.engine,
                "nodes_explored": res.per_graph_nodes.get(code, 0),
                "certificate_path": cert_path if code == res.extremal_graph else None,
            })
    return res, cert_path


def cmd_rb(args, out):
    res, cert_path = _run_rb(args, args.n, args.k, out)
    summary = res.to_json()
    summary["certificate_path"] = cert_path
    out.emit({"summary": summary} if args.format == "json" else summary)
    return EXIT_OK


def _report(out, rep):
    out.emit(rep.to_json())
    return rep.passed


def cmd_verify(args, out):
    ok = True
    if args.suite == "th2":
        for n in args.n:
            for k in (2, 3, 4):
                if n < 2 * k:
                    continue
                want = expected_rb(n, k)
                res, path = _run_rb(args, n, k, out, per_graph=False)
                good = res.rb == want
                out.emit({"check": f"rb(T_{n},{k}K2)", "expected": want, "got": res.rb,
                          "certificate_path": path, "verdict": "pass" if good else "fail"})
                if not good:
                    raise Failure(f"rb(T_{n},{k}K2) = {res.rb}, expected {want}",
                                  res.extremal_certificate)
    elif args.suite == "them1":
        for n in args.n:
            if n < 11:
                raise RbtriError("the 5K2 suite applies for n >= 11")
            want = expected_rb(n, 5)
            res, path = _run_rb(args, n, 5, out, per_graph=False)
            lo, hi = rb_bounds(n, 5)
            good = res.rb == want and lo <= res.rb <= hi
            out.emit({"check": f"rb(T_{n},5K2)", "expected": want, "got": res.rb,
                      "bounds": [lo, hi], "certificate_colors": res.extremal_certificate.colors,
                      "certificate_path": path, "verdict": "pass" if good else "fail"})
            if not good:
                raise Failure(f"rb(T_{n},5K2) = {res.rb}, expected {want}",
                              res.extremal_certificate)
    else:
        for n in args.n:
            ts = _triangulations(args, n)
            if n >= 5:
                rep = check_hypohamiltonian(n, ts)
                # only orders 5..7 are claimed; others are reported, not judged
                if 5 <= n <= 7:
                    ok = _report(out, rep) and ok
                else:
                    out.emit(rep.to_json())
            ok = _report(out, check_three_connected(n, ts)) and ok
            if n <= 8:
                for k in range(2, n // 2 + 2):
                    for t in ts:
                        ok = _report(out, check_counting_bounds(t, k)) and ok
    if not ok:
        raise Failure("an audit failed")
    return EXIT_OK


def cmd_decomp(args, out):
    dec = berge_tutte_witness(_load_graph(args))
    full = dec.as_dict()
    row = {"S": full["S"], "sizes": full["component_sizes"], "B": full["B"],
           "d": full["d"], "deficiency": full["deficiency"]}
    if args.verbose:
        row.update(full)
    out.emit(row)
    return EXIT_OK


def cmd_cert_check(args, out):
    if args.certificate:
        cert = RainbowCertificate.load(args.certificate)
        g, col, k = cert.graph, cert.coloring, cert.k
    else:
        with open(args.graph) as fh:
            g = parse_graph(fh.read())
        with open(args.coloring) as fh:
            col = coloring_from_text(g, fh.read())
        k = args.k
    found = find_rainbow_matching(col, k)
    if found is None:
        out.emit({"k": k, "colors": col.c, "verdict": "no_rainbow_kK2"})
        return EXIT_OK
    out.emit({"k": k, "colors": col.c, "verdict": "rainbow_found",
              "rainbow_matching": [list(e) for e in found]})
    return EXIT_FAIL


def cmd_lemma(args, out):
    ok = True
    for n in args.n:
        ts = _triangulations(args, n)
        if args.lemma == "hypo":
            ok = _report(out, check_hypohamiltonian(n, ts)) and ok
        elif args.lemma == "conn":
            ok = _report(out, check_three_connected(n, ts)) and ok
        else:
            k = args.k
            for t in ts:
                if matching_number(t.graph) < k - 1:
                    continue
                if args.lemma == "counting":
                    rep = check_counting_bounds(t, k, seed=args.seed)
                else:
                    rep = check_disjoint_matching_claim(t, k, trials=args.trials, seed=args.seed)
                ok = _report(out, rep) and ok
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------


def _graph_args(p, required=True):
    grp = p.add_mutually_exclusive_group(required=required)
    grp.add_argument("--graph", help="file in graph6 or 'n' + 'u v' lines format")
    grp.add_argument("--graph6", help="graph6 string")
    return grp


def _global_args(p, suppress):
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--budget-nodes", type=int, default=dflt(DEFAULT_NODES),
                   help="search node limit per triangulation (default 1e9)")
    p.add_argument("--jobs", type=int, default=dflt(1))
    p.add_argument("--cache-dir", default=dflt(None),
                   help="cache and ledger directory (env RBTRI_CACHE)")
    p.add_argument("--format", choices=("json", "table"), default=dflt("json"))
    p.add_argument("-v", "--verbose", action="store_true", default=dflt(False))


def build_parser():
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_args(common, suppress=True)
    ap = argparse.ArgumentParser(prog="rbtri",
                                 description="Rainbow numbers of matchings in plane triangulations.")
    _global_args(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate T_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle (n <= 8)")
    p.add_argument("--out", help="output directory (default: cache dir)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ar", parents=[common], help="ar(G, kK2) per graph")
    src = _graph_args(p)
    src.add_argument("--n", type=int, help="every triangulation of order n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="representative_completion")
    p.add_argument("--out", help="certificate directory")
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("rb", parents=[common], help="rb(T_n, kK2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="representative_completion")
    p.add_argument("--exact", action="store_true", help="compute ar exactly for every T")
    p.add_argument("--out", help="certificate directory")
    p.set_defaults(func=cmd_rb)

    p = sub.add_parser("verify", parents=[common], help="compare against the known formulas")
    p.add_argument("--suite", choices=("th2", "them1", "lemmas"), required=True)
    p.add_argument("--n", type=parse_range, required=True, help="e.g. 4..8")
    p.add_argument("--engine", choices=ENGINES, default="representative_completion")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--out", help="certificate directory")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decomp", parents=[common], help="Berge-Tutte witness as JSON")
    _graph_args(p)
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("cert", parents=[common], help="certificate tools")
    csub = p.add_subparsers(dest="cert_command", required=True)
    c = csub.add_parser("check", parents=[common], help="verify a no-rainbow certificate")
    c.add_argument("--certificate", help="certificate JSON")
    c.add_argument("--graph")
    c.add_argument("--coloring")
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_cert_check)

    p = sub.add_parser("lemma", parents=[common], help="run one structural audit")
    p.add_argument("lemma", choices=("hypo", "conn", "counting", "claim"))
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lemma)
    return ap


def _input_digest(args):
    """Hash of the file contents a command reads, so edits change the hash."""
    h = hashlib.sha256()
    for name in ("graph", "coloring", "certificate"):
        path = getattr(args, name, None)
        if path:
            with open(path, "rb") as fh:
                h.update(name.encode() + b"\0" + fh.read())
    return h.hexdigest()


def _validate(args):
    if args.command == "cert" and not args.certificate:
        if not (args.graph and args.coloring and args.k is not None):
            raise RbtriError("cert check needs --certificate or all of --graph, --coloring, --k")


def run(argv, stdout=None, record=True):
    """Execute one command; returns ``(exit_code, output_text)``."""
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Out(args.format)
    try:
        _validate(args)
        code = args.func(args, out)
    except Failure as exc:
        out.line("COUNTEREXAMPLE: " + str(exc))
        if exc.certificate is not None:
            out.line(json.dumps(exc.certificate.to_json()))
        code = EXIT_FAIL
    except Inconclusive as exc:
        out.emit({"status": "inconclusive", "message": str(exc), "lo": exc.lo, "hi": exc.hi})
        code = EXIT_INCONCLUSIVE
    except BudgetExhausted as exc:
        out.emit({"status": "inconclusive", "message": str(exc), "lo": exc.lo, "hi": exc.hi})
        code = EXIT_INCONCLUSIVE
    except (RbtriError, ValueError, OSError) as exc:
        text = out.text()
        stdout.write(text)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL, text
    text = out.text()
    stdout.write(text)
    if record:
        params = {"argv": list(argv), "inputs_digest": _input_digest(args)}
        rec = store.make_record(args.command, params, {"stdout": text, "exit_code": code},
                                ENGINE_VERSIONS, args.budget_nodes)
        try:
            store.append_record(rec, _cache_dir(args))
        except OSError as exc:
            log.warning("ledger not written: %s", exc)
    return code, text


def replay(record):
    """Re-run a ledger record; True iff the output bytes and exit code match."""
    code, text = run(record["parameters"]["argv"], stdout=io.StringIO(), record=False)
    want = record["outputs"]
    return code == want["exit_code"] and text == want["stdout"]


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, _ = run(argv)
    except BrokenPipeError:
        # reader closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK
    return code


if __name__ == "__main__":
    sys.exit(main())
