"""Command-line front end: ``lfsat construct | check | sat-search | verify-paper``.

Exit codes: 0 success, 1 a property was violated (or a verdict was negative),
2 usage error, 3 a resource bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import families, search, verifier
from .containment import LinearForestSpec
from .graph import Graph, to_dot
from .graph6 import Graph6Error, graph6_decode, graph6_encode
from .parallel import default_threads
from .saturation import SaturationCertificate, check_saturated, validate_certificate

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("lfsat")


class UsageError(Exception):
    pass


class ResourceError(Exception):
    pass


def _spec(text: str) -> LinearForestSpec:
    try:
        return LinearForestSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """``"1..3"`` or ``"2"`` or ``"1,3"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 1..3, got {text!r}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _render_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return graph6_encode(g).decode() + "\n"
    if fmt == "dot":
        return to_dot(g)
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}, sort_keys=True) + "\n"


def _read_graph(source: str) -> Graph:
    if source == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(source, "rb") as fh:
                data = fh.read()
        except FileNotFoundError:
            # allow the graph6 string itself on the command line
            data = source.encode()
    line = data.split(b"\n", 1)[0] if data.count(b"\n") > 1 else data
    try:
        return graph6_decode(line)
    except Graph6Error as exc:
        raise UsageError(f"cannot parse graph6 input: {exc}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    fam = args.family
    try:
        if fam == "fan":
            g = families.make_fan(args.i)
        elif fam == "ffan":
            g = families.make_ffan(args.i, args.j)
        elif fam == "delta":
            g = families.make_delta_fan(args.i)
        elif fam == "delta-plus":
            g = families.make_delta_plus_fan(args.i)
        elif fam == "extremal":
            if args.n is None or args.t is None:
                raise UsageError("extremal needs --n and --t")
            fans = args.fans
            c = args.c if args.c is not None else args.t - 1 - sum(fans)
            g = families.make_extremal_p7(args.n, c, fans, args.t)
        else:
            if args.n is None:
                raise UsageError("forest needs --n")
            plan = families.plan_saturation_forest(args.n, verify=args.verify, threads=args.threads)
            g = families.realize(plan)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(_render_graph(g, args.format), args.output)
    counts = f"vertices: {g.n} edges: {g.num_edges()}\n"
    (sys.stdout if args.output not in (None, "-") else sys.stderr).write(counts)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _read_graph(args.input)
    spec = args.spec
    if args.validate:
        with open(args.validate) as fh:
            cert = SaturationCertificate.from_json(json.load(fh))
        res = validate_certificate(g, cert, check_h_free=args.recheck)
        print("certificate valid" if res.ok else f"certificate invalid: {res.reason}")
        return EXIT_OK if res.ok else EXIT_VIOLATION
    verdict = check_saturated(g, spec, threads=args.threads)
    cert = verdict.certificate
    if args.certify:
        with open(args.certify, "w") as fh:
            fh.write(cert.dumps() + "\n")
    if args.format == "json":
        doc = {"verdict": verdict.describe(), "edges": verdict.edge_count, "certificate": cert.to_json()}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(verdict.describe())
        fail = cert.failure or {}
        if fail.get("kind") == "contains":
            print("embedding:", json.dumps(fail["embedding"], sort_keys=True))
        elif fail.get("kind") == "unsaturated":
            print("non-edge without a copy:", fail["nonedge"])
        else:
            print(f"edges: {verdict.edge_count} orbits: {len(cert.orbits)}")
    return EXIT_OK if verdict.saturated else EXIT_VIOLATION


def cmd_sat_search(args) -> int:
    spec = args.spec
    if args.n > search.ENUM_MAX_N:
        raise ResourceError(f"n={args.n} exceeds the exhaustive bound {search.ENUM_MAX_N}")
    if args.oracle and args.n > search.ORACLE_MAX_N:
        raise ResourceError(f"n={args.n} exceeds the oracle bound {search.ORACLE_MAX_N}")
    res = search.sat_exact(args.n, spec, args.edge_budget, args.threads, checkpoint=args.resume)
    if res.sat_value is None:
        _emit(res.dumps() + "\n", args.output)
        raise ResourceError(f"no saturated graph within {args.edge_budget} edges")
    doc = res.to_json(include_timing=args.timing)
    status = EXIT_OK
    if args.oracle:
        ref = search.sat_bruteforce_oracle(args.n, spec)
        agree = ref.sat_value == res.sat_value and ref.extremal_graphs == res.extremal_graphs
        doc["oracle"] = {"sat_value": ref.sat_value, "extremal_graphs": ref.extremal_graphs, "agrees": agree}
        if not agree:
            status = EXIT_VIOLATION
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
    if args.sidecar:
        with open(args.sidecar, "w") as fh:
            fh.writelines(s + "\n" for s in res.extremal_graphs)
    return status


def cmd_verify_paper(args) -> int:
    lemmas = verifier.LEMMAS if args.lemma == "all" else tuple(args.lemma.split(","))
    for lem in lemmas:
        if lem not in verifier.LEMMAS:
            raise UsageError(f"unknown lemma {lem!r}; choose from {', '.join(verifier.LEMMAS)} or all")
    lemma5_max = args.max_n if args.max_n is not None else 9
    if not 7 <= lemma5_max <= 10 and "5" in lemmas:
        raise ResourceError("--max-n for lemma 5 must lie in 7..10")
    reports = verifier.run(
        lemmas,
        max_n=args.universe_n,
        lemma5_max_n=lemma5_max,
        lemma10_max_n=args.max_n if args.max_n is not None else 10,
        t_values=tuple(args.t),
        threads=args.threads,
        seed=args.seed,
    )
    if args.format == "json":
        text = json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2) + "\n"
    else:
        text = "".join(r.summary() + "\n" for r in reports)
    _emit(text, args.output)
    return EXIT_VIOLATION if any(r.counterexamples for r in reports) else EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lfsat", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=default_threads(),
                        help="worker processes (default: $LFSAT_THREADS or 1); results do not depend on it")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named graph")
    p.add_argument("--family", required=True, choices=["fan", "ffan", "delta", "delta-plus", "extremal", "forest"])
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--c", type=int, help="number of K_3 components (extremal; default t-1 minus the fans)")
    p.add_argument("--fans", type=_int_list, default=[], help="fan triangle counts, e.g. 3,4 (extremal)")
    p.add_argument("--no-verify", dest="verify", action="store_false", help="skip the forest saturation check")
    p.add_argument("--format", choices=["graph6", "dot", "json"], default="graph6")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="decide H-freeness and saturation")
    p.add_argument("--spec", type=_spec, required=True, help="k,t for H = P_k + tP_2")
    p.add_argument("--input", "-i", required=True, help="graph6 file, '-' for stdin, or a graph6 string")
    p.add_argument("--certify", metavar="OUT.json", help="write the saturation certificate")
    p.add_argument("--validate", metavar="CERT.json", help="validate a certificate instead of searching")
    p.add_argument("--recheck", action="store_true", help="with --validate, also re-decide H-freeness")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sat-search", help="exact sat(n, H) and the extremal graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--spec", type=_spec, required=True)
    p.add_argument("--edge-budget", type=int)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle (n <= 7)")
    p.add_argument("--resume", metavar="CKPT.json", help="checkpoint file, resumed if present")
    p.add_argument("--sidecar", metavar="OUT.g6", help="write extremal graphs as graph6 lines")
    p.add_argument("--timing", action="store_true", help="include elapsed time (makes output run-dependent)")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sat_search)

    p = sub.add_parser("verify-paper", help="run the lemma and construction checks")
    p.add_argument("--lemma", default="all", help=f"one or more of {','.join(verifier.LEMMAS)}, or all")
    p.add_argument("--max-n", type=int, help="largest order for lemmas 5, 8 and 10")
    p.add_argument("--universe-n", type=int, default=7, help="largest order of the saturated-graph universe")
    p.add_argument("--t", type=_int_range, default=[1, 2, 3], help="t values for the constructions, e.g. 1..3")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
