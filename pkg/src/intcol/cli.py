"""Command line front end: ``intcol <command> [options]``.

Every command except ``generate`` prints a JSON run report.  Exit codes:
0 success (or colourable), 1 negative answer, 2 timeout, 3 error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import corpus
from .bounds import SPARSITY_KS, check_sparsity, check_t_bounds, least_sparsity_k
from .certificates import (
    Effort,
    NonColourabilityCertificate,
    check_certificate,
    search_certificate,
)
from .colouring import (
    SolveOptions,
    SolverTimeout,
    Status,
    colouring_from_dict,
    colouring_to_dict,
    decide_interval_colourable,
    max_palette,
    verify_alpha_interval,
)
from .decompose import PipelineConfig, theta_exact, theta_upper
from .generators import (
    FAMILIES,
    ExtremalSpec,
    LowerBoundSpec,
    UnionSpec,
    check_star_property,
    gen_extremal,
    gen_lower_bound_layer,
    gen_standard,
    gen_union,
    random_gnp,
)
from .graph import Graph, GraphError, GraphFormatError, load_graph

EXIT_OK, EXIT_NO, EXIT_TIMEOUT, EXIT_ERROR = 0, 1, 2, 3


class CliError(Exception):
    pass


def _read_input(path: str) -> tuple[Graph, str]:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    text = data.decode("utf-8")
    if text.lstrip().startswith("{"):
        try:
            g = Graph.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"bad JSON: {exc.msg}", exc.lineno) from None
    else:
        g = load_graph(text)
    return g, hashlib.sha256(data).hexdigest()


def _options(args) -> SolveOptions:
    limit = None if args.time_limit_ms is None else args.time_limit_ms / 1000
    return SolveOptions(
        palette_max=getattr(args, "palette_max", None),
        alpha=Fraction(getattr(args, "alpha", "1")),
        time_limit=limit,
        seed=args.seed,
    )


# --- commands: each returns (results payload, exit code, input fingerprint) ----


def cmd_solve(args):
    g, digest = _read_input(args.input)
    res = decide_interval_colourable(g, _options(args))
    code = {Status.COLOURABLE: EXIT_OK, Status.NOT_COLOURABLE: EXIT_NO, Status.TIMEOUT: EXIT_TIMEOUT}
    return res.to_dict(), code[res.status], digest


def cmd_tmax(args):
    g, digest = _read_input(args.input)
    res = max_palette(g, _options(args), use_bounds=not args.no_bounds)
    payload = {
        "t": res.t,
        "witness": colouring_to_dict(res.witness) if res.witness is not None else None,
        "nodes": res.nodes,
    }
    return payload, EXIT_OK if res.t is not None else EXIT_NO, digest


def cmd_theta(args):
    g, digest = _read_input(args.input)
    if args.exact:
        res = theta_exact(g, args.kmax, _options(args))
        if res is None:
            return {"theta": None, "exact": True, "kmax": args.kmax}, EXIT_NO, digest
    else:
        res = theta_upper(g, PipelineConfig(max_cut_seed=args.seed))
    return res.to_dict(), EXIT_OK, digest


def cmd_decompose(args):
    g, digest = _read_input(args.input)
    cfg = PipelineConfig(min_regularity=args.min_regularity, max_cut_seed=args.seed)
    res = theta_upper(g, cfg)
    return res.to_dict(), EXIT_OK, digest


def cmd_certificate(args):
    g, digest = _read_input(args.input)
    if args.verify:
        with open(args.verify, encoding="utf-8") as fh:
            cert = NonColourabilityCertificate.from_dict(json.load(fh))
        check = check_certificate(g, cert)
        return {"valid": check.ok, "reason": check.reason}, EXIT_OK if check.ok else EXIT_NO, digest
    cert = search_certificate(g, args.effort)
    if cert is None:
        return {"certificate": None}, EXIT_NO, digest
    return {"certificate": cert.to_dict()}, EXIT_OK, digest


def cmd_check(args):
    g, digest = _read_input(args.input)
    with open(args.colouring, encoding="utf-8") as fh:
        colours = colouring_from_dict(json.load(fh))
    alpha = Fraction(args.alpha)
    ok = verify_alpha_interval(g, colours, alpha)
    payload = {"valid": ok, "alpha": str(alpha), "colours_used": len(set(colours))}
    return payload, EXIT_OK if ok else EXIT_NO, digest


def cmd_bounds(args):
    g, digest = _read_input(args.input)
    t = args.t
    if t is None:
        t = max_palette(g, _options(args)).t
        if t is None:
            return {"t": None, "colourable": False}, EXIT_NO, digest
    report = check_t_bounds(g, t)
    least = least_sparsity_k(g)
    payload = report.to_dict()
    payload["least_sparsity_k"] = None if least is None else str(least)
    payload["sparsity"] = {str(k): check_sparsity(g, k) for k in SPARSITY_KS}
    return payload, EXIT_OK if report.ok else EXIT_NO, digest


def cmd_corpus(args):
    with open(args.manifest, "rb") as fh:
        data = fh.read()
    manifest = json.loads(data.decode("utf-8")) if data.strip() else {}
    payload = corpus.run_manifest(manifest)
    return payload, EXIT_OK if payload["passed"] else EXIT_NO, hashlib.sha256(data).hexdigest()


def _param_pairs(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            out[key] = Fraction(value)
    return out


def cmd_generate(args):
    params = _param_pairs(args.param)
    colours = None
    extra = None
    fam = args.family
    if fam == "extremal":
        s = int(params.pop("s", 7))
        blue = args.blue
        if blue is None:
            spec = ExtremalSpec.all_blue(s, args.odd)
        else:
            spec = ExtremalSpec(s, frozenset(int(b) for b in blue.split(",") if b), args.odd)
        g, colours = gen_extremal(spec)
    elif fam == "lower_bound":
        spec = LowerBoundSpec(
            int(params["a"]), int(params["n"]), Fraction(params.get("alpha", Fraction(1, 4))),
            p=float(params["p"]) if "p" in params else None, seed=args.seed, trim=not args.no_trim,
        )
        g, bip = gen_lower_bound_layer(spec)
        if args.star_samples:
            extra = check_star_property(g, bip, spec.alpha, args.star_samples, args.seed).to_dict()
    elif fam == "union":
        g = gen_union(UnionSpec(int(params["n"]), int(params["t"]), args.seed)).graph
    elif fam == "gnp":
        g = random_gnp(int(params["n"]), float(params["p"]), args.seed)
    else:
        g = gen_standard(fam, seed=args.seed, **{k: int(v) for k, v in params.items()})
    return g, colours, extra


# --- plumbing --------------------------------------------------------------------


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k:<16} {_scalar(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}[{i}]")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(map(str, v))
    if v is None:
        return "-"
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--time-limit-ms", type=int, default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--timing", action="store_true",
                        help="add elapsed milliseconds to the report (breaks bit-identity)")

    p = argparse.ArgumentParser(prog="intcol", description="Interval edge-colouring toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="edge-list or JSON graph file ('-' for stdin)")
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("solve", cmd_solve, "decide interval colourability")
    sp.add_argument("--alpha", default="1", help="window factor, e.g. 3/2")
    sp.add_argument("--palette-max", type=int, default=None)

    sp = graph_cmd("tmax", cmd_tmax, "largest number of colours in an interval colouring")
    sp.add_argument("--no-bounds", action="store_true", help="prove optimality by exhaustion only")

    sp = graph_cmd("theta", cmd_theta, "interval colouring thickness")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--kmax", type=int, default=3)

    sp = graph_cmd("decompose", cmd_decompose, "forest + regular bipartite decomposition")
    sp.add_argument("--min-regularity", type=int, default=2)

    sp = graph_cmd("certificate", cmd_certificate, "search for or verify a non-colourability proof")
    sp.add_argument("--effort", choices=[e.value for e in Effort], default=Effort.BALLS.value)
    sp.add_argument("--verify", metavar="CERT_JSON", default=None)

    sp = graph_cmd("check", cmd_check, "verify a colouring")
    sp.add_argument("--colouring", required=True, metavar="JSON")
    sp.add_argument("--alpha", default="1")

    sp = graph_cmd("bounds", cmd_bounds, "check t against the known upper bounds")
    sp.add_argument("--t", type=int, default=None, help="use this t instead of computing it")

    sp = sub.add_parser("corpus", parents=[common], help="run a manifest of batch checks")
    sp.add_argument("manifest")
    sp.set_defaults(fn=cmd_corpus)

    sp = sub.add_parser("generate", parents=[common], help="write a graph in edge-list format")
    sp.add_argument("--family", required=True,
                    choices=["extremal", "lower_bound", "union", "gnp", *FAMILIES])
    sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                    help="family parameter, e.g. n=5 (repeatable)")
    sp.add_argument("--blue", default=None, help="extremal: comma-separated blue columns")
    sp.add_argument("--odd", action="store_true", help="extremal: add the pendant vertex")
    sp.add_argument("--no-trim", action="store_true", help="lower_bound: skip degree trimming")
    sp.add_argument("--star-samples", type=int, default=0,
                    help="lower_bound: sample the star property and report it on stderr")
    sp.add_argument("--colouring-out", default=None, help="write the known colouring here")
    sp.set_defaults(fn=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "generate":
            g, colours, extra = cmd_generate(args)
            _emit(g.to_edgelist(), args.out)
            if args.colouring_out and colours is not None:
                with open(args.colouring_out, "w", encoding="utf-8") as fh:
                    json.dump(colouring_to_dict(colours), fh)
                    fh.write("\n")
            if extra is not None:
                sys.stderr.write(json.dumps(extra, sort_keys=True) + "\n")
            return EXIT_OK
        payload, code, digest = args.fn(args)
    except SolverTimeout as exc:
        payload, code, digest = {"status": "timeout", "nodes": exc.nodes}, EXIT_TIMEOUT, None
    except (GraphError, CliError, ValueError, KeyError, TypeError, OSError) as exc:
        sys.stderr.write(f"intcol: error: {exc}\n")
        return EXIT_ERROR
    report = {"command": args.command, "input_sha256": digest, "results": payload, "seed": args.seed}
    if args.timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if args.pretty:
        text = _pretty(report) + "\n"
    else:
        text = json.dumps(report, sort_keys=True) + "\n"
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
