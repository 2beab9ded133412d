"""``hallratio`` command line.

Exit codes: 0 success, 2 invalid input, 3 resource cap exceeded,
4 certificate dependency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .blocks import BlockGraph, profile_from_spec, sample
from .certificates import (
    CertificateDependencyError,
    check_claim42,
    check_property_A,
    extract_lemma31,
    extract_lemma41,
    theorem13_details,
    recheck_report,
)
from .experiment import ExperimentConfig, format_report, run_experiment
from .fractional import chi_f_colgen, chi_f_enumerate
from .graph import GraphError, Subgraph
from .hall import hall_ratio_exact, hall_ratio_lower_bound
from .io import graph_to_json, read_graph, read_subgraph
from .stable import ResourceLimitError

EXIT_INPUT, EXIT_RESOURCE, EXIT_DEPENDENCY = 2, 3, 4


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":"), default=str) + "\n")


def _block_graph(path: str) -> BlockGraph:
    g = read_graph(path)
    if not isinstance(g, BlockGraph):
        raise GraphError(f"{path} has no 'blocks' field; this command needs a block graph")
    return g


def _plain(path: str):
    g = read_graph(path)
    return g.graph if isinstance(g, BlockGraph) else g


def cmd_gen(a) -> int:
    spec = {"kind": a.profile}
    if a.profile == "custom":
        if not a.sizes:
            raise GraphError("--profile custom needs --sizes")
        spec["sizes"] = [int(x) for x in a.sizes.split(",")]
    else:
        if a.n is None:
            raise GraphError("--n is required")
        spec["n"] = a.n if a.profile == "tower" else int(a.n)
        if a.profile == "param":
            if a.eps is None or a.k is None:
                raise GraphError("--profile param needs --eps and --k")
            spec.update(q=a.q if a.q is not None else "4", eps=a.eps, k=a.k)
    bg = sample(profile_from_spec(spec), a.seed)
    text = graph_to_json(bg)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_chif(a) -> int:
    g = _plain(a.file)
    res = chi_f_enumerate(g) if a.method == "enumerate" else chi_f_colgen(g)
    _dump(res.to_json())
    return 0


def cmd_hall(a) -> int:
    g = _plain(a.file)
    res = hall_ratio_exact(g) if a.method == "dp" else hall_ratio_lower_bound(g, a.budget)
    _dump(res.to_json())
    return 0


def cmd_verify(a) -> int:
    bg = _block_graph(a.file)
    if a.recheck:
        rep = json.loads(Path(a.recheck).read_text())
        reps = rep if isinstance(rep, list) else [rep]
        out = [recheck_report(bg, r) for r in reps]
        _dump(out if isinstance(rep, list) else out[0])
        return 0 if all(o["ok"] for o in out) else 1
    claims = [c.strip() for c in a.claims.split(",") if c.strip()]
    out = {}
    for c in claims:
        if c == "propertyA":
            out[c] = check_property_A(bg).to_json()
        elif c == "claim42":
            out[c] = check_claim42(bg).to_json()
        elif c == "thm13":
            out[c] = theorem13_details(bg, Subgraph.whole(bg.graph), Fraction(a.delta))
        else:
            raise GraphError(f"unknown claim {c!r}; choose from propertyA, claim42, thm13")
    _dump(out)
    return 0


def cmd_extract(a) -> int:
    bg = _block_graph(a.file)
    h = read_subgraph(a.subgraph, bg.graph) if a.subgraph else Subgraph.whole(bg.graph)
    if a.lemma == "31":
        I, rep = extract_lemma31(bg, h)
        _dump({"I": I, "report": rep})
    else:
        I, J, rep = extract_lemma41(bg, h, Fraction(a.delta))
        _dump({"I": I, "J": J, "report": rep})
    return 0


def cmd_experiment(a) -> int:
    cfg = ExperimentConfig.from_json(json.loads(Path(a.config).read_text()))
    rows, summary = run_experiment(cfg, workers=a.threads)
    text = format_report(cfg, rows, summary)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    if a.summary:
        Path(a.summary).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallratio", description="Fractional coloring, Hall ratio and sparsity certificates for random block graphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="sample a random block graph")
    g.add_argument("--profile", choices=["exp", "tower", "param", "custom"], required=True)
    g.add_argument("--n")
    g.add_argument("--q")
    g.add_argument("--eps")
    g.add_argument("--k", type=int)
    g.add_argument("--sizes", help="comma-separated block sizes for --profile custom")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("chif", help="exact fractional chromatic number")
    c.add_argument("file")
    c.add_argument("--method", choices=["colgen", "enumerate"], default="colgen")
    c.set_defaults(func=cmd_chif)

    h = sub.add_parser("hall", help="Hall ratio (exact or lower bound)")
    h.add_argument("file")
    h.add_argument("--method", choices=["dp", "heuristic"], default="dp")
    h.add_argument("--budget", type=int, default=200, help="MWIS calls for --method heuristic")
    h.set_defaults(func=cmd_hall)

    v = sub.add_parser("verify", help="sparsity certificates")
    v.add_argument("file")
    v.add_argument("--claims", default="propertyA,claim42,thm13")
    v.add_argument("--delta", default="1/2")
    v.add_argument("--recheck", metavar="REPORT", help="re-verify a serialized report against FILE")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extract", help="constructive independent sets")
    e.add_argument("file")
    e.add_argument("--subgraph", help="JSON {\"vertices\": [...], \"edges\": [...]}; default is the whole graph")
    e.add_argument("--lemma", choices=["31", "41"], required=True)
    e.add_argument("--delta", default="1/2")
    e.set_defaults(func=cmd_extract)

    x = sub.add_parser("experiment", help="Monte Carlo run over a seed grid")
    x.add_argument("--config", required=True)
    x.add_argument("--out")
    x.add_argument("--summary", help="also write the summary JSON here")
    x.add_argument("--threads", type=int, default=None, help="worker processes (default: $HALLRATIO_THREADS or 1)")
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CertificateDependencyError as exc:
        print(f"certificate dependency failed ({exc.claim}): {exc}", file=sys.stderr)
        return EXIT_DEPENDENCY
    except (GraphError, ValueError, KeyError, OSError, json.JSONDecodeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
