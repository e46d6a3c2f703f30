"""Command-line umbrella: sample / aut / motifs / moments / exact / sweep."""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys

from . import aut, degseq, harness, moments, motifs, oracle, sampler
from .graphs import load_graph_file, save_graph_file


def _load_deg(path) -> degseq.DegreeSequence:
    return degseq.validate(degseq.load_degree_file(path))


def _json_default(obj):
    if dataclasses.is_dataclass(obj):
        return dataclasses.asdict(obj)
    if isinstance(obj, frozenset):
        return sorted(obj)
    if obj == math.inf:
        return "Infinity"
    return str(obj)


def cmd_sample(args) -> int:
    d = _load_deg(args.deg)
    os.makedirs(args.out, exist_ok=True)
    method = sampler.method_from_name(args.method, d)
    for i in range(args.count):
        g = sampler.sample(d, method=method, rng=sampler.derive_rng(args.seed, i))
        save_graph_file(g, os.path.join(args.out, f"sample_{i:05d}.txt"))
    approx = isinstance(method, sampler.SwitchChain)
    label = "approximate (switch chain)" if approx else "exact or auto"
    print(f"wrote {args.count} samples to {args.out} [{label}]")
    return 0


def cmd_aut(args) -> int:
    g = load_graph_file(args.graph)
    report = aut.find_nontrivial_automorphism(g)
    out = {"verdict": report.verdict}
    if report.witness is not None:
        out["witness_cycles"] = [list(c) for c in report.witness.cycles()]
    if args.order:
        out["group_order"] = aut.group_order(g)
    if args.r1 is not None and args.r2 is not None and report.witness is not None:
        d = degseq.validate(g.degrees())
        pv = aut.parameter_vector(g, report.witness, d, args.r1, args.r2)
        out["parameter_vector"] = dataclasses.asdict(pv)
    print(json.dumps(out, default=_json_default, indent=2))
    return 0


def cmd_motifs(args) -> int:
    g = load_graph_file(args.graph)
    d = _load_deg(args.deg)
    report = motifs.motif_report(g, d, alpha=args.alpha)
    print(json.dumps(dataclasses.asdict(report), default=_json_default, indent=2))
    return 0


def cmd_moments(args) -> int:
    d = _load_deg(args.deg)
    out = dataclasses.asdict(moments.moment_estimates(d))
    if args.edge:
        u, v = args.edge
        cond = []
        if args.cond_edges:
            cond = load_graph_file(args.cond_edges).edges()
        out["conditional_edge_prob"] = moments.conditional_edge_prob(d, u, v, cond)
    print(json.dumps(out, default=_json_default, indent=2))
    return 0


def cmd_exact(args) -> int:
    d = _load_deg(args.deg)
    if args.stat == "psym":
        value = oracle.exact_p_symmetric(d)
    elif args.stat == "cherries":
        value = oracle.exact_expectation(d, "cherries")
    elif args.stat == "ptri":
        value = oracle.exact_expectation(d, "pendant_triangles")
    elif args.stat.startswith("edge:"):
        u, v = map(int, args.stat.split(":", 1)[1].split(","))
        value = oracle.exact_expectation(d, "edge", u=u, v=v)
    else:
        print(f"unknown stat {args.stat!r}", file=sys.stderr)
        return 2
    print(f"{value.numerator}/{value.denominator}")
    return 0


def cmd_sweep(args) -> int:
    try:
        with open(args.config) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = harness.parse_config(config)
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    rows = harness.sweep(cfg, progress=lambda msg: print(msg, file=sys.stderr))
    out_path = args.out or cfg.get("out")
    if out_path:
        harness.write_csv(rows, out_path)
        print(f"wrote {len(rows)} rows to {out_path}")
    else:
        sys.stdout.write(harness.rows_to_csv(rows))
    if harness.any_invalid(rows):
        print("warning: rows with >1% unknown verdicts present", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="degsym",
        description="Uniform random graphs with a given degree sequence and "
        "their symmetry phase transition.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="draw samples and write edge-list files")
    s.add_argument("--deg", required=True)
    s.add_argument("--method", default="auto", choices=["auto", "rejection", "switch"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("aut", help="automorphism verdict and witness")
    s.add_argument("--graph", required=True)
    s.add_argument("--order", action="store_true")
    s.add_argument("--r1", type=float)
    s.add_argument("--r2", type=float)
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("motifs", help="motif report as JSON")
    s.add_argument("--graph", required=True)
    s.add_argument("--deg", required=True)
    s.add_argument("--alpha", type=float, default=0.1)
    s.set_defaults(func=cmd_motifs)

    s = sub.add_parser("moments", help="moment estimates as JSON")
    s.add_argument("--deg", required=True)
    s.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"))
    s.add_argument("--cond-edges", help="edge-list file of conditioning edges")
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("exact", help="exact small-instance values")
    s.add_argument("--deg", required=True)
    s.add_argument("--stat", required=True, help="cherries|ptri|psym|edge:U,V")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("sweep", help="run a Monte Carlo sweep from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
