"""Batch driver: read instance specifications, dispatch verifiers, emit
JSON-lines reports plus a human-readable summary.

Exit codes: 0 all instances pass, 1 any verification failure or error,
2 specification validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import SpecValidationError
from .presets import PRESETS, neumann_instances
from .runner import run_instance, validate_instance


def _render(report: dict, timing_ms: int) -> str:
    # timing lives in its own field, outside the deterministic body
    body = dict(sorted(report.items()))
    body["timing_ms"] = timing_ms
    return json.dumps(body, sort_keys=True, separators=(",", ":"), default=str)


def _worker(args):
    spec, mode, max_terms = args
    start = time.monotonic()
    report = run_instance(spec, mode=mode, max_terms=max_terms)
    elapsed = int((time.monotonic() - start) * 1000)
    return report, elapsed


def _summary_line(spec: dict) -> str:
    kind = spec.get("kind", "?")
    bits = [kind]
    if "realization" in spec:
        bits.append(spec["realization"])
    if "which" in spec:
        bits.append(spec["which"])
    if "flavor" in spec:
        bits.append(spec["flavor"])
    if "M" in spec:
        bits.append(f"M={spec['M']}")
    if "N" in spec:
        bits.append(f"N={spec['N']}")
    if "tau0" in spec:
        bits.append(f"tau0={spec['tau0']}")
    if "divisor" in spec and spec["divisor"]:
        bits.append("tau=" + ",".join(str(t) for _, t in spec["divisor"]))
    if "dual_divisor" in spec:
        bits.append("tau~=" + ",".join(str(t) for _, t in spec["dual_divisor"]))
    if "mu" in spec:
        bits.append(f"mu={spec['mu']}")
    if spec.get("options", {}).get("mutation"):
        bits.append("mutation=" + spec["options"]["mutation"])
    if spec.get("options", {}).get("quantum_candidate"):
        bits.append("quantum-candidate")
    if spec.get("options", {}).get("symbolic_mu"):
        bits.append("mu=symbolic")
    return " ".join(bits)


def cmd_verify(args) -> int:
    if args.preset:
        if args.preset not in PRESETS:
            print(f"unknown preset {args.preset!r}; known: {', '.join(sorted(PRESETS))}",
                  file=sys.stderr)
            return 2
        if args.preset == "neumann" and args.M:
            instances = neumann_instances(args.M)
        else:
            instances = PRESETS[args.preset]()
    elif args.spec:
        try:
            with open(args.spec) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            print(f"cannot read spec: {err}", file=sys.stderr)
            return 2
        instances = doc.get("instances", doc if isinstance(doc, list) else None)
        if instances is None:
            print("spec must be {\"instances\": [...]} or a JSON list", file=sys.stderr)
            return 2
    else:
        print("need a spec file or --preset", file=sys.stderr)
        return 2

    # validate everything before any computation starts
    for k, spec in enumerate(instances):
        try:
            validate_instance(spec)
        except SpecValidationError as err:
            print(f"instance {k} invalid: {err}", file=sys.stderr)
            return 2

    mode = "sampled" if args.sampled else ("symbolic" if args.symbolic else None)
    work = [(spec, mode, args.max_terms) for spec in instances]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_worker, work))
    else:
        results = [_worker(w) for w in work]

    out = open(args.out, "w") if args.out else None
    counts = {"pass": 0, "fail": 0, "error": 0}
    total_ms = 0
    for (report, elapsed), spec in zip(results, instances):
        counts[report["status"]] = counts.get(report["status"], 0) + 1
        total_ms += elapsed
        line = _render(report, elapsed)
        if out:
            out.write(line + "\n")
        else:
            print(line)
        print(f"[{report['status']:>5}] {_summary_line(spec)} ({elapsed} ms)",
              file=sys.stderr)
    if out:
        out.close()
    print(
        f"gaudual: {len(instances)} instances, {counts['pass']} pass, "
        f"{counts['fail']} fail, {counts.get('error', 0)} error ({total_ms} ms)",
        file=sys.stderr,
    )
    return 0 if counts["fail"] == 0 and counts.get("error", 0) == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gaudual",
        description="exact verification of Gaudin-model dualities",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification instances")
    v.add_argument("spec", nargs="?", help="JSON spec file with {\"instances\": [...]}")
    v.add_argument("--preset", help="built-in instance grid (e.g. paper-core)")
    v.add_argument("--M", type=int, help="size override for the neumann preset")
    v.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    group = v.add_mutually_exclusive_group()
    group.add_argument("--symbolic", action="store_true",
                       help="fully symbolic classical checks (default)")
    group.add_argument("--sampled", action="store_true",
                       help="substitute fixed random rationals for x, p")
    v.add_argument("--out", help="write JSONL reports to this file")
    v.add_argument("--max-terms", type=int, default=10**7,
                   help="abort instances whose size estimate exceeds this")
    v.set_defaults(func=cmd_verify)
    lp = sub.add_parser("presets", help="list built-in presets")
    lp.set_defaults(func=lambda args: print("\n".join(sorted(PRESETS))) or 0)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
