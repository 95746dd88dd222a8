"""Command-line entry point wiring all modules with file-based inputs and outputs.

Every run writes a manifest (subcommand, parameter echo, seed, artifact
paths, wall-clock duration). Primary artifacts are byte-stable given the same
parameters and seed; the manifest is not, since it records timing.

Exit codes: 0 success, 1 domain errors (infeasible construction, sampling
exhaustion, degenerate reduction, failed lift), 2 usage errors (bad flags,
missing or malformed input files).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .core import (
    FormatError,
    WitnessError,
    make_target,
    read_brc1,
    read_witness,
    write_brc1,
    write_witness,
)
from .constructions import (
    DegenerateReductionError,
    InfeasibleColoringError,
    LayeredInvariantError,
    SamplingExhaustedError,
    affine_coloring,
    assignment_coloring,
    erdos_base,
    layered_step,
    lift_witness,
    read_assignment,
    read_trace,
    reduce_coloring,
    write_assignment,
    write_trace,
)
from .detection import DetectionOutcome, find_berge, mono_free_colors, shadow_report
from .geometry import affine_family
from .search import AVOIDANCE, find_avoiding_coloring, ramsey_exact

_DOMAIN_ERRORS = (
    InfeasibleColoringError,
    SamplingExhaustedError,
    DegenerateReductionError,
    LayeredInvariantError,
    WitnessError,
)


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    seed: int | None
    artifacts: list
    duration_seconds: float


def _write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _emit_manifest(args, subcommand: str, params: dict, artifacts: list, started: float) -> None:
    manifest = RunManifest(
        subcommand=subcommand,
        parameters=params,
        seed=params.get("seed"),
        artifacts=[str(a) for a in artifacts],
        duration_seconds=time.monotonic() - started,
    )
    path = getattr(args, "manifest", None)
    if path is None:
        out = getattr(args, "output", None)
        path = f"{out}.manifest.json" if out else "manifest.json"
    _write_json(manifest.__dict__, path)


def _witness_json(w) -> dict:
    return {
        "color": w.color,
        "core": list(w.core),
        "assignment": [[[u, v], rk] for (u, v), rk in w.assignment],
    }


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_construct_affine(args) -> int:
    started = time.monotonic()
    family = affine_family(args.d, args.p)
    H = affine_coloring(args.r, args.c, family, tie=args.tie_break, seed=args.seed)
    write_brc1(H, args.output)
    meta = {
        "construction": "affine",
        "p": args.p,
        "d": args.d,
        "r": args.r,
        "c": args.c,
        "tie_break": args.tie_break,
        "seed": args.seed,
        "vertices": H.N,
        "hyperedges": H.num_hyperedges,
    }
    _write_json(meta, f"{args.output}.meta.json")
    print(f"wrote {args.output}: r={H.r} c={H.c} N={H.N} ({H.num_hyperedges} hyperedges)")
    _emit_manifest(args, "construct affine", meta, [args.output, f"{args.output}.meta.json"], started)
    return 0


def _cmd_construct_erdos_base(args) -> int:
    started = time.monotonic()
    L = erdos_base(args.m, args.n, seed=args.seed, max_attempts=args.max_attempts, beta=args.beta)
    write_assignment(L, args.output)
    meta = {
        "construction": "erdos-base",
        "m": args.m,
        "n": args.n,
        "beta": args.beta,
        "seed": args.seed,
        "max_attempts": args.max_attempts,
    }
    _write_json(meta, f"{args.output}.meta.json")
    print(f"wrote {args.output}: layered assignment r={L.r} on {L.X} vertices")
    _emit_manifest(args, "construct erdos-base", meta, [args.output, f"{args.output}.meta.json"], started)
    return 0


def _cmd_construct_layered(args) -> int:
    started = time.monotonic()
    base = read_assignment(args.base)
    L = layered_step(base, k=args.copies, beta=args.beta)
    H = assignment_coloring(L)
    write_brc1(H, args.output)
    artifacts = [args.output]
    if args.assignment_out:
        write_assignment(L, args.assignment_out)
        artifacts.append(args.assignment_out)
    meta = {
        "construction": "layered",
        "base": str(args.base),
        "copies": args.copies,
        "beta": args.beta,
        "r": L.r,
        "vertices": L.X,
    }
    _write_json(meta, f"{args.output}.meta.json")
    artifacts.append(f"{args.output}.meta.json")
    print(f"wrote {args.output}: r={H.r} c={H.c} N={H.N} ({H.num_hyperedges} hyperedges)")
    _emit_manifest(args, "construct layered", meta, artifacts, started)
    return 0


def _cmd_verify(args) -> int:
    started = time.monotonic()
    H = read_brc1(args.coloring)
    G = make_target(args.target)
    if args.color == "all":
        statuses = mono_free_colors(H, G, budget=args.budget, threads=args.threads)
    else:
        i = int(args.color)
        out = find_berge(H, i, G, budget=args.budget)
        status = "free" if out.status == "absent" else out.status
        statuses = {i: DetectionOutcome(status, out.witness, out.nodes)}
    for i in sorted(statuses):
        print(f"color {i}: {statuses[i].status.upper()}")
    artifacts = []
    if args.witness_out:
        first = next((out.witness for _, out in sorted(statuses.items()) if out.witness), None)
        if first is not None:
            write_witness(first, args.witness_out)
            artifacts.append(args.witness_out)
            print(f"wrote witness {args.witness_out} (color {first.color})")
    if args.output:
        obj = {
            str(i): {
                "status": out.status,
                "witness": _witness_json(out.witness) if out.witness else None,
                "nodes": out.nodes,
            }
            for i, out in statuses.items()
        }
        _write_json(obj, args.output)
        artifacts.append(args.output)
    params = {
        "coloring": str(args.coloring),
        "target": args.target,
        "color": args.color,
        "budget": args.budget,
        "threads": args.threads,
    }
    _emit_manifest(args, "verify", params, artifacts, started)
    return 0


def _cmd_shadow(args) -> int:
    started = time.monotonic()
    H = read_brc1(args.coloring)
    rep = shadow_report(H)
    for i in range(H.c):
        print(
            f"color {i + 1}: {len(rep.light_pairs[i])} light pairs, "
            f"{len(rep.light_vertices[i])} light vertices"
        )
    for i in range(H.c):
        for j in range(i + 1, H.c):
            print(f"overlap |V_{i + 1} ∩ V_{j + 1}| = {int(rep.overlap[i, j])}")
    artifacts = []
    if args.output:
        obj = {
            "r": rep.r,
            "c": rep.c,
            "N": rep.N,
            "threshold": rep.threshold,
            "light_pairs": [[list(e) for e in lp] for lp in rep.light_pairs],
            "light_vertices": [list(vs) for vs in rep.light_vertices],
            "overlap": rep.overlap.tolist(),
        }
        _write_json(obj, args.output)
        artifacts.append(args.output)
    _emit_manifest(args, "shadow", {"coloring": str(args.coloring)}, artifacts, started)
    return 0


def _cmd_reduce(args) -> int:
    started = time.monotonic()
    H = read_brc1(args.coloring)
    trace_path = args.trace_out or f"{args.output}.trace.json"
    try:
        reduced, trace = reduce_coloring(H, args.drop_color)
    except DegenerateReductionError as exc:
        write_trace(exc.trace, trace_path)
        print(f"degenerate reduction: kept {len(exc.trace.kept)} vertices; trace at {trace_path}", file=sys.stderr)
        raise
    write_brc1(reduced, args.output)
    write_trace(trace, trace_path)
    print(
        f"wrote {args.output}: r={reduced.r} c={reduced.c} N={reduced.N}; "
        f"kept {trace.m} of {H.N} vertices, leftover {len(trace.leftover)}"
    )
    params = {"coloring": str(args.coloring), "drop_color": args.drop_color}
    _emit_manifest(args, "reduce", params, [args.output, trace_path], started)
    return 0


def _cmd_lift(args) -> int:
    started = time.monotonic()
    trace = read_trace(args.trace)
    w = read_witness(args.witness)
    original = read_brc1(args.coloring)
    lifted = lift_witness(trace, w, original=original)
    write_witness(lifted, args.output)
    print(f"wrote {args.output}: color {lifted.color}, {len(lifted.assignment)} hyperedges")
    params = {"trace": str(args.trace), "witness": str(args.witness), "coloring": str(args.coloring)}
    _emit_manifest(args, "lift", params, [args.output], started)
    return 0


def _cmd_search_avoid(args) -> int:
    started = time.monotonic()
    G = make_target(args.target)
    res = find_avoiding_coloring(
        args.r,
        args.c,
        args.N,
        G,
        mode=args.mode,
        seed=args.seed,
        steps=args.steps,
        budget=args.budget,
    )
    print(f"status: {res.status} (nodes={res.nodes})")
    artifacts = []
    if res.coloring is not None:
        write_brc1(res.coloring, args.output)
        artifacts.append(args.output)
        print(f"wrote certificate {args.output}")
    result_path = f"{args.output}.result.json"
    _write_json(
        {
            "status": res.status,
            "nodes": res.nodes,
            "certificate": args.output if res.coloring is not None else None,
        },
        result_path,
    )
    artifacts.append(result_path)
    params = {
        "r": args.r,
        "c": args.c,
        "N": args.N,
        "target": args.target,
        "mode": args.mode,
        "seed": args.seed,
        "steps": args.steps,
        "budget": args.budget,
    }
    _emit_manifest(args, "search avoid", params, artifacts, started)
    return 0


def _cmd_search_ramsey(args) -> int:
    started = time.monotonic()
    G = make_target(args.target)
    res = ramsey_exact(args.r, args.c, G, args.n_max, budget=args.budget, target_label=args.target)
    artifacts = []
    per_n = {}
    stem = Path(args.output)
    for N, entry in sorted(res.per_n.items()):
        cert_path = None
        if entry.status == AVOIDANCE and entry.coloring is not None:
            cert_path = f"{stem.with_suffix('')}.N{N}.brc"
            write_brc1(entry.coloring, cert_path)
            artifacts.append(cert_path)
        per_n[str(N)] = {"status": entry.status, "nodes": entry.nodes, "certificate": cert_path}
        print(f"N={N}: {entry.status.upper()} (nodes={entry.nodes})")
    if res.value is not None:
        print(f"exact value: {res.value}")
    else:
        print("value not bracketed within the scan range")
    _write_json(
        {"r": res.r, "c": res.c, "target": res.target, "value": res.value, "per_n": per_n},
        args.output,
    )
    artifacts.append(args.output)
    params = {"r": args.r, "c": args.c, "target": args.target, "n_max": args.n_max, "budget": args.budget}
    _emit_manifest(args, "search ramsey", params, artifacts, started)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergeramsey",
        description="Construct, verify, and search colorings of complete uniform "
        "hypergraphs without monochromatic Berge subgraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="build an avoidance coloring or layered assignment")
    csub = construct.add_subparsers(dest="construction", required=True)

    aff = csub.add_parser("affine", help="parallel-class coloring over AG(d, p)")
    aff.add_argument("--p", type=int, required=True, help="prime order of the affine space")
    aff.add_argument("--d", type=int, default=2, help="dimension (default 2)")
    aff.add_argument("--r", type=int, required=True, help="hyperedge uniformity")
    aff.add_argument("--c", type=int, required=True, help="number of colors (one parallel class each)")
    aff.add_argument("--tie-break", choices=["lowest", "random"], default="lowest")
    aff.add_argument("--seed", type=int, default=None)
    aff.add_argument("-o", "--output", required=True, help="BRC1 output path")
    aff.add_argument("--manifest", default=None)
    aff.set_defaults(func=_cmd_construct_affine)

    erd = csub.add_parser("erdos-base", help="seeded 2-coloring of K_m with no monochromatic K_n")
    erd.add_argument("--m", type=int, required=True)
    erd.add_argument("--n", type=int, required=True)
    erd.add_argument("--beta", type=int, default=1, help="minimum per-vertex edges of each color")
    erd.add_argument("--seed", type=int, required=True)
    erd.add_argument("--max-attempts", type=int, default=1000)
    erd.add_argument("-o", "--output", required=True, help="assignment JSON output path")
    erd.add_argument("--manifest", default=None)
    erd.set_defaults(func=_cmd_construct_erdos_base)

    lay = csub.add_parser("layered", help="lift a layered assignment one uniformity up")
    lay.add_argument("--base", required=True, help="assignment JSON of the previous level")
    lay.add_argument("--copies", type=int, required=True)
    lay.add_argument("--beta", type=int, default=1)
    lay.add_argument("--assignment-out", default=None, help="also write the lifted assignment JSON")
    lay.add_argument("-o", "--output", required=True, help="BRC1 output path for the induced coloring")
    lay.add_argument("--manifest", default=None)
    lay.set_defaults(func=_cmd_construct_layered)

    ver = sub.add_parser("verify", help="per-color Berge status of a coloring")
    ver.add_argument("--coloring", required=True)
    ver.add_argument("--target", required=True)
    ver.add_argument("--color", default="all", help="color index or 'all'")
    ver.add_argument("--budget", type=int, default=None)
    ver.add_argument("--threads", type=int, default=1)
    ver.add_argument("-o", "--output", default=None, help="optional status+witness JSON")
    ver.add_argument("--witness-out", default=None, help="write the first witness found, standalone JSON")
    ver.add_argument("--manifest", default=None)
    ver.set_defaults(func=_cmd_verify)

    sha = sub.add_parser("shadow", help="light-pair census of a coloring")
    sha.add_argument("--coloring", required=True)
    sha.add_argument("-o", "--output", default=None, help="optional report JSON")
    sha.add_argument("--manifest", default=None)
    sha.set_defaults(func=_cmd_shadow)

    red = sub.add_parser("reduce", help="drop one color and reduce uniformity by one")
    red.add_argument("--coloring", required=True)
    red.add_argument("--drop-color", type=int, required=True)
    red.add_argument("--trace-out", default=None)
    red.add_argument("-o", "--output", required=True, help="reduced BRC1 output path")
    red.add_argument("--manifest", default=None)
    red.set_defaults(func=_cmd_reduce)

    lif = sub.add_parser("lift", help="lift a reduced-coloring witness back to the original")
    lif.add_argument("--trace", required=True)
    lif.add_argument("--witness", required=True)
    lif.add_argument("--coloring", required=True, help="original BRC1 coloring, for verification")
    lif.add_argument("-o", "--output", required=True)
    lif.add_argument("--manifest", default=None)
    lif.set_defaults(func=_cmd_lift)

    search = sub.add_parser("search", help="search for avoidance colorings / exact Ramsey values")
    ssub = search.add_subparsers(dest="search_kind", required=True)

    avo = ssub.add_parser("avoid", help="find one avoidance coloring at fixed N")
    avo.add_argument("--r", type=int, required=True)
    avo.add_argument("--c", type=int, required=True)
    avo.add_argument("--N", type=int, required=True)
    avo.add_argument("--target", required=True)
    avo.add_argument("--mode", choices=["exhaustive", "randomized"], default="exhaustive")
    avo.add_argument("--seed", type=int, default=None)
    avo.add_argument("--steps", type=int, default=None)
    avo.add_argument("--budget", type=int, default=None)
    avo.add_argument("-o", "--output", required=True, help="BRC1 certificate path")
    avo.add_argument("--manifest", default=None)
    avo.set_defaults(func=_cmd_search_avoid)

    ram = ssub.add_parser("ramsey", help="ascending exact scan up to an N cap")
    ram.add_argument("--r", type=int, required=True)
    ram.add_argument("--c", type=int, required=True)
    ram.add_argument("--target", required=True)
    ram.add_argument("--n-max", type=int, required=True)
    ram.add_argument("--budget", type=int, default=None)
    ram.add_argument("-o", "--output", required=True, help="result JSON path")
    ram.add_argument("--manifest", default=None)
    ram.set_defaults(func=_cmd_search_ramsey)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
