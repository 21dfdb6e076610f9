"""Command-line interface: ``graphminor {embed,generate,verify,bench}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from graphminor import bench as benchmod
from graphminor import embedfile
from graphminor.embedder import EmbedParams, find_embedding
from graphminor.generators import (
    ChimeraSpec,
    chimera_graph,
    complete_graph,
    grid_graph,
    path_graph,
    random_cubic_graph,
    read_mask,
)
from graphminor.graph import GraphError, format_edgelist, read_edgelist
from graphminor.verify import verify_decomposition, verify_embedding

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2

log = logging.getLogger("graphminor")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _host(args):
    """The G graph and a short description of where it came from."""
    if args.chimera:
        m, n, l = args.chimera
        mask = read_mask(args.mask) if args.mask else frozenset()
        spec = ChimeraSpec(m, n, l, mask)
        label = str(spec) + (f" mask={args.mask}" if args.mask else "")
        return chimera_graph(spec), label
    if not args.g_file:
        raise GraphError("give a G edge-list file or --chimera M N L")
    return read_edgelist(args.g_file), str(args.g_file)


def _params(args) -> EmbedParams:
    return EmbedParams(
        seed=args.seed,
        patience=args.patience,
        max_rounds=args.max_rounds,
        tries=args.tries,
        localized=args.localized,
        randomize_order=not args.fixed_order,
        root_sampling=not args.no_root_sampling,
        sampling_scale=args.sampling_scale,
    )


def _add_host_args(p):
    p.add_argument("--chimera", nargs=3, type=int, metavar=("M", "N", "L"),
                   help="use the Chimera graph C(M,N,L) as G")
    p.add_argument("--mask", help="file of broken Chimera qubits, one id per line")


def _add_param_args(p, tries_default):
    d = EmbedParams()
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--tries", type=int, default=tries_default)
    p.add_argument("--patience", type=int, default=d.patience)
    p.add_argument("--max-rounds", type=int, default=d.max_rounds)
    p.add_argument("--localized", action="store_true", help="multisource A* root search")
    p.add_argument("--no-root-sampling", action="store_true", help="always take the cheapest root")
    p.add_argument("--sampling-scale", type=float, default=d.sampling_scale)
    p.add_argument("--fixed-order", action="store_true", help="visit H-vertices in id order")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock times so output is byte-reproducible")


def cmd_embed(args) -> int:
    g, label = _host(args)
    h = read_edgelist(args.h_file)
    if h.vertex_count > g.vertex_count:
        log.error("H has %d vertices but G only %d", h.vertex_count, g.vertex_count)
        return EXIT_INPUT
    params = _params(args)
    outcome = find_embedding(g, h, params)
    if outcome.success and verify_embedding(g, h, outcome.chains):
        log.error("embedder reported success but verification failed")
        outcome.success = False
    doc = embedfile.outcome_document(outcome, g, h, params, label, timing=not args.no_timing)
    _emit(embedfile.dumps(doc), args.out)
    if outcome.success:
        log.info("embedded %d vertices, %d chain vertices", h.vertex_count, doc["stats"]["total_chain_size"])
        return EXIT_OK
    log.warning("no embedding found; wrote best G-decomposition (max occupancy %s)",
                doc["stats"]["max_occupancy"])
    return EXIT_FAILED


def cmd_generate(args) -> int:
    kind, nums = args.kind, args.params
    want = {"chimera": (1, 3), "complete": (1, 1), "grid": (1, 2), "cubic": (1, 1), "path": (1, 1)}
    lo, hi = want[kind]
    if not lo <= len(nums) <= hi:
        raise GraphError(f"{kind} takes {lo}..{hi} integer parameters")
    if kind == "chimera":
        m = nums[0]
        n = nums[1] if len(nums) > 1 else m
        l = nums[2] if len(nums) > 2 else 4
        mask = read_mask(args.mask) if args.mask else frozenset()
        g = chimera_graph(ChimeraSpec(m, n, l, mask))
    elif kind == "complete":
        g = complete_graph(nums[0])
    elif kind == "grid":
        g = grid_graph(*nums)
    elif kind == "cubic":
        g = random_cubic_graph(nums[0], args.seed)
    else:
        g = path_graph(nums[0])
    _emit(format_edgelist(g), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g, _ = _host(args)
    h = read_edgelist(args.h_file)
    doc = embedfile.read(args.embedding, g)
    if doc["h"]["vertex_count"] != h.vertex_count:
        raise GraphError("embedding file was written for a different H")
    check = verify_decomposition if args.decomposition else verify_embedding
    violations = check(g, h, embedfile.chains_of(doc))
    for v in violations:
        print(v)
    if violations:
        return EXIT_FAILED
    print("valid " + ("decomposition" if args.decomposition else "embedding"))
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def cmd_bench(args) -> int:
    if args.chimera is None:
        args.chimera = [8, 8, 4]
    g, label = _host(args)
    modes = benchmod.MODES if args.mode == "both" else (args.mode,)
    rows = benchmod.bench(
        args.family, args.sizes, g, label, args.trials, args.instances, modes, args.seed,
        _params(args),
    )
    _emit(benchmod.to_csv(rows, timing=not args.no_timing), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="graphminor", description=__doc__)
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="find H as a minor of G")
    p.add_argument("h_file", help="edge-list file of H")
    p.add_argument("g_file", nargs="?", help="edge-list file of G")
    _add_host_args(p)
    _add_param_args(p, EmbedParams().tries)
    p.add_argument("--out", help="write the embedding file here instead of stdout")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("generate", help="write a graph in edge-list format")
    p.add_argument("kind", choices=["chimera", "complete", "grid", "cubic", "path"])
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--mask")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check an embedding file")
    p.add_argument("h_file")
    p.add_argument("g_file", nargs="?")
    p.add_argument("--embedding", required=True)
    p.add_argument("--decomposition", action="store_true",
                   help="allow overlapping chains (G-decomposition check)")
    _add_host_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="success rate / runtime sweep, CSV output")
    p.add_argument("--family", choices=benchmod.FAMILIES, required=True)
    p.add_argument("--sizes", type=_sizes, required=True, help="e.g. 4..8 or 50,100")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--instances", type=int, default=1, help="random graphs per size (cubic)")
    p.add_argument("--mode", choices=["global", "localized", "both"], default="global")
    _add_host_args(p)
    _add_param_args(p, 1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench, g_file=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * args.verbose
    logging.basicConfig(level=level, format="%(levelname)s %(message)s")
    logging.getLogger("numba").setLevel(logging.WARNING)
    try:
        return args.func(args)
    except (GraphError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
