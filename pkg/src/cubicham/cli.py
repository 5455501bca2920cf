"""Command-line front end: construct, enumerate, audit, analyze, export.

Exit codes: 0 success, 1 a property violation or mismatch was found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import constructions
from .chains import (
    ChainError,
    OneEndedChain,
    chain_from_json,
    chain_to_json,
    count_limit_hamilton_cycles,
    end_degree,
    segment_minor,
    surviving_states,
    transfer_dot,
    transfer_layer,
    truncation_consistency,
    truncation_minor,
)
from .hamilton import (
    count_through,
    cycle_labels,
    cycles_through,
    edge_parity_report,
    enumerate_hamilton_cycles,
    second_cycle_lollipop,
    second_cycle_nearly_cubic,
)
from .incidence import check_pair_sum_even, check_uniform_parity, incidence_multigraph
from .multigraph import GraphError, MultiGraph, from_json as graph_from_json

_BUILTIN_GRAPHS = {
    "tutte-fragment": lambda: constructions.tutte_fragment().graph,
    "tutte-quotient": constructions.tutte_quotient,
    "k4": constructions.k4,
    "petersen": constructions.petersen,
}


class _UsageError(Exception):
    pass


def _load_graph(spec: str) -> MultiGraph:
    if spec in _BUILTIN_GRAPHS:
        return _BUILTIN_GRAPHS[spec]()
    path = Path(spec)
    if not path.is_file():
        raise _UsageError(f"unknown graph {spec!r} (not a builtin, not a file)")
    return graph_from_json(path.read_text())


def _load_chain(spec: str):
    if spec in constructions.BUILTIN_CHAINS:
        return constructions.BUILTIN_CHAINS[spec]()
    path = Path(spec)
    if not path.is_file():
        raise _UsageError(f"unknown chain {spec!r} (not a builtin, not a file)")
    return chain_from_json(path.read_text())


def _edge_ids(G: MultiGraph, csv: str | None) -> frozenset[int]:
    if not csv:
        return frozenset()
    return frozenset(G.edge_by_label(label.strip()).id for label in csv.split(","))


def _emit(args, text_payload: str, json_payload) -> None:
    if args.format == "json":
        print(json.dumps(json_payload, indent=2, sort_keys=True))
    else:
        print(text_payload)


def _write_out(args, payload: str) -> None:
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)


def _cmd_construct(args) -> int:
    name = args.name
    if name in _BUILTIN_GRAPHS:
        _write_out(args, _BUILTIN_GRAPHS[name]().to_json())
    elif name == "replacement":
        if args.n is None:
            raise _UsageError("replacement needs --n")
        _write_out(args, constructions.replacement_graph(args.n).to_json())
    elif name in constructions.BUILTIN_CHAINS:
        _write_out(args, chain_to_json(constructions.BUILTIN_CHAINS[name]()))
    elif name == "truncation":
        if args.chain is None or args.k is None:
            raise _UsageError("truncation needs --chain and --k")
        _write_out(args, truncation_minor(_load_chain(args.chain), args.k).to_json())
    elif name == "segment":
        if args.chain is None or args.n is None:
            raise _UsageError("segment needs --chain and --n")
        _write_out(args, segment_minor(_load_chain(args.chain), args.n).to_json())
    else:
        raise _UsageError(f"unknown construction {name!r}")
    return 0


def _cmd_hamilton(args) -> int:
    G = _load_graph(args.graph)
    if args.sub == "count":
        n = len(enumerate_hamilton_cycles(G, jobs=args.jobs))
        _emit(args, str(n), {"count": n})
        return 0
    if args.sub == "list":
        cycles = [cycle_labels(G, c) for c in enumerate_hamilton_cycles(G, jobs=args.jobs)]
        _emit(args, "\n".join(" ".join(c) for c in cycles), {"cycles": cycles})
        return 0
    if args.sub == "through":
        require = _edge_ids(G, args.require)
        forbid = _edge_ids(G, args.forbid)
        n = count_through(G, require, forbid)
        _emit(args, str(n), {"count": n})
        return 0
    if args.sub == "parity":
        report = edge_parity_report(G)
        ok = not (report.all_degrees_odd and report.odd_count_edges)
        _emit(
            args,
            report.to_csv(G),
            {
                "total": report.total,
                "counts": {G.edges[i].label: c for i, c in report.counts.items()},
                "all_degrees_odd": report.all_degrees_odd,
                "odd_count_edges": [G.edges[i].label for i in report.odd_count_edges],
            },
        )
        return 0 if ok else 1
    if args.sub == "second":
        if G.is_simple() and all(G.degree(v) % 2 for v in G.vertices):
            if not args.edge:
                raise _UsageError("second needs --edge for all-odd graphs")
            e = G.edge_by_label(args.edge).id
            found = cycles_through(G, {e})
            if not found:
                print(f"no Hamilton cycle through {args.edge}", file=sys.stderr)
                return 1
            first = found[0]
            second = second_cycle_lollipop(G, first, e)
        else:
            first, second = second_cycle_nearly_cubic(G)
        payload = [cycle_labels(G, first), cycle_labels(G, second)]
        _emit(args, "\n".join(" ".join(c) for c in payload), {"cycles": payload})
        return 0
    raise _UsageError(f"unknown hamilton subcommand {args.sub!r}")


def _cmd_incidence(args) -> int:
    G = _load_graph(args.graph)
    H = incidence_multigraph(G, args.v, args.w)
    pair_sum = check_pair_sum_even(H)
    uniform = check_uniform_parity(H)
    audited = G.is_simple() and G.is_cubic()
    ok = not audited or (pair_sum.all_even and uniform.uniform)
    text = H.to_text(G)
    if audited:
        text += f"\npair sums even: {pair_sum.all_even}"
        text += f"\nuniform parity: {uniform.uniform}"

    def name(state):
        return sorted(G.edges[i].label for i in state)

    _emit(
        args,
        text,
        {
            "v": args.v,
            "w": args.w,
            "left_states": [name(p) for p in H.left_states],
            "right_states": [name(q) for q in H.right_states],
            "table": [list(row) for row in H.table],
            "audits": {
                "applicable": audited,
                "pair_sums_even": pair_sum.all_even,
                "uniform_parity": uniform.uniform,
            },
        },
    )
    return 0 if ok else 1


def _state_names(chain, level: int, state) -> list[str]:
    matching = (
        chain.iface(level)
        if isinstance(chain, OneEndedChain)
        else (chain.central if level == 0 else chain.right.iface(level))
    )
    return sorted(matching[p][0] for p in state)


def _cmd_chain(args) -> int:
    chain = _load_chain(args.chain)
    if args.sub == "analyze":
        result = count_limit_hamilton_cycles(chain)
        layer = transfer_layer(chain, 1 if isinstance(chain, OneEndedChain) else 0)
        survival = surviving_states(chain)
        degrees = (
            {"right": end_degree(chain)}
            if isinstance(chain, OneEndedChain)
            else {"left": end_degree(chain, "left"), "right": end_degree(chain, "right")}
        )
        witness = (
            None
            if result.witness is None
            else {
                "level": result.witness[0],
                "state": _state_names(chain, result.witness[0], result.witness[1]),
                "out_multiplicity": result.witness[2],
            }
        )
        text = [
            f"chain: {chain.name or args.chain}",
            f"mode: {chain.mode}",
            f"interface size: {chain.cut_size}",
            "end degree: " + ", ".join(f"{k}={v}" for k, v in degrees.items()),
            "periodic transfer layer:",
            layer.to_text(),
            f"classification: {result}",
            f"certificates: {len(result.certificates)}",
        ]
        if witness:
            text.append(
                f"branching witness: level {witness['level']}, "
                f"state {{{','.join(witness['state'])}}}, "
                f"out-multiplicity {witness['out_multiplicity']}"
            )
        _emit(
            args,
            "\n".join(text),
            {
                "chain": chain.name or args.chain,
                "mode": chain.mode,
                "interface_size": chain.cut_size,
                "end_degree": degrees,
                "classification": str(result),
                "count": result.count,
                "witness": witness,
                "certificates": len(result.certificates),
            },
        )
        return 0
    if args.sub == "check":
        lo = 0 if isinstance(chain, OneEndedChain) else 1
        lines = []
        ok = True
        for k in range(lo, args.depth + 1):
            report = truncation_consistency(chain, k)
            ok = ok and report.ok
            lines.append(f"depth {k}: {'ok' if report.ok else 'MISMATCH'}")
        _emit(args, "\n".join(lines), {"ok": ok, "depths": list(range(lo, args.depth + 1))})
        return 0 if ok else 1
    raise _UsageError(f"unknown chain subcommand {args.sub!r}")


def _cmd_export_dot(args) -> int:
    spec = args.input
    if spec in _BUILTIN_GRAPHS:
        _write_out(args, _BUILTIN_GRAPHS[spec]().to_dot())
        return 0
    if spec in constructions.BUILTIN_CHAINS:
        _write_out(args, transfer_dot(constructions.BUILTIN_CHAINS[spec](), args.levels))
        return 0
    path = Path(spec)
    if not path.is_file():
        raise _UsageError(f"unknown input {spec!r}")
    doc = json.loads(path.read_text())
    if "mode" in doc:
        _write_out(args, transfer_dot(chain_from_json(path.read_text()), args.levels))
    else:
        _write_out(args, graph_from_json(path.read_text()).to_dot())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubicham")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default=None, help="write machine output to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--chain", default=None)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("hamilton")
    p.add_argument("sub", choices=("count", "list", "through", "parity", "second"))
    p.add_argument("graph")
    p.add_argument("--require", default=None, help="comma-separated edge labels")
    p.add_argument("--forbid", default=None, help="comma-separated edge labels")
    p.add_argument("--edge", default=None)
    p.set_defaults(func=_cmd_hamilton)

    p = sub.add_parser("incidence")
    p.add_argument("graph")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=_cmd_incidence)

    p = sub.add_parser("chain")
    p.add_argument("sub", choices=("analyze", "check"))
    p.add_argument("chain")
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("export-dot")
    p.add_argument("input")
    p.add_argument("--levels", type=int, default=3)
    p.set_defaults(func=_cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (_UsageError, GraphError, ChainError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
