"""`invariants`: global index, free dimensions, s and the tower r_0..r_K."""
from subfree.commands.common import add_graph_arguments, add_output_arguments, emit, resolve_graph
from subfree.services.tower import invariants, s_by_amalgamation


def register(subparsers):
    parser = subparsers.add_parser("invariants", help="tower invariants of a finite-depth principal graph")
    add_graph_arguments(parser)
    parser.add_argument("--levels", type=int, default=2, help="largest k for r_k")
    add_output_arguments(parser)
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    graph, p, _ = resolve_graph(args)
    inv = invariants(p, graph, args.levels)
    row = {
        "delta": inv.delta,
        "index": inv.index,
        "T": inv.T,
        "I": inv.I,
        "s": inv.s,
        "s_amalgamation": s_by_amalgamation(p, graph),
        "fdim_base": inv.fdim_base,
        "r0_via_s": inv.r0_via_s,
    }
    row.update({f"r_{k}": r for k, r in enumerate(inv.r)})
    row.update({f"fdim_edge[{e}]": v for e, v in inv.fdim_edge.items()})
    row.update({f"fdim_edge_local[{e}]": v for e, v in inv.fdim_edge_local.items()})
    emit(args, [row], outputs={"exact": inv.exact, "rows": 1}, graph=graph)
    return 0
