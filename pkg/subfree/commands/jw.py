"""`jw`: moments of the Jones-Wenzl laws, one column per method."""
from subfree.commands.common import add_graph_arguments, add_output_arguments, emit, parse_weights, resolve_graph
from subfree.config import DEFAULT_SERIES_ORDER, DEFAULT_WORD_CAP
from subfree.services.free_prob import ChainWeights
from subfree.services.method_fusion import jw_table, parse_methods


def register(subparsers):
    parser = subparsers.add_parser("jw", help="Jones-Wenzl moment table")
    source = add_graph_arguments(parser)
    source.add_argument("--weights", metavar="LIST", help="explicit chain weights, e.g. 1,2,3")
    parser.add_argument("--n", type=int, required=True, help="Jones-Wenzl level")
    parser.add_argument("--order", type=int, default=DEFAULT_SERIES_ORDER, help="largest moment")
    parser.add_argument("--method", default="all", help="all or a comma list of stransform,convolution,oracle")
    parser.add_argument("--max-word", type=int, default=DEFAULT_WORD_CAP, help="oracle word-length cap")
    parser.add_argument("--strict", action="store_true", help="fail (exit 4) when methods disagree")
    add_output_arguments(parser)
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    if args.weights:
        w = parse_weights(args.weights)
    else:
        graph, p, _ = resolve_graph(args)
        w = ChainWeights.from_graph(graph, p)
    rows = jw_table(
        w,
        args.n,
        order=args.order,
        methods=parse_methods(args.method),
        max_word=args.max_word,
        strict=args.strict,
    )
    flagged = [row["k"] for row in rows if not row["agree"]]
    emit(args, rows, outputs={"rows": len(rows), "weights": list(w.mu), "disagreeing_k": flagged})
    return 0
