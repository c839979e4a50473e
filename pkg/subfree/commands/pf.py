"""`pf`: Perron-Frobenius data of a principal graph."""
import logging

from subfree.commands.common import add_graph_arguments, add_output_arguments, emit, resolve_graph
from subfree.services.graph_service import distances_from_star

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("pf", help="Perron-Frobenius eigenvalue and weights")
    add_graph_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    graph, p, label = resolve_graph(args)
    if not p.converged:
        logger.warning(f"{label}: weights come from {p.method} and are not an eigenvector (residual {p.residual:.3g})")
    dist = distances_from_star(graph)
    rows = [
        {
            "vertex": v,
            "parity": graph.parity(v),
            "distance": dist[v],
            "mu": p.mu[v],
            "delta": p.delta,
            "index": p.index,
        }
        for v in sorted(graph.vertices, key=lambda v: (dist[v], v))
    ]
    outputs = {
        "delta": p.delta,
        "index": p.index,
        "method": p.method,
        "converged": p.converged,
        "iterations": p.iterations,
        "residual": p.residual,
        "rows": len(rows),
    }
    emit(args, rows, outputs=outputs, graph=graph)
    return 0
