"""Arguments and plumbing shared by the subcommands."""
import argparse
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from subfree.config import DEFAULT_MAX_ITER, DEFAULT_TOLERANCE
from subfree.errors import FamilyParseError
from subfree.services.families import parse_family
from subfree.services.free_prob import ChainWeights
from subfree.services.graph_service import PrincipalGraph, dump_graph, load_graph
from subfree.services.output import FORMATS, render, run_record, write_text
from subfree.services.perron import PerronData, perron

logger = logging.getLogger(__name__)

# flags that never change the numbers and stay out of the config echo
NOT_ECHOED = {"func", "command", "log_level", "out", "threads", "timing"}


def add_graph_arguments(parser: argparse.ArgumentParser, required: bool = True):
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--graph", metavar="FILE", help="principal graph JSON file")
    source.add_argument("--family", metavar="NAME", help="aK:<K>, kac:<n>, medge:<n> or aInf:<t>:<delta>")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="power iteration tolerance")
    parser.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, help="power iteration cap")
    return source


def add_output_arguments(parser: argparse.ArgumentParser, default_format: str = "csv"):
    parser.add_argument("--format", choices=FORMATS, default=default_format, help="output format")
    parser.add_argument("--out", metavar="FILE", default=None, help="write here instead of stdout")
    parser.add_argument(
        "--timing", action="store_true",
        help="record wall time in the run record (output then differs between runs)",
    )


def resolve_graph(args) -> Tuple[PrincipalGraph, PerronData, str]:
    """Graph, Perron data and a label from --graph or --family."""
    if getattr(args, "family", None):
        fam = parse_family(args.family)
        logger.info(f"using family {fam.name} ({fam.closed_form.method})")
        return fam.graph, fam.closed_form, fam.name
    graph = load_graph(args.graph)
    return graph, perron(graph, tolerance=args.tol, max_iter=args.max_iter), args.graph


def parse_weights(text: str) -> ChainWeights:
    """Comma-separated chain weights, e.g. `1,2,3` or `1,3/2,2`."""
    try:
        values = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise FamilyParseError(f"chain weights must be numbers separated by commas, got {text!r}")
    return ChainWeights(tuple(values))


def config_echo(args) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in NOT_ECHOED}


def emit(
    args,
    rows: List[Mapping[str, Any]],
    outputs: Optional[Mapping[str, Any]] = None,
    graph: Optional[PrincipalGraph] = None,
    wall_time_s: Optional[float] = None,
    out: Optional[str] = None,
    stream=None,
):
    run = run_record(
        args.command,
        config_echo(args),
        outputs=outputs,
        wall_time_s=wall_time_s if args.timing else None,
    )
    graph_doc = dump_graph(graph) if graph is not None and args.format == "json" else None
    text = render(rows, run, args.format, graph=graph_doc)
    write_text(text, out if out is not None else args.out, stream or sys.stdout)
