"""`mc`: Monte Carlo check of loop-word moments against the pairing oracle."""
import logging
import os
from typing import List, Optional

from subfree.commands.common import add_graph_arguments, add_output_arguments, config_echo, emit, resolve_graph
from subfree.config import DEFAULT_HIST_BINS, DEFAULT_MC_DIM, DEFAULT_MC_KMAX, DEFAULT_MC_SAMPLES, DEFAULT_SEED, DEFAULT_WORD_CAP
from subfree.errors import WordTooLong
from subfree.services.matrix_mc import McConfig, eigen_histogram, empirical_loop_moments
from subfree.services.output import render, run_record, write_text
from subfree.services.pairing_oracle import CONVENTIONS, POISSON_NORMALIZED, SemicircularSpec, trace_moment
from subfree.services.words import LoopWord, power

logger = logging.getLogger(__name__)


def register(subparsers, settings):
    parser = subparsers.add_parser("mc", help="random block-matrix moments of a loop word")
    add_graph_arguments(parser)
    parser.add_argument("--word", required=True, help='loop word, e.g. "c1 c2 c2* c1*"')
    parser.add_argument("--dim", type=int, default=DEFAULT_MC_DIM, help="base dimension N")
    parser.add_argument("--samples", type=int, default=DEFAULT_MC_SAMPLES)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--kmax", type=int, default=DEFAULT_MC_KMAX, help="largest power of the word")
    parser.add_argument("--convention", choices=CONVENTIONS, default=POISSON_NORMALIZED)
    parser.add_argument(
        "--threads", type=int, default=settings.threads,
        help="sampling threads (default from SUBFREE_THREADS); results do not depend on it",
    )
    parser.add_argument("--hist", metavar="FILE", default=None, help="also write an eigenvalue histogram")
    parser.add_argument("--bins", type=int, default=DEFAULT_HIST_BINS)
    add_output_arguments(parser)
    parser.set_defaults(func=run)
    return parser


def oracle_targets(spec: SemicircularSpec, loop: LoopWord, k_max: int) -> List[Optional[object]]:
    """Exact trace moments of word^k while the word fits the oracle's cap."""
    targets = []
    for k in range(1, k_max + 1):
        try:
            targets.append(trace_moment(spec, power(loop.tokens, k)))
        except WordTooLong:
            logger.info(f"no oracle target for power {k}: more than {DEFAULT_WORD_CAP} letters")
            targets.append(None)
    return targets


def run(args) -> int:
    graph, p, _ = resolve_graph(args)
    spec = SemicircularSpec.build(graph, p.mu, args.convention)
    loop = spec.bind(args.word)
    cfg = McConfig(N=args.dim, samples=args.samples, seed=args.seed, convention=args.convention, threads=args.threads)
    targets = oracle_targets(spec, loop, args.kmax)

    report = empirical_loop_moments(spec, loop, args.kmax, cfg, targets=targets)
    rows = [
        {
            "word": report.word,
            "power": est.power,
            "mean": est.mean,
            "stderr": est.stderr,
            "target": targets[est.power - 1],
            "z_score": est.z_score,
            "within_3sigma": est.within(3.0) if est.target is not None else None,
        }
        for est in report.estimates
    ]
    outputs = {"rows": len(rows), "block_sizes": report.block_sizes}
    if args.hist:
        outputs["histogram"] = args.hist
    emit(args, rows, outputs=outputs, wall_time_s=report.wall_time_s)

    if args.hist:
        hist = eigen_histogram(spec, loop, cfg, bins=args.bins, k_max=args.kmax, targets=targets)
        hist_rows = [
            {"bin_lo": float(lo), "bin_hi": float(hi), "count": int(c)}
            for lo, hi, c in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.counts)
        ]
        hist_outputs = {
            "n_base": hist.n_base,
            "zero_fraction": hist.zero_fraction,
            "moments": [
                {"power": m.power, "mean": m.mean, "stderr": m.stderr} for m in hist.moments
            ],
        }
        run_rec = run_record(
            "mc-hist",
            config_echo(args),
            outputs=hist_outputs,
            wall_time_s=hist.wall_time_s if args.timing else None,
        )
        write_text(render(hist_rows, run_rec, args.format), args.hist, None)
        logger.info(f"histogram of {os.path.basename(args.hist)}: {int(hist.counts.sum())} eigenvalues")
    return 0
