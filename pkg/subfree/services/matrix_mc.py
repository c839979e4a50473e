"""Random block-matrix realization of the semicircular family.

Every vertex v gets a block size n_v = floor(mu(v) N + 1/2) and every edge e
a complex Gaussian n_tail x n_head matrix C_e with i.i.d. entries of
variance alpha_e / (mu(head) N). A loop word is evaluated directly as a
product of rectangular blocks (adjoint letters use C_e^*), and its moments
are estimated by (1/N) Re tr(M^k) averaged over independent samples.

Randomness: one Philox generator per (seed, sample index, edge id), the
edge id entering through its CRC32. A sample therefore does not depend on
which worker draws it, and the report is identical for any thread count.
"""
import logging
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from subfree.config import (
    DEFAULT_HIST_BINS,
    DEFAULT_MC_DIM,
    DEFAULT_MC_KMAX,
    DEFAULT_MC_SAMPLES,
    DEFAULT_SEED,
)
from subfree.errors import BlockSizeZero, DimensionMismatch, NonComposableWord, ParameterOutOfRange
from subfree.services.pairing_oracle import POISSON_NORMALIZED, SemicircularSpec
from subfree.services.perron import Number
from subfree.services.words import LoopWord

logger = logging.getLogger(__name__)

ZERO_EIGENVALUE_RTOL = 1e-8


@dataclass(frozen=True)
class McConfig:
    N: int = DEFAULT_MC_DIM
    samples: int = DEFAULT_MC_SAMPLES
    seed: int = DEFAULT_SEED
    convention: str = POISSON_NORMALIZED
    threads: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ParameterOutOfRange(f"N must be >= 1, got {self.N}")
        if self.samples < 1:
            raise ParameterOutOfRange(f"samples must be >= 1, got {self.samples}")
        if self.threads < 1:
            raise ParameterOutOfRange(f"threads must be >= 1, got {self.threads}")
        if self.seed < 0:
            raise ParameterOutOfRange(f"seed must be non-negative, got {self.seed}")

    def echo(self) -> Dict[str, object]:
        """Everything that determines the output; the thread count does not."""
        return {"N": self.N, "samples": self.samples, "seed": self.seed, "convention": self.convention}


@dataclass(frozen=True)
class MomentEstimate:
    power: int
    mean: float
    stderr: float
    target: Optional[float] = None

    @property
    def z_score(self) -> Optional[float]:
        if self.target is None or not self.stderr > 0:
            return None
        return (self.mean - self.target) / self.stderr

    def within(self, sigmas: float = 3.0) -> bool:
        z = self.z_score
        return z is not None and abs(z) <= sigmas


@dataclass(frozen=True)
class McReport:
    word: str
    config: Dict[str, object]
    block_sizes: Dict[str, int]
    estimates: List[MomentEstimate]
    wall_time_s: float = field(default=0.0, compare=False)

    def estimate(self, power: int) -> MomentEstimate:
        return self.estimates[power - 1]


@dataclass(frozen=True)
class EigenHistogram:
    word: str
    config: Dict[str, object]
    bin_edges: np.ndarray
    counts: np.ndarray
    n_base: int
    zero_fraction: float
    moments: List[MomentEstimate]
    wall_time_s: float = field(default=0.0, compare=False)


def block_sizes(mu: Mapping[str, Number], N: int) -> Dict[str, int]:
    sizes = {}
    for v, m in mu.items():
        half = Fraction(1, 2) if isinstance(m, Fraction) else 0.5
        sizes[v] = math.floor(m * N + half)
        if sizes[v] < 1:
            raise BlockSizeZero(f"vertex {v!r} with mu={m} gets an empty block at N={N}")
    return sizes


def rounding_bias(mu: Mapping[str, Number], N: int) -> float:
    sizes = block_sizes(mu, N)
    return max(abs(sizes[v] / N - float(m)) for v, m in mu.items())


def edge_rng(seed: int, sample: int, edge_id: str) -> np.random.Generator:
    key = np.random.SeedSequence([seed, sample, zlib.crc32(edge_id.encode("utf-8"))])
    return np.random.Generator(np.random.Philox(key))


def sample_blocks(
    spec: SemicircularSpec,
    cfg: McConfig,
    sample: int = 0,
    edges: Optional[Sequence[str]] = None,
) -> Dict[str, np.ndarray]:
    """One realization {edge id: C_e}; all edges unless `edges` is given."""
    sizes = block_sizes(spec.mu, cfg.N)
    edge_ids = [e.id for e in spec.graph.edges] if edges is None else list(edges)
    blocks = {}
    for eid in edge_ids:
        e = spec.graph.edge(eid)
        shape = (sizes[e.tail], sizes[e.head])
        rng = edge_rng(cfg.seed, sample, eid)
        scale = math.sqrt(spec.entry_variance(eid, cfg.N) / 2)
        blocks[eid] = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * scale
    return blocks


def evaluate_word(blocks: Mapping[str, np.ndarray], word: LoopWord) -> np.ndarray:
    factors = [blocks[l.edge].conj().T if l.adjoint else blocks[l.edge] for l in word.letters]
    for a, b in zip(factors, factors[1:]):
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatch(f"block shapes {a.shape} and {b.shape} do not chain in {word.text!r}")
    return reduce(np.matmul, factors)


def _loop(spec: SemicircularSpec, word) -> LoopWord:
    loop = word if isinstance(word, LoopWord) else spec.bind(word)
    if not loop.letters:
        raise NonComposableWord("word has no letters")
    if not loop.closed:
        raise NonComposableWord(f"word {loop.text!r} runs from {loop.base!r} to {loop.end!r} and is not a loop")
    return loop


def _word_matrix(spec: SemicircularSpec, loop: LoopWord, cfg: McConfig, sample: int) -> np.ndarray:
    edges = sorted({l.edge for l in loop.letters})
    M = evaluate_word(sample_blocks(spec, cfg, sample, edges), loop)
    if not loop.projections_match:
        M = np.zeros_like(M)
    return M


def _summarize(values: np.ndarray, targets: Optional[Sequence[Optional[float]]]) -> List[MomentEstimate]:
    """values: samples x powers."""
    samples = values.shape[0]
    means = values.mean(axis=0)
    if samples > 1:
        errs = values.std(axis=0, ddof=1) / math.sqrt(samples)
    else:
        errs = np.full(values.shape[1], math.nan)
    estimates = []
    for k in range(values.shape[1]):
        target = None
        if targets is not None and k < len(targets) and targets[k] is not None:
            target = float(targets[k])
        estimates.append(MomentEstimate(power=k + 1, mean=float(means[k]), stderr=float(errs[k]), target=target))
    return estimates


def _run(cfg: McConfig, job, label: str) -> Tuple[list, float]:
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        rows = list(pool.map(job, range(cfg.samples)))
    elapsed = time.perf_counter() - start
    logger.info(f"{label}: {cfg.samples} samples at N={cfg.N} in {elapsed:.2f}s ({cfg.threads} threads)")
    return rows, elapsed


def empirical_loop_moments(
    spec: SemicircularSpec,
    word,
    k_max: int = DEFAULT_MC_KMAX,
    cfg: McConfig = McConfig(),
    targets: Optional[Sequence[Optional[float]]] = None,
) -> McReport:
    """Estimates of (1/N) Re tr(M^k), k = 1..k_max, M the matrix of the word."""
    if k_max < 1:
        raise ParameterOutOfRange(f"k_max must be >= 1, got {k_max}")
    loop = _loop(spec, word)
    logger.info(f"mc start: word={loop.text!r} k_max={k_max} config={cfg.echo()}")

    def job(sample: int) -> np.ndarray:
        t0 = time.perf_counter()
        M = _word_matrix(spec, loop, cfg, sample)
        traces = np.empty(k_max)
        P = M
        for k in range(k_max):
            if k:
                P = P @ M
            traces[k] = np.trace(P).real / cfg.N
        logger.debug(f"sample {sample} took {time.perf_counter() - t0:.3f}s")
        return traces

    rows, elapsed = _run(cfg, job, "mc finished")
    return McReport(
        word=loop.text,
        config=cfg.echo(),
        block_sizes=block_sizes(spec.mu, cfg.N),
        estimates=_summarize(np.vstack(rows), targets),
        wall_time_s=elapsed,
    )


def eigen_histogram(
    spec: SemicircularSpec,
    word,
    cfg: McConfig = McConfig(),
    bins: int = DEFAULT_HIST_BINS,
    k_max: int = DEFAULT_MC_KMAX,
    targets: Optional[Sequence[Optional[float]]] = None,
) -> EigenHistogram:
    """Pooled eigenvalues of the Hermitian part of the word's matrix.

    Counts add up to n_base * samples. Spectral moments are scaled by
    n_base / N so they estimate the same quantities as
    `empirical_loop_moments`.
    """
    if bins < 1:
        raise ParameterOutOfRange(f"bins must be >= 1, got {bins}")
    loop = _loop(spec, word)
    n_base = block_sizes(spec.mu, cfg.N)[loop.base]

    def job(sample: int) -> np.ndarray:
        M = _word_matrix(spec, loop, cfg, sample)
        return np.linalg.eigvalsh((M + M.conj().T) / 2)

    rows, elapsed = _run(cfg, job, "histogram finished")
    eig = np.vstack(rows)
    counts, edges = np.histogram(eig.ravel(), bins=bins)
    scale = max(1.0, float(np.max(np.abs(eig))))
    zero_fraction = float(np.mean(np.abs(eig) <= ZERO_EIGENVALUE_RTOL * scale))
    powers = np.stack([np.mean(eig ** k, axis=1) * n_base / cfg.N for k in range(1, k_max + 1)], axis=1)
    return EigenHistogram(
        word=loop.text,
        config=cfg.echo(),
        bin_edges=edges,
        counts=counts,
        n_base=n_base,
        zero_fraction=zero_fraction,
        moments=_summarize(powers, targets),
        wall_time_s=elapsed,
    )
