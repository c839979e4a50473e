"""Exact moments of an A-valued semicircular family on a principal graph.

A is the diagonal algebra spanned by the vertex projections p_v, with
Tr(p_v) = mu(v). Each edge e carries an element c_e from p_tail to p_head
with covariances

    E(c_e a c_e^*) = alpha_e a(head) p_tail
    E(c_e^* a c_e) = beta_e  a(tail) p_head

and E vanishes on pairs of letters from different edges. The moment of a
word is the sum over non-crossing pairings of its letters in which every
pair joins a letter to its adjoint; each pair contributes the covariance
of its first letter. `avalued_moment` evaluates this by an interval
recursion memoized for one call; `avalued_moment_brute_force` enumerates
all perfect matchings and keeps the non-crossing ones.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from subfree.config import BRUTE_FORCE_CAP, DEFAULT_WORD_CAP
from subfree.errors import NonComposableWord, ParameterOutOfRange, WordTooLong
from subfree.services.free_prob import ChainWeights, is_noncrossing
from subfree.services.graph_service import PrincipalGraph, chain_vertex, path_graph
from subfree.services.perron import Number
from subfree.services.series import coerce_scalar
from subfree.services.tower import agree
from subfree.services.words import Letter, LoopWord, Token, bind, jw_word, power

logger = logging.getLogger(__name__)

CANONICAL = "canonical"
POISSON_NORMALIZED = "poisson_normalized"
CONVENTIONS = (CANONICAL, POISSON_NORMALIZED)

Pairing = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Covariance:
    alpha: Number
    beta: Number


@dataclass(frozen=True)
class SemicircularSpec:
    graph: PrincipalGraph
    mu: Dict[str, Number]
    covariance: Dict[str, Covariance]
    convention: str

    def __post_init__(self):
        for e in self.graph.edges:
            cov = self.covariance[e.id]
            if not (cov.alpha > 0 and cov.beta > 0):
                raise ParameterOutOfRange(f"edge {e.id!r} has non-positive covariance {cov}")
            if not agree(cov.alpha * self.mu[e.tail], cov.beta * self.mu[e.head]):
                raise ParameterOutOfRange(
                    f"edge {e.id!r} breaks trace symmetry: "
                    f"alpha*mu(tail)={cov.alpha * self.mu[e.tail]} != beta*mu(head)={cov.beta * self.mu[e.head]}"
                )

    @classmethod
    def canonical(cls, graph: PrincipalGraph, mu: Mapping[str, Number]) -> "SemicircularSpec":
        """alpha = mu(head), beta = mu(tail): entry variance 1/N."""
        mu = {v: coerce_scalar(m) for v, m in mu.items()}
        cov = {e.id: Covariance(alpha=mu[e.head], beta=mu[e.tail]) for e in graph.edges}
        return cls(graph, mu, cov, CANONICAL)

    @classmethod
    def poisson_normalized(cls, graph: PrincipalGraph, mu: Mapping[str, Number]) -> "SemicircularSpec":
        """alpha = mu(head) / mu(tail), beta = 1: entry variance 1/(mu(tail) N)."""
        mu = {v: coerce_scalar(m) for v, m in mu.items()}
        cov = {e.id: Covariance(alpha=mu[e.head] / mu[e.tail], beta=1) for e in graph.edges}
        return cls(graph, mu, cov, POISSON_NORMALIZED)

    @classmethod
    def build(cls, graph: PrincipalGraph, mu: Mapping[str, Number], convention: str) -> "SemicircularSpec":
        if convention == CANONICAL:
            return cls.canonical(graph, mu)
        if convention == POISSON_NORMALIZED:
            return cls.poisson_normalized(graph, mu)
        raise ParameterOutOfRange(f"convention must be one of {', '.join(CONVENTIONS)}, got {convention!r}")

    def cov(self, letter: Letter) -> Number:
        c = self.covariance[letter.edge]
        return c.beta if letter.adjoint else c.alpha

    def entry_variance(self, edge_id: str, N: int) -> float:
        """Variance of one complex entry of the N-scaled block for `edge_id`."""
        e = self.graph.edge(edge_id)
        return float(self.covariance[edge_id].alpha) / (float(self.mu[e.head]) * N)

    def bind(self, word: Union[str, Sequence[Token]]) -> LoopWord:
        return bind(word, self.graph)


def _zero_like(spec: SemicircularSpec):
    return 0 * next(iter(spec.mu.values()))


def _as_loop(spec: SemicircularSpec, word) -> LoopWord:
    return word if isinstance(word, LoopWord) else spec.bind(word)


def _letter_value(spec: SemicircularSpec, letters: Tuple[Letter, ...]) -> Number:
    """Coefficient of p_base in E(letters) by the interval recursion."""

    @lru_cache(maxsize=None)
    def value(i: int, j: int) -> Number:
        if i == j:
            return 1
        total = 0
        first = letters[i]
        for p in range(i + 1, j, 2):
            if first.pairs_with(letters[p]):
                inner = value(i + 1, p)
                if inner:
                    total += spec.cov(first) * inner * value(p + 1, j)
        return total

    return value(0, len(letters))


def avalued_moment(spec: SemicircularSpec, word, max_letters: int = DEFAULT_WORD_CAP) -> Dict[str, Number]:
    """E(word) as a vector over the vertices."""
    loop = _as_loop(spec, word)
    if len(loop) > max_letters:
        raise WordTooLong(f"word has {len(loop)} letters, cap is {max_letters}")
    result = {v: _zero_like(spec) for v in spec.graph.vertices}
    if not loop.projections_match or not loop.closed or len(loop) % 2:
        return result
    result[loop.base] = result[loop.base] + _letter_value(spec, loop.letters)
    return result


def perfect_matchings(m: int) -> Iterator[Pairing]:
    def rec(points: Tuple[int, ...]) -> Iterator[Pairing]:
        if not points:
            yield ()
            return
        first = points[0]
        for idx in range(1, len(points)):
            rest = points[1:idx] + points[idx + 1:]
            for tail in rec(rest):
                yield ((first, points[idx]),) + tail

    if m % 2:
        return iter(())
    return rec(tuple(range(m)))


def enumerate_noncrossing_pairings(m: int) -> List[Pairing]:
    return [p for p in perfect_matchings(m) if is_noncrossing(p)]


def avalued_moment_brute_force(spec: SemicircularSpec, word, max_letters: int = BRUTE_FORCE_CAP) -> Dict[str, Number]:
    loop = _as_loop(spec, word)
    if len(loop) > max_letters:
        raise WordTooLong(f"brute force is capped at {max_letters} letters, word has {len(loop)}")
    result = {v: _zero_like(spec) for v in spec.graph.vertices}
    if not loop.projections_match or not loop.closed:
        return result
    letters = loop.letters
    total = 0
    for pairing in enumerate_noncrossing_pairings(len(letters)):
        if all(letters[i].pairs_with(letters[j]) for i, j in pairing):
            total += math.prod((spec.cov(letters[i]) for i, _ in pairing), start=1)
    result[loop.base] = result[loop.base] + total
    return result


def trace_moment(spec: SemicircularSpec, word, max_letters: int = DEFAULT_WORD_CAP) -> Number:
    loop = _as_loop(spec, word)
    if not loop.closed:
        raise NonComposableWord(f"word {loop.text!r} runs from {loop.base!r} to {loop.end!r} and is not a loop")
    return spec.mu[loop.base] * avalued_moment(spec, loop, max_letters)[loop.base]


def chain_spec(w: ChainWeights, convention: str = POISSON_NORMALIZED) -> SemicircularSpec:
    graph = path_graph(len(w))
    mu = {chain_vertex(j): w.at(j) for j in range(1, len(w) + 1)}
    return SemicircularSpec.build(graph, mu, convention)


def jw_moment_oracle(w: ChainWeights, n: int, k: int, max_letters: int = DEFAULT_WORD_CAP) -> Number:
    """Tr((Q_n Q_n^*)^k) on the chain, Poisson-normalized covariances."""
    w.require(n)
    if k < 0:
        raise ParameterOutOfRange(f"moment order must be >= 0, got {k}")
    if k == 0:
        return coerce_scalar(1) if w.is_exact else 1.0
    if 2 * n * k > max_letters:
        raise WordTooLong(f"(Q_{n} Q_{n}^*)^{k} has {2 * n * k} letters, cap is {max_letters}")
    spec = chain_spec(w)
    return trace_moment(spec, power(jw_word(n), k), max_letters)


@dataclass(frozen=True)
class NormProfile:
    edge: str
    moments: Tuple[Number, ...]
    roots: Tuple[float, ...]
    edge_bound: float

    @property
    def nondecreasing(self) -> bool:
        return all(a <= b * (1 + 1e-12) for a, b in zip(self.roots, self.roots[1:]))


def corner_norm_profile(spec: SemicircularSpec, edge_id: str, k_max: int) -> NormProfile:
    """(m_2k)^(1/2k) of the corner of X_e at p_tail, k = 1..k_max, with the
    Marchenko-Pastur edge sqrt(alpha) + sqrt(beta)."""
    if k_max < 1:
        raise ParameterOutOfRange(f"k_max must be >= 1, got {k_max}")
    if 2 * k_max > DEFAULT_WORD_CAP:
        raise WordTooLong(f"k_max={k_max} needs words of {2 * k_max} letters, cap is {DEFAULT_WORD_CAP}")
    c = Letter(edge_id)
    moments = []
    for k in range(1, k_max + 1):
        loop = spec.bind(power((c, c.star()), k))
        moments.append(avalued_moment(spec, loop)[loop.base])
    roots = tuple(float(m) ** (1.0 / (2 * k)) for k, m in enumerate(moments, start=1))
    cov = spec.covariance[edge_id]
    bound = math.sqrt(float(cov.alpha)) + math.sqrt(float(cov.beta))
    return NormProfile(edge=edge_id, moments=tuple(moments), roots=roots, edge_bound=bound)
