"""Laws as truncated moment sequences, S-transforms and free multiplicative
convolution.

Conventions:

    psi(z) = sum_{k>=1} m_k z^k
    chi    = compositional inverse of psi
    S(z)   = chi(z) (1 + z) / z

so K moments determine S to order K - 1 and back. A law with m_1 = 0 has
no S-transform as a formal series (`ZeroMeanLaw`).

Two Jones-Wenzl recursions live here. `jw_law` is the corner-normalized
recursion

    nu_1 = pi_{mu_2}
    nu_n = pi_{mu_{n+1}/mu_n} boxtimes (mu_n^-1 nu_{n-1} + (1 - mu_n^-1) delta_0)

whose mean is mu_{n+1} / (mu_2 ... mu_n). `jw_trace_moments` is the law of
Q_n Q_n^* under the trace with Tr(p_*) = 1; it multiplies every nonzero
moment by mu_n after each step and has S-transform

    Theta_n(z) = prod_{j=1}^{n} mu_j / (z + mu_{j+1}),

so J_n(1) = mu_{n+1}.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from subfree.config import DEFAULT_SERIES_ORDER, FLOAT_TOLERANCE, MAX_SERIES_ORDER
from subfree.errors import (
    ChainTooShort,
    MassNegative,
    ParameterOutOfRange,
    ZeroMeanLaw,
)
from subfree.services.families import Family, quantum_integers
from subfree.services.graph_service import PrincipalGraph, distances_from_star
from subfree.services.perron import Number, PerronData
from subfree.services.series import Scalar, Series, coerce_scalar

logger = logging.getLogger(__name__)

STRANSFORM = "stransform"
CONVOLUTION = "convolution"
JW_METHODS = (STRANSFORM, CONVOLUTION)


@dataclass(frozen=True)
class MomentLaw:
    """Moments m_0..m_K of a law, m_0 = 1, with the method that produced them."""

    moments: Tuple
    provenance: str = ""

    def __post_init__(self):
        values = Series(self.moments).coefficients
        if values[0] != 1:
            raise ParameterOutOfRange(f"a moment law needs m_0 = 1, got {values[0]}")
        object.__setattr__(self, "moments", values)

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    @property
    def is_exact(self) -> bool:
        return isinstance(self.moments[0], Fraction)

    @property
    def mean(self):
        return self.moments[1]

    def __getitem__(self, k: int):
        return self.moments[k]

    def __len__(self) -> int:
        return len(self.moments)

    def truncate(self, order: int) -> "MomentLaw":
        return MomentLaw(self.moments[: order + 1], self.provenance)

    def relabel(self, provenance: str) -> "MomentLaw":
        return MomentLaw(self.moments, provenance)

    def allclose(self, other: "MomentLaw", rtol: float = FLOAT_TOLERANCE) -> bool:
        order = min(self.order, other.order)
        return all(
            abs(float(a) - float(b)) <= rtol * max(1.0, abs(float(a)))
            for a, b in zip(self.moments[: order + 1], other.moments[: order + 1])
        )


@dataclass(frozen=True)
class ChainWeights:
    """Perron weights mu_1..mu_{n+1} along a geodesic from the star, mu_1 = 1."""

    mu: Tuple

    def __post_init__(self):
        values = tuple(coerce_scalar(m) for m in self.mu)
        if not values:
            raise ParameterOutOfRange("chain weights are empty")
        if values[0] != 1:
            raise ParameterOutOfRange(f"chain weights must start at 1, got {values[0]}")
        for j, m in enumerate(values, start=1):
            if not m > 0:
                raise ParameterOutOfRange(f"chain weight mu_{j} = {m} is not positive")
        object.__setattr__(self, "mu", values)

    def __len__(self) -> int:
        return len(self.mu)

    def at(self, j: int) -> Scalar:
        """mu_j, 1-based."""
        return self.mu[j - 1]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(m, Fraction) for m in self.mu)

    def require(self, n: int):
        if n < 1:
            raise ParameterOutOfRange(f"JW level n must be >= 1, got {n}")
        if len(self.mu) < n + 1:
            raise ChainTooShort(
                f"level n={n} needs weights mu_1..mu_{n + 1}, chain has {len(self.mu)}"
            )

    @classmethod
    def from_quantum_integers(cls, delta: Number, length: int) -> "ChainWeights":
        return cls(quantum_integers(delta, length))

    @classmethod
    def from_graph(cls, graph: PrincipalGraph, perron: PerronData) -> "ChainWeights":
        return chain_weights(graph, perron)

    @classmethod
    def from_family(cls, fam: Family) -> "ChainWeights":
        return chain_weights(fam.graph, fam.closed_form)


def chain_weights(graph: PrincipalGraph, perron: PerronData) -> ChainWeights:
    """Weights along a path graph, read outward from the star (an endpoint)."""
    G = graph.G
    n = G.number_of_nodes()
    if G.number_of_edges() != n - 1 or any(d > 2 for _, d in G.degree()) or G.degree(graph.star) > 1:
        raise ParameterOutOfRange("chain weights need a simple path with the star at one end")
    dist = distances_from_star(graph)
    ordered = sorted(graph.vertices, key=dist.__getitem__)
    return ChainWeights(tuple(perron.mu[v] for v in ordered))


def _check_order(order: int):
    if order < 1 or order > MAX_SERIES_ORDER:
        raise ParameterOutOfRange(f"series order must be in 1..{MAX_SERIES_ORDER}, got {order}")


# --- reference laws ---------------------------------------------------------

def narayana(k: int, j: int) -> int:
    """Number of non-crossing partitions of k points into j blocks."""
    if k < 1 or j < 1 or j > k:
        return 0
    return math.comb(k, j) * math.comb(k, j - 1) // k


def free_poisson(lam: Scalar, order: int = DEFAULT_SERIES_ORDER) -> MomentLaw:
    lam = coerce_scalar(lam)
    if not lam > 0:
        raise ParameterOutOfRange(f"free Poisson rate must be positive, got {lam}")
    _check_order(order)
    moments = [1] + [
        sum(narayana(k, j) * lam ** j for j in range(1, k + 1)) for k in range(1, order + 1)
    ]
    return MomentLaw(tuple(moments), f"free_poisson({lam})")


def point_mass(value: Scalar, order: int = DEFAULT_SERIES_ORDER) -> MomentLaw:
    value = coerce_scalar(value)
    return MomentLaw(tuple(value ** k for k in range(order + 1)), f"point_mass({value})")


def set_partitions(elements: Sequence) -> Iterator[List[List]]:
    """All set partitions of `elements`, each a list of blocks."""
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def is_noncrossing(partition: Sequence[Sequence[int]]) -> bool:
    for A, B in combinations(partition, 2):
        for a1, a2 in combinations(sorted(A), 2):
            for b1, b2 in combinations(sorted(B), 2):
                if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
                    return False
    return True


def narayana_brute_force(k: int, lam: Scalar) -> Scalar:
    """m_k of pi_lam by enumerating non-crossing partitions of k points."""
    lam = coerce_scalar(lam)
    return sum(
        (lam ** len(p) for p in set_partitions(list(range(k))) if is_noncrossing(p)),
        Fraction(0) if isinstance(lam, Fraction) else 0.0,
    )


# --- S-transform ------------------------------------------------------------

def s_transform(law: MomentLaw) -> Series:
    if law.order < 1:
        raise ParameterOutOfRange("an S-transform needs at least the first moment")
    if law.mean == 0:
        raise ZeroMeanLaw(f"law {law.provenance or '?'} has zero mean")
    psi = Series((0,) + law.moments[1:])
    chi = psi.revert()
    return Series(chi.coefficients[1:]) * Series([1, 1], order=law.order - 1)


def from_s_transform(S: Series, order: Optional[int] = None, provenance: str = "") -> MomentLaw:
    if S[0] == 0:
        raise ZeroMeanLaw("S-transform has zero constant term")
    K = S.order + 1
    if order is not None:
        if order > K:
            raise ParameterOutOfRange(f"an S-transform of order {S.order} fixes moments to order {K}, not {order}")
        K = order
    chi = Series((0,) + S.coefficients, order=K) / Series([1, 1], order=K)
    psi = chi.revert()
    return MomentLaw((1,) + psi.coefficients[1:], provenance)


def boxtimes(a: MomentLaw, b: MomentLaw) -> MomentLaw:
    order = min(a.order, b.order)
    S = s_transform(a.truncate(order)) * s_transform(b.truncate(order))
    return from_s_transform(S, order, provenance=f"({a.provenance}) boxtimes ({b.provenance})")


def mixed_second_moment(a: MomentLaw, b: MomentLaw) -> Scalar:
    """m_2 of a boxtimes b: m2(a) m1(b)^2 + m1(a)^2 m2(b) - m1(a)^2 m1(b)^2."""
    return a[2] * b[1] ** 2 + a[1] ** 2 * b[2] - a[1] ** 2 * b[1] ** 2


def deflate(law: MomentLaw, mu: Scalar) -> MomentLaw:
    """mu^-1 law + (1 - mu^-1) delta_0."""
    mu = coerce_scalar(mu)
    if mu < 1 - FLOAT_TOLERANCE:
        raise MassNegative(f"deflating by mu={mu} < 1 would give the atom at 0 negative mass")
    return MomentLaw((1,) + tuple(m / mu for m in law.moments[1:]), f"deflate({law.provenance}, {mu})")


def inflate(law: MomentLaw, c: Scalar) -> MomentLaw:
    """Multiply every moment of positive order by c."""
    c = coerce_scalar(c)
    if not c > 0:
        raise ParameterOutOfRange(f"inflation factor must be positive, got {c}")
    return MomentLaw((1,) + tuple(m * c for m in law.moments[1:]), f"inflate({law.provenance}, {c})")


def dilate(law: MomentLaw, c: Scalar) -> MomentLaw:
    """Law of c x: m_k -> c^k m_k."""
    c = coerce_scalar(c)
    if not c > 0:
        raise ParameterOutOfRange(f"dilation factor must be positive, got {c}")
    return MomentLaw(tuple(m * c ** k for k, m in enumerate(law.moments)), f"dilate({law.provenance}, {c})")


def deflated_s_transform(S: Series, mu: Scalar) -> Series:
    """S-transform of deflate(law, mu) from S of law: S(mu z) (1 + z) / (mu^-1 + z)."""
    mu = coerce_scalar(mu)
    return S.dilate(mu) * Series([1, 1], order=S.order) / Series([1 / mu, 1], order=S.order)


# --- Jones-Wenzl laws ---------------------------------------------------------

def _xi(w: ChainWeights, n: int, order: int) -> Series:
    one = Series.constant(1, order)
    xi = one / Series([w.at(2), 1], order=order)
    for m in range(2, n + 1):
        mu_m, mu_next = w.at(m), w.at(m + 1)
        factor = mu_m * Series([mu_m, mu_m], order=order) / (
            Series([1, mu_m], order=order) * Series([mu_next, mu_m], order=order)
        )
        xi = xi.dilate(mu_m) * factor
    return xi


def _theta(w: ChainWeights, n: int, order: int) -> Series:
    theta = Series.constant(1, order)
    for j in range(1, n + 1):
        theta = theta * w.at(j) / Series([w.at(j + 1), 1], order=order)
    return theta


def _check_chain(w: ChainWeights, n: int, order: int, method: str):
    w.require(n)
    _check_order(order)
    if method not in JW_METHODS:
        raise ParameterOutOfRange(f"method must be one of {', '.join(JW_METHODS)}, got {method!r}")


def jw_law(w: ChainWeights, n: int, order: int = DEFAULT_SERIES_ORDER, method: str = STRANSFORM) -> MomentLaw:
    """Corner-normalized law nu_n."""
    _check_chain(w, n, order, method)
    if method == STRANSFORM:
        return from_s_transform(_xi(w, n, order - 1), order, provenance=f"jw_law[{STRANSFORM}](n={n})")
    nu = free_poisson(w.at(2), order)
    for m in range(2, n + 1):
        nu = boxtimes(free_poisson(w.at(m + 1) / w.at(m), order), deflate(nu, w.at(m)))
    return nu.relabel(f"jw_law[{CONVOLUTION}](n={n})")


def jw_trace_moments(w: ChainWeights, n: int, order: int = DEFAULT_SERIES_ORDER, method: str = CONVOLUTION) -> MomentLaw:
    """J_n(k) = Tr((Q_n Q_n^*)^k) with Tr(p_*) = 1."""
    _check_chain(w, n, order, method)
    if method == STRANSFORM:
        return from_s_transform(_theta(w, n, order - 1), order, provenance=f"jw_trace[{STRANSFORM}](n={n})")
    J = free_poisson(w.at(2), order)
    for m in range(2, n + 1):
        step = boxtimes(free_poisson(w.at(m + 1) / w.at(m), order), deflate(J, w.at(m)))
        J = inflate(step, w.at(m))
    return J.relabel(f"jw_trace[{CONVOLUTION}](n={n})")


def hankel_min_eigenvalue(law: MomentLaw, size: int = 3) -> float:
    """Smallest eigenvalue of [m_{i+j}]_{0<=i,j<size}."""
    if size < 1 or 2 * (size - 1) > law.order:
        raise ParameterOutOfRange(
            f"a Hankel matrix of size {size} needs moments to order {2 * (size - 1)}, law has {law.order}"
        )
    H = np.array([[float(law[i + j]) for j in range(size)] for i in range(size)])
    return float(np.linalg.eigvalsh(H)[0])
