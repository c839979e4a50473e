"""Closed-form invariants of a finite-depth principal graph.

Given Perron data (delta, mu) the module evaluates

    T  = sum_v mu(v)                            trace of the support projection
    I  = sum_{v even} mu(v)^2                   global index
    s  = 1 + T^-2 (-sum_v mu(v)^2 + 2 sum_e mu(s(e)) mu(t(e)))
    r_k = 1 + 2 delta^(-2k) (delta - 1) I       free group parameter of M_k

together with the free dimensions of the edge algebras. All functions are
generic in the number type: Fraction inputs give exact results, floats give
floats. Edges are counted with multiplicity.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from subfree.config import CONSISTENCY_RTOL
from subfree.errors import IndexTooSmall, InconsistentParity, NotConverged, ParameterOutOfRange
from subfree.services.graph_service import PrincipalGraph
from subfree.services.perron import Number, PerronData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeAlgebra:
    edge_id: str
    small: str
    large: str
    atom_mass: Number
    fdim: Number


@dataclass(frozen=True)
class TowerInvariants:
    delta: Number
    index: Number
    T: Number
    I: Number
    s: Number
    fdim_base: Number
    fdim_edge: Dict[str, Number]
    fdim_edge_local: Dict[str, Number]
    r: List[Number]
    r0_via_s: Number
    exact: bool = field(default=False)


def agree(a: Number, b: Number, rtol: float = CONSISTENCY_RTOL) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= rtol * max(1.0, abs(float(a)), abs(float(b)))


def _require_converged(p: PerronData):
    if not p.converged:
        raise NotConverged(
            f"Perron data from {p.method} is not an eigenvector of the graph "
            f"(residual {p.residual:.3g})"
        )


def _require_index(delta: Number):
    if not delta > 1:
        raise IndexTooSmall(f"tower invariants need delta > 1 (index delta^2 > 1), got delta={delta}")


def global_index(p: PerronData, g: PrincipalGraph, side: str = "even") -> Number:
    """Sum of mu^2 over the even vertices (or odd: the opposite graph's index).

    Both sides must agree; a mismatch means the Perron data is not an
    eigenvector of this graph.
    """
    _require_converged(p)
    even = sum((p.mu[v] ** 2 for v in g.even_vertices), 0)
    odd = sum((p.mu[v] ** 2 for v in g.odd_vertices), 0)
    if not agree(even, odd):
        raise InconsistentParity(
            f"even-side sum {even} and odd-side sum {odd} of mu^2 disagree"
        )
    if side == "even":
        return even
    if side == "odd":
        return odd
    raise ParameterOutOfRange(f"side must be 'even' or 'odd', got {side!r}")


def total_weight(p: PerronData, g: PrincipalGraph) -> Number:
    return sum((p.mu[v] for v in g.vertices), 0)


def _square_sum(p: PerronData, g: PrincipalGraph) -> Number:
    return sum((p.mu[v] ** 2 for v in g.vertices), 0)


def edge_weight(e: str, p: PerronData, g: PrincipalGraph) -> Number:
    return p.mu[g.source(e)] * p.mu[g.target(e)]


def edge_sum(p: PerronData, g: PrincipalGraph) -> Number:
    return sum((edge_weight(e.id, p, g) for e in g.edges), 0)


def free_group_parameter_s(p: PerronData, g: PrincipalGraph) -> Number:
    _require_converged(p)
    _require_index(p.delta)
    T = total_weight(p, g)
    return 1 + (-_square_sum(p, g) + 2 * edge_sum(p, g)) / (T * T)


def fdim_edge_local(mu_v: Number, mu_w: Number) -> Number:
    """Free dimension of the algebra generated by one edge and its endpoints."""
    return 1 - (mu_w - mu_v) ** 2 / (mu_w + mu_v) ** 2


def fdim_base(p: PerronData, g: PrincipalGraph) -> Number:
    T = total_weight(p, g)
    return 1 - _square_sum(p, g) / (T * T)


def fdim_edge_global(e: str, p: PerronData, g: PrincipalGraph) -> Number:
    T = total_weight(p, g)
    return fdim_base(p, g) + 2 * edge_weight(e, p, g) / (T * T)


def s_by_amalgamation(p: PerronData, g: PrincipalGraph, e0: Optional[str] = None) -> Number:
    """s as fdim(N_e0) + sum over the other edges of fdim(N_e) - fdim(A)."""
    _require_converged(p)
    _require_index(p.delta)
    if e0 is None:
        e0 = next(e.id for e in g.edges if g.star in (e.tail, e.head))
    base = fdim_base(p, g)
    rest = sum((fdim_edge_global(e.id, p, g) - base for e in g.edges if e.id != e0), 0)
    return fdim_edge_global(e0, p, g) + rest


def edge_algebra(e: str, p: PerronData, g: PrincipalGraph) -> EdgeAlgebra:
    ends = sorted((g.source(e), g.target(e)), key=lambda v: p.mu[v])
    small, large = ends
    mu_v, mu_w = p.mu[small], p.mu[large]
    return EdgeAlgebra(
        edge_id=e,
        small=small,
        large=large,
        atom_mass=(mu_w - mu_v) / (mu_w + mu_v),
        fdim=fdim_edge_local(mu_v, mu_w),
    )


def compress(r: Number, t: Number) -> Number:
    """Parameter of the compression of L(F(r)) by a projection of trace t."""
    if not t > 0:
        raise ParameterOutOfRange(f"compression needs t > 0, got {t}")
    return 1 + (r - 1) / (t * t)


def tower(delta: Number, I: Number, k_max: int) -> List[Number]:
    _require_index(delta)
    if not I > 0:
        raise ParameterOutOfRange(f"global index must be positive, got {I}")
    if k_max < 0:
        raise ParameterOutOfRange(f"k_max must be >= 0, got {k_max}")
    return [1 + 2 * (delta - 1) * I / delta ** (2 * k) for k in range(k_max + 1)]


def invariants(p: PerronData, g: PrincipalGraph, k_max: int) -> TowerInvariants:
    I = global_index(p, g)
    s = free_group_parameter_s(p, g)
    T = total_weight(p, g)
    r = tower(p.delta, I, k_max)
    r0_via_s = compress(s, 1 / T)
    if not agree(r0_via_s, r[0]):
        raise InconsistentParity(
            f"r_0 from s ({r0_via_s}) disagrees with the direct formula ({r[0]})"
        )
    logger.info(f"tower invariants: delta={float(p.delta):.12g} I={float(I):.12g} s={float(s):.12g}")
    return TowerInvariants(
        delta=p.delta,
        index=p.index,
        T=T,
        I=I,
        s=s,
        fdim_base=fdim_base(p, g),
        fdim_edge={e.id: fdim_edge_global(e.id, p, g) for e in g.edges},
        fdim_edge_local={
            e.id: fdim_edge_local(p.mu[g.source(e.id)], p.mu[g.target(e.id)]) for e in g.edges
        },
        r=r,
        r0_via_s=r0_via_s,
        exact=p.exact,
    )
