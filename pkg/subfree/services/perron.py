"""Perron-Frobenius data of a principal graph.

Power iteration runs on the square of the adjacency operator restricted to
the even vertices (B B^T, B the even-by-odd block). On a bipartite graph
the plain adjacency operator has -delta in its spectrum, so iterating it
directly oscillates; B B^T is primitive on a connected graph. The odd
weights are recovered afterwards as mu_odd = B^T mu_even / delta.
The stopping test divides the residual by the largest weight, so graphs
whose weights grow by many orders of magnitude away from the star still
stop once the vector is accurate to the tolerance.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Union

import numpy as np

from subfree.config import DEFAULT_MAX_ITER, DEFAULT_TOLERANCE
from subfree.errors import NoConvergence, ParameterOutOfRange
from subfree.services.graph_service import PrincipalGraph

logger = logging.getLogger(__name__)

Number = Union[float, Fraction]

POWER_ITERATION = "power_iteration"
CLOSED_FORM = "closed_form"
TRUNCATED_CHAIN = "truncated_chain"


@dataclass(frozen=True)
class PerronData:
    delta: Number
    mu: Dict[str, Number]
    converged: bool
    iterations: int
    residual: float
    method: str = POWER_ITERATION
    exact: bool = field(default=False)

    @property
    def index(self) -> Number:
        return self.delta * self.delta

    @property
    def index_above_one(self) -> bool:
        return self.delta > 1


def eigen_residual(graph: PrincipalGraph, delta: Number, mu: Mapping[str, Number]) -> float:
    """max_v |(A mu)(v) - delta mu(v)|, in floating point."""
    order = graph.vertices
    A = graph.adjacency(order)
    x = np.array([float(mu[v]) for v in order])
    return float(np.max(np.abs(A @ x - float(delta) * x))) if len(order) else 0.0


def perron(
    graph: PrincipalGraph,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> PerronData:
    if tolerance <= 0:
        raise ParameterOutOfRange(f"tolerance must be positive, got {tolerance}")
    if max_iter < 1:
        raise ParameterOutOfRange(f"max_iter must be >= 1, got {max_iter}")

    even = graph.even_vertices
    odd = graph.odd_vertices
    star_index = even.index(graph.star)

    if not odd:
        # lone star, no edges
        logger.warning("graph has no odd vertices; delta = 0")
        return PerronData(delta=0.0, mu={graph.star: 1.0}, converged=True,
                          iterations=0, residual=0.0)

    A = graph.adjacency(even + odd)
    B = A[: len(even), len(even):]
    M = B @ B.T

    x = np.ones(len(even))
    residual = np.inf
    delta = 0.0
    for it in range(1, max_iter + 1):
        y = M @ x
        x = y / y[star_index]
        Mx = M @ x
        lam = float(x @ Mx / (x @ x))
        delta = float(np.sqrt(lam))
        # relative to the largest weight; mu can grow geometrically away from the star
        residual = float(np.max(np.abs(Mx - lam * x))) / (delta * max(1.0, float(np.max(np.abs(x)))))
        if it % 1000 == 0:
            logger.debug(f"perron iteration {it}: residual={residual:.3e}")
        if residual <= tolerance:
            break
    else:
        raise NoConvergence(
            f"power iteration did not reach tolerance {tolerance} in {max_iter} "
            f"iterations (residual {residual:.3e})",
            residual=residual,
            iterations=max_iter,
        )

    mu_odd = B.T @ x / delta
    mu = {v: float(x[i]) for i, v in enumerate(even)}
    mu.update({v: float(mu_odd[i]) for i, v in enumerate(odd)})
    residual = eigen_residual(graph, delta, mu)
    logger.info(f"perron converged after {it} iterations: delta={delta:.12g}, residual={residual:.3e}")
    if delta <= 1:
        logger.warning(f"delta={delta:.12g} <= 1: tower invariants are undefined for this graph")
    return PerronData(delta=delta, mu=mu, converged=True, iterations=it, residual=residual)
