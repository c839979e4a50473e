"""Built-in principal graph families with closed-form Perron data.

Shorthand grammar (used by the CLI):

    aK:<K>                       path A_K, K >= 2
    kac:<n>                      Kac algebra star, n >= 2
    medge:<n>                    two vertices joined by n parallel edges, n >= 2
    aInf:<truncation>:<delta>    first `truncation` vertices of A_infinity with
                                 weights [j]_q, delta = q + 1/q >= 2
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from subfree.errors import FamilyParseError, ParameterOutOfRange
from subfree.services.graph_service import (
    EVEN,
    ODD,
    PrincipalGraph,
    chain_vertex,
    path_graph,
    validate,
)
from subfree.services.perron import (
    CLOSED_FORM,
    TRUNCATED_CHAIN,
    Number,
    PerronData,
    eigen_residual,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Family:
    name: str
    graph: PrincipalGraph
    closed_form: Optional[PerronData]


def _exact_sqrt(n: int) -> Number:
    root = math.isqrt(n)
    return Fraction(root) if root * root == n else math.sqrt(n)


def _closed_form(graph: PrincipalGraph, delta: Number, mu: dict, method: str = CLOSED_FORM) -> PerronData:
    exact = isinstance(delta, Fraction) and all(isinstance(m, Fraction) for m in mu.values())
    residual = eigen_residual(graph, delta, mu)
    return PerronData(
        delta=delta,
        mu=mu,
        converged=method == CLOSED_FORM,
        iterations=0,
        residual=residual,
        method=method,
        exact=exact,
    )


def a_k(K: int) -> Family:
    if K < 2:
        raise ParameterOutOfRange(f"a_k needs K >= 2, got {K}")
    graph = path_graph(K)
    if K == 2:
        # 2cos(pi/3) rounds above 1
        mu = {chain_vertex(1): Fraction(1), chain_vertex(2): Fraction(1)}
        return Family("aK:2", graph, _closed_form(graph, Fraction(1), mu))
    angle = math.pi / (K + 1)
    delta = 2 * math.cos(angle)
    mu = {chain_vertex(j): math.sin(j * angle) / math.sin(angle) for j in range(1, K + 1)}
    return Family(f"aK:{K}", graph, _closed_form(graph, delta, mu))


def kac_star(n: int) -> Family:
    """Star with one odd hub; n even vertices counting the star."""
    if n < 2:
        raise ParameterOutOfRange(f"kac_star needs n >= 2, got {n}")
    vertices = [{"id": "*", "parity": EVEN}, {"id": "h", "parity": ODD}]
    vertices += [{"id": f"l{j}", "parity": EVEN} for j in range(2, n + 1)]
    edges = [{"id": "1", "ends": ["*", "h"]}]
    edges += [{"id": str(j), "ends": ["h", f"l{j}"]} for j in range(2, n + 1)]
    graph = validate({"vertices": vertices, "edges": edges, "star": "*"})

    root = _exact_sqrt(n)
    one = Fraction(1) if isinstance(root, Fraction) else 1.0
    mu = {v: one for v in graph.even_vertices}
    mu["h"] = root
    return Family(f"kac:{n}", graph, _closed_form(graph, root, mu))


def multi_edge(n: int) -> Family:
    if n < 2:
        raise ParameterOutOfRange(f"multi_edge needs n >= 2, got {n}")
    vertices = [{"id": "*", "parity": EVEN}, {"id": "v", "parity": ODD}]
    edges = [{"id": str(j), "ends": ["*", "v"]} for j in range(1, n + 1)]
    graph = validate({"vertices": vertices, "edges": edges, "star": "*"})
    mu = {"*": Fraction(1), "v": Fraction(1)}
    return Family(f"medge:{n}", graph, _closed_form(graph, Fraction(n), mu))


def quantum_integers(delta: Number, length: int) -> Tuple[Number, ...]:
    """[1]_q, ..., [length]_q with delta = q + 1/q; exact integers at delta = 2."""
    if delta < 2:
        raise ParameterOutOfRange(f"quantum integers need delta >= 2, got {delta}")
    if delta == 2:
        return tuple(Fraction(j) for j in range(1, length + 1))
    d = float(delta)
    q = (d + math.sqrt(d * d - 4)) / 2
    return tuple((q ** j - q ** -j) / (q - 1 / q) for j in range(1, length + 1))


def a_inf(truncation: int, delta: Number) -> Family:
    """Truncated A_infinity chain. The weights are not an eigenvector of the
    finite path, so the Perron data is flagged as not converged."""
    if truncation < 2:
        raise ParameterOutOfRange(f"a_inf needs truncation >= 2, got {truncation}")
    weights = quantum_integers(delta, truncation)
    graph, data = chain_model(weights, delta=delta)
    logger.warning(
        f"aInf:{truncation}:{delta} weights are A_infinity quantum integers, "
        f"not the Perron vector of the truncated path (residual {data.residual:.3g})"
    )
    return Family(f"aInf:{truncation}:{delta}", graph, data)


def chain_model(weights: Sequence[Number], delta: Optional[Number] = None) -> Tuple[PrincipalGraph, PerronData]:
    """Path graph carrying the given weights along the geodesic from the star."""
    if len(weights) < 2:
        raise ParameterOutOfRange("a chain needs at least two weights")
    if weights[0] != 1:
        raise ParameterOutOfRange(f"chain weights must start at 1, got {weights[0]}")
    graph = path_graph(len(weights))
    mu = {chain_vertex(j + 1): w for j, w in enumerate(weights)}
    if delta is None:
        delta = weights[1]
    return graph, _closed_form(graph, delta, mu, method=TRUNCATED_CHAIN)


def family(name: str, *params) -> Family:
    builders = {"a_k": a_k, "kac_star": kac_star, "multi_edge": multi_edge, "a_inf": a_inf}
    if name not in builders:
        raise FamilyParseError(f"unknown family {name!r}")
    return builders[name](*params)


def _parse_number(text: str) -> Number:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FamilyParseError(f"not a number: {text!r}")
    return value if value == 2 else float(value)


def parse_family(spec: str) -> Family:
    """Build a family from its shorthand, e.g. `kac:4` or `aInf:6:2`."""
    parts = spec.strip().split(":")
    head, args = parts[0], parts[1:]
    try:
        if head == "aK" and len(args) == 1:
            return a_k(int(args[0]))
        if head == "kac" and len(args) == 1:
            return kac_star(int(args[0]))
        if head == "medge" and len(args) == 1:
            return multi_edge(int(args[0]))
        if head == "aInf" and len(args) == 2:
            return a_inf(int(args[0]), _parse_number(args[1]))
    except ValueError:
        raise FamilyParseError(f"bad family parameters in {spec!r}")
    raise FamilyParseError(
        f"unknown family {spec!r}; expected aK:<K>, kac:<n>, medge:<n> or aInf:<truncation>:<delta>"
    )
