from fractions import Fraction
from pathlib import Path

import numpy as np
from pytest import fixture

from subfree.services.families import a_k, kac_star, multi_edge
from subfree.services.free_prob import ChainWeights

GRAPH_DIR = Path(__file__).resolve().parent.parent / "data" / "graphs"

BUILTIN_FAMILIES = [
    ("aK", 3), ("aK", 4), ("aK", 5), ("aK", 7),
    ("kac", 2), ("kac", 3), ("kac", 4), ("kac", 9),
    ("medge", 2), ("medge", 3), ("medge", 5),
]
FAMILY_IDS = [f"{name}:{n}" for name, n in BUILTIN_FAMILIES]
BUILDERS = {"aK": a_k, "kac": kac_star, "medge": multi_edge}


def build_family(name, n):
    return BUILDERS[name](n)


@fixture
def graph_dir():
    return GRAPH_DIR


@fixture
def delta2_chain():
    """mu_j = j: the A_infinity weights at delta = 2."""
    return ChainWeights(tuple(Fraction(j) for j in range(1, 6)))


@fixture
def a5_chain():
    return ChainWeights.from_family(a_k(5))


@fixture
def rng():
    return np.random.default_rng(1234)


def random_bipartite(rng, max_side=4, max_extra=4):
    """Connected bipartite multigraph description with star '*'."""
    n_even = int(rng.integers(1, max_side + 1))
    n_odd = int(rng.integers(1, max_side + 1))
    even = ["*"] + [f"e{i}" for i in range(1, n_even)]
    odd = [f"o{i}" for i in range(n_odd)]
    edges = [("*", odd[0])]
    placed_even, placed_odd = ["*"], [odd[0]]
    for v in even[1:]:
        edges.append((placed_odd[int(rng.integers(len(placed_odd)))], v))
        placed_even.append(v)
    for v in odd[1:]:
        edges.append((placed_even[int(rng.integers(len(placed_even)))], v))
        placed_odd.append(v)
    for _ in range(int(rng.integers(0, max_extra + 1))):
        edges.append((even[int(rng.integers(len(even)))], odd[int(rng.integers(len(odd)))]))
    return {
        "vertices": [{"id": v, "parity": "even"} for v in even] + [{"id": v, "parity": "odd"} for v in odd],
        "edges": [{"id": f"x{i}", "ends": list(ends)} for i, ends in enumerate(edges)],
        "star": "*",
    }
