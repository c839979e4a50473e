import math
from fractions import Fraction

import pytest

from data.sample_data import SAMPLE_GRAPHS
from subfree.errors import NonComposableWord, ParameterOutOfRange, WordTooLong
from subfree.services.families import kac_star, multi_edge
from subfree.services.free_prob import ChainWeights, jw_trace_moments, narayana
from subfree.services.graph_service import validate
from subfree.services.pairing_oracle import (
    CANONICAL,
    POISSON_NORMALIZED,
    Covariance,
    SemicircularSpec,
    avalued_moment,
    avalued_moment_brute_force,
    chain_spec,
    corner_norm_profile,
    enumerate_noncrossing_pairings,
    jw_moment_oracle,
    perfect_matchings,
    trace_moment,
)
from subfree.services.words import Letter

CATALAN = [1, 1, 2, 5, 14, 42]


@pytest.fixture
def kac4_spec():
    fam = kac_star(4)
    return SemicircularSpec.canonical(fam.graph, fam.closed_form.mu)


def _random_loop(rng, graph, start, length):
    """Random walk of `length` letters from `start`, or None if it does not return."""
    current, letters = start, []
    for _ in range(length):
        incident = [e for e in graph.edges if current in (e.tail, e.head)]
        e = incident[int(rng.integers(len(incident)))]
        if current == e.tail:
            letters.append(Letter(e.id))
            current = e.head
        else:
            letters.append(Letter(e.id, adjoint=True))
            current = e.tail
    return tuple(letters) if current == start else None


def test_pairing_counts():
    assert len(list(perfect_matchings(6))) == 15
    assert list(perfect_matchings(3)) == []
    for k in range(1, 6):
        assert len(enumerate_noncrossing_pairings(2 * k)) == CATALAN[k]


def test_single_edge_moments(kac4_spec):
    # alpha = 2, beta = 1 on the edge from the star to the hub
    assert avalued_moment(kac4_spec, "c1 c1*")["*"] == 2
    assert avalued_moment(kac4_spec, "c1* c1")["h"] == 1
    assert avalued_moment(kac4_spec, "c1 c1* c1 c1*")["*"] == 6
    assert trace_moment(kac4_spec, "c1* c1") == 2


@pytest.mark.parametrize("k", range(1, 6))
def test_corner_moments_are_narayana(kac4_spec, k):
    expected = sum(narayana(k, j) * 2 ** j for j in range(1, k + 1))
    assert avalued_moment(kac4_spec, " ".join(["c1 c1*"] * k))["*"] == expected


def test_moment_vector_is_supported_at_the_base(kac4_spec):
    m = avalued_moment(kac4_spec, "c2* c1* c1 c2")
    assert m["l2"] == 2 * 1
    assert all(m[v] == 0 for v in m if v != "l2")


def test_different_edges_are_free():
    fam = multi_edge(2)
    spec = SemicircularSpec.canonical(fam.graph, fam.closed_form.mu)
    assert avalued_moment(spec, "c1 c2*")["*"] == 0
    assert avalued_moment(spec, "c1 c1* c2 c2*")["*"] == 1
    assert avalued_moment(spec, "c1 c2* c1 c2*")["*"] == 0


def test_projections_and_open_words(kac4_spec):
    assert avalued_moment(kac4_spec, "p:* c1 c1*")["*"] == 2
    assert avalued_moment(kac4_spec, "c1 p:h c1*")["*"] == 2
    assert avalued_moment(kac4_spec, "p:h c1 c1*")["*"] == 0
    assert all(v == 0 for v in avalued_moment(kac4_spec, "c1 c2").values())
    with pytest.raises(NonComposableWord):
        trace_moment(kac4_spec, "c1 c2")


def test_recursion_matches_enumeration_on_random_loops(kac4_spec, rng):
    checked = 0
    while checked < 40:
        length = 2 * int(rng.integers(1, 6))
        start = ["*", "h", "l2", "l3", "l4"][int(rng.integers(5))]
        letters = _random_loop(rng, kac4_spec.graph, start, length)
        if letters is None:
            continue
        assert avalued_moment(kac4_spec, letters) == avalued_moment_brute_force(kac4_spec, letters)
        checked += 1


def test_recursion_matches_enumeration_with_parallel_edges(rng):
    g = validate(SAMPLE_GRAPHS["medge2"])
    spec = SemicircularSpec.poisson_normalized(g, {"*": Fraction(1), "v": Fraction(2)})
    for _ in range(30):
        letters = _random_loop(rng, g, "*", 2 * int(rng.integers(1, 6)))
        assert avalued_moment(spec, letters) == avalued_moment_brute_force(spec, letters)


def test_word_caps(kac4_spec):
    long_word = " ".join(["c1 c1*"] * 9)
    with pytest.raises(WordTooLong):
        avalued_moment(kac4_spec, long_word)
    assert avalued_moment(kac4_spec, long_word, max_letters=18)["*"] > 0
    with pytest.raises(WordTooLong):
        avalued_moment_brute_force(kac4_spec, " ".join(["c1 c1*"] * 6))


def test_conventions():
    fam = kac_star(4)
    g, mu = fam.graph, fam.closed_form.mu
    canon = SemicircularSpec.build(g, mu, CANONICAL)
    poisson = SemicircularSpec.build(g, mu, POISSON_NORMALIZED)
    assert canon.covariance["1"] == Covariance(alpha=2, beta=1)
    assert poisson.covariance["1"] == Covariance(alpha=2, beta=1)
    assert canon.covariance["2"] == Covariance(alpha=1, beta=2)
    assert poisson.covariance["2"] == Covariance(alpha=Fraction(1, 2), beta=1)
    assert canon.entry_variance("2", 100) == pytest.approx(0.01)
    assert poisson.entry_variance("2", 100) == pytest.approx(0.005)
    with pytest.raises(ParameterOutOfRange):
        SemicircularSpec.build(g, mu, "orthonormal")


def test_covariances_must_respect_the_trace():
    g = multi_edge(2).graph
    mu = {"*": Fraction(1), "v": Fraction(2)}
    ok = {"1": Covariance(2, 1), "2": Covariance(4, 2)}
    SemicircularSpec(g, mu, ok, CANONICAL)
    with pytest.raises(ParameterOutOfRange):
        SemicircularSpec(g, mu, {"1": Covariance(1, 1), "2": Covariance(2, 1)}, CANONICAL)
    with pytest.raises(ParameterOutOfRange):
        SemicircularSpec(g, mu, {"1": Covariance(0, 0), "2": Covariance(2, 1)}, CANONICAL)


def test_jw_oracle_at_delta_two(delta2_chain):
    assert jw_moment_oracle(delta2_chain, 1, 0) == 1
    assert jw_moment_oracle(delta2_chain, 1, 1) == 2
    assert jw_moment_oracle(delta2_chain, 2, 1) == 3
    assert jw_moment_oracle(delta2_chain, 2, 2) == Fraction(33, 2)
    with pytest.raises(WordTooLong):
        jw_moment_oracle(delta2_chain, 3, 3)
    with pytest.raises(ParameterOutOfRange):
        jw_moment_oracle(delta2_chain, 1, -1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jw_oracle_matches_trace_moments(delta2_chain, n):
    J = jw_trace_moments(delta2_chain, n, order=5)
    for k in range(1, 6):
        assert jw_moment_oracle(delta2_chain, n, k, max_letters=30) == J[k]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jw_oracle_on_a5(a5_chain, n):
    J = jw_trace_moments(a5_chain, n, order=5)
    for k in range(1, 6):
        oracle = jw_moment_oracle(a5_chain, n, k, max_letters=30)
        assert float(oracle) == pytest.approx(float(J[k]), rel=1e-8)


def test_chain_spec_uses_path_labels():
    spec = chain_spec(ChainWeights((1, 2, 3)), convention=CANONICAL)
    assert spec.graph.vertices == ["*", "v2", "v3"]
    assert spec.covariance["2"] == Covariance(alpha=3, beta=2)


def test_corner_norm_profile(kac4_spec):
    profile = corner_norm_profile(kac4_spec, "1", 8)
    assert profile.moments[:3] == (2, 6, 22)
    assert profile.nondecreasing
    assert profile.edge_bound == pytest.approx(math.sqrt(2) + 1)
    assert all(r <= profile.edge_bound for r in profile.roots)
    assert all(r <= 2 * math.sqrt(2) for r in profile.roots)
    with pytest.raises(WordTooLong):
        corner_norm_profile(kac4_spec, "1", 9)
    with pytest.raises(ParameterOutOfRange):
        corner_norm_profile(kac4_spec, "1", 0)
