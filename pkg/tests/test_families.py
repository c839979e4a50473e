import logging
import math
from fractions import Fraction

import pytest

from subfree.errors import FamilyParseError, ParameterOutOfRange
from subfree.services.families import (
    a_inf,
    a_k,
    family,
    kac_star,
    multi_edge,
    parse_family,
    quantum_integers,
)
from subfree.services.perron import TRUNCATED_CHAIN


def test_a3_closed_form():
    fam = a_k(3)
    assert fam.closed_form.delta == pytest.approx(math.sqrt(2))
    assert [fam.closed_form.mu[v] for v in ["*", "v2", "v3"]] == pytest.approx([1, math.sqrt(2), 1])


def test_a2_is_exactly_index_one():
    p = a_k(2).closed_form
    assert p.delta == 1 and isinstance(p.delta, Fraction)
    assert not p.index_above_one


def test_kac_nine_is_exact():
    fam = kac_star(9)
    assert len(fam.graph.even_vertices) == 9
    assert fam.graph.odd_vertices == ["h"]
    assert fam.closed_form.delta == 3 and fam.closed_form.exact


def test_kac_two_is_float():
    p = kac_star(2).closed_form
    assert p.delta == pytest.approx(math.sqrt(2))
    assert not p.exact


def test_multi_edge_two():
    g = multi_edge(2).graph
    assert len(g.vertices) == 2
    assert [e.id for e in g.edges] == ["1", "2"]


@pytest.mark.parametrize("builder", [a_k, kac_star, multi_edge])
def test_parameters_below_two_are_rejected(builder):
    with pytest.raises(ParameterOutOfRange):
        builder(1)


@pytest.mark.parametrize(
    "spec,name",
    [("aK:4", "aK:4"), ("kac:4", "kac:4"), ("medge:3", "medge:3"), (" aK:5 ", "aK:5")],
)
def test_parse_family(spec, name):
    assert parse_family(spec).name == name


@pytest.mark.parametrize("spec", ["aK", "aK:x", "kac:4:2", "e6:1", "aInf:3", ""])
def test_parse_family_errors(spec):
    with pytest.raises(FamilyParseError):
        parse_family(spec)


def test_family_by_name():
    assert family("multi_edge", 4).closed_form.delta == 4
    with pytest.raises(FamilyParseError):
        family("d_k", 4)


def test_quantum_integers():
    assert quantum_integers(2, 4) == (1, 2, 3, 4)
    q = (3 + math.sqrt(5)) / 2
    assert quantum_integers(3.0, 3) == pytest.approx((1.0, 3.0, 8.0))
    assert quantum_integers(3.0, 3)[2] == pytest.approx((q ** 3 - q ** -3) / (q - 1 / q))
    with pytest.raises(ParameterOutOfRange):
        quantum_integers(1.5, 3)


def test_truncated_a_infinity(caplog):
    with caplog.at_level(logging.WARNING):
        fam = parse_family("aInf:5:2")
    p = fam.closed_form
    assert p.method == TRUNCATED_CHAIN
    assert not p.converged
    assert p.residual > 0
    assert [p.mu[v] for v in ["*", "v2", "v3", "v4", "v5"]] == [1, 2, 3, 4, 5]
    assert "not the Perron vector" in caplog.text


def test_truncated_a_infinity_needs_two_vertices():
    with pytest.raises(ParameterOutOfRange):
        a_inf(1, 2)
