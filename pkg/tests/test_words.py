import pytest

from data.sample_data import SAMPLE_GRAPHS
from subfree.errors import NonComposableWord, WordParseError
from subfree.services.families import kac_star
from subfree.services.graph_service import path_graph, validate
from subfree.services.words import (
    Letter,
    Projection,
    bind,
    format_word,
    jw_word,
    parse_token,
    parse_word,
    power,
)


@pytest.mark.parametrize(
    "text,token",
    [
        ("c1", Letter("1")),
        ("c12*", Letter("12", adjoint=True)),
        ("cab", Letter("ab")),
        ("p:*", Projection("*")),
        ("p:v2", Projection("v2")),
    ],
)
def test_parse_token(text, token):
    assert parse_token(text) == token
    assert parse_token(text).token == text


@pytest.mark.parametrize("text", ["x1", "c", "c*", "c1**", "p:", "1"])
def test_bad_tokens(text):
    with pytest.raises(WordParseError):
        parse_token(text)


def test_empty_word():
    with pytest.raises(WordParseError):
        parse_word("   ")


def test_letters():
    c = Letter("3")
    assert c.star() == Letter("3", adjoint=True)
    assert c.star().star() == c
    assert c.pairs_with(c.star())
    assert not c.pairs_with(c)
    assert not c.pairs_with(Letter("4", adjoint=True))


def test_jw_word_and_power():
    assert format_word(jw_word(2)) == "c1 c2 c2* c1*"
    assert format_word(power(parse_word("c1 c1*"), 3)) == "c1 c1* c1 c1* c1 c1*"


def test_bind_on_a_path():
    g = path_graph(4)
    loop = bind("c1 c2 c2* c1*", g)
    assert loop.closed
    assert (loop.base, loop.end) == ("*", "*")
    assert len(loop) == 4
    assert loop.text == "c1 c2 c2* c1*"
    back = bind("c1* c1", g)
    assert back.base == "v2" and back.closed


def test_open_words_bind():
    loop = bind("c1 c2", path_graph(3))
    assert not loop.closed
    assert loop.end == "v3"


def test_letters_must_compose():
    with pytest.raises(NonComposableWord):
        bind("c1 c1", path_graph(3))


def test_unknown_names():
    g = kac_star(4).graph
    with pytest.raises(WordParseError):
        bind("c9 c9*", g)
    with pytest.raises(WordParseError):
        bind("p:nowhere c1 c1*", g)


def test_projections():
    g = kac_star(4).graph
    assert bind("p:* c1 c1*", g).projections_match
    assert bind("c1 p:h c1*", g).projections_match
    assert not bind("p:h c1 c1*", g).projections_match
    only = bind("p:h", g)
    assert (only.base, only.end, len(only)) == ("h", "h", 0)


def test_parallel_edges_are_separate_letters():
    g = validate(SAMPLE_GRAPHS["medge2"])
    loop = bind("ca cb*", g)
    assert loop.closed
    assert loop.letters == (Letter("a"), Letter("b", adjoint=True))
