"""Loop words in edge letters.

Mini-syntax: whitespace-separated tokens

    c<edge>     the letter c_e, running from tail(e) to head(e)
    c<edge>*    its adjoint, running from head(e) to tail(e)
    p:<vertex>  the vertex projection p_v

e.g. "c1 c2 c2* c1*" on a path whose edges are named "1", "2", ...
A word is read as a matrix product, so the right vertex of each letter
must be the left vertex of the next one.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from subfree.errors import NonComposableWord, WordParseError
from subfree.services.graph_service import PrincipalGraph


@dataclass(frozen=True)
class Letter:
    edge: str
    adjoint: bool = False

    @property
    def token(self) -> str:
        return f"c{self.edge}{'*' if self.adjoint else ''}"

    def star(self) -> "Letter":
        return Letter(self.edge, not self.adjoint)

    def pairs_with(self, other: "Letter") -> bool:
        return self.edge == other.edge and self.adjoint != other.adjoint

    def ends(self, graph: PrincipalGraph) -> Tuple[str, str]:
        """(left, right) vertices of the letter."""
        e = graph.edge(self.edge)
        return (e.head, e.tail) if self.adjoint else (e.tail, e.head)


@dataclass(frozen=True)
class Projection:
    vertex: str

    @property
    def token(self) -> str:
        return f"p:{self.vertex}"


Token = Union[Letter, Projection]


def parse_token(text: str) -> Token:
    if text.startswith("p:"):
        vertex = text[2:]
        if not vertex:
            raise WordParseError(f"projection token {text!r} names no vertex")
        return Projection(vertex)
    if text.startswith("c"):
        adjoint = text.endswith("*")
        edge = text[1:-1] if adjoint else text[1:]
        if not edge or "*" in edge:
            raise WordParseError(f"bad letter token {text!r}")
        return Letter(edge, adjoint)
    raise WordParseError(f"bad token {text!r}; expected c<edge>, c<edge>* or p:<vertex>")


def parse_word(text: str) -> Tuple[Token, ...]:
    tokens = tuple(parse_token(t) for t in text.split())
    if not tokens:
        raise WordParseError("empty word")
    return tokens


def format_word(tokens: Sequence[Token]) -> str:
    return " ".join(t.token for t in tokens)


def power(tokens: Sequence[Token], k: int) -> Tuple[Token, ...]:
    return tuple(tokens) * k


def jw_word(n: int) -> Tuple[Letter, ...]:
    """Q_n Q_n^* on a path: c1 ... cn cn* ... c1*."""
    forward = tuple(Letter(str(j)) for j in range(1, n + 1))
    return forward + tuple(l.star() for l in reversed(forward))


@dataclass(frozen=True)
class LoopWord:
    """A word bound to a graph.

    `base` is the left vertex of the first token and `end` the right vertex
    of the last one. `projections_match` is False when some projection sits
    at a vertex other than the one the letters pass through there; such a
    word evaluates to zero.
    """

    tokens: Tuple[Token, ...]
    letters: Tuple[Letter, ...]
    base: str
    end: str
    projections_match: bool = True

    @property
    def closed(self) -> bool:
        return self.base == self.end

    @property
    def text(self) -> str:
        return format_word(self.tokens)

    def __len__(self) -> int:
        return len(self.letters)


def bind(word: Union[str, Sequence[Token]], graph: PrincipalGraph) -> LoopWord:
    tokens = parse_word(word) if isinstance(word, str) else tuple(word)
    if not tokens:
        raise WordParseError("empty word")
    for t in tokens:
        if isinstance(t, Letter) and not graph.has_edge(t.edge):
            raise WordParseError(f"letter {t.token!r} names unknown edge {t.edge!r}")
        if isinstance(t, Projection) and t.vertex not in graph.G:
            raise WordParseError(f"projection {t.token!r} names unknown vertex {t.vertex!r}")

    letters = tuple(t for t in tokens if isinstance(t, Letter))
    for a, b in zip(letters, letters[1:]):
        if a.ends(graph)[1] != b.ends(graph)[0]:
            raise NonComposableWord(
                f"{a.token} ends at {a.ends(graph)[1]!r} but {b.token} starts at {b.ends(graph)[0]!r}"
            )

    # vertex seen at each projection: the right end of the preceding letter,
    # or the left end of the first letter for leading projections
    match = True
    current = letters[0].ends(graph)[0] if letters else None
    for t in tokens:
        if isinstance(t, Letter):
            current = t.ends(graph)[1]
        elif current is None:
            current = t.vertex
        elif t.vertex != current:
            match = False

    if letters:
        base, end = letters[0].ends(graph)[0], letters[-1].ends(graph)[1]
    else:
        base = end = tokens[0].vertex
    return LoopWord(tokens=tokens, letters=letters, base=base, end=end, projections_match=match)
