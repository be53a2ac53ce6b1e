"""Word DSL.

Words::

    t[1,2](a1) t[2,1](b1 - 2*c)   # product of letters
    z[1,2](a1*b1, c)              # t_21(c) t_12(a1*b1) t_21(-c)
    comm(u, v)  conj(x, w)  inv(w)  e

Generator terms (input of ``decompose``), one per entry::

    zab[1,2](a1, b1, c)   zba[1,3](a1, b1, c)   c3[2,3](a1, b1, c)
    c2[1,2](a1, b1)       zres[1,2](a1*b1, c)
    conj(t[1,3](x), c2[1,2](a1, b1))

Ring expressions are integer-coefficient noncommutative polynomials; a name
starting with ``a`` is in A, with ``b`` in B, anything else is in R.
``#`` starts a comment.
"""

from __future__ import annotations

from typing import Any

import lark
from lark import v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from elemcomm.algebra.elemgroup import (
    GroupWord,
    concat,
    word_comm,
    word_conj,
    word_inv,
    z_gen,
)
from elemcomm.algebra.freering import RingElem
from elemcomm.core.errors import DslSyntaxError, ElemCommError, InvalidPosition
from elemcomm.rewrite.decompose import GeneratorTerm

grammar = r"""
    word_start: word
    terms_start: gterm*
    elem_start: expr

    word: atom+

    ?atom: "t" "[" INT "," INT "]" "(" expr ")"              -> letter
         | "z" "[" INT "," INT "]" "(" expr "," expr ")"     -> zword
         | "comm" "(" word "," word ")"                      -> comm
         | "conj" "(" word "," word ")"                      -> conj
         | "inv" "(" word ")"                                -> inv
         | "e"                                               -> ident

    ?gterm: TRIPLE_KIND "[" INT "," INT "]" "(" expr "," expr "," expr ")" -> gen
          | PAIR_KIND "[" INT "," INT "]" "(" expr "," expr ")"            -> gen
          | "conj" "(" word "," gterm ")"                                  -> gconj

    TRIPLE_KIND: "zab" | "zba" | "c3"
    PAIR_KIND: "c2" | "zres"

    ?expr: product
         | expr "+" product  -> add
         | expr "-" product  -> sub

    ?product: unary
            | product "*" unary  -> mul

    ?unary: primary
          | "-" unary  -> neg

    ?primary: INT            -> const
            | NAME           -> var
            | "(" expr ")"

    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = lark.Lark(
    grammar, start=["word_start", "terms_start", "elem_start"], parser="lalr"
)


@v_args(inline=True)
class WordTransformer(lark.Transformer[Any, Any]):
    """Desugars the parse tree into group words and generator terms."""

    def __init__(self, n: int) -> None:
        super().__init__()
        self.n = n

    def _position(self, i: Any, j: Any) -> tuple[int, int]:
        row, col = int(i), int(j)
        if row == col or not (1 <= row <= self.n and 1 <= col <= self.n):
            raise InvalidPosition(row, col, self.n)
        return row, col

    # ring expressions

    def const(self, token: Any) -> RingElem:
        return RingElem.const(int(token))

    def var(self, token: Any) -> RingElem:
        return RingElem.sym(str(token))

    def add(self, left: RingElem, right: RingElem) -> RingElem:
        return left + right

    def sub(self, left: RingElem, right: RingElem) -> RingElem:
        return left - right

    def mul(self, left: RingElem, right: RingElem) -> RingElem:
        return left * right

    def neg(self, value: RingElem) -> RingElem:
        return -value

    # words

    def letter(self, i: Any, j: Any, p: RingElem) -> GroupWord:
        return GroupWord.single(self.n, *self._position(i, j), p)

    def zword(self, i: Any, j: Any, p: RingElem, c: RingElem) -> GroupWord:
        return z_gen(self.n, *self._position(i, j), p, c)

    def comm(self, u: GroupWord, v: GroupWord) -> GroupWord:
        return word_comm(u, v)

    def conj(self, x: GroupWord, w: GroupWord) -> GroupWord:
        return word_conj(x, w)

    def inv(self, w: GroupWord) -> GroupWord:
        return word_inv(w)

    def ident(self) -> GroupWord:
        return GroupWord.identity(self.n)

    @v_args(inline=False)
    def word(self, parts: list[GroupWord]) -> GroupWord:
        return concat(self.n, parts)

    # generator terms

    def gen(self, kind: Any, i: Any, j: Any, *params: RingElem) -> GeneratorTerm:
        row, col = self._position(i, j)
        return GeneratorTerm.of(str(kind), row, col, *params, n=self.n)

    def gconj(self, x: GroupWord, term: GeneratorTerm) -> GeneratorTerm:
        # ^x ^y g = ^(xy) g
        return GeneratorTerm(
            term.kind, term.i, term.j, term.params, x + term.conjugator
        )

    def word_start(self, w: GroupWord) -> GroupWord:
        return w

    def elem_start(self, p: RingElem) -> RingElem:
        return p

    @v_args(inline=False)
    def terms_start(self, terms: list[GeneratorTerm]) -> list[GeneratorTerm]:
        return list(terms)


def _parse(text: str, start: str, n: int) -> Any:
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedEOF as exc:
        raise DslSyntaxError("unexpected end of input", *_end_of(text)) from exc
    except UnexpectedCharacters as exc:
        raise DslSyntaxError(
            f"unexpected character {text[exc.pos_in_stream]!r}", exc.line, exc.column
        ) from exc
    except UnexpectedInput as exc:
        token = getattr(exc, "token", None)
        if token is not None and token.type == "$END":
            raise DslSyntaxError("unexpected end of input", *_end_of(text)) from exc
        shown = f" {str(token)!r}" if token is not None else ""
        raise DslSyntaxError(
            f"unexpected token{shown}", exc.line, exc.column
        ) from exc
    try:
        return WordTransformer(n).transform(tree)
    except lark.exceptions.VisitError as exc:
        if isinstance(exc.orig_exc, ElemCommError | ValueError):
            raise exc.orig_exc from None
        raise


def _end_of(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def parse_word(text: str, n: int) -> GroupWord:
    """Parse a word; blank input is the identity.

    Raises:
        DslSyntaxError: with line and column of the failure
        InvalidPosition: for i = j or an index outside 1..n
    """
    if not _strip_comments(text).strip():
        return GroupWord.identity(n)
    word: GroupWord = _parse(text, "word_start", n)
    return word


def parse_terms(text: str, n: int) -> list[GeneratorTerm]:
    """Parse a sequence of generator terms (possibly empty)."""
    terms: list[GeneratorTerm] = _parse(text, "terms_start", n)
    return terms


def parse_elem(text: str) -> RingElem:
    """Parse a single ring expression."""
    elem: RingElem = _parse(text, "elem_start", 3)
    return elem


def parse(text: str, n: int) -> GroupWord | list[GeneratorTerm]:
    """Parse generator terms when the text starts with one, otherwise a word."""
    head = _strip_comments(text).lstrip()
    if head.startswith(("zab", "zba", "zres", "c2", "c3")) or _is_conjugated_term(
        head, n
    ):
        return parse_terms(text, n)
    return parse_word(text, n)


def _is_conjugated_term(head: str, n: int) -> bool:
    if not head.startswith("conj"):
        return False
    try:
        parse_terms(head, n)
    except (DslSyntaxError, ElemCommError):
        return False
    return True


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.split("\n"))
