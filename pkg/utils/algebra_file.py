"""Reader for the line-oriented algebra file format.

    algebra <name>
    vertices <v1> <v2> ...
    arrow <label> <source> <target>
    rel <term> ((+|-) <term>)*       term := [<rational> *] <arrow> (* <arrow>)*
    idempotent <v> ...

'#' starts a comment. Errors carry 1-based line and column numbers.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from utils import constants
from utils.algebra import Arrow, BasedAlgebra, Quiver, Relation, RelationSet, build_path_algebra
from utils.errors import AlgebraFileError, InvalidAlgebra, InvalidQuiver, InvalidRelation, NotFiniteDimensional

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<rational>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[*+-])|(?P<bad>\S))")
WORD_PATTERN = re.compile(r"\S+")


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    quiver: Quiver
    relations: RelationSet
    idempotent: tuple[str, ...] | None
    source: str = "<input>"

    def build(self, length_cap: int = constants.DEFAULT_LENGTH_CAP) -> BasedAlgebra:
        try:
            return build_path_algebra(self.quiver, self.relations, length_cap=length_cap, name=self.name)
        except (InvalidRelation, InvalidAlgebra, NotFiniteDimensional) as e:
            raise type(e)(f"{self.source}: {e}") from e


def _words(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in WORD_PATTERN.finditer(line)]


def _parse_relation(text: str, offset: int, arrows: dict[str, Arrow], line_no: int, source: str) -> Relation:
    """Parse the part of a rel line after the keyword; offset is its 1-based column."""
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            break
        kind = match.lastgroup
        value = match.group(kind)
        column = offset + match.start(kind)
        if kind == "bad":
            raise AlgebraFileError(f"unexpected character '{value}'", line_no, column, source)
        tokens.append((kind, value, column))
        position = match.end()

    terms: list[tuple[Fraction, tuple[str, ...]]] = []
    k = 0

    def expect_arrow():
        nonlocal k
        if k >= len(tokens) or tokens[k][0] != "name":
            column = tokens[k][2] if k < len(tokens) else offset + len(text)
            raise AlgebraFileError("expected an arrow label", line_no, column, source)
        kind, label, column = tokens[k]
        if label not in arrows:
            raise AlgebraFileError(f"unknown arrow '{label}'", line_no, column, source)
        k += 1
        return label, column

    sign = Fraction(1)
    if tokens and tokens[0][:2] in (("op", "-"), ("op", "+")):
        sign = Fraction(-1) if tokens[0][1] == "-" else Fraction(1)
        k = 1
    while True:
        coefficient = sign
        term_column = tokens[k][2] if k < len(tokens) else offset
        if k < len(tokens) and tokens[k][0] == "rational":
            try:
                coefficient *= Fraction(tokens[k][1])
            except ZeroDivisionError:
                raise AlgebraFileError(f"malformed rational '{tokens[k][1]}'", line_no, tokens[k][2], source) from None
            k += 1
            if k >= len(tokens) or tokens[k][1] != "*":
                raise AlgebraFileError("expected '*' after a coefficient", line_no, term_column, source)
            k += 1
        label, _ = expect_arrow()
        path = [label]
        while k < len(tokens) and tokens[k][1] == "*":
            k += 1
            label, column = expect_arrow()
            if arrows[path[-1]].target != arrows[label].source:
                raise AlgebraFileError(f"arrows '{path[-1]}' and '{label}' do not compose", line_no, column, source)
            path.append(label)
        if len(path) < 2:
            raise AlgebraFileError("relation paths need at least two arrows", line_no, term_column, source)
        terms.append((coefficient, tuple(path)))
        if k >= len(tokens):
            break
        kind, value, column = tokens[k]
        if kind != "op" or value not in "+-":
            raise AlgebraFileError(f"expected '+' or '-', found '{value}'", line_no, column, source)
        sign = Fraction(-1) if value == "-" else Fraction(1)
        k += 1

    ends = {(arrows[p[0]].source, arrows[p[-1]].target) for _, p in terms}
    if len(ends) != 1:
        raise AlgebraFileError("relation mixes sources or targets", line_no, offset, source)
    return Relation(tuple(terms))


def parse_algebra_text(text: str, source: str = "<input>") -> AlgebraSpec:
    name = None
    vertices: list[str] | None = None
    arrows: dict[str, Arrow] = {}
    relations: list[Relation] = []
    idempotent = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = _words(line)
        if not words:
            continue
        keyword, column = words[0]
        args = words[1:]

        if keyword == "algebra":
            if len(args) != 1:
                raise AlgebraFileError("expected 'algebra <name>'", line_no, column, source)
            if name is not None:
                raise AlgebraFileError("duplicate 'algebra' line", line_no, column, source)
            name = args[0][0]
        elif keyword == "vertices":
            if vertices is not None:
                raise AlgebraFileError("duplicate 'vertices' line", line_no, column, source)
            if not args:
                raise AlgebraFileError("at least one vertex is required", line_no, column, source)
            seen = set()
            for label, col in args:
                if label in seen:
                    raise AlgebraFileError(f"duplicate vertex '{label}'", line_no, col, source)
                seen.add(label)
            vertices = [label for label, _ in args]
        elif keyword == "arrow":
            if vertices is None:
                raise AlgebraFileError("'arrow' before 'vertices'", line_no, column, source)
            if len(args) != 3:
                raise AlgebraFileError("expected 'arrow <label> <source> <target>'", line_no, column, source)
            (label, label_col), (src, src_col), (tgt, tgt_col) = args
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", label):
                raise AlgebraFileError(f"invalid arrow label '{label}'", line_no, label_col, source)
            if label in arrows:
                raise AlgebraFileError(f"duplicate arrow '{label}'", line_no, label_col, source)
            for vertex, col in ((src, src_col), (tgt, tgt_col)):
                if vertex not in vertices:
                    raise AlgebraFileError(f"unknown vertex '{vertex}'", line_no, col, source)
            arrows[label] = Arrow(label, src, tgt)
        elif keyword == "rel":
            if not args:
                raise AlgebraFileError("empty relation", line_no, column, source)
            start = args[0][1]
            relations.append(_parse_relation(line[start - 1:], start, arrows, line_no, source))
        elif keyword == "idempotent":
            if vertices is None:
                raise AlgebraFileError("'idempotent' before 'vertices'", line_no, column, source)
            if idempotent is not None:
                raise AlgebraFileError("duplicate 'idempotent' line", line_no, column, source)
            if not args:
                raise AlgebraFileError("the idempotent needs at least one vertex", line_no, column, source)
            for vertex, col in args:
                if vertex not in vertices:
                    raise AlgebraFileError(f"unknown vertex '{vertex}'", line_no, col, source)
            idempotent = tuple(label for label, _ in args)
        else:
            raise AlgebraFileError(f"unknown keyword '{keyword}'", line_no, column, source)

    if vertices is None:
        raise AlgebraFileError("missing 'vertices' line", 1, 1, source)
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows.values()))
    except InvalidQuiver as e:
        raise AlgebraFileError(str(e), 1, 1, source) from e
    spec = AlgebraSpec(name or Path(source).stem, quiver, RelationSet(tuple(relations)), idempotent, source)
    logging.debug(f"Parsed {source}: {len(vertices)} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return spec


def parse_algebra_file(path: str | Path) -> AlgebraSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"cannot read file: {e.strerror or e}", 0, 0, str(path)) from e
    return parse_algebra_text(text, source=str(path))
