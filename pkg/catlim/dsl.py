import logging
import re
from .exceptions import DSLSyntaxError
from typing import List, Optional, Tuple

_logger = logging.getLogger(__name__)

BLOCK_KINDS = (
    "category",
    "presentation",
    "functor",
    "natural",
    "two_category",
    "diagram",
    "marked",
    "f_category",
    "f_weight",
    "dotted",
)

_TOKEN_PATTERN = re.compile(
    r"""
    (?P<comment>\#[^\n]*)
  | (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<arrow>->)
  | (?P<double_arrow>=>)
  | (?P<symbol>[{}:;,.*=])
  | (?P<identifier>[\w\[\]'‡]+)
    """,
    re.VERBOSE,
)


class Token:
    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f'Token(kind="{self.kind}", text="{self.text}", line="{self.line}", column="{self.column}")'


def lex(source: str) -> List[Token]:
    """
    Raises:
        DSLSyntaxError: on a character no token starts with.
    """
    tokens = []
    line, line_start, position = 1, 0, 0
    while position < len(source):
        match = _TOKEN_PATTERN.match(source, position)
        if match is None:
            raise DSLSyntaxError(f"unexpected character {source[position]!r}", line, position - line_start + 1)
        kind = match.lastgroup
        text = match.group()
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "symbol":
            tokens.append(Token(text, text, line, position - line_start + 1))
        elif kind not in ("comment", "space"):
            tokens.append(Token(kind, text, line, position - line_start + 1))
        position = match.end()
    return tokens


class TokenStream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.index = 0

    def current(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def last(self) -> Optional[Token]:
        return self.tokens[-1] if self.tokens else None

    def advance(self) -> Optional[Token]:
        self.index += 1
        return self.current()

    def at(self, kind: str) -> bool:
        current = self.current()
        return current is not None and current.kind == kind


# Items of a field:
#   ("name", x)
#   ("typed", name, source, arrow, target)       f: a -> b   or   α: f => g
#   ("equation", lhs, operator, rhs)             g . f = h   or   β * α = γ
#   ("path", word)                               g . f
#   ("map", a, word)                             a -> b   or   f -> g . h
Item = Tuple


class Field:
    """
    One `key [label]: item, item;` line of a block.
    """

    def __init__(self, key: str, label: Optional[str], items: List[Item], line: int = 0, column: int = 0):
        self.key = key
        self.label = label
        self.items = items
        self.line = line
        self.column = column

    @property
    def names(self) -> List[str]:
        return [item[1] for item in self.items]

    @property
    def span(self) -> str:
        return f"{self.line}:{self.column}"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.key, self.label, self.items) == (other.key, other.label, other.items)

    def __repr__(self):
        return f'Field(key="{self.key}", label="{self.label}")'


class Definition:
    """
    A named block such as `category C { ... }`.
    """

    def __init__(self, kind: str, name: str, fields: List[Field], line: int = 0, column: int = 0):
        self.kind = kind
        self.name = name
        self.fields = fields
        self.line = line
        self.column = column

    @property
    def span(self) -> str:
        return f"{self.line}:{self.column}"

    def field(self, key: str) -> Optional[Field]:
        for field in self.fields:
            if field.key == key:
                return field
        return None

    def labelled(self, key: str) -> List[Field]:
        return [field for field in self.fields if field.key == key]

    def __eq__(self, other):
        return isinstance(other, Definition) and (self.kind, self.name, self.fields) == (other.kind, other.name, other.fields)

    def __repr__(self):
        return f'Definition(kind="{self.kind}", name="{self.name}")'


class ParserContext:
    def __init__(self, tokens: List[Token]):
        self.tokens = TokenStream(tokens)
        self.block: Optional[str] = None


def _error(ctx: ParserContext, expected: str) -> DSLSyntaxError:
    current = ctx.tokens.current()
    where = f" in {ctx.block}" if ctx.block else ""
    if current is None:
        last = ctx.tokens.last()
        line, column = (last.line, last.column + len(last.text)) if last else (1, 1)
        return DSLSyntaxError(f"expected {expected}{where}, found end of file", line, column)
    return DSLSyntaxError(f"expected {expected}{where}, found {current.text!r}", current.line, current.column)


def expect(ctx: ParserContext, kind: str) -> Token:
    current = ctx.tokens.current()
    if current is None or current.kind != kind:
        raise _error(ctx, kind)
    ctx.tokens.advance()
    return current


def parse_word(ctx: ParserContext) -> Tuple[Tuple[str, ...], Optional[str]]:
    """ident ('.' ident)* or ident '*' ident; returns the parts and the operator."""
    parts = [expect(ctx, "identifier").text]
    operator = None
    while ctx.tokens.at(".") or ctx.tokens.at("*"):
        symbol = ctx.tokens.current().kind
        if operator is not None and symbol != operator:
            raise _error(ctx, f"'{operator}'")
        operator = symbol
        ctx.tokens.advance()
        parts.append(expect(ctx, "identifier").text)
    return tuple(parts), operator


def parse_item(ctx: ParserContext) -> Item:
    start = ctx.tokens.current()
    word, operator = parse_word(ctx)
    if ctx.tokens.at(":"):
        if len(word) != 1:
            raise DSLSyntaxError("a typed item needs a single name", start.line, start.column)
        ctx.tokens.advance()
        source = expect(ctx, "identifier").text
        if ctx.tokens.at("arrow"):
            arrow = "->"
        elif ctx.tokens.at("double_arrow"):
            arrow = "=>"
        else:
            raise _error(ctx, "'->' or '=>'")
        ctx.tokens.advance()
        target = expect(ctx, "identifier").text
        return ("typed", word[0], source, arrow, target)
    if ctx.tokens.at("="):
        ctx.tokens.advance()
        rhs, rhs_operator = parse_word(ctx)
        if operator and rhs_operator and operator != rhs_operator:
            raise DSLSyntaxError("both sides of an equation must use the same composition", start.line, start.column)
        return ("equation", word, operator or rhs_operator or ".", rhs)
    if ctx.tokens.at("arrow"):
        if len(word) != 1:
            raise DSLSyntaxError("a mapping needs a single name on its left", start.line, start.column)
        ctx.tokens.advance()
        target, target_operator = parse_word(ctx)
        if target_operator == "*":
            raise DSLSyntaxError("a mapping target is a composite of morphisms, not of 2-cells", start.line, start.column)
        return ("map", word[0], target)
    if len(word) == 1:
        return ("name", word[0])
    if operator == "*":
        raise DSLSyntaxError("a composite of 2-cells must be part of an equation", start.line, start.column)
    return ("path", word)


def parse_field(ctx: ParserContext) -> Field:
    key = expect(ctx, "identifier")
    label = None
    if ctx.tokens.at("identifier"):
        label = ctx.tokens.current().text
        ctx.tokens.advance()
    expect(ctx, ":")
    items = []
    if not ctx.tokens.at(";"):
        items.append(parse_item(ctx))
        while ctx.tokens.at(","):
            ctx.tokens.advance()
            items.append(parse_item(ctx))
    expect(ctx, ";")
    return Field(key.text, label, items, key.line, key.column)


def parse_definition(ctx: ParserContext) -> Definition:
    kind = expect(ctx, "identifier")
    if kind.text not in BLOCK_KINDS:
        raise DSLSyntaxError(f"unknown block {kind.text!r}", kind.line, kind.column)
    name = expect(ctx, "identifier").text
    ctx.block = f"{kind.text} {name}"
    expect(ctx, "{")
    fields = []
    while not ctx.tokens.at("}"):
        if ctx.tokens.current() is None:
            raise _error(ctx, "'}'")
        fields.append(parse_field(ctx))
    expect(ctx, "}")
    ctx.block = None
    return Definition(kind.text, name, fields, kind.line, kind.column)


def parse_source(source: str) -> List[Definition]:
    """
    Parse a definition file into blocks, without interpreting them.

    Raises:
        DSLSyntaxError: with the line and column of the offending token.
    """
    ctx = ParserContext(lex(source))
    definitions = []
    while ctx.tokens.current() is not None:
        definitions.append(parse_definition(ctx))
    _logger.debug(f"Parsed {len(definitions)} definitions")
    return definitions


def _emit_item(item: Item) -> str:
    if item[0] == "name":
        return item[1]
    if item[0] == "path":
        return " . ".join(item[1])
    if item[0] == "typed":
        return f"{item[1]}: {item[2]} {item[3]} {item[4]}"
    if item[0] == "equation":
        operator = f" {item[2]} "
        return f"{operator.join(item[1])} = {operator.join(item[3])}"
    return f"{item[1]} -> {' . '.join(item[2])}"


def emit_definitions(definitions: List[Definition]) -> str:
    blocks = []
    for definition in definitions:
        lines = [f"{definition.kind} {definition.name} {{"]
        for field in definition.fields:
            head = field.key if field.label is None else f"{field.key} {field.label}"
            body = ", ".join(_emit_item(item) for item in field.items)
            lines.append(f"    {head}: {body};" if body else f"    {head}: ;")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""
