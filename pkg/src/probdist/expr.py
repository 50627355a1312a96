"""Expression grammar for constructing distributions from text.

The grammar is a small, deterministic, context-free calculator language::

    expr  := IDENT '(' arglist? ')'
    arg   := (IDENT '=')? value
    value := number | string | list | expr | bare-ident | 'inf' | '-inf' | '@file'
    list  := '[' (value (',' value)*)? ']'

Call names resolve to catalog constructors, the compositors ``truncate``,
``huberize``, ``mix``, ``product`` and ``vector``, or the ``decorate``
directive.  Bare identifiers act as string tokens (decorator kinds, the
symbolic ``uniform`` weights, a catalog class in parametric constructors).
An ``@path`` argument reads whitespace/comma-separated numbers from a file.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import DistributionError


class ExprSyntaxError(DistributionError, ValueError):
    """Parse failure with byte offset and the expected-token set."""

    def __init__(self, message, pos, expected=()):
        self.pos = pos
        self.expected = tuple(expected)
        hint = f" (expected: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {pos}{hint}")


class ExprResolveError(DistributionError, ValueError):
    """The expression parsed but does not describe a constructible distribution."""


# -- AST ---------------------------------------------------------------------

@dataclass
class Num:
    value: float


@dataclass
class Str:
    value: str


@dataclass
class Ident:
    name: str


@dataclass
class Inf:
    sign: int  # +1 or -1


@dataclass
class FileRef:
    path: str


@dataclass
class ListLit:
    items: list = field(default_factory=list)


@dataclass
class Call:
    name: str
    args: list = field(default_factory=list)
    kwargs: dict = field(default_factory=dict)
    pos: int = 0


# -- lexer ---------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"]*"|'[^']*')
  | (?P<fileref>@[^\s,()\[\]=]+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<lbracket>\[)
  | (?P<rbracket>\])
  | (?P<comma>,)
  | (?P<equals>=)
  | (?P<minus>-)
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), i))
        i = m.end()
    out.append(_Token("eof", "", len(text)))
    return out


# -- parser ---------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected_name: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"unexpected {tok.kind} {tok.text!r}", tok.pos,
                                  (expected_name,))
        return self.advance()

    def parse(self) -> Call:
        node = self.call()
        tail = self.peek()
        if tail.kind != "eof":
            raise ExprSyntaxError(f"trailing input {tail.text!r}", tail.pos, ("end of input",))
        return node

    def call(self) -> Call:
        name = self.expect("ident", "identifier")
        self.expect("lparen", "'('")
        node = Call(name.text, pos=name.pos)
        if self.peek().kind != "rparen":
            while True:
                self.argument(node)
                if self.peek().kind == "comma":
                    self.advance()
                    continue
                break
        self.expect("rparen", "')'")
        return node

    def argument(self, node: Call):
        tok = self.peek()
        if tok.kind == "ident" and self.tokens[self.i + 1].kind == "equals":
            key = self.advance().text
            self.advance()  # '='
            if key in node.kwargs:
                raise ExprSyntaxError(f"duplicate argument {key!r}", tok.pos)
            node.kwargs[key] = self.value()
        else:
            if node.kwargs:
                raise ExprSyntaxError("positional argument after keyword argument", tok.pos)
            node.args.append(self.value())

    def value(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "string":
            self.advance()
            return Str(tok.text[1:-1])
        if tok.kind == "fileref":
            self.advance()
            return FileRef(tok.text[1:])
        if tok.kind == "lbracket":
            return self.list_lit()
        if tok.kind == "minus":
            # a bare minus only makes sense before 'inf' (numbers lex their sign)
            nxt = self.tokens[self.i + 1]
            if nxt.kind == "ident" and nxt.text == "inf":
                self.advance()
                self.advance()
                return Inf(-1)
            raise ExprSyntaxError("dangling '-'", tok.pos, ("number", "inf"))
        if tok.kind == "ident":
            if tok.text == "inf":
                self.advance()
                return Inf(+1)
            if self.tokens[self.i + 1].kind == "lparen":
                return self.call()
            self.advance()
            return Ident(tok.text)
        raise ExprSyntaxError(f"unexpected {tok.kind} {tok.text!r}", tok.pos,
                              ("number", "string", "list", "call", "identifier"))

    def list_lit(self) -> ListLit:
        self.expect("lbracket", "'['")
        node = ListLit()
        if self.peek().kind != "rbracket":
            while True:
                node.items.append(self.value())
                if self.peek().kind == "comma":
                    self.advance()
                    continue
                break
        self.expect("rbracket", "']'")
        return node


def parse_expr(text: str) -> Call:
    """Parse an expression into its AST (or raise with offset + expectations)."""
    return _Parser(text).parse()


def render(node) -> str:
    """Canonical text form; ``parse_expr(render(ast))`` is equivalent to ``ast``."""
    if isinstance(node, Num):
        return format(node.value, "g")
    if isinstance(node, Str):
        return f'"{node.value}"'
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, Inf):
        return "inf" if node.sign > 0 else "-inf"
    if isinstance(node, FileRef):
        return f"@{node.path}"
    if isinstance(node, ListLit):
        return "[" + ", ".join(render(i) for i in node.items) + "]"
    if isinstance(node, Call):
        parts = [render(a) for a in node.args]
        parts += [f"{k}={render(v)}" for k, v in node.kwargs.items()]
        return f"{node.name}({', '.join(parts)})"
    raise TypeError(f"not an AST node: {node!r}")


# -- file ingestion ---------------------------------------------------------------

def read_numbers(path: str):
    """Whitespace/comma-separated numbers from a UTF-8 text file.

    Returns a flat list, or a list of row lists when any line holds several
    numbers (multivariate data).
    """
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = [p for p in re.split(r"[\s,]+", line.strip()) if p]
            if parts:
                rows.append([float(p) for p in parts])
    if not rows:
        return []
    if all(len(r) == 1 for r in rows):
        return [r[0] for r in rows]
    return rows


# -- resolution ----------------------------------------------------------------

_COMPOSITOR_NAMES = ("truncate", "huberize", "mix", "product", "vector")


def _plain_value(node, what: str):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Inf):
        return math.inf * node.sign
    if isinstance(node, (Str, Ident)):
        return node.value if isinstance(node, Str) else node.name
    if isinstance(node, FileRef):
        return read_numbers(node.path)
    if isinstance(node, ListLit):
        return [_plain_value(i, what) for i in node.items]
    raise ExprResolveError(f"{what} must be a plain value, not a distribution call")


def build_distribution(node, options=None):
    """Resolve an AST (or expression string) into a distribution object.

    ``options``, when given, is attached as the numeric options of every
    decorated distribution in the expression.
    """
    from . import numeric as _num
    from .catalog import CONSTRUCTORS
    from .compose import mixture, product, truncate, huberize, vector

    if isinstance(node, str):
        node = parse_expr(node)
    if not isinstance(node, Call):
        raise ExprResolveError("an expression must be a call, e.g. Normal(mean=1)")

    name = node.name

    if name == "decorate":
        if not node.args:
            raise ExprResolveError("decorate(expr, kinds...) needs a distribution")
        child = build_distribution(node.args[0], options)
        kinds = []
        for extra in node.args[1:]:
            if isinstance(extra, (Ident, Str)):
                kinds.append(extra.name if isinstance(extra, Ident) else extra.value)
            else:
                raise ExprResolveError("decorator kinds must be identifiers")
        return _num.decorate(child, kinds, options=options)

    if name in ("truncate", "huberize"):
        if not node.args:
            raise ExprResolveError(f"{name}(expr, lower=, upper=) needs a distribution")
        child = build_distribution(node.args[0], options)
        extras = [_plain_value(a, "a bound") for a in node.args[1:]]
        if len(extras) > 2:
            raise ExprResolveError(f"{name} takes at most two bounds")
        kwargs = {k: _plain_value(v, "a bound") for k, v in node.kwargs.items()}
        for key, val in zip(("lower", "upper"), extras):
            if key in kwargs:
                raise ExprResolveError(f"duplicate bound {key!r}")
            kwargs[key] = val
        fn = truncate if name == "truncate" else huberize
        dist = fn(child, **kwargs)
        if options is not None:
            dist._numeric_options = options
        return dist

    if name in ("mix", "product", "vector"):
        fn = {"mix": mixture, "product": product, "vector": vector}[name]
        kwargs = {}
        if node.args and isinstance(node.args[0], Ident) \
                and node.args[0].name in CONSTRUCTORS:
            # parametric mode: class name plus parameter columns
            if len(node.args) > 1:
                raise ExprResolveError(
                    "parametric mode takes only the class name positionally"
                )
            columns = {}
            for k, v in node.kwargs.items():
                if name == "mix" and k == "weights":
                    kwargs["weights"] = _plain_value(v, "weights")
                    continue
                columns[k] = _plain_value(v, f"parameter {k!r}")
            dist = fn(distribution=node.args[0].name, params=columns, **kwargs)
        else:
            comps = [build_distribution(a, options) for a in node.args]
            if not comps:
                raise ExprResolveError(f"{name} needs at least one component")
            for k, v in node.kwargs.items():
                if name == "mix" and k == "weights":
                    kwargs["weights"] = _plain_value(v, "weights")
                else:
                    raise ExprResolveError(f"unknown argument {k!r} for {name}")
            dist = fn(comps, **kwargs)
        if options is not None:
            dist._numeric_options = options
        return dist

    if name in CONSTRUCTORS:
        ctor = CONSTRUCTORS[name]
        args = [_plain_value(a, "an argument") for a in node.args]
        kwargs = {k: _plain_value(v, f"argument {k!r}") for k, v in node.kwargs.items()}
        dist = ctor(*args, **kwargs)
        if options is not None:
            dist._numeric_options = options
        return dist

    known = sorted(list(CONSTRUCTORS) + list(_COMPOSITOR_NAMES) + ["decorate"])
    raise ExprResolveError(f"unknown identifier {name!r}; known names: {', '.join(known)}")
