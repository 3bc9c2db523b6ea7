"""Tokenizer and recursive-descent parser for ``.idn`` text.

Grammar (``==`` binds loosest)::

    file      := { header | identity | NEWLINE }
    header    := 'params' NAME* ';' | 'bind' SEQNAME '=' bindspec ';'
    bindspec  := 'rec' '(' INT ';' expr {',' expr} ';' expr {',' expr} ')'
               | SEQNAME [ '(' [barg {',' barg}] ')' ]
    barg      := NAME '=' expr | expr
    identity  := [label ':'] expr '==' expr (NEWLINE | ';' | EOF)
    expr      := term { ('+' | '-') term }
    term      := unary { '*' unary | '/' INT }
    unary     := '-' unary | power
    power     := atom { '^' INT }
    atom      := INT | NAME | 'x' | SEQNAME '(' expr {',' expr} ')' | '(' expr ')'

Newlines inside parentheses or right after an operator continue the line, as
does any indented, non-blank line that follows.
"""

from __future__ import annotations

import re

from ..catalog import _BUILTIN_RECS, FACTORY_PARAMS
from .ast import (
    INDEX_NODES, Add, BindSpec, Div, IdentityStatement, IntLit, Mul, Param, Pos,
    Pow, SeqCall, Sub, XVar, neg, walk,
)

KEYWORDS = {"params", "bind", "rec"}


class IdnSyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


class UnboundSequence(IdnSyntaxError):
    pass


class UndeclaredParameter(IdnSyntaxError):
    pass


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>==|[-+*/^(),;:=])"
)

_CONTINUES = {"+", "-", "*", "/", "^", "==", "(", ",", "="}
_INDENTED = re.compile(r"[ \t]+[^ \t\r\n#]")


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    @property
    def pos(self):
        return Pos(self.line, self.col)

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text):
    toks = []
    line, line_start, depth = 1, 0, 0
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise IdnSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        col = i - line_start + 1
        s = m.group()
        if kind == "nl":
            continued = (toks and toks[-1].text in _CONTINUES and toks[-1].kind == "op") \
                or _INDENTED.match(text, m.end())
            if depth == 0 and not continued:
                toks.append(Token("nl", "\\n", line, col))
            line += 1
            line_start = m.end()
        elif kind in ("int", "name"):
            toks.append(Token(kind, s, line, col))
        elif kind == "op":
            if s == "(":
                depth += 1
            elif s == ")":
                depth = max(0, depth - 1)
            toks.append(Token("op", s, line, col))
        i = m.end()
    toks.append(Token("eof", "end of input", line, len(text) - line_start + 1))
    return toks


def _is_seq_name(name):
    return name[0].isupper()


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.params = []
        self.bindings = []

    # token helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text):
        t = self.tok
        return t.kind == "op" and t.text == text

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected '{text}', found {self.describe(self.tok)}")
        return self.advance()

    @staticmethod
    def describe(t):
        if t.kind == "eof":
            return "end of input"
        if t.kind == "nl":
            return "end of line"
        return f"'{t.text}'"

    def error(self, msg, tok=None, cls=IdnSyntaxError):
        t = tok or self.tok
        raise cls(msg, t.line, t.col)

    def expect_int(self, what):
        if self.tok.kind != "int":
            self.error(f"expected {what}, found {self.describe(self.tok)}")
        return int(self.advance().text)

    # file structure
    def parse_file(self):
        out = []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "nl" or self.at(";"):
                self.advance()
            elif t.kind == "name" and t.text == "params":
                self.parse_params()
            elif t.kind == "name" and t.text == "bind":
                self.parse_bind()
            else:
                out.append(self.parse_identity())
        return out

    def parse_params(self):
        self.advance()
        while self.tok.kind == "name":
            t = self.advance()
            name = t.text
            if name in KEYWORDS or name == "x" or _is_seq_name(name):
                self.error(f"invalid parameter name '{name}'", t)
            if name in self.params:
                self.error(f"parameter '{name}' declared twice", t)
            self.params.append(name)
        self.expect(";")

    def parse_bind(self):
        self.advance()
        t = self.tok
        if t.kind != "name" or not _is_seq_name(t.text):
            self.error(f"expected a sequence name (capitalized), found {self.describe(t)}")
        name = self.advance().text
        self.expect("=")
        spec = self.parse_bindspec()
        self.expect(";")
        self.bindings = [(n, s) for n, s in self.bindings if n != name] + [(name, spec)]

    def parse_bindspec(self):
        t = self.tok
        if t.kind != "name":
            self.error(f"expected a sequence specification, found {self.describe(t)}")
        if t.text == "rec":
            self.advance()
            self.expect("(")
            order = self.expect_int("recurrence order")
            if not 1 <= order <= 3:
                self.error("recurrence order must be 1, 2 or 3", t)
            self.expect(";")
            coeffs = self.parse_const_list()
            self.expect(";")
            inits = self.parse_const_list()
            self.expect(")")
            if len(coeffs) != order or len(inits) != order:
                self.error(f"rec of order {order} needs {order} coefficients and {order} initial values", t)
            return BindSpec("rec", order=order, coeffs=tuple(coeffs), initials=tuple(inits), pos=t.pos)
        name = self.advance().text
        if name not in _BUILTIN_RECS and name not in FACTORY_PARAMS:
            self.error(f"unknown builtin sequence '{name}'", t, UnboundSequence)
        args, kwargs = [], []
        if self.at("("):
            self.advance()
            if not self.at(")"):
                while True:
                    if self.tok.kind == "name" and self.peek().kind == "op" and self.peek().text == "=":
                        key = self.advance().text
                        self.advance()
                        kwargs.append((key, self.parse_const_expr()))
                    else:
                        if kwargs:
                            self.error("positional argument after keyword argument")
                        args.append(self.parse_const_expr())
                    if not self.at(","):
                        break
                    self.advance()
            self.expect(")")
        wanted = FACTORY_PARAMS.get(name, ())
        given = len(args) + len(kwargs)
        if given != len(wanted):
            self.error(f"'{name}' takes {len(wanted)} parameter(s), got {given}", t)
        for key, _ in kwargs:
            if key not in wanted:
                self.error(f"'{name}' has no parameter '{key}'", t)
        names = list(wanted[: len(args)]) + [k for k, _ in kwargs]
        if len(set(names)) != len(names):
            self.error(f"duplicate parameter for '{name}'", t)
        return BindSpec("builtin", name=name, args=tuple(args), kwargs=tuple(kwargs), pos=t.pos)

    def parse_const_list(self):
        out = [self.parse_const_expr()]
        while self.at(","):
            self.advance()
            out.append(self.parse_const_expr())
        return out

    def parse_const_expr(self):
        start = self.tok
        e = self.parse_expr()
        for node in walk(e):
            if isinstance(node, SeqCall):
                self.error("sequence calls are not allowed here", start)
        return e

    def parse_identity(self):
        label = None
        t = self.tok
        if t.kind in ("int", "name") and self.peek().kind == "op" and self.peek().text == ":":
            label = t.text
            self.advance()
            self.advance()
        start = self.tok
        lhs = self.parse_expr()
        self.expect("==")
        rhs = self.parse_expr()
        if not (self.tok.kind in ("nl", "eof") or self.at(";")):
            self.error(f"unexpected {self.describe(self.tok)} after identity")
        return IdentityStatement(tuple(self.params), tuple(self.bindings), lhs, rhs, label, start.pos)

    # expressions
    def parse_expr(self):
        e = self.parse_term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            r = self.parse_term()
            e = Add(e, r, op.pos) if op.text == "+" else Sub(e, r, op.pos)
        return e

    def parse_term(self):
        e = self.parse_unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            if op.text == "*":
                e = Mul(e, self.parse_unary(), op.pos)
            else:
                d = self.expect_int("integer divisor")
                if d == 0:
                    self.error("division by zero", op)
                e = Div(e, d, op.pos)
        return e

    def parse_unary(self):
        if self.at("-"):
            op = self.advance()
            return neg(self.parse_unary(), op.pos)
        return self.parse_power()

    def parse_power(self):
        e = self.parse_atom()
        while self.at("^"):
            op = self.advance()
            e = Pow(e, self.expect_int("integer exponent"), op.pos)
        return e

    def parse_atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return IntLit(int(t.text), t.pos)
        if self.at("("):
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "name":
            name = t.text
            if name == "x":
                self.advance()
                return XVar(t.pos)
            if _is_seq_name(name):
                return self.parse_call()
            if name in KEYWORDS:
                self.error(f"unexpected keyword '{name}'")
            if name not in self.params:
                self.error(f"undeclared parameter '{name}'", t, UndeclaredParameter)
            self.advance()
            return Param(name, t.pos)
        self.error(f"expected an expression, found {self.describe(t)}")

    def parse_call(self):
        t = self.advance()
        name = t.text
        arity = self.arity(name, t)
        self.expect("(")
        args = [self.parse_index()]
        while self.at(","):
            self.advance()
            args.append(self.parse_index())
        self.expect(")")
        if len(args) != arity:
            self.error(f"'{name}' takes {arity} index argument(s), got {len(args)}", t)
        return SeqCall(name, tuple(args), t.pos)

    def arity(self, name, tok):
        bmap = dict(self.bindings)
        if name in bmap:
            spec = bmap[name]
            return 2 if spec.kind == "builtin" and spec.name == "H" else 1
        if name in _BUILTIN_RECS:
            return 1
        if name in FACTORY_PARAMS:
            self.error(f"'{name}' needs a bind line giving its parameters", tok, UnboundSequence)
        self.error(f"unbound sequence '{name}'", tok, UnboundSequence)

    def parse_index(self):
        start = self.tok
        e = self.parse_expr()
        for node in walk(e):
            if not isinstance(node, INDEX_NODES):
                where = node.pos or start.pos
                raise IdnSyntaxError("index must be an integer polynomial in parameters",
                                     where.line, where.col)
        return e


def parse_file(text):
    """Parse a whole ``.idn`` text into its identity statements."""
    return _Parser(text).parse_file()


def parse(text):
    """Parse text holding exactly one identity."""
    stmts = parse_file(text)
    if len(stmts) != 1:
        raise IdnSyntaxError(f"expected exactly one identity, found {len(stmts)}", 1, 1)
    return stmts[0]


def parse_expr(text, params=()):
    """Parse a bare expression (used for exponent forms and tests)."""
    p = _Parser(text)
    p.params = list(params)
    e = p.parse_expr()
    if p.tok.kind not in ("eof", "nl"):
        p.error(f"unexpected {p.describe(p.tok)}")
    return e
