"""AST for the identity language.

Nodes are frozen dataclasses; the source position rides along but takes no
part in equality, so ``==`` is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


def _pos():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Param:
    name: str
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class XVar:
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class SeqCall:
    name: str
    args: tuple
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Div:
    """Division by a nonzero integer literal."""

    left: object
    divisor: int
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: Pos | None = _pos()


def neg(e, pos=None):
    """Negate, cancelling a double negation."""
    if isinstance(e, Neg):
        return e.operand
    return Neg(e, pos)


INDEX_NODES = (IntLit, Param, Neg, Add, Sub, Mul, Pow)


def walk(e):
    yield e
    if isinstance(e, (Neg,)):
        yield from walk(e.operand)
    elif isinstance(e, (Add, Sub, Mul)):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, (Div,)):
        yield from walk(e.left)
    elif isinstance(e, Pow):
        yield from walk(e.base)
    elif isinstance(e, SeqCall):
        for a in e.args:
            yield from walk(a)


def params_used(e):
    return {n.name for n in walk(e) if isinstance(n, Param)}


def seqs_used(e):
    return {n.name for n in walk(e) if isinstance(n, SeqCall)}


@dataclass(frozen=True)
class BindSpec:
    """Right-hand side of a ``bind`` line.

    ``kind`` is ``"builtin"`` (``name`` plus positional ``args`` and keyword
    ``kwargs``, each an expression) or ``"rec"`` (``order``, ``coeffs``,
    ``initials``).
    """

    kind: str
    name: str = ""
    args: tuple = ()
    kwargs: tuple = ()
    order: int = 0
    coeffs: tuple = ()
    initials: tuple = ()
    pos: Pos | None = _pos()

    def exprs(self):
        return list(self.args) + [v for _, v in self.kwargs] + list(self.coeffs) + list(self.initials)


@dataclass(frozen=True)
class IdentityStatement:
    params: tuple
    bindings: tuple  # ((name, BindSpec), ...) in declaration order
    lhs: object
    rhs: object
    label: str | None = None
    pos: Pos | None = _pos()

    @property
    def binding_map(self):
        return dict(self.bindings)

    def used_params(self):
        """Declared parameters the statement actually depends on, in declared order."""
        used = params_used(self.lhs) | params_used(self.rhs)
        bmap = self.binding_map
        for name in seqs_used(self.lhs) | seqs_used(self.rhs):
            if name in bmap:
                for ex in bmap[name].exprs():
                    used |= params_used(ex)
        return tuple(p for p in self.params if p in used)
