"""Canonical text for identity ASTs, with the fewest parentheses that re-parse to the same tree."""

from __future__ import annotations

from .ast import Add, Div, IntLit, Mul, Neg, Param, Pow, SeqCall, Sub, XVar

_SUM, _PROD, _UNARY, _POWER, _ATOM = 1, 2, 3, 4, 5


def _level(e):
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PROD
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Pow):
        return _POWER
    return _ATOM


def _wrap(e, need):
    s = print_expr(e)
    return f"({s})" if _level(e) < need else s


def print_expr(e):
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, Param):
        return e.name
    if isinstance(e, XVar):
        return "x"
    if isinstance(e, SeqCall):
        return f"{e.name}({','.join(print_expr(a) for a in e.args)})"
    if isinstance(e, Neg):
        if isinstance(e.operand, Neg):
            return print_expr(e.operand.operand)
        return "-" + _wrap(e.operand, _UNARY)
    if isinstance(e, Add):
        return _wrap(e.left, _SUM) + "+" + _wrap(e.right, _PROD)
    if isinstance(e, Sub):
        return _wrap(e.left, _SUM) + "-" + _wrap(e.right, _PROD)
    if isinstance(e, Mul):
        return _wrap(e.left, _PROD) + "*" + _wrap(e.right, _UNARY)
    if isinstance(e, Div):
        return _wrap(e.left, _PROD) + f"/{e.divisor}"
    if isinstance(e, Pow):
        return _wrap(e.base, _POWER) + f"^{e.exp}"
    raise TypeError(f"not an expression node: {e!r}")


def print_equation(stmt):
    return f"{print_expr(stmt.lhs)} == {print_expr(stmt.rhs)}"


def print_bindspec(spec):
    if spec.kind == "rec":
        cs = ",".join(print_expr(c) for c in spec.coeffs)
        ins = ",".join(print_expr(c) for c in spec.initials)
        return f"rec({spec.order}; {cs}; {ins})"
    parts = [print_expr(a) for a in spec.args] + [f"{k}={print_expr(v)}" for k, v in spec.kwargs]
    return f"{spec.name}({','.join(parts)})" if parts else spec.name


def print_canonical(stmt):
    """Header lines followed by the (optionally labelled) equation."""
    lines = []
    if stmt.params:
        lines.append("params " + " ".join(stmt.params) + ";")
    for name, spec in stmt.bindings:
        lines.append(f"bind {name} = {print_bindspec(spec)};")
    body = print_equation(stmt)
    lines.append(f"{stmt.label}: {body}" if stmt.label is not None else body)
    return "\n".join(lines)
