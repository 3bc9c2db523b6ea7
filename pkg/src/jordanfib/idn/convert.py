"""Conversions between identity ASTs and the symbolic rings."""

from __future__ import annotations

from fractions import Fraction

from ..symbolic import Atom, IndexPoly, SymPoly, X_ATOM
from .ast import Add, Div, IntLit, Mul, Neg, Param, Pow, SeqCall, Sub, XVar


def ast_to_index(e):
    if isinstance(e, IntLit):
        return IndexPoly.const(e.value)
    if isinstance(e, Param):
        return IndexPoly.var(e.name)
    if isinstance(e, Neg):
        return -ast_to_index(e.operand)
    if isinstance(e, Add):
        return ast_to_index(e.left) + ast_to_index(e.right)
    if isinstance(e, Sub):
        return ast_to_index(e.left) - ast_to_index(e.right)
    if isinstance(e, Mul):
        return ast_to_index(e.left) * ast_to_index(e.right)
    if isinstance(e, Pow):
        return ast_to_index(e.base) ** e.exp
    raise TypeError(f"not an index expression: {e!r}")


def _fold_terms(terms):
    """Join ``(negative, body)`` pairs into a left-associated sum."""
    if not terms:
        return IntLit(0)
    negative, acc = terms[0]
    if negative:
        acc = Neg(acc)
    for negative, body in terms[1:]:
        acc = Sub(acc, body) if negative else Add(acc, body)
    return acc


def _product(factors):
    acc = factors[0]
    for f in factors[1:]:
        acc = Mul(acc, f)
    return acc


def index_to_ast(p):
    p = IndexPoly.coerce(p)
    terms = []
    for mono, c in p.monomials():
        factors = [Param(n) if e == 1 else Pow(Param(n), e) for n, e in mono]
        if abs(c) != 1 or not factors:
            factors.insert(0, IntLit(abs(c)))
        terms.append((c < 0, _product(factors)))
    return _fold_terms(terms)


def _atom_ast(a):
    if a.kind == "seq":
        return SeqCall(a.name, tuple(index_to_ast(x) for x in a.args))
    if a.kind == "x":
        return XVar()
    return Param(a.name)


def sympoly_to_ast(p):
    terms = []
    for mono, c in p.sorted_terms():
        c = Fraction(c)
        num, den = abs(c.numerator), c.denominator
        factors = [_atom_ast(a) if e == 1 else Pow(_atom_ast(a), e) for a, e in mono]
        if num != 1 or not factors:
            factors.insert(0, IntLit(num))
        body = _product(factors)
        if den != 1:
            body = Div(body, den)
        terms.append((c < 0, body))
    return _fold_terms(terms)


def ast_to_sympoly(e):
    """Normal form of an expression in the atom ring (sequence calls stay opaque)."""
    if isinstance(e, IntLit):
        return SymPoly.const(e.value)
    if isinstance(e, Param):
        return SymPoly.atom(Atom.param(e.name))
    if isinstance(e, XVar):
        return SymPoly.atom(X_ATOM)
    if isinstance(e, SeqCall):
        return SymPoly.seq(e.name, *[ast_to_index(a) for a in e.args])
    if isinstance(e, Neg):
        return -ast_to_sympoly(e.operand)
    if isinstance(e, Add):
        return ast_to_sympoly(e.left) + ast_to_sympoly(e.right)
    if isinstance(e, Sub):
        return ast_to_sympoly(e.left) - ast_to_sympoly(e.right)
    if isinstance(e, Mul):
        return ast_to_sympoly(e.left) * ast_to_sympoly(e.right)
    if isinstance(e, Div):
        return ast_to_sympoly(e.left) * Fraction(1, e.divisor)
    if isinstance(e, Pow):
        return ast_to_sympoly(e.base) ** e.exp
    raise TypeError(f"not an expression node: {e!r}")


def canonically_equal(s1, s2):
    """Same equation up to polynomial normal form of each side."""
    return (ast_to_sympoly(s1.lhs) == ast_to_sympoly(s2.lhs)
            and ast_to_sympoly(s1.rhs) == ast_to_sympoly(s2.rhs))
