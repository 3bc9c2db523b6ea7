"""Symbolic rings used for derivation.

``IndexPoly`` is an integer polynomial in named parameters; it models
subscripts like ``m*n-n`` and template exponents like ``l+m+n``.

``SymPoly`` is the ring whose atoms are sequence calls ``F(n+1)``, parameter
references and the indeterminate ``x``.  It is kept in polynomial normal form
(like terms collected, factors sorted); nothing is rewritten using facts about
the sequences themselves.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import normalize_number


class IndexPoly:
    """Integer-coefficient polynomial in parameter names.

    Terms map a monomial ``(("m", 1), ("n", 1))`` to its integer coefficient;
    the empty monomial is the constant term.
    """

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms=None):
        t = {}
        for mono, c in (terms or {}).items():
            if c:
                t[mono] = t.get(mono, 0) + c
        self.terms = {m: c for m, c in t.items() if c}
        self._key = None
        self._hash = None

    @classmethod
    def const(cls, c):
        if not isinstance(c, int):
            raise TypeError("index constants must be integers")
        return cls({(): c})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, v):
        if isinstance(v, IndexPoly):
            return v
        if isinstance(v, str):
            return cls.var(v)
        return cls.const(v)

    def variables(self):
        return sorted({name for mono in self.terms for name, _ in mono})

    def degree(self):
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    def constant(self):
        return self.terms.get((), 0)

    def is_constant(self):
        return all(mono == () for mono in self.terms)

    def __add__(self, other):
        other = IndexPoly.coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return IndexPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return IndexPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-IndexPoly.coerce(other))

    def __rsub__(self, other):
        return IndexPoly.coerce(other) - self

    def __mul__(self, other):
        other = IndexPoly.coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return IndexPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = IndexPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, env):
        total = 0
        for mono, c in self.terms.items():
            v = c
            for name, e in mono:
                v *= env[name] ** e
            total += v
        return total

    def substitute(self, mapping):
        """Replace variables by IndexPolys (or ints)."""
        out = IndexPoly()
        for mono, c in self.terms.items():
            term = IndexPoly.const(c)
            for name, e in mono:
                repl = IndexPoly.coerce(mapping.get(name, name))
                term = term * repl ** e
            out = out + term
        return out

    def sort_key(self):
        if self._key is None:
            nonconst = tuple(sorted((m, c) for m, c in self.terms.items() if m))
            self._key = (nonconst, self.constant())
        return self._key

    def monomials(self):
        """Nonconstant monomials sorted by variable name, then the constant."""
        out = sorted(((m, c) for m, c in self.terms.items() if m), key=lambda mc: mc[0])
        if self.constant():
            out.append(((), self.constant()))
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = IndexPoly.const(other)
        if not isinstance(other, IndexPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"IndexPoly({self})"

    def __str__(self):
        mons = self.monomials()
        if not mons:
            return "0"
        out = ""
        for i, (mono, c) in enumerate(mons):
            body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if i == 0:
                out = ("-" if c < 0 else "") + piece
            else:
                out += ("-" if c < 0 else "+") + piece
        return out


def _mono_mul(m1, m2):
    d = dict(m1)
    for name, e in m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


class Atom:
    """A SymPoly variable: a sequence call, a parameter, or ``x``."""

    __slots__ = ("kind", "name", "args", "_key")

    def __init__(self, kind, name="", args=()):
        self.kind = kind
        self.name = name
        self.args = tuple(args)
        if kind == "param":
            rank = 0
        elif kind == "x":
            rank = 1
        else:
            rank = 2
        self._key = (rank, name, tuple(a.sort_key() for a in self.args))

    @classmethod
    def seq(cls, name, *args):
        return cls("seq", name, [IndexPoly.coerce(a) for a in args])

    @classmethod
    def param(cls, name):
        return cls("param", name)

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Atom) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.kind == "seq":
            return f"{self.name}({', '.join(str(a) for a in self.args)})"
        if self.kind == "x":
            return "x"
        return self.name


X_ATOM = Atom("x", "x")


def _mono_key(mono):
    return tuple((a.sort_key(), e) for a, e in mono)


def _smono_mul(m1, m2):
    d = dict(m1)
    for a, e in m2:
        d[a] = d.get(a, 0) + e
    return tuple(sorted(d.items(), key=lambda ae: ae[0].sort_key()))


class SymPoly:
    """Polynomial over :class:`Atom` with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)})

    @classmethod
    def atom(cls, a):
        return cls({((a, 1),): Fraction(1)})

    @classmethod
    def seq(cls, name, *args):
        return cls.atom(Atom.seq(name, *args))

    @classmethod
    def from_index(cls, p):
        """Lift an IndexPoly into the ring, parameters becoming param atoms."""
        p = IndexPoly.coerce(p)
        out = {}
        for mono, c in p.terms.items():
            m = tuple(sorted(((Atom.param(n), e) for n, e in mono), key=lambda ae: ae[0].sort_key()))
            out[m] = out.get(m, 0) + Fraction(c)
        return cls(out)

    @classmethod
    def coerce(cls, v):
        if isinstance(v, SymPoly):
            return v
        if isinstance(v, IndexPoly):
            return cls.from_index(v)
        if isinstance(v, (int, Fraction)):
            return cls.const(v)
        raise TypeError(f"cannot lift {v!r} into SymPoly")

    def __add__(self, other):
        try:
            other = SymPoly.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return SymPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = SymPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return SymPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymPoly({m: c * other for m, c in self.terms.items()})
        try:
            other = SymPoly.coerce(other)
        except TypeError:
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _smono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return SymPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = SymPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = SymPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def atoms(self):
        return {a for mono in self.terms for a, _ in mono}

    def sorted_terms(self):
        """Terms in print order: nonconstant monomials lexicographically, constant last."""
        return sorted(self.terms.items(), key=lambda mc: (0 if mc[0] else 1, _mono_key(mc[0])))

    def substitute_index(self, mapping):
        """Apply an index substitution to every atom argument and parameter."""
        out = SymPoly()
        for mono, c in self.terms.items():
            term = SymPoly.const(c)
            for a, e in mono:
                if a.kind == "seq":
                    na = SymPoly.atom(Atom.seq(a.name, *[x.substitute(mapping) for x in a.args]))
                elif a.kind == "param" and a.name in mapping:
                    na = SymPoly.from_index(mapping[a.name])
                else:
                    na = SymPoly.atom(a)
                term = term * na ** e
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "SymPoly(0)"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(repr(a) if e == 1 else f"{a!r}^{e}" for a, e in mono)
            cv = normalize_number(c)
            parts.append(f"{cv}*{body}" if body else str(cv))
        return "SymPoly(" + " + ".join(parts) + ")"
