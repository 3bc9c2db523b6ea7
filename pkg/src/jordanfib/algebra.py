"""Exact arithmetic: polynomials in x over the rationals and small square matrices.

Integers are Python ints and rationals are :class:`fractions.Fraction`; both
already give arbitrary precision and canonical reduced form.  :class:`Poly`
is the scalar ring every catalog matrix lives over.  :class:`Matrix` is
generic: its entries may be ints, Fractions, Polys or symbolic ring elements,
as long as they support ``+``, ``-``, ``*`` and multiplication by
``Fraction(1, 2)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational

HALF = Fraction(1, 2)


class DimensionError(ValueError):
    pass


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not a rational: {c!r}")


def normalize_number(c):
    """Collapse a Fraction with denominator 1 to an int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Univariate polynomial in ``x`` with dense rational coefficients.

    Integral coefficients are kept as ``int`` (much faster than Fraction);
    the two compare and hash alike, so equality is unaffected.

    Coefficients are stored in ascending degree with no trailing zeros, so
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [normalize_number(_frac(c)) if not isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def coerce(cls, v):
        if isinstance(v, Poly):
            return v
        return cls((v,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_value(self):
        """The value as int/Fraction; raises if the polynomial involves x."""
        if not self.coeffs:
            return 0
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not a constant")
        return normalize_number(self.coeffs[0])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize_number(acc)

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                if not self.coeffs:
                    return Poly((other,))
                return Poly((self.coeffs[0] + other,) + self.coeffs[1:])
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return Poly(c * other for c in self.coeffs)
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Poly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0] if self.coeffs else 0)
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({[normalize_number(c) for c in self.coeffs]!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for deg in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[deg]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = str(mag)
            else:
                mono = "x" if deg == 1 else f"x^{deg}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = Poly((0, 1))


def scalar_arith(lhs, rhs, op):
    """Exact add/sub/mul of two scalars, returned as a canonical :class:`Poly`."""
    a, b = Poly.coerce(lhs), Poly.coerce(rhs)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _clean(v):
    return normalize_number(v) if isinstance(v, Fraction) else v


class Matrix:
    """Immutable 2x2 or 3x3 matrix, rows stored as tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_clean(v) for v in r) for r in rows)
        dim = len(rows)
        if dim not in (2, 3):
            raise DimensionError(f"only 2x2 and 3x3 matrices are supported, got {dim} rows")
        if any(len(r) != dim for r in rows):
            raise DimensionError("matrix must be square")
        self.rows = rows

    @property
    def dim(self):
        return len(self.rows)

    @classmethod
    def identity(cls, dim):
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls([[0] * dim for _ in range(dim)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        """Entries in row-major order as ``((i, j), value)`` with 1-based indices."""
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                yield (i + 1, j + 1), v

    def map(self, fn):
        return Matrix([[fn(v) for v in r] for r in self.rows])

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda v: -v)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return self.map(lambda v: v * other)

    def __rmul__(self, other):
        return self.map(lambda v: other * v)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __pow__(self, n):
        return mat_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows) + "]"


def _integral(m):
    """``(integer rows, denominator)`` for a matrix of rationals, else None."""
    den = 1
    for r in m.rows:
        for v in r:
            if type(v) is Fraction:
                den = lcm(den, v.denominator)
            elif type(v) is not int:
                return None
    if den == 1:
        return m.rows, 1
    return [[v * den if type(v) is int else v.numerator * (den // v.denominator) for v in r]
            for r in m.rows], den


def _imul(ra, rb):
    bt = list(zip(*rb))
    return [[sum(x * y for x, y in zip(r, col)) for col in bt] for r in ra]


def _iadd(ra, rb):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(ra, rb)]


def _over(rows, den):
    if den == 1:
        return Matrix(rows)
    return Matrix([[Fraction(v, den) for v in r] for r in rows])


def mat_mul(a, b):
    a._check(b)
    ia, ib = _integral(a), _integral(b)
    if ia is not None and ib is not None:
        # integer product over a common denominator: one gcd per entry instead of one per term
        return _over(_imul(ia[0], ib[0]), ia[1] * ib[1])
    n = a.dim
    bt = list(zip(*b.rows))
    out = []
    for r in a.rows:
        row = []
        for col in bt:
            acc = r[0] * col[0]
            for k in range(1, n):
                acc = acc + r[k] * col[k]
            row.append(acc)
        out.append(row)
    return Matrix(out)


def mat_pow(a, n):
    """``a**n`` by repeated squaring; ``a**0`` is the identity."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"exponent must be a nonnegative int, got {n!r}")
    result = Matrix.identity(a.dim)
    base = a
    first = True
    while n:
        if n & 1:
            result = base if first else mat_mul(result, base)
            first = False
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def jordan_product(a, b):
    """Symmetrized product ``(ab + ba) / 2``."""
    a._check(b)
    ia, ib = _integral(a), _integral(b)
    if ia is not None and ib is not None:
        (ra, da), (rb, db) = ia, ib
        return _over(_iadd(_imul(ra, rb), _imul(rb, ra)), 2 * da * db)
    return (mat_mul(a, b) + mat_mul(b, a)) * HALF


def ternary_product(a, b, c):
    """Jordan triple product ``((ab)c + (cb)a) / 2``."""
    a._check(b)
    a._check(c)
    ia, ib, ic = _integral(a), _integral(b), _integral(c)
    if ia is not None and ib is not None and ic is not None:
        (ra, da), (rb, db), (rc, dc) = ia, ib, ic
        rows = _iadd(_imul(_imul(ra, rb), rc), _imul(_imul(rc, rb), ra))
        return _over(rows, 2 * da * db * dc)
    return (mat_mul(mat_mul(a, b), c) + mat_mul(mat_mul(c, b), a)) * HALF


def mat_trace(a):
    acc = a.rows[0][0]
    for i in range(1, a.dim):
        acc = acc + a.rows[i][i]
    return acc


def mat_det(a):
    r = a.rows
    if a.dim == 2:
        return r[0][0] * r[1][1] - r[0][1] * r[1][0]
    # cofactor expansion along the first row
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )
