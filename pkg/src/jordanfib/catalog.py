"""Named recurrence sequences and the matrix families whose powers produce them.

Each :class:`MatrixFamily` carries its base matrix, a closed form for its
``n``-th power (verified against direct powering) and, where the commonly
printed closed form differs, that printed form as well so the disagreement
stays checkable.  The closed forms are written once, against an abstract
sequence lookup, and serve both numeric evaluation and symbolic derivation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .algebra import HALF, Matrix, Poly, X, mat_pow, normalize_number
from .symbolic import IndexPoly, SymPoly


class NegativeIndexUnsupported(ValueError):
    pass


class UnknownName(KeyError):
    pass


class BFileError(ValueError):
    def __init__(self, lineno, msg):
        super().__init__(f"b-file line {lineno}: {msg}")
        self.lineno = lineno


def _is_const(v):
    return isinstance(v, (int, Fraction)) or (isinstance(v, Poly) and v.is_constant())


def _as_number(v):
    if isinstance(v, Poly) and v.is_constant():
        return v.constant_value()
    return normalize_number(v) if isinstance(v, Fraction) else v


class SequenceDef:
    """A linear recurrence ``a(i) = c1*a(i-1) + ... + ck*a(i-k)`` or a closed form.

    Values are memoized in both directions.  Negative indices are obtained by
    solving the recurrence for its lowest term, which needs the trailing
    coefficient to be a nonzero constant.
    """

    def __init__(self, name, coeffs=(), initials=(), *, kind="recurrence",
                 closed=None, index_args=1, fixed_params=None):
        self.name = name
        self.kind = kind
        self.index_args = index_args
        self.fixed_params = dict(fixed_params or {})
        self._lock = threading.Lock()
        if kind == "recurrence":
            if not 1 <= len(coeffs) <= 3:
                raise ValueError("recurrence order must be 1, 2 or 3")
            if len(initials) != len(coeffs):
                raise ValueError("need exactly one initial value per order")
            vals = [_as_number(v) for v in tuple(coeffs) + tuple(initials)]
            symbolic = any(isinstance(v, Poly) for v in vals)
            if symbolic:
                vals = [Poly.coerce(v) for v in vals]
            self.order = len(coeffs)
            self.coeffs = tuple(vals[: self.order])
            self.initials = tuple(vals[self.order:])
            self._fwd = list(self.initials)
            self._bwd = []  # _bwd[i] holds a(-1-i)
        elif kind == "closedform":
            if closed is None:
                raise ValueError("closed-form sequence needs a function")
            self.order = 0
            self.coeffs = ()
            self.initials = ()
            self._closed = closed
            self._memo = {}
        else:
            raise ValueError(f"unknown sequence kind {kind!r}")

    @property
    def supports_negative(self):
        if self.kind != "recurrence":
            return False
        last = self.coeffs[-1]
        return _is_const(last) and _as_number(last) != 0

    def raw(self, idx, j=None):
        """Memoized value as int, Fraction or Poly (whichever is natural)."""
        if self.kind == "closedform":
            key = (idx, j)
            v = self._memo.get(key)
            if v is None:
                v = self._closed(idx, j)
                self._memo[key] = v
            return v
        if j is not None:
            raise TypeError(f"{self.name} takes one index")
        if idx >= 0:
            fwd = self._fwd
            if idx < len(fwd):
                return fwd[idx]
            with self._lock:
                cs = self.coeffs
                while len(fwd) <= idx:
                    acc = cs[0] * fwd[-1]
                    for t in range(1, self.order):
                        acc = acc + cs[t] * fwd[-1 - t]
                    fwd.append(_as_number(acc) if isinstance(acc, Fraction) else acc)
                return fwd[idx]
        k = -1 - idx
        bwd = self._bwd
        if k < len(bwd):
            return bwd[k]
        if not self.supports_negative:
            raise NegativeIndexUnsupported(
                f"{self.name}: trailing coefficient {self.coeffs[-1]} is not invertible")
        with self._lock:
            cs = self.coeffs
            inv = Fraction(1) / Fraction(_as_number(cs[-1]))
            while len(bwd) <= k:
                i = -1 - len(bwd)
                # a(i+order) = sum c_t a(i+order-t), solve for a(i)
                acc = self._get_known(i + self.order)
                for t in range(1, self.order):
                    acc = acc - cs[t - 1] * self._get_known(i + self.order - t)
                v = acc * inv
                bwd.append(normalize_number(v) if isinstance(v, Fraction) else v)
            return bwd[k]

    def _get_known(self, i):
        if i >= 0:
            return self._fwd[i] if i < len(self._fwd) else self.raw(i)
        return self._bwd[-1 - i]

    def value(self, idx, j=None):
        return Poly.coerce(self.raw(idx, j))

    def __repr__(self):
        if self.kind == "closedform":
            return f"SequenceDef({self.name!r}, closedform, {self.fixed_params})"
        return f"SequenceDef({self.name!r}, coeffs={self.coeffs}, initials={self.initials})"


def seq_value(sdef, idx, j=None):
    return sdef.value(idx, j)


def h_value(n, k, j):
    """Signed binomial sum ``sum (-1)^(i-1+j) C(n,i) F(i-j) (k+1)^(n-i)``."""
    if n < 0:
        raise NegativeIndexUnsupported("h is defined for n >= 0 only")
    if j not in (-1, 0, 1):
        raise ValueError("j must be -1, 0 or 1")
    fib = builtin("F")
    total = 0
    for i in range(n + 1):
        term = comb(n, i) * fib.raw(i - j) * (k + 1) ** (n - i)
        total += term if (i - 1 + j) % 2 == 0 else -term
    return total


# ---------------------------------------------------------------------------
# builtin sequences

_BUILTIN_RECS = {
    "F": ((1, 1), (0, 1)),
    "L": ((1, 1), (2, 1)),
    "P": ((2, 1), (0, 1)),
    "J": ((1, 2), (0, 1)),
    "Fx": ((X, 1), (0, 1)),
    "Lx": ((X, 1), (2, X)),
    "T3": ((1, 1, 1), (0, 0, 1)),
    "S121": ((1, 2, 1), (0, 1, 1)),
    "E2": ((2,), (1,)),
    "Sg": ((-1,), (1,)),
}

BUILTIN_DOCS = {
    "F": "Fibonacci numbers",
    "L": "Lucas numbers",
    "P": "Pell numbers",
    "J": "Jacobsthal numbers",
    "Fx": "Fibonacci polynomials in x",
    "Lx": "Lucas polynomials in x",
    "T3": "tribonacci t(n) with t0=0, t1=0, t2=1",
    "S121": "s(n) = s(n-1) + 2 s(n-2) + s(n-3), s0=0, s1=1, s2=1",
    "E2": "powers of two",
    "Sg": "(-1)^n",
    "G": "G(b): g(n) = g(n-1) + b g(n-2), g0=0, g1=1",
    "W": "W(p,q): w(n) = p w(n-1) - q w(n-2), w0=0, w1=1",
    "C": "C(b): c(n) = b c(n-1) + c(n-2), c0=0, c1=1",
    "U": "U(r,s,t): u(n) = r u(n-1) + s u(n-2) + t u(n-3), u0=0, u1=1, u2=r",
    "H": "H(k): two-index binomial transform h(n, j), j in {-1, 0, 1}",
}

# factory name -> ordered parameter names
FACTORY_PARAMS = {
    "G": ("b",),
    "W": ("p", "q"),
    "C": ("b",),
    "U": ("r", "s", "t"),
    "H": ("k",),
}

OEIS_ALIASES = {
    "fibonacci": "F",
    "lucas": "L",
    "pell": "P",
    "jacobsthal": "J",
    "tribonacci": "T3",
}

_cache = {}
_cache_lock = threading.Lock()


def _make(name, args):
    if name in _BUILTIN_RECS:
        if args:
            raise ValueError(f"{name} takes no parameters")
        coeffs, init = _BUILTIN_RECS[name]
        return SequenceDef(name, coeffs, init)
    if name not in FACTORY_PARAMS:
        raise UnknownName(name)
    names = FACTORY_PARAMS[name]
    if len(args) != len(names):
        raise ValueError(f"{name} expects parameters {names}")
    p = dict(zip(names, args))
    if name == "G":
        return SequenceDef(f"G(b={p['b']})", (1, p["b"]), (0, 1), fixed_params=p)
    if name == "W":
        return SequenceDef(f"W(p={p['p']},q={p['q']})", (p["p"], -p["q"]), (0, 1), fixed_params=p)
    if name == "C":
        return SequenceDef(f"C(b={p['b']})", (p["b"], 1), (0, 1), fixed_params=p)
    if name == "U":
        return SequenceDef(f"U(r={p['r']},s={p['s']},t={p['t']})",
                           (p["r"], p["s"], p["t"]), (0, 1, p["r"]), fixed_params=p)
    k = p["k"]
    if not isinstance(k, int) or k < 1:
        raise ValueError("H needs an integer k >= 1")
    return SequenceDef(f"H(k={k})", kind="closedform", index_args=2, fixed_params=p,
                       closed=lambda n, j: h_value(n, k, j))


def builtin(name, *args):
    """Shared, memoized SequenceDef for a builtin name (and factory arguments)."""
    args = tuple(normalize_number(a) if isinstance(a, Fraction) else a for a in args)
    key = (name, args)
    sdef = _cache.get(key)
    if sdef is None:
        with _cache_lock:
            sdef = _cache.get(key)
            if sdef is None:
                sdef = _make(name, args)
                _cache[key] = sdef
    return sdef


def lookup_sequence(name, params=None):
    """Resolve a user-facing name (builtin, factory or OEIS alias) to a SequenceDef."""
    params = params or {}
    base = OEIS_ALIASES.get(name.lower(), name)
    if base in FACTORY_PARAMS:
        try:
            args = [params[p] for p in FACTORY_PARAMS[base]]
        except KeyError as exc:
            raise ValueError(f"{base} needs parameters {FACTORY_PARAMS[base]}") from exc
        return builtin(base, *args)
    if base in _BUILTIN_RECS:
        return builtin(base)
    raise UnknownName(name)


# ---------------------------------------------------------------------------
# matrix families


class _NumericCtx:
    """Closed-form evaluation context: integer exponents, concrete sequence values."""

    symbolic = False

    def __init__(self, seqs):
        self.seqs = seqs

    def seq(self, role, *idx):
        atom, sdef = self.seqs[role]
        return sdef.raw(*idx)

    def lift(self, v):
        return v


class _SymbolicCtx:
    symbolic = True

    def __init__(self, seqs):
        self.seqs = seqs

    def seq(self, role, *idx):
        atom, sdef = self.seqs[role]
        return SymPoly.seq(atom, *idx)

    def lift(self, v):
        return SymPoly.coerce(v)


@dataclass
class MatrixFamily:
    """A base matrix with closed forms for its powers.

    ``form(n, ctx)`` returns rows for the n-th power; ``ctx`` supplies the
    sequence lookups so one definition serves numeric and symbolic use.
    ``seqs`` maps a role name to ``(atom_name, binding_text, SequenceDef)``.
    """

    name: str
    params: dict
    base: Matrix
    form: Callable | None = None
    printed: Callable | None = None
    seqs: dict = field(default_factory=dict)
    min_n: int = 0
    printed_min_n: int | None = None
    symbolic_ok: bool = True
    note: str = ""

    def _ctx_seqs(self):
        return {role: (atom, sdef) for role, (atom, _bind, sdef) in self.seqs.items()}

    def predicted_power(self, n):
        if self.form is None:
            raise ValueError(f"{self.name} has no closed form for its powers")
        if n < self.min_n:
            raise ValueError(f"closed form of {self.name} needs n >= {self.min_n}")
        return Matrix(self.form(n, _NumericCtx(self._ctx_seqs())))

    def printed_power(self, n):
        if self.printed is None:
            return self.predicted_power(n)
        return Matrix(self.printed(n, _NumericCtx(self._ctx_seqs())))

    @property
    def has_printed_variant(self):
        return self.printed is not None

    def symbolic_power(self, e):
        """Power at a symbolic exponent, entries in :class:`SymPoly`."""
        if self.form is None or not self.symbolic_ok:
            raise ValueError(f"{self.name} has no symbolic power form")
        e = IndexPoly.coerce(e)
        return Matrix(self.form(e, _SymbolicCtx(self._ctx_seqs())))

    def bindings(self):
        """Binding header entries (atom name -> spec text) its symbolic form needs."""
        return {atom: bind for atom, bind, _ in self.seqs.values() if bind is not None}


def _seq(atom, bind=None, *args):
    return (atom, bind, builtin(atom if bind is None else bind.split("(")[0], *args))


def _fib_like(role):
    def form(n, c):
        return [[c.seq(role, n + 1), c.seq(role, n)], [c.seq(role, n), c.seq(role, n - 1)]]
    return form


def _family_F1(p):
    return MatrixFamily("F1", p, Matrix([[1, 1], [1, 0]]), _fib_like("f"), seqs={"f": _seq("F")})


def _family_G(p):
    b = p["b"]
    if b == 2:
        seqs = {"g": _seq("J")}
    else:
        seqs = {"g": ("G", f"G(b={b})", builtin("G", b))}

    def form(n, c):
        g = lambda i: c.seq("g", i)
        return [[g(n + 1), b * g(n)], [g(n), b * g(n - 1)]]

    def printed(n, c):
        g = lambda i: c.seq("g", i)
        return [[g(n + 1), b * g(n)], [g(n + 1), b * g(n - 1)]]

    return MatrixFamily("G", p, Matrix([[1, b], [1, 0]]), form, printed, seqs,
                        note="printed (2,1) entry g(n+1) should read g(n)")


def _family_G2(p):
    fam = _family_G({"b": 2})

    def printed(n, c):
        j = lambda i: c.seq("g", i)
        return [[j(2 * n - 1), j(2 * n)], [j(2 * n), j(2 * n + 1)]]

    fam.name = "G2"
    fam.params = {}
    fam.printed = printed
    fam.note = "printed form with J(2n-1), J(2n), J(2n+1) entries does not match; use G(b=2)"
    return fam


def _family_W(p):
    pp, q = p["p"], p["q"]
    seqs = {"w": ("W", f"W(p={pp},q={q})", builtin("W", pp, q))}

    def form(n, c):
        w = lambda i: c.seq("w", i)
        return [[w(n + 1), -q * w(n)], [w(n), -q * w(n - 1)]]

    return MatrixFamily("W", p, Matrix([[pp, -q], [1, 0]]), form, seqs=seqs,
                        min_n=0 if q != 0 else 1)


def _family_P(p):
    b = p["b"]
    seqs = {"c": _seq("P")} if b == 2 else {"c": ("C", f"C(b={b})", builtin("C", b))}
    return MatrixFamily("P", p, Matrix([[b, 1], [1, 0]]), _fib_like("c"), seqs=seqs)


def _family_Q(p):
    return MatrixFamily("Q", p, Matrix([[X, 1], [1, 0]]), _fib_like("f"), seqs={"f": _seq("Fx")})


def _family_L(p):
    def form(n, c):
        Ln, Fn = c.seq("l", n), c.seq("f", n)
        return [[Ln * HALF, 5 * Fn * HALF], [Fn * HALF, Ln * HALF]]

    return MatrixFamily("L", p, Matrix([[HALF, 5 * HALF], [HALF, HALF]]), form,
                        seqs={"l": _seq("L"), "f": _seq("F")})


def _family_T2(p):
    def form(n, c):
        f = lambda i: c.seq("f", i)
        return [[f(2 * n + 1), f(2 * n)], [f(2 * n), f(2 * n - 1)]]

    return MatrixFamily("T2", p, Matrix([[2, 1], [1, 1]]), form, seqs={"f": _seq("F")})


def _family_T(p):
    k = p["k"]
    seqs = {"h": ("H", f"H(k={k})", builtin("H", k))}

    def form(n, c):
        h = lambda i, j: c.seq("h", i, j)
        return [[h(n, 1), h(n, 0)], [h(n, 0), h(n, -1)]]

    def printed(n, c):
        h = lambda i, j: c.seq("h", i, j)
        return [[h(n, 1), h(n - 1, 0)], [h(n - 1, 0), h(n, -1)]]

    return MatrixFamily("T", p, Matrix([[k + 1, 1], [1, k]]), form, printed, seqs,
                        printed_min_n=1,
                        note="printed off-diagonal h(n-1,0) should read h(n,0)")


def _family_M1(p):
    def form(n, c):
        L = c.lift
        return [[L(n + 1), L(n)], [L(-n), L(1 - n)]]

    return MatrixFamily("M1", p, Matrix([[2, 1], [-1, 0]]), form)


def _family_M2(p):
    def form(n, c):
        e = lambda i: c.seq("e", i)
        return [[2 * e(n) - 1, e(n) - 1], [2 - 2 * e(n), 2 - e(n)]]

    return MatrixFamily("M2", p, Matrix([[3, 1], [-2, 0]]), form, seqs={"e": _seq("E2")})


def _family_M3(p):
    def form(n, c):
        s, f = c.seq("s", n), (lambda i: c.seq("f", i))
        return [[s * f(n + 2), s * f(n)], [-(s * f(n)), -(s * f(n - 2))]]

    return MatrixFamily("M3", p, Matrix([[-2, -1], [1, 1]]), form,
                        seqs={"s": _seq("Sg"), "f": _seq("F")})


def _family_S(p):
    k = p["k"]
    c2 = k * k + 1

    def form(n, c):
        g = c2 ** (n // 2)
        if n % 2 == 0:
            return [[g, 0], [0, g]]
        return [[g, k * g], [k * g, -g]]

    def printed(n, c):
        g = c2 ** (n // 2)
        if n % 2 == 0:
            return [[g, 0], [0, g]]
        return [[g, k * g], [k * g, g]]

    return MatrixFamily("S", p, Matrix([[1, k], [k, -1]]), form, printed,
                        symbolic_ok=False,
                        note="printed odd power has +(k^2+1)^n in entry (2,2); sign should be negative")


def S_SQUARE_PRINTED(k):
    """The displayed square of S_k, ``[[k^2+1, 2k], [2k, k^2+1]]`` (not the true square)."""
    return Matrix([[k * k + 1, 2 * k], [2 * k, k * k + 1]])


def _family_T001(p):
    def form(n, c):
        t = lambda i: c.seq("t", i)
        return [[t(n + 2), t(n) + t(n + 1), t(n + 1)],
                [t(n + 1), t(n) + t(n - 1), t(n)],
                [t(n), t(n - 1) + t(n - 2), t(n - 1)]]

    return MatrixFamily("T001", p, Matrix([[1, 1, 1], [1, 0, 0], [0, 1, 0]]), form,
                        seqs={"t": _seq("T3")})


def _family_T121(p):
    def form(n, c):
        s = lambda i: c.seq("s", i)
        return [[s(n + 1), 2 * s(n) + s(n - 1), s(n)],
                [s(n), 2 * s(n - 1) + s(n - 2), s(n - 1)],
                [s(n - 1), 2 * s(n - 2) + s(n - 3), s(n - 2)]]

    return MatrixFamily("T121", p, Matrix([[1, 2, 1], [1, 0, 0], [0, 1, 0]]), form,
                        seqs={"s": _seq("S121")})


def _family_Trst(p):
    r, s, t = p["r"], p["s"], p["t"]
    seqs = {"u": ("U", f"U(r={r},s={s},t={t})", builtin("U", r, s, t))}

    def rows(n, c, tcol):
        u = lambda i: c.seq("u", i)
        return [[u(n + 1), s * u(n) + t * u(n - 1), tcol * u(n)],
                [u(n), s * u(n - 1) + t * u(n - 2), tcol * u(n - 1)],
                [u(n - 1), s * u(n - 2) + t * u(n - 3), tcol * u(n - 2)]]

    return MatrixFamily("Trst", p, Matrix([[r, s, t], [1, 0, 0], [0, 1, 0]]),
                        lambda n, c: rows(n, c, t), lambda n, c: rows(n, c, 1), seqs,
                        min_n=0 if t != 0 else 3, printed_min_n=0 if t != 0 else 3,
                        note="printed third column omits the factor t")


def _family_TF(p):
    def form(n, c):
        f = lambda i: c.seq("f", i)
        a, b, d = f(n - 1), f(n), f(n + 1)
        return [[a * a, a * b, b * b],
                [2 * a * b, a * a + d * b, 2 * d * b],
                [b * b, b * d, d * d]]

    return MatrixFamily("TF", p, Matrix([[0, 0, 1], [0, 1, 2], [1, 1, 1]]), form,
                        seqs={"f": _seq("F")})


FAMILIES = {
    "F1": (_family_F1, ()),
    "G": (_family_G, ("b",)),
    "G2": (_family_G2, ()),
    "W": (_family_W, ("p", "q")),
    "P": (_family_P, ("b",)),
    "Q": (_family_Q, ()),
    "L": (_family_L, ()),
    "T2": (_family_T2, ()),
    "T": (_family_T, ("k",)),
    "M1": (_family_M1, ()),
    "M2": (_family_M2, ()),
    "M3": (_family_M3, ()),
    "S": (_family_S, ("k",)),
    "T001": (_family_T001, ()),
    "T121": (_family_T121, ()),
    "Trst": (_family_Trst, ("r", "s", "t")),
    "TF": (_family_TF, ()),
}

# parameter ranges: (name -> validator)
_PARAM_CHECKS = {
    "b": lambda v: v >= 1,
    "k": lambda v: v >= 1,
    "p": lambda v: v >= 0,
    "q": lambda v: v >= 0,
    "r": lambda v: True,
    "s": lambda v: True,
    "t": lambda v: True,
}

# constant matrices usable in non-powered template slots
LITERALS = {
    "I": Matrix.identity(2),
    "I2": Matrix.identity(2),
    "I3": Matrix.identity(3),
    "E11": Matrix([[1, 0], [0, 0]]),
    "E12": Matrix([[0, 1], [0, 0]]),
    "E22": Matrix([[0, 0], [0, 1]]),
    "SWAP": Matrix([[0, 1], [1, 0]]),
    "X": Matrix([[X, 1], [1, 0]]),
    "B": Matrix([[3, 1], [1, 2]]),
}


def family(name, params=None):
    params = dict(params or {})
    try:
        factory, names = FAMILIES[name]
    except KeyError:
        raise UnknownName(f"unknown family {name!r}") from None
    if set(params) != set(names):
        raise ValueError(f"family {name} expects parameters {names}, got {sorted(params)}")
    for pname, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"parameter {pname} must be an integer")
        if not _PARAM_CHECKS[pname](v):
            raise ValueError(f"parameter {pname}={v} out of range")
    return factory(params)


def family_base(name, params=None):
    return family(name, params).base


def family_predicted_power(name, params=None, n=1):
    return family(name, params).predicted_power(n)


@dataclass
class PowerCheck:
    n: int
    match: bool
    entry: tuple | None = None
    expected: object = None
    predicted: object = None


@dataclass
class ClosedFormReport:
    family: str
    params: dict
    form: str
    checks: list

    @property
    def all_match(self):
        return all(c.match for c in self.checks)

    @property
    def first_mismatch(self):
        return next((c for c in self.checks if not c.match), None)

    def to_dict(self):
        return {
            "family": self.family,
            "params": self.params,
            "form": self.form,
            "verdict": "MATCH" if self.all_match else "MISMATCH",
            "checks": [
                {"n": c.n, "verdict": "MATCH" if c.match else "MISMATCH",
                 "entry": list(c.entry) if c.entry else None,
                 "expected": None if c.expected is None else str(c.expected),
                 "predicted": None if c.predicted is None else str(c.predicted)}
                for c in self.checks
            ],
        }


def closedform_check(name, params=None, n_max=30, form="predicted"):
    """Compare ``base**n`` against the closed form for every admissible n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    fam = family(name, params)
    if form == "printed":
        lo = fam.printed_min_n if fam.printed_min_n is not None else fam.min_n
        get = fam.printed_power
    elif form == "predicted":
        lo = fam.min_n
        get = fam.predicted_power
    else:
        raise ValueError(f"unknown form {form!r}")
    checks = []
    power = mat_pow(fam.base, lo)
    for n in range(lo, n_max + 1):
        if n > lo:
            power = power @ fam.base
        pred = get(n)
        bad = next(((ij, v, pred[ij[0] - 1, ij[1] - 1]) for ij, v in power.entries()
                    if v != pred[ij[0] - 1, ij[1] - 1]), None)
        if bad is None:
            checks.append(PowerCheck(n, True))
        else:
            checks.append(PowerCheck(n, False, bad[0], bad[1], bad[2]))
    return ClosedFormReport(fam.name, dict(fam.params), form, checks)


# ---------------------------------------------------------------------------
# OEIS b-files


def parse_bfile(text):
    """Parse ``index value`` lines; blank lines and ``#`` comments are skipped."""
    out = []
    last = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise BFileError(lineno, f"expected 'index value', got {s!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(lineno, f"non-integer field in {s!r}") from None
        if last is not None and idx <= last:
            raise BFileError(lineno, "indices must be strictly ascending")
        last = idx
        out.append((lineno, idx, val))
    return out


@dataclass
class OeisVerdict:
    sequence: str
    match: bool
    checked: int
    mismatch: dict | None = None

    def to_dict(self):
        return {"sequence": self.sequence, "verdict": "MATCH" if self.match else "MISMATCH",
                "checked": self.checked, "mismatch": self.mismatch}


def oeis_crosscheck(sdef, bfile_lines):
    """Compare a sequence with b-file values at every index it can produce."""
    rows = parse_bfile(bfile_lines)
    checked = 0
    for lineno, idx, val in rows:
        try:
            mine = sdef.value(idx)
        except NegativeIndexUnsupported:
            continue
        checked += 1
        if mine != val:
            return OeisVerdict(sdef.name, False, checked,
                               {"line": lineno, "index": idx, "bfile": str(val), "computed": str(mine)})
    return OeisVerdict(sdef.name, True, checked)
