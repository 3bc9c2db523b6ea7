"""Exact evaluation of identity sides and grid verification."""

from __future__ import annotations

import itertools
import random
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import Poly, X, normalize_number
from ..catalog import FACTORY_PARAMS, NegativeIndexUnsupported, SequenceDef, builtin
from .ast import Add, Div, IntLit, Mul, Neg, Param, Pow, SeqCall, Sub, XVar, params_used
from .convert import ast_to_index
from .printer import print_equation


class EvaluationError(ValueError):
    pass


_rec_cache = {}
_rec_lock = threading.Lock()


def _const_value(e, env):
    v = _compile(e, None)(env)
    return normalize_number(v) if isinstance(v, Fraction) else v


def resolve_binding(name, spec, env):
    """SequenceDef for a bind spec, with parameter-valued arguments taken from ``env``."""
    if spec is None:
        return builtin(name)
    if spec.kind == "rec":
        coeffs = tuple(_const_value(c, env) for c in spec.coeffs)
        inits = tuple(_const_value(c, env) for c in spec.initials)
        key = (name, coeffs, inits)
        sdef = _rec_cache.get(key)
        if sdef is None:
            with _rec_lock:
                sdef = _rec_cache.setdefault(key, SequenceDef(name, coeffs, inits))
        return sdef
    if not spec.args and not spec.kwargs:
        return builtin(spec.name)
    wanted = FACTORY_PARAMS[spec.name]
    values = dict(zip(wanted, (_const_value(a, env) for a in spec.args)))
    for k, v in spec.kwargs:
        values[k] = _const_value(v, env)
    args = []
    for k in wanted:
        v = values[k]
        if isinstance(v, Poly):
            v = v.constant_value()
        if not isinstance(v, int):
            raise EvaluationError(f"parameter {k} of {spec.name} must be an integer, got {v}")
        args.append(v)
    return builtin(spec.name, *args)


def _compile_index(e):
    ip = ast_to_index(e)
    terms = list(ip.terms.items())
    if all(len(mono) <= 1 and all(p == 1 for _, p in mono) for mono, _ in terms):
        const = ip.constant()
        lin = [(mono[0][0], c) for mono, c in terms if mono]
        if not lin:
            return lambda env: const
        if len(lin) == 1:
            (v, c), = lin
            if c == 1:
                return lambda env: env[v] + const
            return lambda env: c * env[v] + const
        return lambda env: sum(c * env[v] for v, c in lin) + const
    return ip.evaluate


def _compile(e, resolve):
    """Turn an AST into a closure ``env -> value`` (int, Fraction or Poly)."""
    if isinstance(e, IntLit):
        v = e.value
        return lambda env: v
    if isinstance(e, Param):
        name = e.name
        return lambda env: env[name]
    if isinstance(e, XVar):
        return lambda env: X
    if isinstance(e, SeqCall):
        if resolve is None:
            raise EvaluationError("sequence call not allowed here")
        get = resolve(e.name)
        idx = [_compile_index(a) for a in e.args]
        if len(idx) == 1:
            i0 = idx[0]
            return lambda env: get(env).raw(i0(env))
        i0, i1 = idx
        return lambda env: get(env).raw(i0(env), i1(env))
    if isinstance(e, Neg):
        f = _compile(e.operand, resolve)
        return lambda env: -f(env)
    if isinstance(e, Add):
        f, g = _compile(e.left, resolve), _compile(e.right, resolve)
        return lambda env: f(env) + g(env)
    if isinstance(e, Sub):
        f, g = _compile(e.left, resolve), _compile(e.right, resolve)
        return lambda env: f(env) - g(env)
    if isinstance(e, Mul):
        f, g = _compile(e.left, resolve), _compile(e.right, resolve)
        return lambda env: f(env) * g(env)
    if isinstance(e, Div):
        f, d = _compile(e.left, resolve), Fraction(1, e.divisor)
        return lambda env: f(env) * d
    if isinstance(e, Pow):
        f, k = _compile(e.base, resolve), e.exp
        return lambda env: f(env) ** k
    raise TypeError(f"not an expression node: {e!r}")


def _resolver(bindings):
    bmap = dict(bindings)

    def resolve(name):
        spec = bmap.get(name)
        if spec is None or not any(params_used(x) for x in spec.exprs()):
            sdef = resolve_binding(name, spec, {})
            return lambda env: sdef
        return lambda env: resolve_binding(name, spec, env)

    return resolve


def compile_side(expr, bindings=()):
    return _compile(expr, _resolver(bindings))


def eval_side(expr, env, bindings=()):
    """Exact value of one side at a parameter assignment, as a Poly."""
    return Poly.coerce(compile_side(expr, bindings)(env))


GRID_RE = re.compile(r"^\s*([a-z_][A-Za-z0-9_]*)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_grid(text):
    """``"n=1..30,m=1..30"`` -> ``{"n": (1, 30), "m": (1, 30)}``."""
    grid = {}
    for part in text.split(","):
        if not part.strip():
            continue
        m = GRID_RE.match(part)
        if not m:
            raise ValueError(f"bad grid entry {part.strip()!r}; expected name=lo..hi")
        name, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if lo > hi:
            raise ValueError(f"empty range for {name}: {lo}..{hi}")
        if name in grid:
            raise ValueError(f"parameter {name} given twice")
        grid[name] = (lo, hi)
    return grid


def format_grid(grid):
    return ",".join(f"{k}={lo}..{hi}" for k, (lo, hi) in grid.items())


def _show(v):
    if isinstance(v, Fraction):
        v = normalize_number(v)
    return str(v)


@dataclass
class VerdictReport:
    statement: str
    label: str | None
    params: tuple
    grid: dict
    total: int
    status: str = "VERIFIED"
    failed: int = 0
    counterexample: dict | None = None
    skipped: list = field(default_factory=list)

    @property
    def verified(self):
        return self.status == "VERIFIED"

    def to_dict(self):
        return {
            "label": self.label,
            "statement": self.statement,
            "params": list(self.params),
            "grid": {k: [lo, hi] for k, (lo, hi) in self.grid.items()},
            "points": self.total,
            "status": self.status,
            "failed_points": self.failed,
            "skipped_points": len(self.skipped),
            "skipped": [{"point": p, "reason": r} for p, r in self.skipped[:10]],
            "counterexample": self.counterexample,
        }


def _points(params, grid):
    ranges = [range(grid[p][0], grid[p][1] + 1) for p in params]
    return list(itertools.product(*ranges))


def verify(stmt, grid, *, shuffle_seed=None):
    """Check ``lhs == rhs`` exactly at every grid point over the parameters in use.

    The counterexample is the lexicographically first failing point (in
    declared parameter order) whatever order the points are evaluated in.
    """
    if isinstance(grid, str):
        grid = parse_grid(grid)
    params = stmt.used_params()
    missing = [p for p in params if p not in grid]
    if missing:
        raise ValueError(f"grid does not cover parameter(s) {', '.join(missing)}")
    for p in params:
        lo, hi = grid[p]
        if lo > hi:
            raise ValueError(f"empty range for {p}")
    used_grid = {p: tuple(grid[p]) for p in params}
    points = _points(params, used_grid)
    report = VerdictReport(print_equation(stmt), stmt.label, params, used_grid, len(points))
    lhs = compile_side(stmt.lhs, stmt.bindings)
    rhs = compile_side(stmt.rhs, stmt.bindings)
    order = list(points)
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(order)
    failures = []
    skipped = []
    for pt in order:
        env = dict(zip(params, pt))
        try:
            a, b = lhs(env), rhs(env)
        except (NegativeIndexUnsupported, ZeroDivisionError, ValueError, TypeError) as exc:
            skipped.append((pt, str(exc)))
            continue
        if a != b:
            failures.append((pt, a, b))
    skipped.sort(key=lambda s: s[0])
    report.skipped = [(dict(zip(params, pt)), reason) for pt, reason in skipped]
    report.failed = len(failures)
    if failures:
        pt, a, b = min(failures, key=lambda f: f[0])
        report.status = "FAILED"
        report.counterexample = {"point": dict(zip(params, pt)), "lhs": _show(a), "rhs": _show(b)}
    elif skipped:
        report.status = "INCOMPLETE"
    return report
