"""Jordan identity templates: numeric checks and symbolic derivation of scalar identities.

A template is a pair of expression trees over slots ``a``, ``b``, ``c``.
Slots appear raised to exponent forms (integer polynomials in ``n``, ``m``,
``l``).  Evaluating a template only needs a way to produce ``slot**form``,
so the same tree is evaluated on concrete matrices (numeric check) and on
catalog families whose powers have sequence-valued closed forms (derivation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Matrix, Poly, jordan_product, mat_pow, ternary_product
from .catalog import LITERALS, MatrixFamily, family
from .idn.ast import IdentityStatement
from .idn.convert import ast_to_index, sympoly_to_ast
from .idn.evaluate import parse_grid, verify
from .idn.parser import parse_expr, parse_file
from .idn.printer import print_bindspec, print_equation
from .symbolic import X_ATOM, IndexPoly, SymPoly


def _lift(v):
    """Scalar (int, Fraction, Poly in x, SymPoly) into SymPoly."""
    if isinstance(v, Poly):
        x = SymPoly.atom(X_ATOM)
        out = SymPoly()
        for i, c in enumerate(v.coeffs):
            out = out + x ** i * c
        return out
    return SymPoly.coerce(v)


# template expression nodes ---------------------------------------------------

@dataclass(frozen=True)
class Pw:
    slot: str
    exp: IndexPoly


@dataclass(frozen=True)
class Jp:
    left: object
    right: object


@dataclass(frozen=True)
class Tp:
    a: object
    b: object
    c: object


@dataclass(frozen=True)
class Lin:
    """Integer combination ``sum(coef * node)``."""

    terms: tuple


def pw(slot, exp="1"):
    return Pw(slot, ast_to_index(parse_expr(exp, ("n", "m", "l"))))


def lin(*pairs):
    return Lin(tuple(pairs))


@dataclass(frozen=True)
class JordanTemplate:
    id: str
    source: str
    exponent_params: tuple
    lhs: object
    rhs: object
    text: str

    def slots(self):
        return sorted({p.slot for p in _powers(self.lhs) | _powers(self.rhs)})

    def slot_exponents(self, slot):
        return {p.exp for p in _powers(self.lhs) | _powers(self.rhs) if p.slot == slot}


def _powers(node):
    if isinstance(node, Pw):
        return {node}
    if isinstance(node, Jp):
        return _powers(node.left) | _powers(node.right)
    if isinstance(node, Tp):
        return _powers(node.a) | _powers(node.b) | _powers(node.c)
    if isinstance(node, Lin):
        out = set()
        for _, t in node.terms:
            out |= _powers(t)
        return out
    raise TypeError(node)


def _a(e="1"):
    return pw("a", e)


b, c = pw("b"), pw("c")

TEMPLATES = {
    t.id: t for t in [
        JordanTemplate(
            "J1", "power absorption through a triple", ("n", "m"),
            Tp(_a("n"), _a("m"), pw("b", "n")), Jp(_a("m+n"), pw("b", "n")),
            "{a^n, a^m, b^n} = a^(m+n) . b^n"),
        JordanTemplate(
            "J2", "nested quadratic triples", ("m", "l"),
            Tp(_a("l"), Tp(_a("m"), b, _a("m")), _a("l")), Tp(_a("m+l"), b, _a("m+l")),
            "{a^l, {a^m, b, a^m}, a^l} = {a^(m+l), b, a^(m+l)}"),
        JordanTemplate(
            "J3", "quadratic triple times an element", ("n",),
            Jp(Tp(_a("n"), b, _a("n")), c),
            lin((2, Tp(_a("n"), Jp(_a("n"), b), c)), (-1, Tp(_a("2*n"), b, c))),
            "{a^n, b, a^n} . c = 2{a^n, a^n . b, c} - {a^(2n), b, c}"),
        JordanTemplate(
            "J4", "product exponents", ("n", "m"),
            lin((2, Jp(Tp(_a("n*m"), b, c), _a("n")))),
            lin((1, Tp(_a("n"), Tp(_a("m*n-n"), b, c), _a("n"))), (1, Tp(_a("m*n+n"), b, c))),
            "2({a^(nm), b, c} . a^n) = {a^n, {a^(mn-n), b, c}, a^n} + {a^(mn+n), b, c}"),
        JordanTemplate(
            "J5", "quadratic triple times the same power", ("n",),
            lin((2, Jp(Tp(_a("n"), b, _a("n")), _a("n")))),
            lin((1, Tp(_a("n"), Jp(b, _a("n")), _a("n"))), (1, Tp(_a("2*n"), b, _a("n")))),
            "2({a^n, b, a^n} . a^n) = {a^n, b . a^n, a^n} + {a^(2n), b, a^n}"),
        JordanTemplate(
            "J6", "power moved into the middle slot", ("n", "m", "l"),
            Jp(Tp(_a("m"), b, _a("n")), _a("l")), Tp(_a("m"), Jp(b, _a("l")), _a("n")),
            "{a^m, b, a^n} . a^l = {a^m, b . a^l, a^n}"),
        JordanTemplate(
            "J7", "outer exponents combine", ("m", "l"),
            Jp(Tp(_a("m"), b, _a("m")), _a("l")), Tp(_a("m+l"), b, _a("m")),
            "{a^m, b, a^m} . a^l = {a^(m+l), b, a^m}"),
        JordanTemplate(
            "J8", "nested triple in the outer slot", ("n", "m", "l"),
            Tp(_a("l"), Tp(_a("m"), b, _a("n")), c),
            lin((1, Tp(_a("l+m"), Jp(b, _a("n")), c)), (1, Tp(_a("l+n"), Jp(b, _a("m")), c)),
                (-1, Tp(_a("l+m+n"), b, c))),
            "{a^l, {a^m, b, a^n}, c} = {a^(l+m), b . a^n, c} + {a^(l+n), b . a^m, c} - {a^(l+m+n), b, c}"),
        JordanTemplate(
            "J9", "nested triple in the middle slot", ("n", "m", "l"),
            Tp(_a("l"), Tp(_a("m"), b, c), _a("n")),
            lin((1, Jp(Tp(_a("l+m"), b, c), _a("n"))), (1, Jp(Tp(_a("m+n"), b, c), _a("l"))),
                (-1, Tp(_a("l+m+n"), b, c))),
            "{a^l, {a^m, b, c}, a^n} = {a^(l+m), b, c} . a^n + {a^(m+n), b, c} . a^l - {a^(l+m+n), b, c}"),
        JordanTemplate(
            "K1", "first-slot power recursion", ("n",),
            lin((2, Jp(Tp(_a("n"), b, c), _a()))),
            lin((1, Tp(_a(), Tp(_a("n-1"), b, c), _a())), (1, Tp(_a("n+1"), b, c))),
            "2{a^n, b, c} . a = {a, {a^(n-1), b, c}, a} + {a^(n+1), b, c}"),
        JordanTemplate(
            "K2", "quadratic triple in the middle slot", ("n", "m"),
            Tp(_a("n"), Tp(_a("m"), b, _a("m")), c),
            lin((2, Tp(_a("n+m"), Jp(_a("m"), b), c)), (-1, Tp(_a("n+2*m"), b, c))),
            "{a^n, {a^m, b, a^m}, c} = 2{a^(n+m), a^m . b, c} - {a^(n+2m), b, c}"),
    ]
}


def get_template(tid):
    try:
        return TEMPLATES[tid]
    except KeyError:
        raise KeyError(f"unknown template {tid!r}; known: {', '.join(TEMPLATES)}") from None


def _eval(node, power):
    if isinstance(node, Pw):
        return power(node.slot, node.exp)
    if isinstance(node, Jp):
        return jordan_product(_eval(node.left, power), _eval(node.right, power))
    if isinstance(node, Tp):
        return ternary_product(_eval(node.a, power), _eval(node.b, power), _eval(node.c, power))
    if isinstance(node, Lin):
        acc = None
        for coef, t in node.terms:
            v = _eval(t, power)
            v = v if coef == 1 else v * coef
            acc = v if acc is None else acc + v
        return acc
    raise TypeError(node)


def evaluate_template(t, power):
    """Both sides of a template given ``power(slot, exponent_form) -> Matrix``."""
    return _eval(t.lhs, power), _eval(t.rhs, power)


# numeric checks ----------------------------------------------------------------

@dataclass
class TemplateVerdict:
    template: str
    exponents: dict
    verified: bool
    lhs: Matrix
    rhs: Matrix

    @property
    def status(self):
        return "VERIFIED" if self.verified else "FAILED"


def template_check_numeric(t, a, b=None, c=None, exponents=None):
    """Evaluate both sides on concrete matrices and compare exactly."""
    if isinstance(t, str):
        t = get_template(t)
    exponents = dict(exponents or {})
    mats = {"a": a, "b": b, "c": c}
    for slot in t.slots():
        if mats[slot] is None:
            raise ValueError(f"template {t.id} needs slot {slot}")
        a._check(mats[slot])
    missing = [p for p in t.exponent_params if p not in exponents]
    if missing:
        raise ValueError(f"missing exponent value(s): {', '.join(missing)}")
    cache = {}

    def power(slot, form):
        e = form.evaluate(exponents)
        if e < 0:
            raise ValueError(f"negative exponent {e} for slot {slot}")
        key = (slot, e)
        if key not in cache:
            cache[key] = mat_pow(mats[slot], e)
        return cache[key]

    lhs, rhs = evaluate_template(t, power)
    return TemplateVerdict(t.id, exponents, lhs == rhs, lhs, rhs)


def exponent_grid(t, values=(1, 2, 3)):
    for combo in itertools.product(values, repeat=len(t.exponent_params)):
        yield dict(zip(t.exponent_params, combo))


# symbolic instantiation --------------------------------------------------------

class AssignmentError(ValueError):
    pass


def _base(op):
    if isinstance(op, PoweredFamily):
        return op.family.base
    if isinstance(op, MatrixFamily):
        return op.base
    return op


@dataclass(frozen=True)
class PoweredFamily:
    """A family used at a fixed exponent form, e.g. ``Q^m`` fills a plain slot with Q to the m."""

    family: MatrixFamily
    exp: IndexPoly


def resolve_operand(spec):
    """Accept a MatrixFamily, a Matrix, or text like ``F1``, ``T(k=2)``, ``I``, ``Q^m``."""
    if isinstance(spec, (MatrixFamily, Matrix, PoweredFamily)):
        return spec
    if not isinstance(spec, str):
        raise AssignmentError(f"cannot use {spec!r} as a template operand")
    s = spec.strip()
    if "^" in s:
        base, _, exp = s.rpartition("^")
        fam = resolve_operand(base)
        if not isinstance(fam, MatrixFamily):
            raise AssignmentError(f"only a family can carry an exponent in {spec!r}")
        try:
            e = ast_to_index(parse_expr(exp.strip().strip("()"), ("n", "m", "l")))
        except ValueError as exc:
            raise AssignmentError(f"bad exponent in {spec!r}: {exc}") from None
        return PoweredFamily(fam, e)
    if s in LITERALS:
        return LITERALS[s]
    name, _, rest = s.partition("(")
    params = {}
    if rest:
        if not rest.endswith(")"):
            raise AssignmentError(f"bad operand {spec!r}")
        for part in rest[:-1].split(","):
            if not part.strip():
                continue
            k, eq, v = part.partition("=")
            if not eq:
                raise AssignmentError(f"family parameters must be key=value in {spec!r}")
            try:
                params[k.strip()] = int(v)
            except ValueError:
                raise AssignmentError(f"parameter {k.strip()} must be an integer in {spec!r}") from None
    try:
        return family(name.strip(), params)
    except (KeyError, ValueError) as exc:
        raise AssignmentError(exc.args[0] if exc.args else str(exc)) from None


def _describe(op):
    if isinstance(op, PoweredFamily):
        return f"{_describe(op.family)}^({op.exp})"
    if isinstance(op, MatrixFamily):
        if op.params:
            return f"{op.name}(" + ",".join(f"{k}={v}" for k, v in op.params.items()) + ")"
        return op.name
    for name, m in LITERALS.items():
        if m == op:
            return name
    return repr(op.tolist())


def _bindings_for(families):
    binds = {}
    for fam in families:
        for atom, text in fam.bindings().items():
            if atom in binds and binds[atom] != text:
                raise AssignmentError(f"conflicting bindings for {atom}: {binds[atom]} vs {text}")
            binds[atom] = text
    out = []
    for atom in sorted(binds):
        stmts = parse_file(f"bind {atom} = {binds[atom]};\n{atom}(0" + (",0" if atom == "H" else "") + ") == 0")
        out.append((atom, stmts[0].binding_map[atom]))
    return tuple(out)


def _parse_subst(subst):
    out = {}
    for k, v in (subst or {}).items():
        if isinstance(v, str):
            v = ast_to_index(parse_expr(v, ("n", "m", "l")))
        out[k] = IndexPoly.coerce(v)
    return out


def instantiate_symbolic(t, assignment, subst=None):
    """Derive one scalar identity per matrix entry.

    ``assignment`` maps slots to families or literal matrices.  A literal
    stands for the whole power ``slot**e``, which is only sound when every
    occurrence of that slot carries the same exponent.  ``subst`` rewrites
    exponent parameters (e.g. ``{"m": "n+1"}``) before powering.
    """
    if isinstance(t, str):
        t = get_template(t)
    subst = _parse_subst(subst)
    ops = {}
    for slot in t.slots():
        if slot not in assignment:
            raise AssignmentError(f"template {t.id} needs an assignment for slot {slot}")
        ops[slot] = resolve_operand(assignment[slot])
    dims = {_base(op).dim for op in ops.values()}
    if len(dims) != 1:
        raise AssignmentError("assigned matrices have different dimensions")
    for slot, op in ops.items():
        if isinstance(op, Matrix) and len({e.substitute(subst) for e in t.slot_exponents(slot)}) > 1:
            raise AssignmentError(
                f"slot {slot} is raised to several exponents in {t.id}; it needs a family, not a literal")
        fam = op.family if isinstance(op, PoweredFamily) else op
        if isinstance(fam, MatrixFamily) and (fam.form is None or not fam.symbolic_ok):
            raise AssignmentError(f"family {fam.name} has no symbolic power form")

    cache = {}

    def power(slot, form):
        e = form.substitute(subst)
        key = (slot, e)
        if key not in cache:
            op = ops[slot]
            if isinstance(op, Matrix):
                cache[key] = op.map(_lift)
            elif isinstance(op, PoweredFamily):
                cache[key] = op.family.symbolic_power(e * op.exp.substitute(subst))
            else:
                cache[key] = op.symbolic_power(e)
        return cache[key]

    lhs, rhs = evaluate_template(t, power)
    families = [op.family if isinstance(op, PoweredFamily) else op
                for op in ops.values() if not isinstance(op, Matrix)]
    bindings = _bindings_for(families)
    # parameters in template order, then any introduced by substitution or family entries
    names = set()
    for m in (lhs, rhs):
        for _, v in m.entries():
            for a in _lift(v).atoms():
                if a.kind == "param":
                    names.add(a.name)
                for x in a.args:
                    names.update(x.variables())
    params = tuple(p for p in t.exponent_params if p in names) + tuple(
        sorted(names - set(t.exponent_params)))
    out = []
    for (ij, lv), (_, rv) in zip(lhs.entries(), rhs.entries()):
        stmt = IdentityStatement(params, bindings,
                                 sympoly_to_ast(_lift(lv)),
                                 sympoly_to_ast(_lift(rv)),
                                 label=f"{ij[0]}{ij[1]}")
        out.append(stmt)
    return out


def default_grid(t, params, subst=None):
    """Default derivation grid: [1,20] per parameter, [1,4] for templates with products of exponents."""
    nonlinear = any(p.exp.degree() > 1 for p in _powers(t.lhs) | _powers(t.rhs))
    hi = 4 if nonlinear else (12 if len(params) >= 3 else 20)
    return {p: (1, hi) for p in params}


def derive_report(t, assignment, grid=None, subst=None):
    """Instantiate, print and verify every entry identity of a template."""
    if isinstance(t, str):
        t = get_template(t)
    stmts = instantiate_symbolic(t, assignment, subst)
    params = stmts[0].params if stmts else ()
    if grid is None:
        grid = default_grid(t, params, subst)
    elif isinstance(grid, str):
        grid = parse_grid(grid)
    entries = []
    for s in stmts:
        rep = verify(s, grid)
        entries.append({
            "entry": [int(s.label[0]), int(s.label[1])],
            "statement": print_equation(s),
            "verdict": rep.status,
            "report": rep.to_dict(),
        })
    return {
        "template": t.id,
        "template_text": t.text,
        "assignment": {k: _describe(resolve_operand(v)) for k, v in sorted(assignment.items())
                       if k in t.slots()},
        "substitution": {k: str(v) for k, v in sorted(_parse_subst(subst).items())},
        "bindings": [f"{name} = {print_bindspec(spec)}" for name, spec in (stmts[0].bindings if stmts else ())],
        "params": list(params),
        "statements": entries,
        "verified": all(e["verdict"] == "VERIFIED" for e in entries),
    }


__all__ = [
    "TEMPLATES", "JordanTemplate", "TemplateVerdict", "AssignmentError",
    "template_check_numeric", "instantiate_symbolic", "derive_report",
    "evaluate_template", "exponent_grid", "get_template", "resolve_operand",
]
