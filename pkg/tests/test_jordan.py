import random
from fractions import Fraction

import pytest

from jordanfib.algebra import DimensionError, Matrix
from jordanfib.catalog import FAMILIES, family
from jordanfib.idn import parse, print_equation, verify
from jordanfib.idn.convert import canonically_equal
from jordanfib.idn.evaluate import eval_side
from jordanfib.jordan import (
    TEMPLATES, AssignmentError, JordanTemplate, Jp, Tp, derive_report, exponent_grid, get_template,
    instantiate_symbolic, pw, resolve_operand, template_check_numeric,
)

F1 = Matrix([[1, 1], [1, 0]])
I2, I3 = Matrix.identity(2), Matrix.identity(3)
SAMPLE = {"b": 3, "p": 3, "q": 2, "k": 2, "r": 1, "s": 2, "t": 3}


def rand_matrix(rng, dim):
    return Matrix([[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)] for _ in range(dim)])


def test_eleven_templates():
    assert sorted(TEMPLATES) == ["J1", "J2", "J3", "J4", "J5", "J6", "J7", "J8", "J9", "K1", "K2"]
    with pytest.raises(KeyError):
        get_template("J10")


def test_numeric_examples():
    assert template_check_numeric("J1", F1, I2, exponents={"n": 2, "m": 3}).verified
    rng = random.Random(5)
    a, b, c = (rand_matrix(rng, 3) for _ in range(3))
    assert template_check_numeric("J3", a, b, c, {"n": 2}).verified


def test_negative_control_wrong_exponent():
    t = TEMPLATES["J1"]
    wrong = JordanTemplate("bad", "", t.exponent_params, t.lhs, Jp(pw("a", "m+n+1"), pw("b", "n")), "")
    a = Matrix([[1, 2], [0, 3]])
    b = Matrix([[0, 1], [1, 1]])
    assert template_check_numeric(wrong, a, b, exponents={"n": 1, "m": 2}).status == "FAILED"
    swapped = JordanTemplate("bad2", "", ("n",), Tp(pw("a", "n"), pw("b"), pw("a")), Tp(pw("b"), pw("a", "n"), pw("a")), "")
    assert not template_check_numeric(swapped, a, b, exponents={"n": 1}).verified


@pytest.mark.parametrize("tid", sorted(TEMPLATES))
def test_templates_hold_on_random_matrices(tid):
    t = TEMPLATES[tid]
    rng = random.Random(hash(tid) % 1000)
    for dim, count in ((2, 8), (3, 3)):
        for _ in range(count):
            a, b, c = (rand_matrix(rng, dim) for _ in range(3))
            for ex in exponent_grid(t):
                assert template_check_numeric(t, a, b, c, ex).verified, (tid, ex)


def test_zero_exponent_is_identity():
    # J4 at m=1 needs a^0
    rng = random.Random(3)
    a, b, c = (rand_matrix(rng, 2) for _ in range(3))
    assert template_check_numeric("J4", a, b, c, {"n": 2, "m": 1}).verified


def test_numeric_errors():
    with pytest.raises(DimensionError):
        template_check_numeric("J1", F1, I3, exponents={"n": 1, "m": 1})
    with pytest.raises(ValueError):
        template_check_numeric("J1", F1, I2, exponents={"n": 1})
    with pytest.raises(ValueError):
        template_check_numeric("K1", F1, I2, exponents={"n": 1})
    with pytest.raises(ValueError):
        template_check_numeric("J1", F1, I2, exponents={"n": -1, "m": 1})


# symbolic ---------------------------------------------------------------------

def test_j1_fibonacci_identity_entry():
    stmts = instantiate_symbolic("J1", {"a": "F1", "b": "I"})
    assert len(stmts) == 4
    target = parse("params n m; F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)")
    assert canonically_equal(stmts[0], target)
    assert print_equation(stmts[0]) == "F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)"


def test_j1_with_lucas_matrix_gives_four_identities():
    stmts = instantiate_symbolic("J1", {"a": "F1", "b": "L"})
    assert len(stmts) == 4
    printed = [
        "params n m; L(n)*F(m+n+1)+3*F(n)*F(m+n) == L(n)*(F(m)*F(n)+F(m+1)*F(n+1))+3*F(n)*(F(m-1)*F(n)+F(m)*F(n+1))",
        "params n m; L(n)*F(m+n-1)+3*F(n)*F(m+n) == L(n)*(F(m-1)*F(n-1)+F(m)*F(n))+3*F(n)*(F(m)*F(n-1)+F(m+1)*F(n))",
    ]
    # each printed identity is a fixed multiple of the (1,1) resp. (2,2) entry
    for stmt, text in zip((stmts[0], stmts[3]), printed):
        ref = parse(text)
        for n in range(1, 6):
            for m in range(1, 6):
                env = {"n": n, "m": m}
                assert eval_side(ref.lhs, env) == 2 * eval_side(stmt.rhs, env)
                assert eval_side(ref.rhs, env) == 2 * eval_side(stmt.lhs, env)


def test_j3_fibonacci_polynomials():
    rep = derive_report("J3", {"a": "Q", "b": "Q^m", "c": "I"}, grid="n=1..6,m=1..6")
    assert rep["verified"] and len(rep["statements"]) == 4
    assert any("Fx(" in e["statement"] for e in rep["statements"])
    lhs_text = ("params n m; Fx(m-1)*Fx(n)^2+Fx(n+1)*(2*Fx(m)*Fx(n)+Fx(m+1)*Fx(n+1)) == "
                "Fx(m-1)*Fx(n)^2+2*Fx(m)*Fx(n)*Fx(n+1)+Fx(m+1)*(Fx(n)^2+2*Fx(n+1)^2-Fx(2*n+1))")
    assert verify(parse(lhs_text), "n=1..8,m=1..8").verified


def test_derive_examples():
    rep = derive_report("J1", {"a": "F1", "b": "I"}, grid="n=1..20,m=1..20")
    assert rep["verified"] and [e["verdict"] for e in rep["statements"]] == ["VERIFIED"] * 4
    x = derive_report("J1", {"a": "L", "b": "X"}, subst={"m": "n"}, grid="n=1..15")
    assert x["verified"] and x["params"] == ["n"]
    tri = derive_report("J1", {"a": "T001", "b": "I3"}, grid="n=1..12,m=1..12")
    assert tri["verified"] and len(tri["statements"]) == 9
    ours = instantiate_symbolic("J1", {"a": "T001", "b": "I3"})[0]
    target = parse("params n m; T3(m)*T3(n+1)+T3(m+1)*(T3(n)+T3(n+1))+T3(m+2)*T3(n+2) == T3(m+n+2)")
    assert canonically_equal(ours, target)


def test_x_identities():
    x1 = parse("params n; 5*x*F(n)^2+6*L(n)*F(n)+x*L(n)^2 == 6*F(2*n)+2*x*L(2*n)")
    x2 = parse("params n; 5*F(n)^2+5*x*L(n)*F(n)+L(n)^2 == 5*x*F(2*n)+2*L(2*n)")
    assert verify(x1, "n=1..30").verified and verify(x2, "n=1..30").verified


def test_assignment_errors():
    with pytest.raises(AssignmentError):
        instantiate_symbolic("J1", {"a": "F1"})
    with pytest.raises(AssignmentError):
        instantiate_symbolic("J1", {"a": "F1", "b": "I3"})
    with pytest.raises(AssignmentError):
        instantiate_symbolic("J1", {"a": "I", "b": "I"})  # literal raised to n and m
    with pytest.raises(AssignmentError):
        instantiate_symbolic("J1", {"a": "S(k=2)", "b": "I"})
    with pytest.raises(AssignmentError):
        resolve_operand("G(b=x)")
    with pytest.raises(AssignmentError):
        resolve_operand("I^n")


def _spec(name):
    ps = FAMILIES[name][1]
    return name + ("(" + ",".join(f"{p}={SAMPLE[p]}" for p in ps) + ")" if ps else "")


SYMBOLIC = [n for n in FAMILIES if family(n, {p: SAMPLE[p] for p in FAMILIES[n][1]}).symbolic_ok]


@pytest.mark.parametrize("name", SYMBOLIC)
def test_j1_k1_derivations_hold_for_every_family(name):
    fam = family(name, {p: SAMPLE[p] for p in FAMILIES[name][1]})
    lit = "I3" if fam.base.dim == 3 else "SWAP"
    grid = {"n": (1, 12), "m": (1, 12), "l": (1, 12)}
    for t, assignment in (("J1", {"a": _spec(name), "b": lit}),
                          ("K1", {"a": _spec(name), "b": _spec(name) + "^m", "c": lit})):
        rep = derive_report(t, assignment, grid=grid)
        assert all(e["report"]["failed_points"] == 0 for e in rep["statements"]), (name, t)
        assert rep["verified"]


@pytest.mark.parametrize("tid", sorted(TEMPLATES))
def test_symbolic_entries_match_numeric_matrices(tid):
    t = TEMPLATES[tid]
    assignment = {"a": "F1", "b": "T2", "c": "L"}
    # literal-safe: b and c always carry exponent 1 in the templates, a is a family
    stmts = instantiate_symbolic(t, {s: assignment[s] for s in t.slots()})
    mats = {"a": family("F1").base, "b": family("T2").base, "c": family("L").base}
    for ex in exponent_grid(t, (1, 2, 3)):
        v = template_check_numeric(t, mats["a"], mats.get("b"), mats.get("c"), ex)
        env = dict(ex)
        for s, ((i, j), val) in zip(stmts, v.lhs.entries()):
            if set(s.params) <= set(env):
                assert eval_side(s.lhs, {p: env[p] for p in s.params}) == val
