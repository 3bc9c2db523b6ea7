from fractions import Fraction

from hypothesis import settings, strategies as st

from jordanfib.algebra import Matrix, Poly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# acceptance lines collected by test_acceptance.record(), echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


small_fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)
polys = st.lists(small_fracs, max_size=4).map(Poly)


def matrices(dim, elements=small_fracs):
    return st.lists(st.lists(elements, min_size=dim, max_size=dim), min_size=dim, max_size=dim).map(Matrix)


def int_matrices(dim=2, lo=-9, hi=9):
    return matrices(dim, st.integers(lo, hi))


def naive_fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def naive_rec(coeffs, initials, n):
    """n-th term of ``s(i) = sum c_j s(i-1-j)`` by plain iteration."""
    vals = list(initials)
    while len(vals) <= n:
        vals.append(sum(c * vals[-1 - j] for j, c in enumerate(coeffs)))
    return vals[n]


def naive_matpow(a, n):
    out = Matrix.identity(a.dim)
    for _ in range(n):
        out = Matrix([[sum(out[i, k] * a[k, j] for k in range(a.dim)) for j in range(a.dim)]
                      for i in range(a.dim)])
    return out


HALF = Fraction(1, 2)
