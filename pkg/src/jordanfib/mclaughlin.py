"""Closed-form powers of arbitrary 2x2 matrices from their trace and determinant.

Only the finite binomial-sum forms are evaluated, never the eigenvalue
quotients, so a repeated eigenvalue (``T^2 - 4D = 0``) needs no special case.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .algebra import DimensionError, Matrix, mat_det, mat_pow, mat_trace, normalize_number


def _norm(v):
    return normalize_number(v) if isinstance(v, Fraction) else v


def _check_n(n, lo):
    if not isinstance(n, int) or n < lo:
        raise ValueError(f"n must be an integer >= {lo}, got {n!r}")


def _check_2x2(a):
    if a.dim != 2:
        raise DimensionError(f"expected a 2x2 matrix, got {a.dim}x{a.dim}")


def z_seq(T, D, n):
    """``z_n = sum_m C(n, 2m+1) T^(n-2m-1) (T^2-4D)^m / 2^(n-1)``; z_0 = 0, z_1 = 1."""
    _check_n(n, 0)
    disc = T * T - 4 * D
    total = 0
    for m in range((n - 1) // 2 + 1 if n else 0):
        total = total + comb(n, 2 * m + 1) * T ** (n - 2 * m - 1) * disc ** m
    return _norm(total * Fraction(2) ** (1 - n))


def y_seq(T, D, n):
    """``y_n = sum_i C(n-i, i) T^(n-2i) (-D)^i``; y_0 = 1."""
    _check_n(n, 0)
    total = 0
    for i in range(n // 2 + 1):
        total = total + comb(n - i, i) * T ** (n - 2 * i) * (-D) ** i
    return _norm(total)


def zbar_seq(T, D, n):
    """``sum_i C(n, 2i) T^(n-2i) (T^2-4D)^i / 2^(n-1)``, the power sum of the eigenvalues."""
    _check_n(n, 0)
    if T == 0:
        raise ZeroDivisionError("zbar_seq is undefined for trace 0")
    disc = T * T - 4 * D
    total = 0
    for i in range(n // 2 + 1):
        total = total + comb(n, 2 * i) * T ** (n - 2 * i) * disc ** i
    return _norm(total * Fraction(2) ** (1 - n))


def trace_det(a):
    _check_2x2(a)
    return mat_trace(a), mat_det(a)


def pow_via_z(a, n):
    """``A^n = z_n A - z_(n-1) D I``."""
    _check_n(n, 1)
    T, D = trace_det(a)
    return a * z_seq(T, D, n) - Matrix.identity(2) * (z_seq(T, D, n - 1) * D)


def pow_via_y(a, n):
    """``A^n = [[y_n - d y_(n-1), b y_(n-1)], [c y_(n-1), y_n - a y_(n-1)]]``."""
    _check_n(n, 1)
    T, D = trace_det(a)
    yn, yp = y_seq(T, D, n), y_seq(T, D, n - 1)
    (p, q), (r, s) = a.tolist()
    return Matrix([[yn - s * yp, q * yp], [r * yp, yn - p * yp]])


F1 = Matrix([[1, 1], [1, 0]])
B_LUCAS = F1 @ F1 + Matrix.identity(2)


def lucas_via_zbar(n):
    """L_n read off ``F1^(n-1) B`` after asserting it equals ``Zbar_n F1 - Zbar_(n-1) D I``."""
    _check_n(n, 1)
    T, D = trace_det(F1)
    lhs = mat_pow(F1, n - 1) @ B_LUCAS
    rhs = F1 * zbar_seq(T, D, n) - Matrix.identity(2) * (zbar_seq(T, D, n - 1) * D)
    if lhs != rhs:
        raise AssertionError(f"F1^{n - 1} B differs from the Zbar form at n={n}")
    return lhs[0, 1]
