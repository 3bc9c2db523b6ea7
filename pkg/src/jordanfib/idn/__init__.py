from .ast import IdentityStatement
from .evaluate import VerdictReport, eval_side, parse_grid, verify
from .parser import IdnSyntaxError, parse, parse_file
from .printer import print_canonical, print_equation, print_expr

__all__ = [
    "IdentityStatement",
    "IdnSyntaxError",
    "VerdictReport",
    "eval_side",
    "parse",
    "parse_file",
    "parse_grid",
    "print_canonical",
    "print_equation",
    "print_expr",
    "verify",
]
