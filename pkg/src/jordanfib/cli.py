"""Command line: ``jordanfib {power,seq,verify,derive,suite,oeis}``.

Exit codes: 0 when everything checked out, 1 when a closed form, identity or
b-file did not (report-only suite parts excepted), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .algebra import mat_pow
from .catalog import MatrixFamily, NegativeIndexUnsupported, UnknownName, lookup_sequence, oeis_crosscheck
from .idn.evaluate import parse_grid
from .idn.parser import IdnSyntaxError, parse_file
from .jordan import AssignmentError, derive_report, get_template, resolve_operand
from .suites import UnknownSuite, discrepancy_ledger, full_report, run_statements, run_suite

OK, FAILED, USAGE = 0, 1, 2

# keys whose string values are exact numbers or polynomials, subject to --digits
VALUE_KEYS = {"power", "closed_form", "value", "lhs", "rhs", "bfile", "computed", "expected", "predicted"}


class UsageError(Exception):
    pass


# rendering ---------------------------------------------------------------------

def clip_digits(text, digits):
    """Shorten digit runs longer than ``digits``, marking each cut explicitly."""
    if not digits:
        return text
    return re.sub(r"\d{%d,}" % (digits + 1),
                  lambda m: f"{m.group()[:digits]}...[{len(m.group())} digits]", text)


def _clip_tree(obj, digits, active=False):
    if isinstance(obj, dict):
        return {k: _clip_tree(v, digits, active or k in VALUE_KEYS) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_clip_tree(v, digits, active) for v in obj]
    if active and isinstance(obj, str):
        return clip_digits(obj, digits)
    return obj


def _matrix_rows(m):
    return [[str(v) for v in r] for r in m.rows]


def _fmt_matrix(rows):
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def _fmt_point(pt):
    return ",".join(f"{k}={v}" for k, v in pt.items())


def _part_lines(p):
    tag = "anchor" if p["anchor"] else "report-only"
    grid = ",".join(f"{k}={lo}..{hi}" for k, (lo, hi) in p["grid"].items())
    line = f"  part {p['label']:>4} {p['status']:<10} [{tag}] grid {grid}"
    ce = p["counterexample"]
    if ce:
        line += f"  counterexample {_fmt_point(ce['point'])}: lhs={ce['lhs']} rhs={ce['rhs']}"
    out = [line]
    if p.get("correction"):
        out.append(f"         proposed correction {p['correction']['status']}: {p['correction']['statement']}")
    return out


def _suite_lines(s):
    lines = [f"suite {s['suite']}: {s['source']}"]
    for p in s["parts"]:
        lines += _part_lines(p)
    c = s["summary"]
    lines.append(f"  {c['verified']} VERIFIED, {c['failed']} FAILED, {c['incomplete']} INCOMPLETE; "
                 f"anchors {'ok' if c['anchors_ok'] else 'FAILED'}")
    return lines


def _ledger_lines(ledger):
    if not ledger:
        return ["discrepancy ledger: empty"]
    lines = [f"discrepancy ledger: {len(ledger)} entr{'y' if len(ledger) == 1 else 'ies'}"]
    for e in ledger:
        lines.append(f"- {e['suite']} part {e['part']} {e['status']}{' (anchor)' if e['anchor'] else ''}")
        lines.append(f"    {e['statement']}")
        ce = e["counterexample"]
        if ce:
            lines.append(f"    counterexample {_fmt_point(ce['point'])}: lhs={ce['lhs']} rhs={ce['rhs']}")
        if "correction" in e:
            lines.append(f"    proposed: {e['correction']['statement']}  [{e['correction']['status']}]")
    return lines


def render_text(command, result):
    r = result
    if command == "power":
        lines = [f"{r['family']}^{r['n']} = {_fmt_matrix(r['power'])}"]
        if r["closed_form"] is None:
            lines.append(f"closed form: not available ({r['note']})")
        else:
            lines.append(f"closed form ({r['form']}): {_fmt_matrix(r['closed_form'])}")
            lines.append(r["verdict"])
        return lines
    if command == "seq":
        head = r["sequence"] + (f", j={r['j']}" if r["j"] is not None else "")
        return [head] + [f"{v['n']} {v['value']}" for v in r["values"]]
    if command == "derive":
        lines = [f"template {r['template']}: {r['template_text']}",
                 "assignment: " + ", ".join(f"{k}={v}" for k, v in r["assignment"].items())]
        if r["substitution"]:
            lines.append("substitution: " + ", ".join(f"{k}={v}" for k, v in r["substitution"].items()))
        if r["bindings"]:
            lines.append("bindings: " + "; ".join(r["bindings"]))
        for e in r["statements"]:
            i, j = e["entry"]
            grid = ",".join(f"{k}={lo}..{hi}" for k, (lo, hi) in e["report"]["grid"].items())
            lines.append(f"  ({i},{j}) {e['verdict']:<10} {e['statement']}   [grid {grid or 'none'}]")
            ce = e["report"]["counterexample"]
            if ce:
                lines.append(f"         counterexample {_fmt_point(ce['point'])}: lhs={ce['lhs']} rhs={ce['rhs']}")
        lines.append("all entries VERIFIED" if r["verified"] else "some entries not VERIFIED")
        return lines
    if command in ("verify", "suite"):
        lines = []
        for s in r["suites"]:
            lines += _suite_lines(s)
        return lines + _ledger_lines(r["ledger"])
    if command == "oeis":
        line = f"{r['sequence']} vs b-file: {r['verdict']} ({r['checked']} indices checked)"
        mm = r["mismatch"]
        if mm:
            line += f"; line {mm['line']}, index {mm['index']}: b-file {mm['bfile']}, computed {mm['computed']}"
        return [line]
    raise ValueError(command)


# helpers -----------------------------------------------------------------------

def _kv_pairs(items, what):
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            k, eq, v = part.partition("=")
            if not eq or not k.strip() or not v.strip():
                raise UsageError(f"bad {what} {part!r}; expected name=value")
            out[k.strip()] = v.strip()
    return out


def _int_params(items):
    out = {}
    for k, v in _kv_pairs(items, "parameter").items():
        try:
            out[k] = int(v)
        except ValueError:
            raise UsageError(f"parameter {k} must be an integer, got {v!r}") from None
    return out


def _grid(text):
    if text is None:
        return None
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# subcommands -------------------------------------------------------------------

def cmd_power(args):
    fam = resolve_operand(args.family)
    if not isinstance(fam, MatrixFamily):
        raise UsageError(f"{args.family!r} is not a matrix family")
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    power = mat_pow(fam.base, args.n)
    result = {"family": args.family, "params": dict(fam.params), "n": args.n, "form": args.form,
              "power": _matrix_rows(power), "closed_form": None, "verdict": None, "note": None}
    lo = fam.printed_min_n if args.form == "printed" and fam.printed_min_n is not None else fam.min_n
    if fam.form is None:
        result["note"] = "family has no closed form"
    elif args.n < lo:
        result["note"] = f"closed form needs n >= {lo}"
    else:
        pred = fam.printed_power(args.n) if args.form == "printed" else fam.predicted_power(args.n)
        result["closed_form"] = _matrix_rows(pred)
        result["verdict"] = "MATCH" if pred == power else "MISMATCH"
    return result, FAILED if result["verdict"] == "MISMATCH" else OK


def cmd_seq(args):
    sdef = lookup_sequence(args.name, _int_params(args.param))
    if args.start > args.stop:
        raise UsageError("empty index range")
    if sdef.index_args == 2 and args.j is None:
        raise UsageError(f"{args.name} takes a second index; pass --j")
    if sdef.index_args == 1 and args.j is not None:
        raise UsageError(f"{args.name} takes one index only")
    values = []
    for i in range(args.start, args.stop + 1):
        v = sdef.value(i) if args.j is None else sdef.value(i, args.j)
        values.append({"n": i, "value": str(v)})
    return {"sequence": sdef.name, "j": args.j, "values": values}, OK


def _suite_result(reports):
    return {"suites": [r.to_dict() for r in reports], "ledger": discrepancy_ledger(reports),
            "anchors_ok": all(r.anchors_ok for r in reports)}


def cmd_verify(args):
    stmts = parse_file(_read(args.file))
    report = run_statements(Path(args.file).stem, stmts, grid_override=_grid(args.grid), jobs=args.jobs)
    result = _suite_result([report])
    bad = any(p.status != "VERIFIED" for p in report.parts)
    return result, FAILED if bad else OK


def cmd_derive(args):
    t = get_template(args.template)
    assignment = {slot: v for slot, v in (("a", args.a), ("b", args.b), ("c", args.c)) if v is not None}
    subst = _kv_pairs(args.subst, "substitution")
    result = derive_report(t, assignment, _grid(args.grid), subst or None)
    return result, OK if result["verified"] else FAILED


def cmd_suite(args):
    grid = _grid(args.grid)
    if args.name == "all":
        result = full_report(grid, jobs=args.jobs)
    else:
        result = _suite_result([run_suite(args.name, grid, args.jobs)])
    return result, OK if result["anchors_ok"] else FAILED


def cmd_oeis(args):
    sdef = lookup_sequence(args.name, _int_params(args.param))
    verdict = oeis_crosscheck(sdef, _read(args.bfile))
    return verdict.to_dict(), OK if verdict.match else FAILED


# entry point -------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="jordanfib", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--digits", type=int, default=None,
                        help="truncate numbers longer than this many digits (marked explicitly)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", parents=[common], help="power of a family's base matrix vs its closed form")
    p.add_argument("--family", required=True, help='family spec, e.g. F1, "G(b=3)", "T(k=2)"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--form", choices=("predicted", "printed"), default="predicted",
                   help="closed form to compare: the verified one or the as-printed variant")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("seq", parents=[common], help="sequence values over an index range")
    p.add_argument("--name", required=True, help="F, L, P, J, Fx, Lx, T3, S121, G, W, C, U, H or an alias")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="stop", type=int, default=20)
    p.add_argument("--j", type=int, default=None, help="second index for H")
    p.add_argument("--param", action="append", help="family parameter, e.g. b=2 or k=3")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", parents=[common], help="verify the identities of an .idn file")
    p.add_argument("--file", required=True)
    p.add_argument("--grid", help='e.g. "n=1..30,m=1..30"; unlisted parameters use default ranges')
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", parents=[common], help="derive entry identities from a Jordan template")
    p.add_argument("--template", required=True, help="J1..J9, K1, K2")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--subst", action="append", help='exponent substitution, e.g. "m=n+1"')
    p.add_argument("--grid")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("suite", parents=[common], help="run a shipped proposition suite, or all")
    p.add_argument("name")
    p.add_argument("--grid")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("oeis", parents=[common], help="compare a sequence with an OEIS b-file")
    p.add_argument("--name", required=True)
    p.add_argument("--bfile", required=True)
    p.add_argument("--param", action="append")
    p.set_defaults(func=cmd_oeis)
    return ap


def run(argv=None):
    """Parse ``argv``, run the command; returns ``(exit_code, output_text, output_path)``."""
    args = build_parser().parse_args(argv)
    if args.digits is not None and args.digits < 1:
        raise UsageError("--digits must be >= 1")
    result, code = args.func(args)
    result = _clip_tree(result, args.digits)
    if args.format == "json":
        text = json.dumps({"command": args.command, "exit_code": code, "result": result},
                          indent=2, ensure_ascii=False)
    else:
        text = "\n".join(render_text(args.command, result))
    return code, text + "\n", args.output


def main(argv=None):
    try:
        code, text, out = run(argv)
    except SystemExit as exc:
        # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else USAGE
    except (UsageError, AssignmentError, IdnSyntaxError, UnknownSuite, UnknownName,
            NegativeIndexUnsupported, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return USAGE
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
