"""Proposition suites: shipped ``.idn`` transcriptions, a runner and a discrepancy ledger.

Statements are transcribed verbatim; a suspected typo is never fixed in the
statement itself.  The manifest may carry a correction proposal, which is
verified alongside and reported next to the original verdict.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..idn.ast import SeqCall, walk
from ..idn.convert import ast_to_index
from ..idn.evaluate import format_grid, parse_grid, verify
from ..idn.parser import parse_file
from ..idn.printer import print_bindspec, print_equation


class UnknownSuite(KeyError):
    pass


class ManifestError(ValueError):
    pass


def _data_dir():
    return resources.files(__package__) / "data"


@lru_cache(maxsize=1)
def load_manifest():
    m = json.loads((_data_dir() / "manifest.json").read_text(encoding="utf-8"))
    check_coverage(m)
    return m


def suite_names(include_extra=True):
    m = load_manifest()
    names = list(m["suites"])
    if include_extra:
        names += list(m.get("extra_suites", {}))
    return names


def _suite_entry(name):
    m = load_manifest()
    if name in m["suites"]:
        return m["suites"][name], False
    if name in m.get("extra_suites", {}):
        return m["extra_suites"][name], True
    raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(suite_names())}")


def suite_text(name):
    entry, _ = _suite_entry(name)
    return (_data_dir() / entry["file"]).read_text(encoding="utf-8")


def load_suite(name):
    """Parsed statements of a shipped suite, in file order."""
    return parse_file(suite_text(name))


def check_coverage(manifest=None):
    """Every proposition part appears exactly once; file labels match the manifest."""
    m = manifest or load_manifest()
    total = 0
    for name, entry in m["suites"].items():
        text = (_data_dir() / entry["file"]).read_text(encoding="utf-8")
        labels = [s.label for s in parse_file(text)]
        if labels != entry["labels"]:
            raise ManifestError(f"suite {name}: file labels {labels} differ from manifest {entry['labels']}")
        if len(set(labels)) != len(labels):
            raise ManifestError(f"suite {name}: duplicate part labels")
        total += len(labels)
    if total != m["total_parts"]:
        raise ManifestError(f"manifest covers {total} parts, expected {m['total_parts']}")
    return total


# grids -------------------------------------------------------------------------

def _nonlinear_params(stmt):
    out = set()
    for side in (stmt.lhs, stmt.rhs):
        for node in walk(side):
            if isinstance(node, SeqCall):
                for a in node.args:
                    ip = ast_to_index(a)
                    if ip.degree() > 1:
                        out.update(ip.variables())
    return out


def default_grid(stmt):
    """Ranges used when neither the manifest nor the caller gives one.

    One or two parameters: [1, 30].  Three: [1, 12].  Any parameter appearing
    in a nonlinear index (n^2, m*n): [1, 6].
    """
    params = stmt.used_params()
    hi = 12 if len(params) >= 3 else 30
    nonlinear = _nonlinear_params(stmt)
    return {p: (1, 6) if p in nonlinear else (1, hi) for p in params}


def _as_grid(g):
    if g is None:
        return {}
    if isinstance(g, str):
        return parse_grid(g)
    return {k: tuple(v) for k, v in g.items()}


def part_grid(stmt, entry, part_cfg, override=None):
    grid = default_grid(stmt)
    for layer in (entry.get("grid"), part_cfg.get("grid"), override):
        for k, v in _as_grid(layer).items():
            if k in grid:
                grid[k] = v
    return grid


# reports -----------------------------------------------------------------------

@dataclass
class PartResult:
    suite: str
    label: str
    statement: str
    anchor: bool
    report: dict
    note: str | None = None
    correction: dict | None = None

    @property
    def status(self):
        return self.report["status"]

    def to_dict(self):
        d = {
            "label": self.label,
            "statement": self.statement,
            "anchor": self.anchor,
            "status": self.status,
            "grid": self.report["grid"],
            "points": self.report["points"],
            "failed_points": self.report["failed_points"],
            "skipped_points": self.report["skipped_points"],
            "counterexample": self.report["counterexample"],
        }
        if self.note:
            d["note"] = self.note
        if self.correction:
            d["correction"] = self.correction
        return d


@dataclass
class SuiteReport:
    name: str
    source: str
    parts: list = field(default_factory=list)

    def counts(self):
        c = {"VERIFIED": 0, "FAILED": 0, "INCOMPLETE": 0}
        for p in self.parts:
            c[p.status] += 1
        return c

    @property
    def anchors_ok(self):
        return all(p.status == "VERIFIED" for p in self.parts if p.anchor)

    def to_dict(self):
        c = self.counts()
        return {
            "suite": self.name,
            "source": self.source,
            "parts": [p.to_dict() for p in self.parts],
            "summary": {
                "total": len(self.parts),
                "verified": c["VERIFIED"],
                "failed": c["FAILED"],
                "incomplete": c["INCOMPLETE"],
                "anchors_ok": self.anchors_ok,
            },
        }

    def to_text(self):
        lines = [f"suite {self.name}: {self.source}"]
        for p in self.parts:
            tag = "anchor" if p.anchor else "report-only"
            line = f"  part {p.label:>4} {p.status:<10} [{tag}] grid {format_grid(p.report['grid'])}"
            if p.report["counterexample"]:
                ce = p.report["counterexample"]
                pt = ",".join(f"{k}={v}" for k, v in ce["point"].items())
                line += f"  counterexample {pt}: lhs={ce['lhs']} rhs={ce['rhs']}"
            lines.append(line)
            if p.correction:
                lines.append(f"         proposed correction {p.correction['status']}")
        c = self.counts()
        lines.append(f"  {c['VERIFIED']} VERIFIED, {c['FAILED']} FAILED, {c['INCOMPLETE']} INCOMPLETE; "
                     f"anchors {'ok' if self.anchors_ok else 'FAILED'}")
        return "\n".join(lines)


def _header(stmt):
    lines = []
    if stmt.params:
        lines.append("params " + " ".join(stmt.params) + ";")
    lines += [f"bind {n} = {print_bindspec(s)};" for n, s in stmt.bindings]
    return "\n".join(lines) + "\n"


def _run_part(name, entry, stmt, grid_override, index=0):
    anchors = entry.get("anchors", [])
    cfg = entry.get("parts", {}).get(stmt.label, {})
    grid = part_grid(stmt, entry, cfg, grid_override)
    rep = verify(stmt, grid).to_dict()
    correction = None
    if "correction" in cfg:
        fixed = parse_file(_header(stmt) + cfg["correction"])[0]
        crep = verify(fixed, grid)
        correction = {"statement": print_equation(fixed), "status": crep.status,
                      "counterexample": crep.counterexample}
    label = stmt.label if stmt.label is not None else f"#{index + 1}"
    rep["label"] = label
    return PartResult(name, label, print_equation(stmt),
                      anchors == "all" or stmt.label in anchors, rep, cfg.get("note"), correction)


def run_statements(name, stmts, entry=None, grid_override=None, jobs=1):
    """Run parsed statements as a suite; ``entry`` supplies anchors, grids and corrections.

    Without an entry every statement is an anchor.  Unlabelled statements are
    labelled ``#1``, ``#2``, ... by position.
    """
    entry = entry or {"source": name, "anchors": "all", "parts": {}}
    override = _as_grid(grid_override)

    def one(item):
        i, s = item
        return _run_part(name, entry, s, override, i)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, enumerate(stmts)))
    else:
        parts = [one(item) for item in enumerate(stmts)]
    return SuiteReport(name, entry.get("source", name), parts)


def run_suite(name, grid_override=None, jobs=1):
    """Run a shipped suite by name, or an ``.idn`` file when ``name`` is a path."""
    p = Path(str(name))
    if p.suffix == ".idn" and p.exists():
        return run_statements(p.stem, parse_file(p.read_text(encoding="utf-8")),
                              grid_override=grid_override, jobs=jobs)
    entry, _ = _suite_entry(name)
    return run_statements(name, load_suite(name), entry, grid_override, jobs)


def run_all(grid_override=None, include_extra=True, jobs=1):
    return [run_suite(n, grid_override, jobs) for n in suite_names(include_extra)]


def discrepancy_ledger(reports):
    """Every part that did not verify, in suite then file order."""
    out = []
    for r in reports:
        for p in r.parts:
            if p.status == "VERIFIED":
                continue
            item = {
                "suite": r.name,
                "part": p.label,
                "source": f"{r.source}, part {p.label}",
                "status": p.status,
                "anchor": p.anchor,
                "statement": p.statement,
                "counterexample": p.report["counterexample"],
            }
            if p.correction:
                item["correction"] = p.correction
            if p.note:
                item["note"] = p.note
            out.append(item)
    return out


def ledger_text(ledger):
    if not ledger:
        return "discrepancy ledger: empty"
    lines = [f"discrepancy ledger: {len(ledger)} entr{'y' if len(ledger) == 1 else 'ies'}"]
    for e in ledger:
        lines.append(f"- {e['suite']} part {e['part']} {e['status']}{' (anchor)' if e['anchor'] else ''}")
        lines.append(f"    {e['statement']}")
        ce = e["counterexample"]
        if ce:
            pt = ",".join(f"{k}={v}" for k, v in ce["point"].items())
            lines.append(f"    counterexample {pt}: lhs={ce['lhs']} rhs={ce['rhs']}")
        if "correction" in e:
            lines.append(f"    proposed: {e['correction']['statement']}  [{e['correction']['status']}]")
    return "\n".join(lines)


def full_report(grid_override=None, include_extra=True, jobs=1):
    """All suites plus the ledger as one JSON-ready dict."""
    reports = run_all(grid_override, include_extra, jobs)
    return {
        "suites": [r.to_dict() for r in reports],
        "ledger": discrepancy_ledger(reports),
        "anchors_ok": all(r.anchors_ok for r in reports),
    }


__all__ = [
    "UnknownSuite", "ManifestError", "SuiteReport", "PartResult",
    "load_manifest", "load_suite", "suite_names", "check_coverage", "default_grid",
    "run_suite", "run_statements", "run_all", "discrepancy_ledger", "ledger_text", "full_report",
]
