"""JSON / CSV / text rendering of results, and JSON parsing back into records.

Every integer goes out as a decimal string; values like p**n - p + 1 easily
exceed what JSON consumers can hold in a double.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Optional

from .classifier import BsQuadruple, Evidence, Verdict, VerdictKind
from .oracle import GmnEquation, PairResult, ScanReport, SolutionSet


def _s(v: int) -> str:
    return str(int(v))


def _pairs_out(pairs) -> list[list[str]]:
    return [[_s(a) for a in t] for t in pairs]


def _pairs_in(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(a) for a in t) for t in rows)


# --- records <-> dicts ------------------------------------------------------

def verdict_to_dict(v: Verdict) -> dict[str, Any]:
    return {
        "c": _s(v.c),
        "p": _s(v.p),
        "kind": v.kind.value,
        "details": [
            {
                "set": e.set_name,
                "lambda_sq": _s(e.lambda_sq),
                "triple": [_s(a) for a in e.triple],
                "witness": None if e.witness is None else [_s(a) for a in e.witness],
            }
            for e in v.details
        ],
        "predicted_solutions": _pairs_out(v.predicted_solutions),
        "notes": list(v.notes),
    }


def verdict_from_dict(d: dict[str, Any]) -> Verdict:
    details = tuple(
        Evidence(
            e["set"],
            int(e["lambda_sq"]),
            tuple(int(a) for a in e["triple"]),
            None if e["witness"] is None else tuple(int(a) for a in e["witness"]),
        )
        for e in d["details"]
    )
    return Verdict(
        int(d["c"]), int(d["p"]), VerdictKind(d["kind"]), details,
        _pairs_in(d["predicted_solutions"]), tuple(d["notes"]),
    )


def solution_set_to_dict(s: SolutionSet) -> dict[str, Any]:
    eq = s.equation
    if isinstance(eq, BsQuadruple):
        equation = {"type": "bs", "lambda_sq": _s(eq.lambda_sq), "d1": _s(eq.d1),
                    "d2": _s(eq.d2), "p": _s(eq.p)}
    else:
        equation = {"type": "gmn", "c": _s(eq.c), "p": _s(eq.p)}
    return {"equation": equation, "bound": _s(s.bound), "solutions": _pairs_out(s.solutions)}


def solution_set_from_dict(d: dict[str, Any]) -> SolutionSet:
    eq = d["equation"]
    if eq["type"] == "bs":
        equation = BsQuadruple(int(eq["lambda_sq"]), int(eq["d1"]), int(eq["d2"]), int(eq["p"]))
    else:
        equation = GmnEquation(int(eq["c"]), int(eq["p"]))
    return SolutionSet(equation, int(d["bound"]), _pairs_in(d["solutions"]))


def pair_to_dict(r: PairResult) -> dict[str, Any]:
    return {
        "c": _s(r.c),
        "p": _s(r.p),
        "verdict": verdict_to_dict(r.verdict),
        "solutions": _pairs_out(r.solutions),
        "nontrivial_count": _s(len(r.nontrivial)),
    }


def pair_from_dict(d: dict[str, Any]) -> PairResult:
    return PairResult(int(d["c"]), int(d["p"]), verdict_from_dict(d["verdict"]), _pairs_in(d["solutions"]))


# --- documents ----------------------------------------------------------------

def document(
    command: str,
    bounds: dict[str, int],
    results: list[dict[str, Any]],
    violations=(),
    mismatches=(),
    warnings=(),
    elapsed_ms: Optional[int] = None,
    **extra: Any,
) -> dict[str, Any]:
    doc = {
        "command": command,
        "bounds": {k: _s(v) for k, v in sorted(bounds.items())},
        "results": results,
        "violations": _pairs_out(violations),
        "mismatches": _pairs_out(mismatches),
        "warnings": list(warnings),
        "elapsed_ms": None if elapsed_ms is None else _s(elapsed_ms),
    }
    doc.update(extra)
    return doc


def scan_document(report: ScanReport, timing: bool = False) -> dict[str, Any]:
    extra = {"nontrivial_hits": _pairs_out(report.nontrivial_hits)}
    if report.command == "mersenne-scan":
        extra["small_n_hits"] = _pairs_out(report.small_n_hits)
        extra["residue_table"] = [
            [_s(r), _s(n), _s(count)] for (r, n), count in report.residue_table.items()
        ]
    bounds = {
        "c_min": report.c_range[0], "c_max": report.c_range[1],
        "p_min": report.p_range[0], "p_max": report.p_range[1],
        "n_max": report.n_max,
    }
    return document(
        report.command, bounds, [pair_to_dict(r) for r in report.per_pair],
        report.violations, report.classifier_mismatches, report.warnings,
        report.elapsed_ms if timing else None, **extra,
    )


def scan_from_document(doc: dict[str, Any]) -> ScanReport:
    b = {k: int(v) for k, v in doc["bounds"].items()}
    report = ScanReport(
        command=doc["command"],
        c_range=(b["c_min"], b["c_max"]),
        p_range=(b["p_min"], b["p_max"]),
        n_max=b["n_max"],
        per_pair=[pair_from_dict(r) for r in doc["results"]],
        violations=list(_pairs_in(doc["violations"])),
        nontrivial_hits=list(_pairs_in(doc["nontrivial_hits"])),
        classifier_mismatches=list(_pairs_in(doc["mismatches"])),
        warnings=list(doc["warnings"]),
        elapsed_ms=None if doc["elapsed_ms"] is None else int(doc["elapsed_ms"]),
    )
    if "small_n_hits" in doc:
        report.small_n_hits = list(_pairs_in(doc["small_n_hits"]))
        report.residue_table = {(int(r), int(n)): int(k) for r, n, k in doc["residue_table"]}
    return report


def to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- csv / text -------------------------------------------------------------

SCAN_COLUMNS = ("c", "p", "verdict", "solution_count", "solutions", "nontrivial_count")


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def scan_csv(report: ScanReport) -> str:
    rows = (
        (
            r.c, r.p, r.verdict.kind.value, len(r.solutions),
            ";".join(f"{x}^2*{r.c}@{n}" for x, n in r.solutions),
            len(r.nontrivial),
        )
        for r in report.per_pair
    )
    return write_csv(SCAN_COLUMNS, rows)


def verdict_csv(v: Verdict) -> str:
    predicted = ";".join(f"{x}@{n}" for x, n in v.predicted_solutions)
    members = ";".join(f"{e.set_name}/{e.lambda_sq}" for e in v.details if e.member)
    return write_csv(("c", "p", "verdict", "predicted", "memberships"),
                      [(v.c, v.p, v.kind.value, predicted, members)])


def solutions_csv(s: SolutionSet) -> str:
    return write_csv(("x", "exponent"), s.solutions)


def scan_text(report: ScanReport) -> str:
    lines = [
        f"{report.command}: c in [{report.c_range[0]}, {report.c_range[1]}], "
        f"p in [{report.p_range[0]}, {report.p_range[1]}], n <= {report.n_max}",
        f"pairs scanned: {len(report.per_pair)}",
        f"pairs with one nontrivial solution: {len(report.nontrivial_hits)}",
        f"violations: {report.violations or 'none'}",
        f"classifier mismatches: {report.classifier_mismatches or 'none'}",
    ]
    if report.command == "mersenne-scan":
        lines.append(f"hits with n <= 2 (c, x, n): {report.small_n_hits}")
        big = [(r.c, x, n) for r in report.per_pair for x, n in r.solutions if n >= 3]
        lines.append(f"hits with n >= 3 (c, x, n): {big}")
    for r in report.per_pair:
        if r.nontrivial or len(r.solutions) > 1:
            sols = ", ".join(f"{r.c}*{x}^2 @ n={n}" for x, n in r.solutions)
            lines.append(f"  (c={r.c}, p={r.p}) {r.verdict.kind.value}: {sols}")
    lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"


def verdict_text(v: Verdict) -> str:
    lines = [f"(c={v.c}, p={v.p}): {v.kind.value}"]
    if v.predicted_solutions:
        lines.append("  predicted (x, n): " + ", ".join(map(str, v.predicted_solutions)))
    for e in v.details:
        state = f"member, witness {e.witness}" if e.member else "not a member"
        lines.append(f"  {e.set_name} (lambda^2={e.lambda_sq}) {e.triple}: {state}")
    lines.extend(f"  note: {n}" for n in v.notes)
    return "\n".join(lines) + "\n"


def solutions_text(s: SolutionSet) -> str:
    head = f"{s.equation}, exponent <= {s.bound}: {len(s.solutions)} solution(s)"
    return "\n".join([head, *(f"  x={x}, exponent={e}" for x, e in s.solutions)]) + "\n"
