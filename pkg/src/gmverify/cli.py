"""Command-line front end.

Exit status: 0 on success, 1 when a report carries violations or classifier
mismatches (or a self-test check fails), 2 on usage or precondition errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import report as rep
from .arith import is_prime, is_prime_deterministic
from .classifier import DEFAULT_R_MAX, DEFAULT_S_MAX, BsQuadruple, VerdictKind, classify_pair
from .errors import GmVerifyError, IncompleteFactorization
from .gmn import gmn_decompose, gmn_value
from .golden import run_golden
from .oracle import mersenne_scan, solve_bs_bounded, solve_gmn_bounded, verify_theorem

COMMANDS = ("classify", "solve-bs", "solve-gmn", "verify-theorem", "mersenne-scan", "self-test")
DEFAULTS = {"n_max": 100, "y_max": 40, "s_max": DEFAULT_S_MAX, "r_max": DEFAULT_R_MAX}

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    bounds: dict[str, int] = field(default_factory=dict)
    params: dict[str, int] = field(default_factory=dict)
    output_format: str = "text"
    output_path: Optional[str] = None
    seed: Optional[int] = None
    timing: bool = False
    workers: int = 1
    decompose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for k, v in self.bounds.items():
            if v < 1:
                raise UsageError(f"--{k.replace('_', '-')} must be positive")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", dest="output_path", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for probabilistic primality above 3.3e24")
    common.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output non-reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="gmverify",
        description="Check which p**n - p + 1 have the form c*x**2.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("classify", parents=[common], help="verdict for a pair (c, p)")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r-max", type=_positive, default=DEFAULTS["r_max"])
    p.add_argument("--s-max", type=_positive, default=DEFAULTS["s_max"])

    p = sub.add_parser("solve-bs", parents=[common], help="solve D1 x^2 + D2 = lambda^2 p^y")
    p.add_argument("--lambda2", type=int, choices=(1, 2, 4), required=True)
    p.add_argument("--d1", type=_positive, required=True)
    p.add_argument("--d2", type=_positive, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--y-max", type=_positive, default=DEFAULTS["y_max"])

    p = sub.add_parser("solve-gmn", parents=[common], help="solve c x^2 + p - 1 = p^n")
    p.add_argument("--c", type=_positive, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n-max", type=_positive, default=DEFAULTS["n_max"])
    p.add_argument("--decompose", action="store_true",
                   help="also report the squarefree decomposition of each p^n - p + 1")

    p = sub.add_parser("verify-theorem", parents=[common], help="scan a (c, p, n) grid")
    p.add_argument("--c-max", type=_positive, required=True)
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, default=DEFAULTS["n_max"])
    p.add_argument("--workers", type=_positive, help="worker processes (capped by GMN_THREADS)")

    p = sub.add_parser("mersenne-scan", parents=[common], help="scan 2^n - 1 = c x^2")
    p.add_argument("--c-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, default=DEFAULTS["n_max"])

    sub.add_parser("self-test", parents=[common], help="recompute the published values")
    return parser


def _workers(requested: Optional[int]) -> int:
    cap = os.environ.get("GMN_THREADS")
    if cap is not None:
        try:
            cap_n = int(cap)
        except ValueError:
            raise UsageError(f"GMN_THREADS={cap!r} is not an integer")
        if cap_n < 1:
            raise UsageError("GMN_THREADS must be positive")
        return min(requested or cap_n, cap_n)
    return requested or 1


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    bound_names = ("c_max", "p_max", "n_max", "y_max", "s_max", "r_max")
    bounds = {k: getattr(ns, k) for k in bound_names if getattr(ns, k, None) is not None}
    params = {k: getattr(ns, k) for k in ("c", "p", "lambda2", "d1", "d2") if getattr(ns, k, None) is not None}
    return RunConfig(
        command=ns.command,
        bounds=bounds,
        params=params,
        output_format=ns.output_format,
        output_path=ns.output_path,
        seed=ns.seed,
        timing=ns.timing,
        workers=_workers(getattr(ns, "workers", None)),
        decompose=getattr(ns, "decompose", False),
    )


def _check_prime(p: int, seed: Optional[int], warnings: list[str]) -> None:
    if not is_prime(p, seed=seed):
        raise UsageError(f"p={p} is not prime")
    if not is_prime_deterministic(p):
        warnings.append(f"primality of p={p} is probabilistic")


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(cfg: RunConfig, doc, csv_text: str, plain: str) -> str:
    if cfg.output_format == "json":
        return rep.to_json(doc)
    return csv_text if cfg.output_format == "csv" else plain


def _classify(cfg: RunConfig) -> int:
    warnings: list[str] = []
    c, p = cfg.params["c"], cfg.params["p"]
    if c < 1:
        raise UsageError(f"c must be >= 1, got {c}")
    _check_prime(p, cfg.seed, warnings)
    v = classify_pair(c, p, r_max=cfg.bounds["r_max"], s_max=cfg.bounds["s_max"])
    doc = rep.document("classify", cfg.bounds, [rep.verdict_to_dict(v)], warnings=warnings)
    _emit(cfg, _render(cfg, doc, rep.verdict_csv(v), rep.verdict_text(v)))
    return EXIT_OK


def _solve_bs(cfg: RunConfig) -> int:
    warnings: list[str] = []
    _check_prime(cfg.params["p"], cfg.seed, warnings)
    try:
        q = BsQuadruple(cfg.params["lambda2"], cfg.params["d1"], cfg.params["d2"], cfg.params["p"])
    except ValueError as exc:
        raise UsageError(str(exc))
    sols = solve_bs_bounded(q, cfg.bounds["y_max"])
    doc = rep.document("solve-bs", cfg.bounds, [rep.solution_set_to_dict(sols)], warnings=warnings)
    _emit(cfg, _render(cfg, doc, rep.solutions_csv(sols), rep.solutions_text(sols)))
    return EXIT_OK


def _solve_gmn(cfg: RunConfig) -> int:
    warnings: list[str] = []
    c, p, n_max = cfg.params["c"], cfg.params["p"], cfg.bounds["n_max"]
    _check_prime(p, cfg.seed, warnings)
    sols = solve_gmn_bounded(c, p, n_max)
    result = rep.solution_set_to_dict(sols)
    if cfg.decompose:
        records = []
        for n in range(1, n_max + 1):
            gm = gmn_value(p, n)
            record = {"n": str(n), "value": str(gm.value), "c": None, "x": None, "warning": None}
            try:
                d = gmn_decompose(gm)
                record["c"], record["x"] = str(d.squarefree_part), str(d.root)
            except IncompleteFactorization as exc:
                record["warning"] = str(exc)
                warnings.append(f"n={n}: factorization incomplete")
            records.append(record)
        result["decompositions"] = records
    doc = rep.document("solve-gmn", cfg.bounds, [result], warnings=warnings)
    _emit(cfg, _render(cfg, doc, rep.solutions_csv(sols), rep.solutions_text(sols)))
    return EXIT_OK


def _scan(cfg: RunConfig) -> int:
    b = cfg.bounds
    if cfg.command == "verify-theorem":
        report = verify_theorem(b["c_max"], b["p_max"], b["n_max"], workers=cfg.workers)
    else:
        report = mersenne_scan(b["c_max"], b["n_max"])
    doc = rep.scan_document(report, timing=cfg.timing)
    _emit(cfg, _render(cfg, doc, rep.scan_csv(report), rep.scan_text(report)))
    return EXIT_FAILED if report.failed else EXIT_OK


def _self_test(cfg: RunConfig) -> int:
    results = run_golden()
    failed = [name for name, ok, _ in results if not ok]
    doc = rep.document(
        "self-test", {},
        [{"name": name, "passed": ok, "error": err or None} for name, ok, err in results],
        warnings=[f"failed: {name}" for name in failed],
    )
    # failed checks go in "violations" so the exit-status contract stays uniform
    doc["violations"] = failed
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}{'  ' + err if err else ''}" for name, ok, err in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} golden checks passed")
    csv_text = rep.write_csv(("check", "passed"), [(n, ok) for n, ok, _ in results])
    _emit(cfg, _render(cfg, doc, csv_text, "\n".join(lines) + "\n"))
    return EXIT_FAILED if failed else EXIT_OK


HANDLERS = {
    "classify": _classify,
    "solve-bs": _solve_bs,
    "solve-gmn": _solve_gmn,
    "verify-theorem": _scan,
    "mersenne-scan": _scan,
    "self-test": _self_test,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        return HANDLERS[cfg.command](cfg)
    except (UsageError, GmVerifyError, ValueError) as exc:
        if getattr(ns, "command", None) == "classify" and ns.output_format == "json":
            doc = rep.document("classify", {}, [{"kind": VerdictKind.INVALID_INPUT.value,
                                                 "error": str(exc)}])
            sys.stdout.write(rep.to_json(doc))
        print(f"gmverify: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
