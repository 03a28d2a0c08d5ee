"""
entangle-audit command line.

    entangle-audit compute  --measure svn --state bell.json [--base bit] [--out value.json]
    entangle-audit compute  --measure svn --report audit.json
    entangle-audit audit    --measure svn --axioms P2,P3,P4 [--samples N] [--seed S] [--tol T] [--out audit.json]
    entangle-audit demo     p4-violation [--out demo.json]
    entangle-audit gen      --d1 2 --d2 2 [--kind pure|separable] [--seed S] --out state.json
    entangle-audit khinchin --functional renyi2 [--samples N] [--seed S] [--tol T] [--out kf.json]

Exit status: 0 when every requested check passed, 1 when some audit failed
(reports are still written), 2 on invalid input or configuration.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import argparse
import json
import logging
import sys

import pandas as pd
from pydantic import ValidationError

from src import __version__
from src.config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE, DEMO_KINDS, DISPLAY_DIGITS
from src.axioms.demos import demo
from src.reports.models import AxiomReport
from src.axioms.suite import run_audits, replay_witness
from src.cli.config import RunConfig, registry
from src.entropy.khinchin import FUNCTIONALS, audit_khinchin, replay_khinchin
from src.entropy.shannon import EntropyUnit, to_unit
from src.errors import MeasureError
from src.measures.registry import evaluate_pure, evaluate_mixed
from src.schmidt.decomposition import schmidt_coefficients
from src.states.builders import build_separable
from src.states.ensembles import random_pure_state, random_separable_decomposition
from src.states.io import load_state, write_state
from src.states.models import StateVector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _fmt(value: float) -> str:
    return f"{value:.{DISPLAY_DIGITS}g}"


def _write_json(path: Path, document: Dict[str, Any]):
    path.write_text(json.dumps(document, indent=2) + "\n")
    logger.info(f"Wrote {path}")


def report_document(reports: List[AxiomReport], measure: Optional[str], config: RunConfig,
                    sampled: bool = True) -> Dict[str, Any]:
    """Report file contents; identical inputs give identical documents.

    Unsampled runs (demos) record one case and no seed.
    """
    passed = sum(1 for r in reports if r.passed)
    return {
        "measure": measure,
        "samples": config.samples if sampled else 1,
        "seed": config.seed if sampled else None,
        "tolerance": config.tolerance,
        "reports": [r.model_dump() for r in reports],
        "summary": {"total": len(reports), "passed": passed, "failed": len(reports) - passed},
    }


def report_table(reports: List[AxiomReport]) -> pd.DataFrame:
    """One row per report for terminal display."""
    return pd.DataFrame([
        {
            "axiom": r.axiom,
            "status": ("n/a" if not r.applicable else "pass" if r.passed else "FAIL"),
            "samples": r.samples,
            "worst_violation": r.worst_violation,
            "tolerance": r.tolerance,
        }
        for r in reports
    ])


def _print_reports(reports: List[AxiomReport]):
    table = report_table(reports)
    print(table.to_string(index=False, float_format=_fmt))
    for r in reports:
        if r.details and not r.passed:
            shown = ", ".join(f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in r.details.items())
            print(f"{r.axiom}: {shown}")


def _status(reports: List[AxiomReport]) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# --- commands ----------------------------------------------------------------

def _compute_state(config: RunConfig) -> int:
    m = registry().get(config.measure)
    state = load_state(config.input_path)
    document: Dict[str, Any] = {"measure": m.name, "base": config.base.value}
    if isinstance(state, StateVector):
        value = evaluate_pure(m, state)
        coefficients = schmidt_coefficients(state)
        document["schmidt_coefficients"] = coefficients.tolist()
    else:
        value = evaluate_mixed(m, state)
        coefficients = None
    shown = to_unit(value, config.base)
    document.update({"value": shown, "value_nat": value})

    print(_fmt(shown))
    if coefficients is not None:
        print("schmidt coefficients: " + " ".join(_fmt(p) for p in coefficients))
    if config.output_path:
        _write_json(config.output_path, document)
    return EXIT_OK


def _compute_report(config: RunConfig) -> int:
    """Re-evaluate the witnesses stored in a report file."""
    try:
        document = json.loads(config.report_path.read_text())
        reports = [AxiomReport.model_validate(r) for r in document["reports"]]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise ValueError(f"{config.report_path}: not a report file ({e})")

    rows = []
    for report in reports:
        if not report.applicable or not report.witness:
            continue
        if report.axiom.startswith("KF-"):
            functional = FUNCTIONALS.get(report.measure)
            if functional is None:
                raise MeasureError(f"measure: unknown functional '{report.measure}'")
            replayed = replay_khinchin(functional, report)
        else:
            replayed = replay_witness(registry().get(report.measure or config.measure), report)
        rows.append({"axiom": report.axiom, "reported": report.worst_violation, "replayed": replayed})
    print(pd.DataFrame(rows, columns=["axiom", "reported", "replayed"]).to_string(index=False, float_format=_fmt))
    return EXIT_OK


def _audit(config: RunConfig) -> int:
    m = registry().get(config.measure)
    reports = run_audits(m, config.axioms, config.samples, config.seed, config.tolerance)
    if config.output_path:
        _write_json(config.output_path, report_document(reports, m.name, config))
    _print_reports(reports)
    return _status(reports)


def _demo(config: RunConfig) -> int:
    report = demo(config.demo_kind)
    if config.output_path:
        _write_json(config.output_path, report_document([report], report.measure, config, sampled=False))
    _print_reports([report])
    return _status([report])


def _gen(config: RunConfig) -> int:
    if config.kind == "pure":
        state = random_pure_state(config.d1, config.d2, config.seed)
    else:
        state = build_separable(random_separable_decomposition(config.d1, config.d2, config.seed))
    write_state(config.output_path, state)
    print(f"wrote {config.kind} state ({config.d1}x{config.d2}) to {config.output_path}")
    return EXIT_OK


def _khinchin(config: RunConfig) -> int:
    functional = FUNCTIONALS[config.functional]
    reports = audit_khinchin(functional, config.samples, config.seed, config.tolerance)
    if config.output_path:
        _write_json(config.output_path, report_document(reports, functional.name, config))
    _print_reports(reports)
    return _status(reports)


COMMANDS = {
    "compute": lambda config: _compute_report(config) if config.report_path else _compute_state(config),
    "audit": _audit,
    "demo": _demo,
    "gen": _gen,
    "khinchin": _khinchin,
}


def run(config: RunConfig) -> int:
    """Execute a validated run and return its exit status."""
    logger.info(f"Running {config.command}")
    return COMMANDS[config.command](config)


# --- argument parsing --------------------------------------------------------

def _axiom_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entangle-audit",
        description="Compute entanglement measures and audit them against their axioms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="log progress (INFO)")
    parser.add_argument("--debug", action="store_true", help="log everything (DEBUG)")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="evaluate a measure on a state file")
    compute.add_argument("--measure", default="svn")
    source = compute.add_mutually_exclusive_group(required=True)
    source.add_argument("--state", dest="input_path", type=Path, help="state JSON file")
    source.add_argument("--report", dest="report_path", type=Path, help="re-evaluate the witnesses of a report file")
    compute.add_argument("--base", choices=[u.value for u in EntropyUnit], default="nat")
    compute.add_argument("--out", dest="output_path", type=Path)

    audit = sub.add_parser("audit", help="audit a measure against a list of axioms")
    audit.add_argument("--measure", default="svn")
    audit.add_argument("--axioms", type=_axiom_list, required=True, help="comma separated, e.g. P2,P3,P4")
    _add_sampling(audit)

    demo_parser = sub.add_parser("demo", help="run a named demonstration")
    demo_parser.add_argument("demo_kind", choices=DEMO_KINDS)
    demo_parser.add_argument("--out", dest="output_path", type=Path)

    gen = sub.add_parser("gen", help="write a random state file")
    gen.add_argument("--d1", type=int, required=True)
    gen.add_argument("--d2", type=int, required=True)
    gen.add_argument("--kind", choices=["pure", "separable"], default="pure")
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--out", dest="output_path", type=Path, required=True)

    khinchin = sub.add_parser("khinchin", help="audit a simplex functional against the Khinchin-Faddeev axioms")
    khinchin.add_argument("--functional", choices=sorted(FUNCTIONALS), default="shannon")
    _add_sampling(khinchin)
    return parser


def _add_sampling(parser: argparse.ArgumentParser):
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--tol", dest="tolerance", type=float, default=DEFAULT_TOLERANCE)
    parser.add_argument("--out", dest="output_path", type=Path)


def _diagnostic(error: Exception) -> str:
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "config"
        return f"{location}: {first['msg']}"
    return str(error)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    options = {k: v for k, v in vars(args).items() if k not in ("verbose", "debug") and v is not None}
    try:
        return run(RunConfig(**options))
    except (ValueError, OSError) as e:
        print(f"error: {_diagnostic(e)}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
