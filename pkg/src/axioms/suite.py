"""
Audit suite: runs requested axioms in canonical order and replays
witnesses stored in reports.
"""

from typing import Callable, Dict, Iterable, List
import logging

from src.config import AXIOM_IDS, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE, CONSTANT_DEVIATION_TOL
from src.reports.models import AxiomReport
from src.axioms import pure, mixed
from src.axioms.demos import replay_trace_asymmetry
from src.errors import InsufficientSamplesError, MeasureError
from src.measures.registry import EntanglementMeasure

logger = logging.getLogger(__name__)

Audit = Callable[[EntanglementMeasure, int, int, float], AxiomReport]

AUDITS: Dict[str, Audit] = {
    "P1": pure.audit_P1_continuity,
    "P2": pure.audit_P2,
    "P3": pure.audit_P3,
    "P4": pure.audit_P4,
    "M1": mixed.audit_M1,
    "M2": mixed.audit_M2,
    "M3": mixed.audit_M3,
    "M4": mixed.audit_M4,
    "M5": mixed.audit_M5,
    "L4": pure.check_separable_pure,
    "L7": mixed.check_separable_mixed,
}

REPLAYS = {
    "P1": pure.replay_P1,
    "P2": pure.replay_P2,
    "P3": pure.replay_P3,
    "P4": pure.replay_P4,
    "M1": mixed.replay_M1,
    "M2": mixed.replay_M2,
    "M3": mixed.replay_M3,
    "M4": mixed.replay_M4,
    "M5": mixed.replay_M5,
    "L4": pure.replay_L4,
    "L7": mixed.replay_L7,
    "PROP6": pure.replay_PROP6,
}


def check_separable_zero(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                         tol: float = DEFAULT_TOLERANCE) -> List[AxiomReport]:
    """
    E must vanish on separable states.

    Returns:
        [L4 report on product states, L7 report on separable mixtures];
        L7 is "not applicable" for pure-only measures
    """
    return [
        pure.check_separable_pure(m, samples, seed, tol),
        mixed.check_separable_mixed(m, samples, seed, tol),
    ]


def _constant_audit(m: EntanglementMeasure, samples: int, seed: int) -> AxiomReport:
    try:
        return pure.constant_report(pure.estimate_constant(m, samples, seed))
    except InsufficientSamplesError as e:
        logger.warning(f"{m.name} PROP6: {e}")
        return AxiomReport.not_applicable("PROP6", CONSTANT_DEVIATION_TOL, str(e), seed=seed, measure=m.name)


def canonical_order(axioms: Iterable[str]) -> List[str]:
    """Deduplicate and sort axiom ids; unknown ids raise ValueError."""
    requested = set(axioms)
    unknown = sorted(requested - set(AXIOM_IDS))
    if unknown:
        raise ValueError(f"axioms: unknown axiom id(s) {', '.join(unknown)}")
    return [axiom for axiom in AXIOM_IDS if axiom in requested]


def run_audits(m: EntanglementMeasure, axioms: Iterable[str] = AXIOM_IDS, samples: int = DEFAULT_SAMPLES,
               seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOLERANCE) -> List[AxiomReport]:
    """
    Run the requested audits on one measure.

    Args:
        m: measure under audit
        axioms: ids from AXIOM_IDS, in any order
        samples: random samples per audit (probes come on top)
        seed: root seed
        tol: tolerance for every audit except PROP6, which uses its own deviation bound

    Returns:
        One report per distinct requested axiom, in canonical order
    """
    reports = []
    for axiom in canonical_order(axioms):
        if axiom == "PROP6":
            reports.append(_constant_audit(m, samples, seed))
        else:
            reports.append(AUDITS[axiom](m, samples, seed, tol))
    failed = sum(1 for r in reports if not r.passed)
    logger.info(f"{m.name}: {len(reports) - failed}/{len(reports)} audits passed")
    return reports


def replay_witness(m: EntanglementMeasure, report: AxiomReport) -> float:
    """
    Recompute a report's violation from its witness alone.

    Raises:
        MeasureError: the report has no replayable witness
    """
    if report.axiom == "TRACE-SYMMETRY":
        return replay_trace_asymmetry(report.witness)
    if not report.applicable or not report.witness:
        raise MeasureError(f"{report.axiom} report carries no witness to replay")
    if report.axiom not in REPLAYS:
        raise MeasureError(f"no replay for axiom '{report.axiom}'")
    return REPLAYS[report.axiom](m, report.witness)
