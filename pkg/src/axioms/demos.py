"""
Fixed demonstrations of known violations.

p4-violation     the greatest-cross-norm measure g ln g breaks the superposition
                 identity on two Bell pairs in orthogonal blocks
m5-violation     the reduced entropy of Tr_2(rho), used on mixed states, is not convex
trace-asymmetry  for mixed states, tracing out the first or the second factor
                 gives different entropies
"""

from typing import Any, Dict
import logging

from src.config import DEFAULT_TOLERANCE, DEMO_KINDS
from src.reports.models import AxiomReport
from src.axioms.mixed import mixing_excess, mixing_probes
from src.axioms.pure import superposition_gap, superposition_probes, superposition_witness
from src.axioms.sampling import logged
from src.entropy.von_neumann import svn_mixed
from src.measures.registry import GAMMA, SVN, evaluate_pure, schmidt_profile_value
from src.states.builders import basis_state, projector, mix
from src.states.io import state_to_json, state_from_json

logger = logging.getLogger(__name__)


def demo_p4_violation() -> AxiomReport:
    states, amplitudes, phases = superposition_probes()[0]
    gap, lhs, rhs = superposition_gap(
        lambda psi: evaluate_pure(GAMMA, psi), lambda p: schmidt_profile_value(GAMMA, p),
        states, amplitudes, phases,
    )
    return AxiomReport.from_violation(
        "P4", gap, DEFAULT_TOLERANCE, samples=1, measure=GAMMA.name,
        witness=superposition_witness(states, amplitudes, phases), details={"lhs": lhs, "rhs": rhs},
    )


def demo_m5_violation() -> AxiomReport:
    sigma, tau, eta = mixing_probes()[0]
    excess, mixture, bound = mixing_excess(SVN, sigma, tau, eta)
    return AxiomReport.from_violation(
        "M5", excess, DEFAULT_TOLERANCE, samples=1, measure=SVN.name,
        witness={"sigma": state_to_json(sigma), "tau": state_to_json(tau), "eta": eta},
        details={"mixture": mixture, "bound": bound},
    )


def trace_asymmetry_state():
    """(P_|00> + P_|01>) / 2 on a 2 x 2 system."""
    return mix(projector(basis_state(2, 2, 0, 0)), projector(basis_state(2, 2, 0, 1)), 0.5)


def replay_trace_asymmetry(witness: Dict[str, Any]) -> float:
    rho = state_from_json(witness["state"])
    return abs(svn_mixed(rho, "first") - svn_mixed(rho, "second"))


def demo_trace_asymmetry() -> AxiomReport:
    rho = trace_asymmetry_state()
    first = svn_mixed(rho, "first")
    second = svn_mixed(rho, "second")
    return AxiomReport.from_violation(
        "TRACE-SYMMETRY", abs(first - second), DEFAULT_TOLERANCE, samples=1,
        witness={"state": state_to_json(rho)}, details={"first": first, "second": second},
    )


DEMOS = {
    "p4-violation": demo_p4_violation,
    "m5-violation": demo_m5_violation,
    "trace-asymmetry": demo_trace_asymmetry,
}


def demo(kind: str) -> AxiomReport:
    """
    Run a named demonstration.

    Raises:
        ValueError: kind is not one of DEMO_KINDS
    """
    if kind not in DEMOS:
        raise ValueError(f"demo: unknown kind '{kind}' (known: {', '.join(DEMO_KINDS)})")
    return logged(DEMOS[kind]())
