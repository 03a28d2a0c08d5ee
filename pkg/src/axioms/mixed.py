"""
Audits of the mixed-state postulates M1-M5 and of the separable-zero
property L7. All of them need a mixed-state evaluator; on pure-only measures
they return "not applicable" reports.
"""

from typing import Any, Dict, List, Optional, Tuple
import logging

import numpy as np

from src.config import CONTINUITY_SCALES, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE
from src.reports.models import AxiomReport
from src.axioms.pure import (
    superposition_probes,
    random_superposition,
    superposition_gap,
    superposition_witness,
)
from src.axioms.sampling import STREAMS, WorstCase, logged, draw_dims, unit_direction, perturb_density
from src.entropy.khinchin import continuity_violation
from src.measures.registry import EntanglementMeasure, evaluate_mixed, profile_state
from src.states.builders import basis_state, projector, build_separable, mix, embed_density, conjugate_local
from src.states.ensembles import (
    substream,
    random_mixed_state,
    random_local_unitary,
    random_separable_decomposition,
)
from src.states.io import state_to_json, state_from_json, complex_to_pairs, pairs_to_complex
from src.states.models import DensityOperator, ProbabilityDistribution, SeparableDecomposition

logger = logging.getLogger(__name__)


def _requires_mixed(axiom: str, m: EntanglementMeasure, tol: float, seed: Optional[int]) -> Optional[AxiomReport]:
    if m.has_mixed:
        return None
    logger.info(f"{m.name} {axiom}: not applicable (no mixed-state evaluator)")
    return AxiomReport.not_applicable(axiom, tol, "measure has no mixed-state evaluator",
                                      seed=seed, measure=m.name)


# --- M1 ----------------------------------------------------------------------

def audit_M1(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """
    Sampled continuity on density operators, d1, d2 in {2, 3}.

    rho is moved to K rho K^dagger / Tr with K = I + delta * G for a fixed
    unit-norm G per sample; the shrinking-modulus criterion of the pure scan
    applies.
    """
    skipped = _requires_mixed("M1", m, tol, seed)
    if skipped:
        return skipped

    cases = []
    for index in range(samples):
        rng = substream(seed, STREAMS["M1"], index)
        rho = random_mixed_state(*draw_dims(rng, 2, 3), rng)
        cases.append((rho, unit_direction(rng, (rho.dim, rho.dim))))

    base_values = [evaluate_mixed(m, rho) for rho, _ in cases]
    moduli, scales = [], []
    for delta in CONTINUITY_SCALES:
        worst = WorstCase()
        for (rho, generator), value in zip(cases, base_values):
            moved = perturb_density(rho, generator, delta)
            worst.offer(abs(evaluate_mixed(m, moved) - value),
                        lambda rho=rho, moved=moved: {"state": state_to_json(rho), "perturbed": state_to_json(moved)})
        moduli.append(worst.violation)
        scales.append({"scale": delta, "gap": worst.violation, **worst.witness})

    return logged(AxiomReport.from_violation(
        "M1", continuity_violation(moduli), tol, samples=len(cases), seed=seed, measure=m.name,
        witness={"scales": scales},
    ))


def replay_M1(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    gaps = [abs(evaluate_mixed(m, state_from_json(s["perturbed"])) - evaluate_mixed(m, state_from_json(s["state"])))
            for s in witness["scales"]]
    return continuity_violation(gaps)


# --- M2 ----------------------------------------------------------------------

def conjugation_gap(m: EntanglementMeasure, rho: DensityOperator, u: np.ndarray, v: np.ndarray) -> float:
    """|E((U (x) V) rho (U (x) V)^dagger) - E(rho)|."""
    return abs(evaluate_mixed(m, conjugate_local(rho, u, v)) - evaluate_mixed(m, rho))


def audit_M2(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Invariance under local unitary conjugation, d1, d2 in {2, 3, 4}."""
    skipped = _requires_mixed("M2", m, tol, seed)
    if skipped:
        return skipped

    worst = WorstCase()
    for index in range(samples):
        rng = substream(seed, STREAMS["M2"], index)
        d1, d2 = draw_dims(rng, 2, 4)
        rho = random_mixed_state(d1, d2, rng)
        u = random_local_unitary(d1, rng)
        v = random_local_unitary(d2, rng)
        worst.offer(conjugation_gap(m, rho, u, v),
                    lambda: {"state": state_to_json(rho), "u": complex_to_pairs(u), "v": complex_to_pairs(v)})
    return worst.report("M2", m, tol, seed)


def replay_M2(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return conjugation_gap(m, state_from_json(witness["state"]),
                           pairs_to_complex(witness["u"]), pairs_to_complex(witness["v"]))


# --- M3 ----------------------------------------------------------------------

def extension_gap(m: EntanglementMeasure, rho: DensityOperator, big_d1: int, big_d2: int) -> float:
    """|E(block extension of rho) - E(rho)|."""
    return abs(evaluate_mixed(m, embed_density(rho, big_d1, big_d2)) - evaluate_mixed(m, rho))


def audit_M3(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Invariance under block extension into (d1 + k, d2 + k), k in {1, 2}."""
    skipped = _requires_mixed("M3", m, tol, seed)
    if skipped:
        return skipped

    worst = WorstCase()
    for index in range(samples):
        rng = substream(seed, STREAMS["M3"], index)
        d1, d2 = draw_dims(rng, 1, 3)
        k = int(rng.integers(1, 3))
        rho = random_mixed_state(d1, d2, rng)
        worst.offer(extension_gap(m, rho, d1 + k, d2 + k),
                    lambda: {"state": state_to_json(rho), "d1": d1 + k, "d2": d2 + k})
    return worst.report("M3", m, tol, seed)


def replay_M3(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return extension_gap(m, state_from_json(witness["state"]), witness["d1"], witness["d2"])


# --- M4 ----------------------------------------------------------------------

def _projector_sides(m: EntanglementMeasure):
    return ((lambda psi: evaluate_mixed(m, projector(psi))),
            (lambda p: evaluate_mixed(m, projector(profile_state(p)))))


def audit_M4(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Superposition identity evaluated on the projectors P_psi."""
    skipped = _requires_mixed("M4", m, tol, seed)
    if skipped:
        return skipped

    evaluate, profile = _projector_sides(m)
    cases = superposition_probes()
    cases += [random_superposition(substream(seed, STREAMS["M4"], index)) for index in range(samples)]

    worst = WorstCase()
    for states, amplitudes, phases in cases:
        gap, lhs, rhs = superposition_gap(evaluate, profile, states, amplitudes, phases)
        worst.offer(gap, lambda: superposition_witness(states, amplitudes, phases), {"lhs": lhs, "rhs": rhs})
    return worst.report("M4", m, tol, seed)


def replay_M4(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    evaluate, profile = _projector_sides(m)
    states = [state_from_json(s) for s in witness["states"]]
    gap, _, _ = superposition_gap(evaluate, profile, states, pairs_to_complex(witness["amplitudes"]),
                                  witness["phases"])
    return gap


# --- M5 ----------------------------------------------------------------------

def mixing_excess(m: EntanglementMeasure, sigma: DensityOperator, tau: DensityOperator,
                  eta: float) -> Tuple[float, float, float]:
    """
    Convexity excess max(0, E(eta sigma + (1 - eta) tau) - eta E(sigma) - (1 - eta) E(tau)).

    Returns:
        (excess, E of the mixture, the convex bound)
    """
    mixture = evaluate_mixed(m, mix(sigma, tau, eta))
    bound = eta * evaluate_mixed(m, sigma) + (1.0 - eta) * evaluate_mixed(m, tau)
    return max(0.0, mixture - bound), mixture, bound


def mixing_probes() -> List[Tuple[DensityOperator, DensityOperator, float]]:
    """P_|00> and P_|11> mixed half and half, then a boundary case with eta = 0."""
    p00 = projector(basis_state(2, 2, 0, 0))
    p11 = projector(basis_state(2, 2, 1, 1))
    return [(p00, p11, 0.5), (p11, p00, 0.0)]


def audit_M5(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Convexity on the mixing probes and on random pairs of mixtures, d1, d2 in {2, 3}."""
    skipped = _requires_mixed("M5", m, tol, seed)
    if skipped:
        return skipped

    cases = mixing_probes()
    for index in range(samples):
        rng = substream(seed, STREAMS["M5"], index)
        d1, d2 = draw_dims(rng, 2, 3)
        sigma = random_mixed_state(d1, d2, rng)
        tau = random_mixed_state(d1, d2, rng)
        cases.append((sigma, tau, float(rng.uniform())))

    worst = WorstCase()
    for sigma, tau, eta in cases:
        excess, mixture, bound = mixing_excess(m, sigma, tau, eta)
        worst.offer(excess,
                    lambda: {"sigma": state_to_json(sigma), "tau": state_to_json(tau), "eta": eta},
                    {"mixture": mixture, "bound": bound})
    return worst.report("M5", m, tol, seed)


def replay_M5(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    excess, _, _ = mixing_excess(m, state_from_json(witness["sigma"]), state_from_json(witness["tau"]),
                                 witness["eta"])
    return excess


# --- L7 ----------------------------------------------------------------------

def separable_probe() -> DensityOperator:
    """diag(1/2, 0, 0, 1/2) = (|0><0| (x) |0><0| + |1><1| (x) |1><1|) / 2."""
    zero = DensityOperator(2, 1, np.diag([1.0, 0.0]))
    one = DensityOperator(2, 1, np.diag([0.0, 1.0]))
    dec = SeparableDecomposition(ProbabilityDistribution([0.5, 0.5]), [zero, one], [zero, one])
    return build_separable(dec)


def check_separable_mixed(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                          tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """|E(rho)| on separable states: the probe, then random decompositions with d1 = 2, d2 in {2, 3}."""
    skipped = _requires_mixed("L7", m, tol, seed)
    if skipped:
        return skipped

    states = [separable_probe()]
    for index in range(samples):
        rng = substream(seed, STREAMS["L7"], index)
        d2 = int(rng.integers(2, 4))
        states.append(build_separable(random_separable_decomposition(2, d2, rng)))

    worst = WorstCase()
    for rho in states:
        value = evaluate_mixed(m, rho)
        worst.offer(abs(value), lambda: {"state": state_to_json(rho)}, {"value": value})
    return worst.report("L7", m, tol, seed)


def replay_L7(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return abs(evaluate_mixed(m, state_from_json(witness["state"])))
