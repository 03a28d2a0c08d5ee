"""
Audits of the pure-state postulates.

P1  E is continuous (sampled perturbation scan)
P2  E((U (x) V) psi) = E(psi) for local unitaries U, V
P3  E is unchanged by embedding into larger spaces
P4  E(sum_i lambda_i psi_i) = E(|lambda_1|^2, ..., |lambda_m|^2) + sum_i |lambda_i|^2 E(psi_i)
    for mutually Schmidt orthogonal psi_i
L4  E vanishes on product states

plus the uniqueness check E = c * S_vN (estimate_constant / constant_report).
Every audit is a deterministic function of (measure, samples, seed): sample
``i`` draws from ``substream(seed, stream, i)``.
"""

from typing import Any, Dict, List, Sequence, Tuple
import logging

import numpy as np

from src.config import (
    CONTINUITY_SCALES,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    ENTROPY_FLOOR,
    CONSTANT_DEVIATION_TOL,
)
from src.reports.models import AxiomReport, ConstantEstimate
from src.axioms.sampling import (
    STREAMS,
    WorstCase,
    logged,
    draw_dims,
    diagonal_blocks,
    unit_direction,
    perturb_state,
)
from src.entropy.khinchin import continuity_violation
from src.entropy.von_neumann import svn_pure
from src.errors import InsufficientSamplesError
from src.measures.registry import EntanglementMeasure, evaluate_pure, schmidt_profile_value
from src.schmidt.decomposition import superpose
from src.states.builders import basis_state, bell_state, apply_local, embed_state, product_state
from src.states.ensembles import substream, random_pure_state, random_local_unitary, random_amplitudes
from src.states.io import state_to_json, state_from_json, complex_to_pairs, pairs_to_complex
from src.states.models import StateVector, AmplitudeDistribution, ProbabilityDistribution

logger = logging.getLogger(__name__)


# --- P1 ----------------------------------------------------------------------

# Product state pushed towards an entangled direction: rank jumps here
CONTINUITY_PROBES = [(basis_state(2, 2, 0, 0), basis_state(2, 2, 1, 1).amplitudes)]


def audit_P1_continuity(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                        tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """
    Sampled continuity of E in the norm topology.

    Each case (psi, xi) is perturbed to normalize(psi + delta * xi) at every
    continuity scale. The modulus at a scale is the largest |Delta E| seen;
    moduli must shrink with the scale and end below the continuity threshold.
    """
    cases = list(CONTINUITY_PROBES)
    for index in range(samples):
        rng = substream(seed, STREAMS["P1"], index)
        d1, d2 = draw_dims(rng, 2, 3)
        psi = random_pure_state(d1, d2, rng)
        cases.append((psi, unit_direction(rng, psi.dim)))

    base_values = [evaluate_pure(m, psi) for psi, _ in cases]
    moduli, scales = [], []
    for delta in CONTINUITY_SCALES:
        worst = WorstCase()
        for (psi, direction), value in zip(cases, base_values):
            moved = perturb_state(psi, direction, delta)
            worst.offer(abs(evaluate_pure(m, moved) - value),
                        lambda psi=psi, moved=moved: {"state": state_to_json(psi), "perturbed": state_to_json(moved)})
        moduli.append(worst.violation)
        scales.append({"scale": delta, "gap": worst.violation, **worst.witness})

    return logged(AxiomReport.from_violation(
        "P1", continuity_violation(moduli), tol, samples=len(cases), seed=seed, measure=m.name,
        witness={"scales": scales},
    ))


audit_P1 = audit_P1_continuity


def replay_P1(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    gaps = [abs(evaluate_pure(m, state_from_json(s["perturbed"])) - evaluate_pure(m, state_from_json(s["state"])))
            for s in witness["scales"]]
    return continuity_violation(gaps)


# --- P2 ----------------------------------------------------------------------

def local_unitary_gap(m: EntanglementMeasure, psi: StateVector, u: np.ndarray, v: np.ndarray) -> float:
    """|E((U (x) V) psi) - E(psi)|."""
    return abs(evaluate_pure(m, apply_local(psi, u, v)) - evaluate_pure(m, psi))


def audit_P2(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Invariance under random local unitaries, d1, d2 in {2, 3, 4}."""
    worst = WorstCase()
    for index in range(samples):
        rng = substream(seed, STREAMS["P2"], index)
        d1, d2 = draw_dims(rng, 2, 4)
        psi = random_pure_state(d1, d2, rng)
        u = random_local_unitary(d1, rng)
        v = random_local_unitary(d2, rng)
        worst.offer(local_unitary_gap(m, psi, u, v),
                    lambda: {"state": state_to_json(psi), "u": complex_to_pairs(u), "v": complex_to_pairs(v)})
    return worst.report("P2", m, tol, seed)


def replay_P2(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return local_unitary_gap(m, state_from_json(witness["state"]),
                             pairs_to_complex(witness["u"]), pairs_to_complex(witness["v"]))


# --- P3 ----------------------------------------------------------------------

def embedding_gap(m: EntanglementMeasure, psi: StateVector, big_d1: int, big_d2: int) -> float:
    """|E(psi embedded in C^big_d1 (x) C^big_d2) - E(psi)|."""
    return abs(evaluate_pure(m, embed_state(psi, big_d1, big_d2)) - evaluate_pure(m, psi))


def audit_P3(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Invariance under zero-padding (d1, d2) into (d1 + k, d2 + k), k in {1, 2}."""
    worst = WorstCase()
    for index in range(samples):
        rng = substream(seed, STREAMS["P3"], index)
        d1, d2 = draw_dims(rng, 1, 3)
        k = int(rng.integers(1, 3))
        psi = random_pure_state(d1, d2, rng)
        worst.offer(embedding_gap(m, psi, d1 + k, d2 + k),
                    lambda: {"state": state_to_json(psi), "d1": d1 + k, "d2": d2 + k})
    return worst.report("P3", m, tol, seed)


def replay_P3(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return embedding_gap(m, state_from_json(witness["state"]), witness["d1"], witness["d2"])


# --- P4 ----------------------------------------------------------------------

def _bell_blocks() -> List[StateVector]:
    return diagonal_blocks([bell_state(), bell_state()])


def superposition_probes() -> List[Tuple[List[StateVector], np.ndarray, np.ndarray]]:
    """(states, amplitudes, phases) evaluated before the random samples."""
    half = 1.0 / np.sqrt(2.0)
    return [
        (_bell_blocks(), np.array([half, half], dtype=np.complex128), np.zeros(2)),
        ([bell_state()], np.array([1.0], dtype=np.complex128), np.zeros(1)),
    ]


def random_superposition(rng: np.random.Generator) -> Tuple[List[StateVector], np.ndarray, np.ndarray]:
    """Two or three random states on disjoint diagonal blocks with sides in {1, 2}."""
    k = int(rng.integers(2, 4))
    blocks = [random_pure_state(*draw_dims(rng, 1, 2), rng) for _ in range(k)]
    amplitudes = random_amplitudes(k, rng).amplitudes
    phases = rng.uniform(0.0, 2.0 * np.pi, size=k)
    return diagonal_blocks(blocks), amplitudes, phases


def superposition_sides(evaluate, profile, states: Sequence[StateVector],
                        amplitudes: np.ndarray) -> Tuple[float, float]:
    """
    Both sides of the superposition identity.

    Args:
        evaluate: map from StateVector to E
        profile: map from a probability distribution to E(p_1, ..., p_m)
        states: mutually Schmidt orthogonal states
        amplitudes: complex lambda_i

    Returns:
        (lhs, rhs)
    """
    lam = AmplitudeDistribution(amplitudes)
    weights = lam.probabilities()
    lhs = evaluate(superpose(states, lam))
    rhs = profile(ProbabilityDistribution(weights / weights.sum()))
    rhs += float(sum(w * evaluate(s) for w, s in zip(weights, states)))
    return lhs, rhs


def superposition_gap(evaluate, profile, states, amplitudes, phases) -> Tuple[float, float, float]:
    """
    Largest identity gap over lambda and the phase-rotated lambda * exp(i theta).

    Returns:
        (gap, lhs, rhs) with lhs and rhs for the unrotated amplitudes
    """
    lhs, rhs = superposition_sides(evaluate, profile, states, amplitudes)
    rotated, _ = superposition_sides(evaluate, profile, states, amplitudes * np.exp(1j * np.asarray(phases)))
    return max(abs(lhs - rhs), abs(rotated - rhs)), lhs, rhs


def superposition_witness(states, amplitudes, phases) -> Dict[str, Any]:
    return {
        "states": [state_to_json(s) for s in states],
        "amplitudes": complex_to_pairs(amplitudes),
        "phases": [float(t) for t in phases],
    }


def _pure_sides(m: EntanglementMeasure):
    return (lambda psi: evaluate_pure(m, psi)), (lambda p: schmidt_profile_value(m, p))


def audit_P4(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Superposition identity on Schmidt orthogonal families built on disjoint blocks."""
    evaluate, profile = _pure_sides(m)
    cases = superposition_probes()
    cases += [random_superposition(substream(seed, STREAMS["P4"], index)) for index in range(samples)]

    worst = WorstCase()
    for states, amplitudes, phases in cases:
        gap, lhs, rhs = superposition_gap(evaluate, profile, states, amplitudes, phases)
        worst.offer(gap, lambda: superposition_witness(states, amplitudes, phases), {"lhs": lhs, "rhs": rhs})
    return worst.report("P4", m, tol, seed)


def replay_P4(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    evaluate, profile = _pure_sides(m)
    states = [state_from_json(s) for s in witness["states"]]
    gap, _, _ = superposition_gap(evaluate, profile, states, pairs_to_complex(witness["amplitudes"]),
                                  witness["phases"])
    return gap


def profile_recursion_gap(m: EntanglementMeasure, p: Sequence[float], eta: float) -> float:
    """
    |E(p_1, ..., eta p_n, (1 - eta) p_n) - E(p) - p_n E(eta, 1 - eta)| on Schmidt profiles.

    Splitting the last Schmidt coefficient is what the superposition identity
    reduces to on canonical states.
    """
    w = np.asarray(p, dtype=np.float64)
    split = np.concatenate([w[:-1], [eta * w[-1], (1.0 - eta) * w[-1]]])
    return abs(schmidt_profile_value(m, split) - schmidt_profile_value(m, w)
               - w[-1] * schmidt_profile_value(m, [eta, 1.0 - eta]))


# --- L4 ----------------------------------------------------------------------

def check_separable_pure(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                         tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """|E(a (x) b)| on |00> and on random product states, d1, d2 in {2, 3, 4}."""
    products = [basis_state(2, 2, 0, 0)]
    for index in range(samples):
        rng = substream(seed, STREAMS["L4"], index)
        d1, d2 = draw_dims(rng, 2, 4)
        a = random_pure_state(d1, 1, rng).amplitudes
        b = random_pure_state(d2, 1, rng).amplitudes
        products.append(product_state(a, b))

    worst = WorstCase()
    for psi in products:
        value = evaluate_pure(m, psi)
        worst.offer(abs(value), lambda: {"state": state_to_json(psi)}, {"value": value})
    return worst.report("L4", m, tol, seed)


def replay_L4(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    return abs(evaluate_pure(m, state_from_json(witness["state"])))


# --- Uniqueness --------------------------------------------------------------

def estimate_constant(m: EntanglementMeasure, samples: int = DEFAULT_SAMPLES,
                      seed: int = DEFAULT_SEED) -> ConstantEstimate:
    """
    Estimate c in E = c * S_vN from random pure states, d1, d2 in {2, 3, 4}.

    Only meaningful for measures that pass P2, P3 and P4; that precondition is
    not checked, so inconsistent measures come back with a large deviation.
    Samples with S_vN below the entropy floor are excluded.

    Raises:
        InsufficientSamplesError: every sample fell below the entropy floor
    """
    ratios: List[float] = []
    states: List[StateVector] = []
    excluded = 0
    for index in range(samples):
        rng = substream(seed, STREAMS["PROP6"], index)
        psi = random_pure_state(*draw_dims(rng, 2, 4), rng)
        entropy = svn_pure(psi)
        if entropy < ENTROPY_FLOOR:
            excluded += 1
            continue
        ratios.append(evaluate_pure(m, psi) / entropy)
        states.append(psi)

    if not ratios:
        raise InsufficientSamplesError(
            f"all {samples} samples have S_vN below {ENTROPY_FLOOR}; nothing to estimate"
        )
    ratios_array = np.asarray(ratios)
    c_mean = float(np.mean(ratios_array))
    deviations = np.abs(ratios_array - c_mean)
    worst = int(np.argmax(deviations))
    logger.info(f"{m.name}: c = {c_mean:.12g} over {len(ratios)} samples "
                f"(max deviation {deviations[worst]:.3e}, {excluded} excluded)")
    return ConstantEstimate(
        c_mean=c_mean, c_max_deviation=float(deviations[worst]), samples=len(ratios),
        excluded_low_entropy=excluded, measure=m.name, seed=seed,
        witness={"state": state_to_json(states[worst]), "c_mean": c_mean},
    )


def constant_report(estimate: ConstantEstimate, tol: float = CONSTANT_DEVIATION_TOL) -> AxiomReport:
    """PROP6 report: the ratio E / S_vN must be constant within tol."""
    report = AxiomReport.from_violation(
        "PROP6", estimate.c_max_deviation, tol, samples=estimate.samples + estimate.excluded_low_entropy,
        seed=estimate.seed, measure=estimate.measure, witness=estimate.witness,
        details={"c_mean": estimate.c_mean, "excluded_low_entropy": estimate.excluded_low_entropy},
    )
    logger.info(f"{estimate.measure} PROP6: passed={report.passed} worst={report.worst_violation:.3e}")
    return report


def replay_PROP6(m: EntanglementMeasure, witness: Dict[str, Any]) -> float:
    psi = state_from_json(witness["state"])
    return abs(evaluate_pure(m, psi) / svn_pure(psi) - witness["c_mean"])
