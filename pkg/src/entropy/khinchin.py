"""
Numerical audit of the Khinchin-Faddeev characterization of Shannon entropy.

A functional on the probability simplex is checked for continuity of
p -> S(p, 1-p), the normalization S(1/2, 1/2) = ln 2, permutation symmetry and
the recursion (grouping) identity. Continuity can only be sampled: the audit
measures the largest change |S(p) - S(p + delta)| at shrinking scales and
requires it to shrink and to end below a fixed threshold.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple, Union
import logging

import numpy as np
from scipy.special import entr

from src.config import (
    SIMPLEX_MAX_LENGTH,
    CONTINUITY_SCALES,
    CONTINUITY_THRESHOLD,
    CONTINUITY_GRID_POINTS,
    CONTINUITY_PAIRS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
)
from src.reports.models import AxiomReport, VIOLATION_CEILING
from src.errors import DimensionError
from src.states.ensembles import substream, random_distribution
from src.states.models import ProbabilityDistribution

logger = logging.getLogger(__name__)

_STREAM_CONTINUITY = 101
_STREAM_SYMMETRY = 102
_STREAM_RECURSION = 103

# Grouping cases evaluated before random samples: (p, eta)
RECURSION_FIXED_CASES: List[Tuple[Tuple[float, ...], float]] = [((0.5, 0.5), 0.5)]


@dataclass(frozen=True)
class SimplexFunctional:
    """Named black-box map from probability distributions to reals (nats)."""
    name: str
    evaluator: Callable[[np.ndarray], float]

    def __call__(self, p: Union[ProbabilityDistribution, Sequence[float]]) -> float:
        if not isinstance(p, ProbabilityDistribution):
            p = ProbabilityDistribution(p)
        if len(p) > SIMPLEX_MAX_LENGTH:
            raise DimensionError(f"distribution of length {len(p)} exceeds {SIMPLEX_MAX_LENGTH}")
        return float(self.evaluator(p.weights))


SHANNON = SimplexFunctional("shannon", lambda w: float(np.sum(entr(w))))
RENYI2 = SimplexFunctional("renyi2", lambda w: float(-np.log(np.sum(w ** 2))))
ZERO = SimplexFunctional("zero", lambda w: 0.0)

FUNCTIONALS: Dict[str, SimplexFunctional] = {f.name: f for f in (SHANNON, RENYI2, ZERO)}


def _binary(S: SimplexFunctional, p: float) -> float:
    return S((p, 1.0 - p))


def continuity_violation(moduli: Sequence[float]) -> float:
    """Excess over the shrinking-modulus criterion (0 when it holds)."""
    excess = [moduli[-1] - CONTINUITY_THRESHOLD]
    excess += [finer - coarser for coarser, finer in zip(moduli, moduli[1:])]
    return max(0.0, *excess)


def recursion_gap(S: SimplexFunctional, p: Sequence[float], eta: float) -> float:
    """|S(p_1..p_{n-1}, eta p_n, (1-eta) p_n) - S(p) - p_n S(eta, 1-eta)|."""
    w = np.asarray(p, dtype=np.float64)
    split = np.concatenate([w[:-1], [eta * w[-1], (1.0 - eta) * w[-1]]])
    return abs(S(split) - S(w) - w[-1] * S((eta, 1.0 - eta)))


def audit_continuity(S: SimplexFunctional, seed: int = DEFAULT_SEED,
                     tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Sampled continuity of p -> S(p, 1-p) on [0, 1]."""
    grid = np.linspace(0.0, 1.0, CONTINUITY_GRID_POINTS)
    for p in grid:
        value = _binary(S, p)
        if not np.isfinite(value):
            return AxiomReport.from_violation(
                "KF-CONTINUITY", VIOLATION_CEILING, tol, samples=grid.size, seed=seed,
                measure=S.name, witness={"p": float(p)}, details={"reason": "non-finite value"},
            )

    rng = substream(seed, _STREAM_CONTINUITY)
    moduli, scales, previous = [], [], None
    evaluated = grid.size
    for delta in CONTINUITY_SCALES:
        starts = rng.uniform(delta, 1.0 - 2.0 * delta, size=CONTINUITY_PAIRS)
        if previous is not None:
            lo, width = previous
            starts = np.concatenate([starts, lo + delta * np.arange(int(round(width / delta)))])
        gaps = np.array([abs(_binary(S, p) - _binary(S, p + delta)) for p in starts])
        worst = int(np.argmax(gaps))
        moduli.append(float(gaps[worst]))
        scales.append({"scale": delta, "p": float(starts[worst]),
                       "q": float(starts[worst] + delta), "gap": float(gaps[worst])})
        previous = (float(starts[worst]), delta)
        evaluated += starts.size

    return AxiomReport.from_violation(
        "KF-CONTINUITY", continuity_violation(moduli), tol, samples=evaluated, seed=seed,
        measure=S.name, witness={"scales": scales},
    )


def audit_normalization(S: SimplexFunctional, tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """|S(1/2, 1/2) - ln 2|."""
    value = S((0.5, 0.5))
    return AxiomReport.from_violation(
        "KF-NORMALIZATION", abs(value - np.log(2.0)), tol, samples=1, measure=S.name,
        witness={"p": [0.5, 0.5]}, details={"value": value},
    )


def audit_symmetry(S: SimplexFunctional, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                   tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Invariance under random permutations of random distributions (length <= 6)."""
    worst, witness = 0.0, {}
    for index in range(samples):
        rng = substream(seed, _STREAM_SYMMETRY, index)
        n = int(rng.integers(2, 7))
        p = random_distribution(n, rng).weights
        perm = rng.permutation(n)
        gap = abs(S(p[perm]) - S(p))
        if gap > worst or not witness:
            worst, witness = gap, {"p": p.tolist(), "permutation": perm.tolist()}
    return AxiomReport.from_violation(
        "KF-SYMMETRY", worst, tol, samples=samples, seed=seed, measure=S.name, witness=witness,
    )


def audit_recursion(S: SimplexFunctional, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                    tol: float = DEFAULT_TOLERANCE) -> AxiomReport:
    """Grouping identity on the fixed cases and on random (p, eta)."""
    cases = [(list(p), eta) for p, eta in RECURSION_FIXED_CASES]
    for index in range(samples):
        rng = substream(seed, _STREAM_RECURSION, index)
        n = int(rng.integers(1, 7))
        cases.append((random_distribution(n, rng).weights.tolist(), float(rng.uniform())))

    worst, witness, fixed_gaps = 0.0, {}, []
    for index, (p, eta) in enumerate(cases):
        gap = recursion_gap(S, p, eta)
        if index < len(RECURSION_FIXED_CASES):
            fixed_gaps.append({"p": p, "eta": eta, "gap": gap})
        if gap > worst or not witness:
            worst, witness = gap, {"p": p, "eta": eta}
    return AxiomReport.from_violation(
        "KF-RECURSION", worst, tol, samples=len(cases), seed=seed, measure=S.name, witness=witness,
        details={"fixed_cases": fixed_gaps},
    )


def audit_khinchin(S: SimplexFunctional, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                   tol: float = DEFAULT_TOLERANCE) -> List[AxiomReport]:
    """
    Audit S against the four Khinchin-Faddeev conditions.

    Returns:
        Reports for continuity, normalization, symmetry and recursion, in that order
    """
    reports = [
        audit_continuity(S, seed, tol),
        audit_normalization(S, tol),
        audit_symmetry(S, samples, seed, tol),
        audit_recursion(S, samples, seed, tol),
    ]
    for report in reports:
        logger.info(f"{S.name} {report.axiom}: passed={report.passed} "
                    f"worst={report.worst_violation:.3e}")
    return reports


def replay_khinchin(S: SimplexFunctional, report: AxiomReport) -> float:
    """Recompute a Khinchin report's violation from its witness."""
    w = report.witness
    if report.axiom == "KF-CONTINUITY":
        if "p" in w:
            return VIOLATION_CEILING
        return continuity_violation([abs(_binary(S, s["p"]) - _binary(S, s["q"])) for s in w["scales"]])
    if report.axiom == "KF-NORMALIZATION":
        return abs(S((0.5, 0.5)) - np.log(2.0))
    if report.axiom == "KF-SYMMETRY":
        p = np.asarray(w["p"])
        return abs(S(p[w["permutation"]]) - S(p))
    if report.axiom == "KF-RECURSION":
        return recursion_gap(S, w["p"], w["eta"])
    raise ValueError(f"not a Khinchin report: {report.axiom}")
