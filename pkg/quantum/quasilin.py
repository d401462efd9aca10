# quantum/quasilin.py - convex quasi-linearity: closed λ(t), fitter, certifier

"""
Convex quasi-linearity of a map Φ on qubit states.

Φ is convex quasi-linear when for every λ ∈ [0,1] and states ρ_a, ρ_b there is
a λ̄ ∈ [0,1] with Φ[λρ_a + (1-λ)ρ_b] = λ̄Φ[ρ_a] + (1-λ̄)Φ[ρ_b]. For a flow Φ_t
the coefficient may depend on time. In Bloch language the image of the mixture
has to lie on the chord between the images of the members; the certifier
measures the distance to that chord.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from data.sampling import make_rng, uniform_ball
from quantum.flows import FlowKind, FlowParams, flow, one_plus_a_tanh
from quantum.qstate import (
    BlochLike,
    BlochVector,
    Ensemble,
    Projector,
    bloch_to_density,
)
from utils.parallel import ordered_map
from utils.validators import (
    DegenerateDenominatorError,
    InvalidStateError,
    ZeroProbabilityError,
)

logger = logging.getLogger(__name__)

CHORD_TOL = 1e-12
RANGE_TOL = 1e-9
DENOMINATOR_TOL = 1e-12
PASS_TOL = 1e-9
VIOLATION_TOL = 1e-3
# fitted λ* is compared with the closed form only on chords at least this long
GAP_CHORD_MIN = 1e-6


# ===============================
# RESULT TYPES
# ===============================
@dataclass(frozen=True)
class LambdaFit:
    """Best chord coefficient λ* for a target point and its distance to the chord"""

    lambda_star: float
    residual: float
    in_range: bool
    degenerate: bool = False


@dataclass
class CertReport:
    flow: FlowKind
    samples: int
    t_grid: List[float]
    tol: float
    max_residual: float = 0.0
    max_lambda_gap: Optional[float] = None
    violations: int = 0
    worst_case: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        """Report in the documented key order"""
        return {
            "flow": self.flow.value,
            "samples": self.samples,
            "t_grid": [float(t) for t in self.t_grid],
            "tol": float(self.tol),
            "max_residual": float(self.max_residual),
            "max_lambda_gap": None if self.max_lambda_gap is None else float(self.max_lambda_gap),
            "violations": int(self.violations),
            "worst_case": {
                "xi_a": [float(x) for x in self.worst_case.get("xi_a", [])],
                "xi_b": [float(x) for x in self.worst_case.get("xi_b", [])],
                "lam": float(self.worst_case.get("lam", 0.0)),
                "t": float(self.worst_case.get("t", 0.0)),
            },
        }


# ===============================
# ENSEMBLE EVOLUTION
# ===============================
def evolve_ensemble(ens: Ensemble, kind: FlowKind, p: FlowParams, t: float) -> Ensemble:
    """Evolve every member by the selected flow; weights are physical frequencies and stay put"""
    return Ensemble(
        tuple((weight, bloch_to_density(flow(kind, state.bloch, p, t))) for weight, state in ens.members)
    )


# ===============================
# λ(t)
# ===============================
def lambda_t_closed(lam: float, xi_a: BlochLike, xi: BlochLike, p: FlowParams, t: float) -> float:
    """
    λ(t) = λ (1 + (e·ξ_a) tanh gt) / (1 + (e·ξ) tanh gt)

    ξ is the mixture λξ_a + (1-λ)ξ_b; λ(0) = λ.
    """
    if not (-RANGE_TOL <= lam <= 1.0 + RANGE_TOL):
        raise InvalidStateError(f"Validation failed: λ must lie in [0, 1], got {lam}")

    eta = p.g * t
    a_a = float(p.e @ BlochVector.of(xi_a).n)
    a = float(p.e @ BlochVector.of(xi).n)
    denominator = one_plus_a_tanh(a, eta)
    if abs(denominator) <= DENOMINATOR_TOL:
        raise DegenerateDenominatorError(
            f"1 + (e·ξ) tanh(gt) = {denominator:.3g} at gt = {eta:g}"
        )
    return lam * one_plus_a_tanh(a_a, eta) / denominator


def fit_lambda(n_a, n_b, n_target) -> LambdaFit:
    """
    Orthogonal projection of n_target onto the line through n_a and n_b

    λ* = <n_target - n_b, n_a - n_b> / |n_a - n_b|²
    """
    n_a = np.asarray(n_a.n if isinstance(n_a, BlochVector) else n_a, dtype=float)
    n_b = np.asarray(n_b.n if isinstance(n_b, BlochVector) else n_b, dtype=float)
    target = np.asarray(n_target.n if isinstance(n_target, BlochVector) else n_target, dtype=float)

    chord = n_a - n_b
    length_sq = float(chord @ chord)
    if np.sqrt(length_sq) <= CHORD_TOL:
        return LambdaFit(1.0, float(np.linalg.norm(n_a - target)), True, degenerate=True)

    lam = float((target - n_b) @ chord) / length_sq
    residual = float(np.linalg.norm(lam * n_a + (1.0 - lam) * n_b - target))
    in_range = -RANGE_TOL <= lam <= 1.0 + RANGE_TOL
    return LambdaFit(lam, residual, in_range)


def recombination_residual(xi_a: BlochLike, xi_b: BlochLike, lam: float, p: FlowParams, t: float) -> float:
    """|λ(t) n_a(t) + (1-λ(t)) n_b(t) - n(t)| under the boost flow"""
    va, vb = BlochVector.of(xi_a).n, BlochVector.of(xi_b).n
    xi = lam * va + (1.0 - lam) * vb
    lam_t = lambda_t_closed(lam, va, xi, p, t)
    kind = FlowKind.QUASI_LINEAR_BOOST
    n_a, n_b, n = flow(kind, va, p, t).n, flow(kind, vb, p, t).n, flow(kind, xi, p, t).n
    return float(np.linalg.norm(lam_t * n_a + (1.0 - lam_t) * n_b - n))


# ===============================
# CERTIFIER
# ===============================
def sample_ensemble(rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, float]:
    """(ξ_a, ξ_b, λ): members uniform in the ball, λ uniform on [0, 1]"""
    xi_a = uniform_ball(rng)
    xi_b = uniform_ball(rng)
    lam = float(rng.uniform(0.0, 1.0))
    return xi_a, xi_b, lam


def _check_sample(kind: FlowKind, p: FlowParams, t_grid: Sequence[float], tol: float, draw):
    xi_a, xi_b, lam = draw
    xi = lam * xi_a + (1.0 - lam) * xi_b
    outcomes = []
    for t in t_grid:
        n_a = flow(kind, xi_a, p, t).n
        n_b = flow(kind, xi_b, p, t).n
        n = flow(kind, xi, p, t).n
        fit = fit_lambda(n_a, n_b, n)

        gap = None
        if kind is FlowKind.QUASI_LINEAR_BOOST and np.linalg.norm(n_a - n_b) > GAP_CHORD_MIN:
            try:
                gap = abs(fit.lambda_star - lambda_t_closed(lam, xi_a, xi, p, t))
            except DegenerateDenominatorError:
                gap = None

        failed = not fit.degenerate and (fit.residual > tol or not fit.in_range)
        outcomes.append((t, fit, gap, failed))
    return outcomes


def certify_quasilinearity(
    kind: FlowKind,
    p: FlowParams,
    samples: int,
    t_grid: Sequence[float],
    tol: float = PASS_TOL,
    seed: int = 0,
    threads: Optional[int] = None,
) -> CertReport:
    """
    Test Φ_t[λρ_a + (1-λ)ρ_b] = λ(t)Φ_t[ρ_a] + (1-λ(t))Φ_t[ρ_b] on random ensembles

    A sample counts as one violation when at any grid time its chord residual
    exceeds tol or its fitted λ* leaves [0, 1]. Draws happen up front in index
    order, so the report only depends on the seed.
    """
    kind = FlowKind.parse(kind)
    if int(samples) != samples or samples < 1:
        raise InvalidStateError(f"Validation failed: samples must be ≥ 1, got {samples}")
    if not tol > 0:
        raise InvalidStateError(f"Validation failed: tol must be > 0, got {tol}")
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise InvalidStateError("Validation failed: t grid is empty")

    rng = make_rng(seed)
    draws = [sample_ensemble(rng) for _ in range(int(samples))]
    logger.debug("certifying %s on %d samples x %d times", kind.value, len(draws), len(t_grid))

    results = ordered_map(lambda d: _check_sample(kind, p, t_grid, tol, d), draws, threads=threads)

    report = CertReport(flow=kind, samples=int(samples), t_grid=t_grid, tol=float(tol))
    worst = -1.0
    gaps = []
    for draw, outcomes in zip(draws, results):
        if any(failed for _, _, _, failed in outcomes):
            report.violations += 1
        for t, fit, gap, _ in outcomes:
            if gap is not None:
                gaps.append(gap)
            if fit.residual > worst:
                worst = fit.residual
                report.worst_case = {"xi_a": draw[0], "xi_b": draw[1], "lam": draw[2], "t": t}

    report.max_residual = max(worst, 0.0)
    if kind is FlowKind.QUASI_LINEAR_BOOST and gaps:
        report.max_lambda_gap = float(max(gaps))
    return report


# ===============================
# SELECTIVE MEASUREMENT
# ===============================
def measurement_lambda_bar(lam: float, rho_a, rho, projector: Projector) -> float:
    """λ̄ = λ tr(Πρ_a) / tr(Πρ) for the selective map ρ → ΠρΠ / tr(ΠρΠ)"""
    p = projector.matrix
    p_total = float(np.real(np.trace(p @ np.asarray(rho.matrix))))
    if p_total <= DENOMINATOR_TOL:
        raise ZeroProbabilityError(f"outcome has probability {p_total:.3g}")
    p_a = float(np.real(np.trace(p @ np.asarray(rho_a.matrix))))
    return lam * p_a / p_total
