# quantum/gisin.py - nonlocal correlation experiment with nonlinear evolution at B

"""
The two-wing experiment.

A and B share a singlet. A measures the polarization along ζ_φ without
recording the outcome, which leaves B with the ensemble
{(½, ½(I - ζ_φ·σ)), (½, ½(I + ζ_φ·σ))}, whose mixture is ½I for every φ.
B then evolves its qubit with a nonlinear flow. A can signal exactly when B's
effective state after the evolution depends on φ.

Two weightings of the evolved members are available:

* paper-lambda: recombine with the time-dependent λ(t) of the ensemble
  equivalence statement
* frequency:    keep the original ½/½ outcome frequencies
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from quantum.flows import FlowKind, FlowParams, flow, one_plus_a_tanh
from quantum.qstate import (
    Ensemble,
    QubitDensity,
    bell_state,
    bloch_to_density,
    conditional_state_B,
    nonselective_measure,
    polarization_vector,
    projector_A,
    trace_distance,
)
from quantum.quasilin import lambda_t_closed
from utils.column_mapper import GISIN_COLUMNS
from utils.parallel import ordered_map
from utils.validators import InvalidStateError

logger = logging.getLogger(__name__)

DEFAULT_DIRECTION = (1.0, 0.0, 0.0)
DEFAULT_PHI_POINTS = 36
DEFAULT_GT_POINTS = 20
DEFAULT_GT_MAX = 10.0


class Weighting(str, Enum):
    PAPER_LAMBDA = "paper-lambda"
    FREQUENCY = "frequency"

    @classmethod
    def parse(cls, value) -> "Weighting":
        if isinstance(value, Weighting):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "paper-lambda": cls.PAPER_LAMBDA,
            "paperlambda": cls.PAPER_LAMBDA,
            "lambda": cls.PAPER_LAMBDA,
            "frequency": cls.FREQUENCY,
        }
        if key not in aliases:
            raise InvalidStateError(f"Validation failed: unknown weighting '{value}'")
        return aliases[key]


# ===============================
# CONFIG AND ROWS
# ===============================
@dataclass(frozen=True)
class ExperimentConfig:
    kind: FlowKind
    params: FlowParams
    phis: Tuple[float, ...]
    times: Tuple[float, ...]
    weighting: Weighting = Weighting.PAPER_LAMBDA

    def __post_init__(self):
        object.__setattr__(self, "kind", FlowKind.parse(self.kind))
        object.__setattr__(self, "weighting", Weighting.parse(self.weighting))
        phis = tuple(float(x) for x in self.phis)
        times = tuple(float(x) for x in self.times)
        if not phis or not times:
            raise InvalidStateError("Validation failed: φ and t lists must be non-empty")
        if not all(np.isfinite(phis)) or not all(np.isfinite(times)):
            raise InvalidStateError("Validation failed: φ and t lists must be finite")
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "times", times)


@dataclass(frozen=True)
class SignalRow:
    phi1: float
    phi2: float
    t: float
    gt: float
    distance: float
    weighting: Weighting


def default_phi_grid(points: int = DEFAULT_PHI_POINTS) -> Tuple[float, ...]:
    """Uniform grid on [0, 2π)"""
    return tuple(2.0 * np.pi * k / points for k in range(points))


def default_gt_grid(points: int = DEFAULT_GT_POINTS, gt_max: float = DEFAULT_GT_MAX) -> Tuple[float, ...]:
    """Uniform grid on (0, gt_max]"""
    return tuple(gt_max * k / points for k in range(1, points + 1))


def default_config(kind=FlowKind.QUASI_LINEAR_BOOST, weighting=Weighting.PAPER_LAMBDA, g: float = 1.0) -> ExperimentConfig:
    """e = (1,0,0) so that e·ζ_φ = cos φ, default φ and gt grids"""
    params = FlowParams(np.array(DEFAULT_DIRECTION), g)
    times = tuple(gt / g for gt in default_gt_grid())
    return ExperimentConfig(kind, params, default_phi_grid(), times, weighting)


# ===============================
# PREPARATION
# ===============================
def prepare_B_ensemble(phi: float) -> Ensemble:
    """
    Singlet → A's non-selective measurement along ζ_φ → B's branch states

    Member order: A's outcome along +ζ_φ (B left in -ζ_φ) first.
    """
    projector = projector_A(phi)
    rho_phi = nonselective_measure(bell_state(), projector)
    rho_b1, p1 = conditional_state_B(rho_phi, projector)
    rho_b2, p2 = conditional_state_B(rho_phi, projector.complement())
    return Ensemble(((p1, rho_b1), (p2, rho_b2)))


def evolved_rho_B(p: FlowParams, t: float) -> QubitDensity:
    """½(I + (e·σ) tanh gt): the maximally mixed state under the boost flow"""
    return bloch_to_density(p.e * np.tanh(p.g * t))


def singlet_lambda(phi: float, p: FlowParams, t: float) -> float:
    """½(1 - (e·ζ_φ) tanh gt)"""
    c = float(p.e @ polarization_vector(phi))
    return 0.5 * one_plus_a_tanh(-c, p.g * t)


def displayed_branch_bloch(phi: float, p: FlowParams, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    The two evolved branch Bloch vectors written out with cosh/sinh

    Independent of the flow implementation; usable for gt below ~700.
    """
    zeta = polarization_vector(phi)
    e = p.e
    c = float(e @ zeta)
    ch, sh = np.cosh(p.g * t), np.sinh(p.g * t)
    n1 = (-zeta + (sh - c * (ch - 1.0)) * e) / (ch - c * sh)
    n2 = (zeta + (sh + c * (ch - 1.0)) * e) / (ch + c * sh)
    return n1, n2


# ===============================
# EVOLUTION AND RECOMBINATION
# ===============================
def _recombined_bloch(ens: Ensemble, kind: FlowKind, p: FlowParams, t: float, weighting: Weighting) -> np.ndarray:
    (w1, rho1), (w2, rho2) = ens.members
    xi1, xi2 = rho1.bloch.n, rho2.bloch.n
    n1 = flow(kind, xi1, p, t).n
    n2 = flow(kind, xi2, p, t).n

    if weighting is Weighting.FREQUENCY:
        return w1 * n1 + w2 * n2

    xi = w1 * xi1 + w2 * xi2
    lam_t = lambda_t_closed(w1, xi1, xi, p, t)
    return lam_t * n1 + (1.0 - lam_t) * n2


def recombination_check(phi: float, p: FlowParams, t: float) -> float:
    """Trace distance between the λ(t)-recombined evolved branches and ρ_B(t)"""
    ens = prepare_B_ensemble(phi)
    recombined = _recombined_bloch(ens, FlowKind.QUASI_LINEAR_BOOST, p, t, Weighting.PAPER_LAMBDA)
    return trace_distance(bloch_to_density(recombined), evolved_rho_B(p, t))


def effective_state_B(cfg: ExperimentConfig, phi: float, t: float) -> QubitDensity:
    """B's state after evolution when A measured along ζ_φ, under cfg's weighting"""
    ens = prepare_B_ensemble(phi)
    return bloch_to_density(_recombined_bloch(ens, cfg.kind, cfg.params, t, cfg.weighting))


def signaling_metric(cfg: ExperimentConfig, phi1: float, phi2: float, t: float) -> float:
    """Trace distance between B's effective states for A's settings φ1 and φ2"""
    return trace_distance(effective_state_B(cfg, phi1, t), effective_state_B(cfg, phi2, t))


# ===============================
# SWEEP
# ===============================
def sweep(cfg: ExperimentConfig, threads: int = None) -> List[SignalRow]:
    """
    Every (φ1, φ2, t) of the configured grids, ordered by (φ1, φ2, t) index

    B's effective state depends on one setting at a time, so it is computed
    once per (φ, t) and paired afterwards.
    """
    ensembles = ordered_map(prepare_B_ensemble, cfg.phis, threads=threads)
    cells = [(i, k) for i in range(len(cfg.phis)) for k in range(len(cfg.times))]

    def effective(cell):
        i, k = cell
        vec = _recombined_bloch(ensembles[i], cfg.kind, cfg.params, cfg.times[k], cfg.weighting)
        return bloch_to_density(vec)

    states = dict(zip(cells, ordered_map(effective, cells, threads=threads)))
    logger.debug("sweep: %d settings x %d times", len(cfg.phis), len(cfg.times))

    rows = []
    for i, phi1 in enumerate(cfg.phis):
        for j, phi2 in enumerate(cfg.phis):
            for k, t in enumerate(cfg.times):
                rows.append(
                    SignalRow(
                        phi1=phi1,
                        phi2=phi2,
                        t=t,
                        gt=cfg.params.g * t,
                        distance=trace_distance(states[(i, k)], states[(j, k)]),
                        weighting=cfg.weighting,
                    )
                )
    return rows


def sweep_frame(rows: Sequence[SignalRow]) -> pd.DataFrame:
    """Rows as a table with the documented gisin columns"""
    return pd.DataFrame(
        [
            {
                "phi1": r.phi1,
                "phi2": r.phi2,
                "gt": r.gt,
                "weighting": r.weighting.value,
                "distance": r.distance,
            }
            for r in rows
        ],
        columns=GISIN_COLUMNS,
    )
