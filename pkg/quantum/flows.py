# quantum/flows.py - nonlinear one-parameter flows on the Bloch ball

"""
Two dynamical laws on the Bloch ball, each in closed form and as an ODE.

* Boost flow:    dn/dt = g(e - n(e·n)), solved by the relativistic velocity
                 addition rule with rapidity η = gt.
* Weinberg flow: dn/dt = g(e×n)(e·n), solved by a rotation about e through
                 θ = gt(e·ξ).

A fixed-step classical RK4 integrator is kept alongside as an independent
oracle for both closed forms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from quantum.qstate import BlochLike, BlochVector, bloch_to_density, von_neumann_entropy
from utils.validators import InvalidStateError, IntegrationError, validate_flow_params

logger = logging.getLogger(__name__)

# Below this |η| the direct tanh/sech evaluation has no cancellation problem
_DIRECT_RAPIDITY = 1.0


# ===============================
# PARAMETERS
# ===============================
class FlowKind(str, Enum):
    QUASI_LINEAR_BOOST = "boost"
    WEINBERG = "weinberg"

    @classmethod
    def parse(cls, value) -> "FlowKind":
        if isinstance(value, FlowKind):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "boost": cls.QUASI_LINEAR_BOOST,
            "quasilinear": cls.QUASI_LINEAR_BOOST,
            "quasi_linear": cls.QUASI_LINEAR_BOOST,
            "quasi_linear_boost": cls.QUASI_LINEAR_BOOST,
            "quasilinearboost": cls.QUASI_LINEAR_BOOST,
            "weinberg": cls.WEINBERG,
        }
        if key not in aliases:
            raise InvalidStateError(f"Validation failed: unknown flow kind '{value}'")
        return aliases[key]


@dataclass(frozen=True, eq=False)
class FlowParams:
    """Unit direction e and rate g > 0 (natural units)"""

    e: np.ndarray
    g: float = 1.0

    def __post_init__(self):
        e = np.asarray(self.e, dtype=float)
        is_valid, errors = validate_flow_params(e, self.g)
        if not is_valid:
            raise InvalidStateError(f"Validation failed: {'; '.join(errors.values())}")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "g", float(self.g))

    @classmethod
    def along(cls, direction, g: float = 1.0) -> "FlowParams":
        """Normalize a nonzero direction before building the parameters"""
        d = np.asarray(direction, dtype=float)
        norm = float(np.linalg.norm(d))
        if not np.isfinite(norm) or norm == 0.0:
            raise InvalidStateError("Validation failed: flow direction must be a nonzero vector")
        return cls(d / norm, g)


# ===============================
# BOOST FLOW
# ===============================
def _boost_terms(eta: float):
    """
    (1 + a·tanh η, a + tanh η, sech η) evaluators for the boost rule

    Large |η| is evaluated through e^{-2|η|} so that neither cosh nor sinh
    is formed and 1 - |tanh η| keeps full relative precision.
    """
    y = abs(eta)
    if y < _DIRECT_RAPIDITY:
        th = np.tanh(eta)
        sech = 1.0 / np.cosh(eta)
        return (lambda a: 1.0 + a * th), (lambda a: a + th), sech

    s = 1.0 if eta > 0 else -1.0
    u = np.exp(-2.0 * y)
    tau = 2.0 * u / (1.0 + u)  # 1 - |tanh η|
    sech = 2.0 * np.exp(-y) / (1.0 + u)
    return (lambda a: (1.0 + a * s) - a * s * tau), (lambda a: (a + s) - s * tau), sech


def one_plus_a_tanh(a: float, eta: float) -> float:
    """1 + a·tanh η, accurate even when it is close to zero"""
    return float(_boost_terms(eta)[0](a))


def boost_velocity(v: BlochLike, e, eta: float) -> np.ndarray:
    """
    Relativistic addition of velocity v with a boost of rapidity η along e

        v' = (v + e[sinh η + (cosh η - 1)(e·v)]) / (cosh η + (e·v) sinh η)
    """
    vec = BlochVector.of(v).n
    e = np.asarray(e, dtype=float)
    if not np.isfinite(eta):
        raise InvalidStateError(f"Validation failed: rapidity must be finite, got {eta}")
    if eta == 0.0:
        return vec.copy()

    a = float(np.clip(e @ vec, -1.0, 1.0))
    perp = vec - a * e
    denominator, parallel, sech = _boost_terms(eta)

    den = denominator(a)
    if den <= 0.0:
        # only v = -e with e^{-2|η|} underflowing; v is a fixed point
        return vec.copy()
    return (perp * sech + e * parallel(a)) / den


def quasilinear_flow(xi: BlochLike, p: FlowParams, t: float) -> BlochVector:
    """n(t) = boost of ξ along e with rapidity gt"""
    return BlochVector(boost_velocity(xi, p.e, p.g * t))


def quasilinear_rhs(n: BlochLike, p: FlowParams) -> np.ndarray:
    """dn/dt = g(e - n(e·n))"""
    return _boost_rhs(BlochVector.of(n).n, p.e, p.g)


def _boost_rhs(n: np.ndarray, e: np.ndarray, g) -> np.ndarray:
    en = np.sum(e * n, axis=-1, keepdims=True)
    return g * (e - n * en)


# ===============================
# WEINBERG FLOW
# ===============================
def weinberg_rhs(n: BlochLike, p: FlowParams) -> np.ndarray:
    """dn/dt = g(e×n)(e·n)"""
    return _weinberg_rhs(BlochVector.of(n).n, p.e, p.g)


def _weinberg_rhs(n: np.ndarray, e: np.ndarray, g) -> np.ndarray:
    en = np.sum(e * n, axis=-1, keepdims=True)
    return g * np.cross(np.broadcast_to(e, n.shape), n) * en


def weinberg_flow(xi: BlochLike, p: FlowParams, t: float) -> BlochVector:
    """Rotation of ξ about e through θ = gt(e·ξ)"""
    vec = BlochVector.of(xi).n
    e = p.e
    a = float(e @ vec)
    theta = p.g * t * a
    c, s = np.cos(theta), np.sin(theta)
    return BlochVector(vec * c + np.cross(e, vec) * s + e * a * (1.0 - c))


# ===============================
# DISPATCH
# ===============================
_CLOSED_FORMS = {
    FlowKind.QUASI_LINEAR_BOOST: quasilinear_flow,
    FlowKind.WEINBERG: weinberg_flow,
}

_RHS = {
    FlowKind.QUASI_LINEAR_BOOST: _boost_rhs,
    FlowKind.WEINBERG: _weinberg_rhs,
}


def flow(kind: FlowKind, xi: BlochLike, p: FlowParams, t: float) -> BlochVector:
    return _CLOSED_FORMS[FlowKind.parse(kind)](xi, p, t)


def rhs(kind: FlowKind, n: BlochLike, p: FlowParams) -> np.ndarray:
    return _RHS[FlowKind.parse(kind)](BlochVector.of(n).n, p.e, p.g)


def trajectory(kind: FlowKind, xi: BlochLike, p: FlowParams, times: Sequence[float]) -> np.ndarray:
    """Closed-form path, one row per time"""
    return np.array([flow(kind, xi, p, t).n for t in times]).reshape(len(times), 3)


def entropy_trajectory(kind: FlowKind, xi: BlochLike, p: FlowParams, times: Sequence[float]) -> np.ndarray:
    """von Neumann entropy (nats) along the closed-form path"""
    return np.array([von_neumann_entropy(bloch_to_density(flow(kind, xi, p, t))) for t in times])


# ===============================
# RK4 ORACLE
# ===============================
def _rk4(fn, y: np.ndarray, h: float, steps: int) -> np.ndarray:
    for step in range(steps):
        k1 = fn(y)
        k2 = fn(y + 0.5 * h * k1)
        k3 = fn(y + 0.5 * h * k2)
        k4 = fn(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state at step {step + 1} of {steps}")
    return y


def rk4_integrate(kind: FlowKind, xi: BlochLike, p: FlowParams, t: float, steps: int) -> np.ndarray:
    """
    Classical fixed-step RK4 on the selected right-hand side

    Args:
        kind: which law to integrate
        xi: initial Bloch vector
        p: flow parameters
        t: final time (finite)
        steps: number of equal steps, ≥ 1
    Returns:
        the integrated 3-vector as computed; a coarse step may leave the ball
    """
    if int(steps) != steps or steps < 1:
        raise InvalidStateError(f"Validation failed: steps must be a positive integer, got {steps}")
    if not np.isfinite(t):
        raise InvalidStateError(f"Validation failed: time must be finite, got {t}")

    kind = FlowKind.parse(kind)
    y0 = BlochVector.of(xi).n
    fn = _RHS[kind]
    h = t / steps
    logger.debug("rk4 %s: t=%g steps=%d h=%g", kind.value, t, steps, h)
    return _rk4(lambda y: fn(y, p.e, p.g), y0, h, int(steps))


def rk4_integrate_batch(kind: FlowKind, xis: np.ndarray, es: np.ndarray, g: float, t: float, steps: int) -> np.ndarray:
    """
    RK4 over a batch of initial states, each with its own unit direction

    Args:
        xis: (N, 3) initial Bloch vectors
        es: (N, 3) unit directions, or a single (3,) direction
        g: rate
    Returns:
        (N, 3) final states
    """
    if int(steps) != steps or steps < 1:
        raise InvalidStateError(f"Validation failed: steps must be a positive integer, got {steps}")
    kind = FlowKind.parse(kind)
    fn = _RHS[kind]
    es = np.asarray(es, dtype=float)
    return _rk4(lambda y: fn(y, es, g), np.asarray(xis, dtype=float), t / steps, int(steps))


def convergence_ratio(kind: FlowKind, xi: BlochLike, p: FlowParams, t: float, steps: int) -> float:
    """Closed-form mismatch at `steps` divided by the mismatch at 2·steps"""
    exact = flow(kind, xi, p, t).n
    coarse = np.linalg.norm(rk4_integrate(kind, xi, p, t, steps) - exact)
    fine = np.linalg.norm(rk4_integrate(kind, xi, p, t, 2 * steps) - exact)
    return float(coarse / fine)


def semigroup_check(kind: FlowKind, xi: BlochLike, p: FlowParams, t1: float, t2: float) -> float:
    """|f_{t2}(f_{t1}(ξ)) - f_{t1+t2}(ξ)|"""
    composed = flow(kind, flow(kind, xi, p, t1), p, t2).n
    direct = flow(kind, xi, p, t1 + t2).n
    return float(np.linalg.norm(composed - direct))
