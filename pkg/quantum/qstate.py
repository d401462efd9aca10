# quantum/qstate.py - exact one- and two-qubit state algebra

"""
Small-dimension quantum state algebra.

Qubits carry two equivalent representations: the real Bloch vector n and the
2x2 density matrix ½(I + n·σ). Flows work on the Bloch form, measurements and
partial traces on the matrix form. Two-qubit operators use the computational
basis |00>, |01>, |10>, |11> with subsystem A as the left tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np

from utils.validators import (
    InvalidStateError,
    ZeroProbabilityError,
    ensure_bloch,
    ensure_density,
    ensure_projector,
    validate_weights,
)

# ===============================
# PAULI BASIS
# ===============================
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

# Branch probabilities below this are treated as impossible outcomes
PROB_TOL = 1e-12


def pauli_vector() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The standard Pauli triple (σ_x, σ_y, σ_z)"""
    return SIGMA_X.copy(), SIGMA_Y.copy(), SIGMA_Z.copy()


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


# ===============================
# DOMAIN TYPES
# ===============================
@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real 3-vector on or inside the Bloch ball"""

    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _frozen(ensure_bloch(self.n)))

    @classmethod
    def of(cls, value: "BlochLike") -> "BlochVector":
        if isinstance(value, BlochVector):
            return value
        return cls(np.asarray(value, dtype=float))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.n))

    def to_density(self) -> "QubitDensity":
        return bloch_to_density(self)

    def __repr__(self) -> str:
        return f"BlochVector({self.n[0]:.6g}, {self.n[1]:.6g}, {self.n[2]:.6g})"


BlochLike = Union[BlochVector, np.ndarray, Iterable[float]]


@dataclass(frozen=True, eq=False)
class QubitDensity:
    """2x2 Hermitian, unit-trace, positive-semidefinite operator"""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(ensure_density(self.matrix, 2)))

    @property
    def bloch(self) -> BlochVector:
        return density_to_bloch(self)

    def __repr__(self) -> str:
        return f"QubitDensity(bloch={self.bloch!r})"


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """4x4 density operator on A⊗B"""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(ensure_density(self.matrix, 4)))


@dataclass(frozen=True, eq=False)
class Projector:
    """Hermitian idempotent operator of any dimension"""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(ensure_projector(self.matrix)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def complement(self) -> "Projector":
        return type(self)(np.eye(self.dim, dtype=complex) - self.matrix)


class Projector2Q(Projector):
    """Projector on the two-qubit space"""

    def __post_init__(self):
        super().__post_init__()
        if self.matrix.shape != (4, 4):
            raise InvalidStateError(
                f"Validation failed: two-qubit projector must be 4x4, got {self.matrix.shape}"
            )


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Finite list of (weight, state) pairs with weights summing to one"""

    members: Tuple[Tuple[float, QubitDensity], ...]

    def __post_init__(self):
        members = tuple((float(w), s) for w, s in self.members)
        is_valid, errors = validate_weights([w for w, _ in members])
        if not is_valid:
            raise InvalidStateError(f"Validation failed: {'; '.join(errors.values())}")
        if not all(isinstance(s, QubitDensity) for _, s in members):
            raise InvalidStateError("Validation failed: ensemble members must be QubitDensity")
        object.__setattr__(self, "members", members)

    @property
    def weights(self) -> Tuple[float, ...]:
        return tuple(w for w, _ in self.members)

    @property
    def states(self) -> Tuple[QubitDensity, ...]:
        return tuple(s for _, s in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def mixture(self) -> QubitDensity:
        return mixture(self)


# ===============================
# BLOCH <-> DENSITY
# ===============================
def bloch_to_density(n: BlochLike) -> QubitDensity:
    """ρ = ½(I + n·σ)"""
    vec = BlochVector.of(n).n
    norm = float(np.linalg.norm(vec))
    if norm > 1.0:
        # within NORM_TOL of the sphere; the matrix itself must stay positive
        vec = vec / norm
    matrix =0.5 * (I2 + np.einsum("k,kij->ij", vec, PAULI))
    return QubitDensity(matrix)


def density_to_bloch(rho: QubitDensity) -> BlochVector:
    """n_k = tr(ρ σ_k)"""
    vec = np.real(np.einsum("ij,kji->k", rho.matrix, PAULI))
    return BlochVector(vec)


# ===============================
# FUNCTIONALS
# ===============================
def von_neumann_entropy(rho: QubitDensity) -> float:
    """
    -Σ λ_i ln λ_i in nats, with 0·ln 0 := 0

    For a qubit this is the binary entropy of (1 + |n|)/2.
    """
    eigs = np.linalg.eigvalsh(rho.matrix)
    eigs = eigs[eigs > 0.0]
    # clip rounding spill outside [0, ln 2]
    return float(min(max(0.0, -np.sum(eigs * np.log(eigs))), np.log(2.0)))


def purity(rho: Union[QubitDensity, TwoQubitDensity]) -> float:
    """tr(ρ²)"""
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


def is_pure(rho: Union[QubitDensity, TwoQubitDensity], atol: float = 1e-9) -> bool:
    return abs(purity(rho) - 1.0) <= atol


def trace_distance(
    rho1: Union[QubitDensity, TwoQubitDensity],
    rho2: Union[QubitDensity, TwoQubitDensity],
) -> float:
    """
    ½ tr|ρ1 - ρ2|

    Qubits use the Bloch identity ½|n1 - n2|, which is exactly symmetric
    in its arguments.
    """
    if isinstance(rho1, QubitDensity) and isinstance(rho2, QubitDensity):
        return 0.5 * float(np.linalg.norm(rho1.bloch.n - rho2.bloch.n))

    diff = np.asarray(rho1.matrix) - np.asarray(rho2.matrix)
    if diff.shape[0] != diff.shape[1]:
        raise InvalidStateError("Validation failed: trace distance needs square operators")
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


# ===============================
# TWO-QUBIT PREPARATION AND MEASUREMENT
# ===============================
def bell_state() -> TwoQubitDensity:
    """Singlet (|01> - |10>)/√2 as a density operator"""
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)
    return TwoQubitDensity(np.outer(psi, psi.conj()))


def polarization_vector(phi: float) -> np.ndarray:
    """ζ_φ = (cos φ, sin φ, 0)"""
    if not np.isfinite(phi):
        raise InvalidStateError(f"Validation failed: angle must be finite, got {phi}")
    return np.array([np.cos(phi), np.sin(phi), 0.0])


def projector_A(phi: float) -> Projector2Q:
    """π_φ = ½(I + ζ_φ·σ) ⊗ I"""
    zeta = polarization_vector(phi)
    local = 0.5 * (I2 + np.einsum("k,kij->ij", zeta, PAULI))
    return Projector2Q(np.kron(local, I2))


def nonselective_measure(rho: TwoQubitDensity, projector: Projector) -> TwoQubitDensity:
    """PρP + (I-P)ρ(I-P)"""
    p = projector.matrix
    q = I4 - p
    m = rho.matrix
    return TwoQubitDensity(p @ m @ p + q @ m @ q)


def selective_measure(rho, projector: Projector):
    """
    Condition ρ on the outcome P

    Returns:
        (PρP / tr(PρP), tr(Pρ)) with the state of the same type as ρ
    """
    m = np.asarray(rho.matrix)
    p = projector.matrix
    if p.shape != m.shape:
        raise InvalidStateError(
            f"Validation failed: projector shape {p.shape} does not match state shape {m.shape}"
        )

    probability = float(np.real(np.trace(p @ m)))
    if probability <= PROB_TOL:
        raise ZeroProbabilityError(f"outcome has probability {probability:.3g}")

    post = p @ m @ p
    post = post / np.real(np.trace(post))
    return type(rho)(post), probability


def partial_trace_A(rho: TwoQubitDensity) -> QubitDensity:
    """tr_A over the left tensor factor"""
    return QubitDensity(partial_trace_A_matrix(rho.matrix))


def partial_trace_A_matrix(matrix: np.ndarray) -> np.ndarray:
    # index layout (a, b, a', b'); sum over a = a'
    return np.einsum("abad->bd", np.asarray(matrix).reshape(2, 2, 2, 2))


def conditional_state_B(rho: TwoQubitDensity, projector: Projector2Q) -> Tuple[QubitDensity, float]:
    """B's state after A's selective outcome P, with the outcome probability"""
    post, probability = selective_measure(rho, projector)
    return partial_trace_A(post), probability


# ===============================
# ENSEMBLES
# ===============================
def mixture(ens: Ensemble) -> QubitDensity:
    """Σ w_i ρ_i"""
    total = np.zeros((2, 2), dtype=complex)
    for weight, state in ens.members:
        total = total + weight * state.matrix
    return QubitDensity(total)


def ensemble_from_bloch(members) -> Ensemble:
    """Build an Ensemble from (weight, Bloch vector) pairs"""
    return Ensemble(tuple((w, bloch_to_density(n)) for w, n in members))
