# validators.py - state and parameter validation layer

import numpy as np
from typing import Tuple, Dict

# ===============================
# TOLERANCES
# ===============================
NORM_TOL = 1e-9
MATRIX_TOL = 1e-12
WEIGHT_TOL = 1e-12
UNIT_TOL = 1e-12


# ===============================
# ERROR HIERARCHY
# ===============================
class QLinFlowError(Exception):
    """Base class for every error raised by this package"""


class InvalidStateError(QLinFlowError, ValueError):
    """A Bloch vector, density matrix, ensemble or flow parameter is not admissible"""


class ZeroProbabilityError(QLinFlowError, ValueError):
    """A projector selects a branch of (numerically) zero probability"""


class DegenerateDenominatorError(QLinFlowError, ZeroDivisionError):
    """The λ(t) denominator vanished"""


class IntegrationError(QLinFlowError, RuntimeError):
    """The fixed-step integrator produced a non-finite value"""


class ConfigError(QLinFlowError, ValueError):
    """Bad run configuration (unknown key, malformed value, violated precondition)"""


def _format_errors(errors: Dict[str, str]) -> str:
    return "; ".join(errors.values())


# ===============================
# BLOCH VECTORS
# ===============================
def validate_bloch(n) -> Tuple[bool, Dict[str, str]]:
    """
    Validate a candidate Bloch vector

    Checks:
    - shape (3,)
    - finite, real entries
    - |n| ≤ 1 + NORM_TOL

    Returns:
        (is_valid, error_details)
    """
    errors = {}
    arr = np.asarray(n)

    if arr.shape != (3,):
        errors["shape"] = f"Bloch vector must have shape (3,), got {arr.shape}"
        return False, errors

    if np.iscomplexobj(arr) and np.any(np.abs(arr.imag) > MATRIX_TOL):
        errors["complex"] = "Bloch vector must be real"
        return False, errors

    arr = np.real(arr).astype(float)
    if not np.all(np.isfinite(arr)):
        errors["finite"] = "Bloch vector contains non-finite entries"
        return False, errors

    norm = float(np.linalg.norm(arr))
    if norm > 1.0 + NORM_TOL:
        errors["norm"] = f"Bloch vector norm {norm:.12g} exceeds 1"

    return len(errors) == 0, errors


def ensure_bloch(n) -> np.ndarray:
    """Return n as a float array or raise InvalidStateError"""
    is_valid, errors = validate_bloch(n)
    if not is_valid:
        raise InvalidStateError(f"Validation failed: {_format_errors(errors)}")
    return np.real(np.asarray(n)).astype(float)


# ===============================
# DENSITY MATRICES
# ===============================
def validate_density(matrix, dim: int) -> Tuple[bool, Dict[str, str]]:
    """
    Validate a dim×dim density matrix

    Checks:
    - shape
    - Hermiticity to MATRIX_TOL
    - unit trace to MATRIX_TOL
    - eigenvalues ≥ -MATRIX_TOL (no clamping)

    Returns:
        (is_valid, error_details)
    """
    errors = {}
    m = np.asarray(matrix, dtype=complex)

    if m.shape != (dim, dim):
        errors["shape"] = f"density matrix must be {dim}x{dim}, got {m.shape}"
        return False, errors

    if not np.all(np.isfinite(m)):
        errors["finite"] = "density matrix contains non-finite entries"
        return False, errors

    herm_gap = float(np.max(np.abs(m - m.conj().T)))
    if herm_gap > MATRIX_TOL:
        errors["hermitian"] = f"matrix is not Hermitian (max gap {herm_gap:.3g})"
        # eigvalsh on a non-Hermitian matrix is meaningless
        return False, errors

    trace = complex(np.trace(m))
    if abs(trace - 1.0) > MATRIX_TOL:
        errors["trace"] = f"trace is {trace.real:.15g}, expected 1"

    min_eig = float(np.min(np.linalg.eigvalsh(m)))
    if min_eig < -MATRIX_TOL:
        errors["positive"] = f"negative eigenvalue {min_eig:.3g}"

    return len(errors) == 0, errors


def ensure_density(matrix, dim: int) -> np.ndarray:
    """Return matrix as a complex array or raise InvalidStateError"""
    is_valid, errors = validate_density(matrix, dim)
    if not is_valid:
        raise InvalidStateError(f"Validation failed: {_format_errors(errors)}")
    return np.asarray(matrix, dtype=complex)


def validate_projector(matrix) -> Tuple[bool, Dict[str, str]]:
    """Projector checks: square, Hermitian and idempotent to MATRIX_TOL"""
    errors = {}
    m = np.asarray(matrix, dtype=complex)

    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        errors["shape"] = f"projector must be square, got {m.shape}"
        return False, errors

    if float(np.max(np.abs(m - m.conj().T))) > MATRIX_TOL:
        errors["hermitian"] = "projector is not Hermitian"

    if float(np.max(np.abs(m @ m - m))) > MATRIX_TOL:
        errors["idempotent"] = "projector is not idempotent"

    return len(errors) == 0, errors


def ensure_projector(matrix) -> np.ndarray:
    is_valid, errors = validate_projector(matrix)
    if not is_valid:
        raise InvalidStateError(f"Validation failed: {_format_errors(errors)}")
    return np.asarray(matrix, dtype=complex)


# ===============================
# ENSEMBLES AND FLOW PARAMETERS
# ===============================
def validate_weights(weights) -> Tuple[bool, Dict[str, str]]:
    """
    Ensemble weights: each in [0, 1], summing to 1 within WEIGHT_TOL

    Returns:
        (is_valid, error_details)
    """
    errors = {}
    w = np.asarray(weights, dtype=float)

    if w.size == 0:
        errors["empty"] = "ensemble has no members"
        return False, errors

    if np.any(w < -WEIGHT_TOL) or np.any(w > 1.0 + WEIGHT_TOL):
        errors["range"] = "ensemble weights must lie in [0, 1]"

    total = float(np.sum(w))
    if abs(total - 1.0) > WEIGHT_TOL:
        errors["sum"] = f"ensemble weights sum to {total:.15g}, expected 1"

    return len(errors) == 0, errors


def validate_flow_params(e, g) -> Tuple[bool, Dict[str, str]]:
    """Flow direction must be a unit 3-vector, rate strictly positive"""
    errors = {}
    arr = np.asarray(e, dtype=float)

    if arr.shape != (3,):
        errors["e_shape"] = f"direction must have shape (3,), got {arr.shape}"
    elif not np.all(np.isfinite(arr)):
        errors["e_finite"] = "direction contains non-finite entries"
    elif abs(float(np.linalg.norm(arr)) - 1.0) > UNIT_TOL:
        errors["e_unit"] = f"direction norm {np.linalg.norm(arr):.15g} is not 1"

    if not np.isfinite(g) or g <= 0:
        errors["g"] = f"rate g must be finite and > 0, got {g}"

    return len(errors) == 0, errors
