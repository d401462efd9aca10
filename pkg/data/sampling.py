# data/sampling.py - seeded samplers for Bloch-ball states

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator so draws depend only on (seed, draw index)"""
    return np.random.Generator(np.random.Philox(int(seed)))


def uniform_ball(rng: np.random.Generator, size: int = None) -> np.ndarray:
    """
    Uniform points in the closed unit ball by rejection from the cube

    Returns:
        (3,) when size is None, otherwise (size, 3)
    """
    count = 1 if size is None else int(size)
    points = np.empty((count, 3))
    filled = 0
    while filled < count:
        candidate = rng.uniform(-1.0, 1.0, size=3)
        if candidate @ candidate <= 1.0:
            points[filled] = candidate
            filled += 1
    return points[0] if size is None else points


def unit_vectors(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform directions on the unit sphere, shape (size, 3)"""
    raw = rng.normal(size=(int(size), 3))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Full-rank random density matrix G G† / tr(G G†)"""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.real(np.trace(rho))


def random_rank1_projector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """|ψ><ψ| for a random unit vector ψ"""
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
