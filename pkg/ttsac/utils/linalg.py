"""
Dense linear algebra helpers.

Small-matrix utilities on top of numpy.linalg: spectral norms, PSD checks,
symmetric square roots and seeded orthonormal bases.
"""

import numpy as np

PSD_TOLERANCE = 1e-10


def spectral_norm(matrix: np.ndarray) -> float:
    """Largest singular value ||A||_2."""
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, ord=2))


def is_symmetric(matrix: np.ndarray, tol: float = PSD_TOLERANCE) -> bool:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return bool(np.max(np.abs(matrix - matrix.T), initial=0.0) <= tol * scale)


def is_psd(matrix: np.ndarray, tol: float = PSD_TOLERANCE) -> bool:
    """Symmetric with every eigenvalue >= -tol."""
    if not is_symmetric(matrix, tol):
        return False
    eigenvalues = np.linalg.eigvalsh((matrix + matrix.T) / 2.0)
    return bool(eigenvalues.min() >= -tol)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Symmetric square root S with S @ S = matrix; tiny negative eigenvalues are clipped."""
    eigenvalues, vectors = np.linalg.eigh((matrix + matrix.T) / 2.0)
    root = (vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ vectors.T
    return (root + root.T) / 2.0


def orthonormal_columns(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """
    Random matrix with orthonormal columns (rows >= cols).

    QR of a Gaussian matrix with the sign convention diag(R) > 0, which makes
    the result Haar distributed.
    """
    if rows < cols:
        raise ValueError(f"need rows >= cols for orthonormal columns, got {rows}x{cols}")
    q, r = np.linalg.qr(rng.standard_normal((rows, cols)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    return orthonormal_columns(dim, dim, rng)


def unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    direction = rng.standard_normal(dim)
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        direction = np.zeros(dim)
        direction[0] = 1.0
        return direction
    return direction / norm
