"""Dense Hermitian eigendecomposition with deterministic conventions.

Eigenvalues are returned in ascending order.  Every eigenvector is
phase-fixed so that its largest-magnitude component is real and
nonnegative (ties broken by the lowest index), which makes repeated runs
on identical input bit-for-bit reproducible and comparisons up to global
phase unnecessary in the common case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .paulialg import HermitianMatrix

# Residual / orthonormality validation threshold (relative).
RESIDUAL_RTOL = 1e-9
# Two eigenvalues within 1e-8 * (1 + spectral width) count as degenerate.
DEGENERACY_RTOL = 1e-8


class EigensolverError(RuntimeError):
    """Raised when a decomposition fails its residual validation."""


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Full spectrum of a Hermitian matrix.

    Attributes
    ----------
    dim : int
        Matrix dimension d.
    eigenvalues : ndarray, shape (d,)
        Real eigenvalues in ascending order.
    eigenvectors : ndarray, shape (d, d)
        Orthonormal eigenvectors as columns, phase-fixed.
    """

    dim: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class GroundState:
    """Lowest eigenpair together with a degeneracy verdict.

    ``degeneracy_gap`` is the distance to the second eigenvalue
    (``inf`` for one-dimensional problems); ``is_unique`` holds when that
    gap exceeds ``DEGENERACY_RTOL * (1 + spectral width)``.
    """

    energy: float
    vector: np.ndarray
    degeneracy_gap: float
    is_unique: bool


def _as_entries(h) -> np.ndarray:
    if isinstance(h, HermitianMatrix):
        return h.entries
    # Route plain arrays through the validating wrapper so non-Hermitian
    # input is rejected with a clear message.
    return HermitianMatrix(np.asarray(h)).entries


def fix_phase(vector: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase to the canonical convention.

    The component of largest magnitude is made real and nonnegative.
    Components within one part in 1e9 of the maximum count as tied and
    the lowest index wins, so vectors with equal-magnitude entries (up
    to rounding) are fixed deterministically.
    """
    v = np.asarray(vector, dtype=complex)
    magnitudes = np.abs(v)
    top = float(magnitudes.max(initial=0.0))
    if top == 0.0:
        return v.copy()
    pivot = int(np.nonzero(magnitudes >= (1.0 - 1e-9) * top)[0][0])
    return v * (v[pivot].conjugate() / magnitudes[pivot])


def eigensystem(h) -> EigenSystem:
    """Diagonalize a Hermitian matrix.

    Parameters
    ----------
    h : HermitianMatrix or array_like
        The matrix to decompose.  Arrays are validated for hermiticity.

    Returns
    -------
    EigenSystem
        Ascending eigenvalues and phase-fixed orthonormal eigenvectors.

    Raises
    ------
    EigensolverError
        If the decomposition violates the residual bound
        ``|H v_m - e_m v_m| <= RESIDUAL_RTOL * (1 + |e_m|)`` or the
        eigenvectors fail orthonormality at the same relative scale.
    """
    entries = _as_entries(h)
    values, vectors = np.linalg.eigh(entries)
    d = entries.shape[0]
    for m in range(d):
        vectors[:, m] = fix_phase(vectors[:, m])

    residual = entries @ vectors - vectors * values[np.newaxis, :]
    bound = RESIDUAL_RTOL * (1.0 + np.abs(values))
    worst = np.max(np.abs(residual), axis=0)
    if np.any(worst > bound):
        m = int(np.argmax(worst - bound))
        raise EigensolverError(
            f"eigenpair {m} residual {worst[m]:.3e} exceeds {bound[m]:.3e}"
        )
    gram_defect = np.max(np.abs(vectors.conj().T @ vectors - np.eye(d)))
    if gram_defect > RESIDUAL_RTOL:
        raise EigensolverError(
            f"eigenvectors lose orthonormality: defect {gram_defect:.3e}"
        )
    values.flags.writeable = False
    vectors.flags.writeable = False
    return EigenSystem(dim=d, eigenvalues=values, eigenvectors=vectors)


def degeneracy_tolerance(eigenvalues: np.ndarray) -> float:
    """Degeneracy threshold scaled by the spectral width."""
    width = float(eigenvalues[-1] - eigenvalues[0]) if eigenvalues.size > 1 else 0.0
    return DEGENERACY_RTOL * (1.0 + width)


def ground_state(h) -> GroundState:
    """Lowest eigenpair of a Hermitian matrix.

    Returns
    -------
    GroundState
        Energy, phase-fixed eigenvector, gap to the next eigenvalue and
        a uniqueness verdict at tolerance
        ``DEGENERACY_RTOL * (1 + spectral width)``.
    """
    system = eigensystem(h)
    if system.dim == 1:
        gap = math.inf
    else:
        gap = float(system.eigenvalues[1] - system.eigenvalues[0])
    return GroundState(
        energy=float(system.eigenvalues[0]),
        vector=system.eigenvectors[:, 0],
        degeneracy_gap=gap,
        is_unique=gap > degeneracy_tolerance(system.eigenvalues),
    )


def low_spectrum(h, m: int) -> tuple[np.ndarray, np.ndarray]:
    """The ``m`` lowest eigenpairs, consistent with :func:`eigensystem`.

    Returns ``(values, vectors)`` where ``values`` has shape (m,) and
    ``vectors`` shape (d, m) with phase-fixed columns.
    """
    system = eigensystem(h)
    if not 1 <= m <= system.dim:
        raise ValueError(f"requested {m} levels from a {system.dim}-dimensional matrix")
    return system.eigenvalues[:m], system.eigenvectors[:, :m]
