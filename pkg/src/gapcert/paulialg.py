"""Dense Hermitian operator construction for n-qubit Hamiltonians.

Operators are specified either as real-weighted Pauli strings, as an
explicit diagonal, or as the projector complement ``I - |psi><psi|`` of a
unit vector, and realized as dense complex matrices in the computational
basis.

Basis convention: a basis index z is the integer value of the bitstring
with qubit 0 as the *leftmost* tensor factor, i.e. qubit 0 is the most
significant bit.  For two qubits the order is ``00, 01, 10, 11``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PAULI_AXES = "IXYZ"

# Relative tolerance used when validating hermiticity of explicit matrices.
HERMITICITY_RTOL = 1e-12
# Entries below PATTERN_RTOL * (1 + max |entry|) count as structural zeros.
PATTERN_RTOL = 1e-12


@dataclass(frozen=True)
class PauliString:
    """A word over {I, X, Y, Z}, one letter per qubit, qubit 0 first."""

    axes: str

    def __post_init__(self) -> None:
        if not self.axes:
            raise ValueError("Pauli string must cover at least one qubit")
        bad = set(self.axes) - set(PAULI_AXES)
        if bad:
            raise ValueError(
                f"Pauli string {self.axes!r} contains invalid axes {sorted(bad)}"
            )

    def __len__(self) -> int:
        return len(self.axes)

    def __str__(self) -> str:
        return self.axes


@dataclass(frozen=True)
class PauliExpression:
    """A real linear combination of Pauli strings on ``n_qubits`` qubits."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        for coefficient, string in self.terms:
            if not math.isfinite(coefficient):
                raise ValueError(f"non-finite coefficient {coefficient!r}")
            if len(string) != self.n_qubits:
                raise ValueError(
                    f"term {string.axes!r} acts on {len(string)} qubits, "
                    f"expected {self.n_qubits}"
                )

    @classmethod
    def from_terms(cls, n_qubits, pairs) -> "PauliExpression":
        """Build from an iterable of ``(coefficient, axes)`` pairs."""
        terms = tuple(
            (float(c), s if isinstance(s, PauliString) else PauliString(s))
            for c, s in pairs
        )
        return cls(n_qubits, terms)


@dataclass(frozen=True)
class DiagonalSpec:
    """A diagonal operator given by its 2**n_qubits diagonal values."""

    n_qubits: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        expected = 1 << self.n_qubits
        if len(self.values) != expected:
            raise ValueError(
                f"diagonal length {len(self.values)} does not match "
                f"2**{self.n_qubits} = {expected}"
            )
        for v in self.values:
            if not math.isfinite(v):
                raise ValueError(f"non-finite diagonal value {v!r}")

    @classmethod
    def from_values(cls, n_qubits, values) -> "DiagonalSpec":
        return cls(n_qubits, tuple(float(v) for v in values))


@dataclass(frozen=True, eq=False)
class ProjectorSpec:
    """The complement ``I - |psi><psi|`` of a unit vector on n qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, expected "
                f"({1 << self.n_qubits},)"
            )
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"amplitudes must be normalized, got |psi| = {norm}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def uniform(cls, n_qubits: int) -> "ProjectorSpec":
        d = 1 << n_qubits
        return cls(n_qubits, np.full(d, 1.0 / math.sqrt(d), dtype=complex))

    def is_uniform(self, tol: float = 1e-12) -> bool:
        d = self.amplitudes.size
        return bool(np.max(np.abs(self.amplitudes - 1.0 / math.sqrt(d))) <= tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectorSpec):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(
            self.amplitudes, other.amplitudes
        )


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A dense complex matrix validated to be Hermitian.

    The entry array is stored read-only.  Hermiticity is enforced up to
    ``HERMITICITY_RTOL * (1 + max |entry|)``.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("matrix dimension must be positive")
        scale = 1.0 + (np.max(np.abs(m)) if m.size else 0.0)
        defect = np.max(np.abs(m - m.conj().T))
        if defect > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e} "
                f"exceeds {HERMITICITY_RTOL * scale:.3e}"
            )
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)


def build_pauli(expression: PauliExpression) -> HermitianMatrix:
    """Realize a Pauli expression as a dense Hermitian matrix.

    Works column-by-column in bit arithmetic: a string with X or Y on a
    set of qubits couples column z to row ``z ^ flip_mask``; Z and Y
    letters contribute sign/phase factors depending on the source bits.
    """
    n = expression.n_qubits
    d = 1 << n
    out = np.zeros((d, d), dtype=complex)
    cols = np.arange(d)
    for coefficient, string in expression.terms:
        amplitude = np.full(d, coefficient, dtype=complex)
        flip_mask = 0
        for q, axis in enumerate(string.axes):
            if axis == "I":
                continue
            bit = (cols >> (n - 1 - q)) & 1
            if axis == "X":
                flip_mask |= 1 << (n - 1 - q)
            elif axis == "Y":
                flip_mask |= 1 << (n - 1 - q)
                amplitude = amplitude * (1j * (1 - 2 * bit))
            else:  # Z
                amplitude = amplitude * (1 - 2 * bit)
        np.add.at(out, (cols ^ flip_mask, cols), amplitude)
    return HermitianMatrix(out)


def build_diagonal(spec: DiagonalSpec) -> HermitianMatrix:
    """Realize a diagonal spec; off-diagonal entries are exactly zero."""
    return HermitianMatrix(np.diag(np.asarray(spec.values, dtype=complex)))


def build_projector_complement(spec: ProjectorSpec) -> HermitianMatrix:
    """Realize ``I - |psi><psi|`` for the stored unit vector."""
    psi = spec.amplitudes
    return HermitianMatrix(np.eye(psi.size, dtype=complex) - np.outer(psi, psi.conj()))


def to_matrix(operator) -> HermitianMatrix:
    """Dispatch any supported operator description to its dense matrix."""
    if isinstance(operator, HermitianMatrix):
        return operator
    if isinstance(operator, PauliExpression):
        return build_pauli(operator)
    if isinstance(operator, DiagonalSpec):
        return build_diagonal(operator)
    if isinstance(operator, ProjectorSpec):
        return build_projector_complement(operator)
    raise TypeError(f"unsupported operator description: {type(operator).__name__}")


def interpolate(h_i: HermitianMatrix, h_p: HermitianMatrix, s: float) -> HermitianMatrix:
    """Convex combination ``(1-s) * h_i + s * h_p`` for s in [0, 1].

    The endpoints return the inputs unchanged, so ``s = 0`` is exactly
    ``h_i`` and ``s = 1`` exactly ``h_p``.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"interpolation parameter s = {s} outside [0, 1]")
    if h_i.dim != h_p.dim:
        raise ValueError(
            f"dimension mismatch: h_i is {h_i.dim}-dimensional, h_p {h_p.dim}"
        )
    if s == 0.0:
        return h_i
    if s == 1.0:
        return h_p
    return HermitianMatrix((1.0 - s) * h_i.entries + s * h_p.entries)
