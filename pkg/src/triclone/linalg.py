"""Dense complex linear algebra over small tensor-product spaces.

States and operators are plain numpy arrays tagged with a tuple of
subsystem dimensions.  Subsystem 0 is the most significant factor of the
flattened index (big-endian), so for three qubits the ket |011> sits at
index 3.  Nothing in this module knows anything about physics beyond the
density-matrix axioms it validates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Tolerance ladder used throughout the package: 1e-14 for algebraic
# identities on tiny matrices, 1e-12 for state/channel identities, 1e-10
# for eigendecomposition residuals.
HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
NORM_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor most significant."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    """Left-to-right Kronecker product of several factors."""
    factors = list(factors)
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


@dataclass
class PureState:
    """Normalized complex amplitude vector over a tensor-product space."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.dims = tuple(int(d) for d in self.dims)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if any(d < 1 for d in self.dims):
            raise ValueError("subsystem dimensions must be positive")
        if self.amplitudes.size != int(np.prod(self.dims)):
            raise ValueError(
                f"amplitude vector of length {self.amplitudes.size} does not "
                f"match dims {self.dims}"
            )
        if not np.all(np.isfinite(self.amplitudes)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm} is not 1 within {NORM_ATOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density_matrix(self) -> "DensityMatrix":
        """Rank-one projector |psi><psi| as a validated density matrix."""
        return DensityMatrix(
            self.dims, np.outer(self.amplitudes, self.amplitudes.conj())
        )


@dataclass
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        self.dims = tuple(int(d) for d in self.dims)
        self.matrix = np.asarray(self.matrix, dtype=complex)
        d = int(np.prod(self.dims))
        if self.matrix.shape != (d, d):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match dims {self.dims}"
            )
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("matrix entries must be finite")
        herm = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if herm > HERMITIAN_ATOL:
            raise ValueError(f"matrix is not Hermitian (residual {herm:.3e})")
        tr = complex(np.trace(self.matrix))
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr} is not 1 within {TRACE_ATOL}")
        smallest = float(np.linalg.eigvalsh(self.matrix)[0])
        if smallest < EIGENVALUE_FLOOR:
            raise ValueError(
                f"matrix is not positive semidefinite (min eigenvalue {smallest:.3e})"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def partial_trace_matrix(
    matrix: np.ndarray, dims: Sequence[int], keep: Iterable[int]
) -> np.ndarray:
    """Partial trace of a raw square matrix over the subsystems not in ``keep``.

    Parameters
    ----------
    matrix : square array over the full tensor-product space
    dims : dimension of each subsystem, most significant first
    keep : 0-based indices of the subsystems to retain; the result keeps
        them in their original relative order

    Returns
    -------
    The reduced matrix on the kept subsystems.
    """
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    keep_sorted = sorted({int(k) for k in keep})
    if not keep_sorted:
        raise ValueError("keep must name at least one subsystem")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= n:
        raise ValueError(f"keep indices {keep_sorted} out of range for {n} subsystems")
    traced = [i for i in range(n) if i not in keep_sorted]
    work = np.asarray(matrix, dtype=complex).reshape(dims + dims)
    remaining = list(dims)
    # Trace highest axes first so lower axis indices stay valid.
    for i in reversed(traced):
        work = np.trace(work, axis1=i, axis2=i + len(remaining))
        del remaining[i]
    d = int(np.prod(remaining))
    return work.reshape(d, d)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept subsystems (0-based indices)."""
    keep_sorted = sorted({int(k) for k in keep})
    reduced = partial_trace_matrix(rho.matrix, rho.dims, keep_sorted)
    return DensityMatrix(tuple(rho.dims[i] for i in keep_sorted), reduced)


def eig_hermitian(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns.  Rejects non-Hermitian input.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    residual = float(np.max(np.abs(h - h.conj().T)))
    if residual > HERMITIAN_ATOL:
        raise ValueError(f"matrix is not Hermitian (residual {residual:.3e})")
    values, vectors = np.linalg.eigh(h)
    return values[::-1], vectors[:, ::-1]


def fidelity_pure(psi: PureState, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi> of a density matrix with a pure reference state.

    The result is clamped onto [0, 1] only when it lies within 1e-12 of a
    boundary; anything further out signals invalid input and is returned
    as computed.
    """
    if psi.dim != rho.dim:
        raise ValueError(
            f"dimension mismatch: state dim {psi.dim}, matrix dim {rho.dim}"
        )
    v = psi.amplitudes
    value = complex(v.conj() @ (rho.matrix @ v))
    if abs(value.imag) > 1e-12:
        raise ValueError(f"overlap has non-real value {value}")
    out = value.real
    if -1e-12 <= out < 0.0:
        return 0.0
    if 1.0 < out <= 1.0 + 1e-12:
        return 1.0
    return out
