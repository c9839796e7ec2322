"""Symmetric universal cloning machines as isometries and channels.

Two cloning schemes act on a three-qubit register.  The local scheme runs
one qubit cloner on each qubit independently; the non-local scheme treats
the register as a single eight-dimensional system and clones it whole.
Both are represented as isometries from the input space into
original x copy x machine, which is exactly the sector the defining
transformations specify; no unitary completion is invented.

Wiring order for the local scheme: the nine output subsystems are kept in
the order (orig1, copy1, mach1, orig2, copy2, mach2, orig3, copy3, mach3)
and the reductions keep subsystem index sets {0,3,6} (originals) and
{1,4,7} (copies).  Any consistent order works; this one is fixed for
reproducibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .entanglement import input_state, measures
from .linalg import (
    DensityMatrix,
    kron_all,
    partial_trace_matrix,
)

ISOMETRY_ATOL = 1e-12
OUTPUT_SYMMETRY_ATOL = 1e-12
CROSSING_BRACKET = 1e-6


@dataclass
class CloningIsometry:
    """Inner-product-preserving map into original x copy x machine."""

    in_dim: int
    out_dims: tuple[int, int, int]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        self.in_dim = int(self.in_dim)
        self.out_dims = tuple(int(d) for d in self.out_dims)
        self.matrix = np.asarray(self.matrix, dtype=complex)
        expected = (int(np.prod(self.out_dims)), self.in_dim)
        if self.matrix.shape != expected:
            raise ValueError(
                f"isometry shape {self.matrix.shape} does not match {expected}"
            )
        gram = self.matrix.conj().T @ self.matrix
        residual = float(np.max(np.abs(gram - np.eye(self.in_dim))))
        if residual > ISOMETRY_ATOL:
            raise ValueError(f"map is not an isometry (V+V residual {residual:.3e})")
        # Isometries are shared through a cache; freeze them.
        self.matrix.setflags(write=False)


@dataclass
class CloneOutput:
    """Reduced states of the originals and the copies after cloning.

    Symmetric cloners produce identical output sides; construction checks
    that and the ``copies`` side is the canonical return value.
    """

    originals: DensityMatrix
    copies: DensityMatrix
    joint_dim: int

    def __post_init__(self) -> None:
        gap = float(np.max(np.abs(self.originals.matrix - self.copies.matrix)))
        if gap > OUTPUT_SYMMETRY_ATOL:
            raise ValueError(
                f"original and copy outputs differ by {gap:.3e}; "
                "the cloner output should be symmetric"
            )


@lru_cache(maxsize=None)
def nonlocal_isometry(n: int) -> CloningIsometry:
    """Universal symmetric cloner of one n-dimensional system.

    Column i sends basis state i to
    c |i,i,i> + d * sum_{j != i} (|i,j> + |j,i>) |j>
    over original x copy x machine, with c^2 = 2/(n+1) and
    d^2 = 1/(2(n+1)); the machine basis is the computational one.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"cloner dimension must be at least 2, got {n}")
    c = math.sqrt(2.0 / (n + 1))
    d = math.sqrt(1.0 / (2.0 * (n + 1)))
    v = np.zeros((n**3, n), dtype=complex)
    for i in range(n):
        column = np.zeros((n, n, n), dtype=complex)
        column[i, i, i] = c
        for j in range(n):
            if j != i:
                column[i, j, j] += d
                column[j, i, j] += d
        v[:, i] = column.reshape(-1)
    return CloningIsometry(in_dim=n, out_dims=(n, n, n), matrix=v)


@lru_cache(maxsize=1)
def local_isometry() -> CloningIsometry:
    """Single-qubit symmetric cloner, 2 -> (2, 2, 2).

    |0> maps to sqrt(2/3)|00,up> + sqrt(1/6)(|10> + |01>)|down>, and |1>
    to sqrt(2/3)|11,down> + sqrt(1/6)(|10> + |01>)|up>, with the machine
    kets up/down stored as indices 0/1.
    """
    s23 = math.sqrt(2.0 / 3.0)
    s16 = math.sqrt(1.0 / 6.0)
    v = np.zeros((8, 2), dtype=complex)
    # (orig, copy, machine) multi-indices, big-endian.
    v[0b000, 0] = s23
    v[0b101, 0] = s16
    v[0b011, 0] = s16
    v[0b111, 1] = s23
    v[0b100, 1] = s16
    v[0b010, 1] = s16
    return CloningIsometry(in_dim=2, out_dims=(2, 2, 2), matrix=v)


@lru_cache(maxsize=1)
def _local_register_isometry() -> np.ndarray:
    """8 -> 512 map applying the qubit cloner to each register qubit."""
    v = local_isometry().matrix
    total = kron_all([v, v, v])
    total.setflags(write=False)
    return total


def _require_register(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit density matrix, got dims {rho.dims}")


def apply_local_cloning(rho_in: DensityMatrix) -> CloneOutput:
    """Clone each qubit of the register with its own distant cloner.

    The joint output lives on nine qubits (three original/copy/machine
    triples); the three machine qubits and the complementary output side
    are traced out of each reduction.
    """
    _require_register(rho_in)
    v = _local_register_isometry()
    joint = v @ rho_in.matrix @ v.conj().T
    dims = (2,) * 9
    originals = partial_trace_matrix(joint, dims, (0, 3, 6))
    copies = partial_trace_matrix(joint, dims, (1, 4, 7))
    return CloneOutput(
        originals=DensityMatrix((2, 2, 2), originals),
        copies=DensityMatrix((2, 2, 2), copies),
        joint_dim=joint.shape[0],
    )


def apply_nonlocal_cloning(rho_in: DensityMatrix) -> CloneOutput:
    """Clone the register as a single eight-dimensional system."""
    _require_register(rho_in)
    v = nonlocal_isometry(8).matrix
    joint = v @ rho_in.matrix @ v.conj().T
    dims = (8, 8, 8)
    originals = partial_trace_matrix(joint, dims, (0,))
    copies = partial_trace_matrix(joint, dims, (1,))
    return CloneOutput(
        originals=DensityMatrix((2, 2, 2), originals),
        copies=DensityMatrix((2, 2, 2), copies),
        joint_dim=joint.shape[0],
    )


def closed_form_local_output(alpha: float) -> DensityMatrix:
    """Analytic local-cloning output for the two-corner input family.

    Oracle only: the channel itself never consults this.  Diagonal
    coefficients sum to 216/216 for every alpha.
    """
    ca, sa = math.cos(alpha), math.sin(alpha)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0b000, 0b000] = (1.0 + 124.0 * ca * ca) / 216.0
    rho[0b111, 0b111] = (1.0 + 124.0 * sa * sa) / 216.0
    rho[0b000, 0b111] = rho[0b111, 0b000] = 8.0 * sa * ca / 27.0
    for k in (0b110, 0b011, 0b101):
        rho[k, k] = (5.0 + 20.0 * sa * sa) / 216.0
    for k in (0b100, 0b010, 0b001):
        rho[k, k] = (5.0 + 20.0 * ca * ca) / 216.0
    return DensityMatrix((2, 2, 2), rho)


def closed_form_nonlocal_output(alpha: float) -> DensityMatrix:
    """Analytic non-local-cloning output for the two-corner input family."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0b000, 0b000] = (1.0 + 10.0 * ca * ca) / 18.0
    rho[0b111, 0b111] = (1.0 + 10.0 * sa * sa) / 18.0
    rho[0b000, 0b111] = rho[0b111, 0b000] = 5.0 * sa * ca / 9.0
    for k in (0b110, 0b011, 0b101, 0b100, 0b010, 0b001):
        rho[k, k] = 1.0 / 18.0
    return DensityMatrix((2, 2, 2), rho)


def closed_form_local_measures(alpha: float) -> tuple[float, float]:
    """Analytic (E3, E2) of the local-cloning output, oracle only."""
    s2 = math.sin(2.0 * alpha) ** 2
    c2 = math.cos(2.0 * alpha) ** 2
    e3 = (64.0 / 729.0) * s2 * (1.0 + s2 * c2)
    e2 = (16.0 / 243.0) * s2 * s2
    return e3, e2


def closed_form_nonlocal_measures(alpha: float) -> tuple[float, float]:
    """Analytic (E3, E2) of the non-local-cloning output, oracle only."""
    s2 = math.sin(2.0 * alpha) ** 2
    c2 = math.cos(2.0 * alpha) ** 2
    e3 = (25.0 / 81.0) * s2 + (25.0 / 729.0) * (1.0 - (25.0 / 27.0) * c2) ** 2 * c2
    e2 = (25.0 / 243.0) * (1.0 - (5.0 / 9.0) * c2) ** 2
    return e3, e2


def fidelity_local(alpha: float) -> float:
    """Analytic overlap of the local-cloning output with its input state."""
    sc = math.sin(alpha) * math.cos(alpha)
    return 125.0 / 216.0 - (15.0 / 27.0) * sc * sc


def fidelity_nonlocal() -> float:
    """Overlap of the non-local output with its input; input-independent."""
    return 11.0 / 18.0


def _e2_gap(x: float) -> float:
    alpha = math.acos(x)
    rho_in = input_state(alpha).density_matrix()
    e2_in = measures(rho_in).e2[(1, 2)]
    e2_out = measures(apply_nonlocal_cloning(rho_in).copies).e2[(1, 2)]
    return e2_out - e2_in


def find_e2_crossings() -> tuple[float, float]:
    """Roots of E2_nonlocal(alpha) = E2_input(alpha) in cos(alpha) on (0, 1).

    Bisection on the simulated curves, each root bracketed to 1e-6,
    returned ascending.  The non-local channel amplifies pairwise
    entanglement outside the returned window and degrades it inside.
    """
    half = math.sqrt(0.5)
    roots = []
    for lo, hi in ((0.0, half), (half, 1.0)):
        f_lo, f_hi = _e2_gap(lo), _e2_gap(hi)
        if f_lo == 0.0:
            roots.append(lo)
            continue
        if f_lo * f_hi > 0.0:
            raise RuntimeError(
                f"E2 crossing not bracketed on ({lo}, {hi}): "
                f"gap endpoints {f_lo:.3e}, {f_hi:.3e}"
            )
        while hi - lo > CROSSING_BRACKET:
            mid = 0.5 * (lo + hi)
            if (_e2_gap(mid) > 0.0) == (f_lo > 0.0):
                lo = mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return roots[0], roots[1]
