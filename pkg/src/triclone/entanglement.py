"""Coherence vectors, correlation tensors, and the E3/E2 measures.

All quantities are computed numerically from the density matrix via trace
expectations; the closed forms at the bottom are oracles for the
two-corner input family only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, PureState, kron_all

QUBITS = (1, 2, 3)
PAIRS = ((1, 2), (2, 3), (1, 3))

MEASURE_CEILING = 1.0 + 1e-10
COMPONENT_CEILING = 1.0 + 1e-12

_SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
# The third operator carries diag(-1, +1): the sign is pinned so the
# two-corner family gets lambda_3 = -cos(2*alpha), and the whole triple is
# then locked in by the correlation-component tests.
_SIGMA_3 = np.array([[-1, 0], [0, 1]], dtype=complex)
_SIGMAS = (_SIGMA_1, _SIGMA_2, _SIGMA_3)
_I2 = np.eye(2, dtype=complex)


def pauli_operator(i: int) -> np.ndarray:
    """Single-qubit operator triple, 1-based index in {1, 2, 3}."""
    if i not in (1, 2, 3):
        raise ValueError(f"operator index must be 1, 2 or 3, got {i}")
    return _SIGMAS[i - 1].copy()


def _embed(ops: dict[int, np.ndarray]) -> np.ndarray:
    """Three-qubit operator with ``ops[q]`` on 0-based qubit q, identity elsewhere."""
    return kron_all(ops.get(q, _I2) for q in range(3))


def _build_single(q: int) -> np.ndarray:
    return np.stack([_embed({q: s}) for s in _SIGMAS])


def _build_pair(q1: int, q2: int) -> np.ndarray:
    return np.stack(
        [
            np.stack([_embed({q1: a, q2: b}) for b in _SIGMAS])
            for a in _SIGMAS
        ]
    )


def _build_triple() -> np.ndarray:
    return np.stack(
        [
            np.stack(
                [
                    np.stack([_embed({0: a, 1: b, 2: c}) for c in _SIGMAS])
                    for b in _SIGMAS
                ]
            )
            for a in _SIGMAS
        ]
    )


_SINGLE_OPS = {m: _build_single(m - 1) for m in QUBITS}
_PAIR_OPS = {(m, n): _build_pair(m - 1, n - 1) for m, n in PAIRS}
_TRIPLE_OPS = _build_triple()


def _expectations(rho_matrix: np.ndarray, ops: np.ndarray) -> np.ndarray:
    flat = ops.reshape(-1, 8, 8)
    values = np.einsum("pq,kqp->k", rho_matrix, flat)
    return values.real.reshape(ops.shape[:-2])


def _require_three_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit density matrix, got dims {rho.dims}")


@dataclass
class CoherenceVector:
    """Single-qubit expectation triple for one qubit."""

    qubit: int
    lam: np.ndarray

    def __post_init__(self) -> None:
        if self.qubit not in QUBITS:
            raise ValueError(f"qubit index must be in {QUBITS}, got {self.qubit}")
        self.lam = np.asarray(self.lam, dtype=float).reshape(3)
        norm = float(np.linalg.norm(self.lam))
        if norm > COMPONENT_CEILING:
            raise ValueError(f"coherence vector norm {norm} exceeds 1")


@dataclass
class PairCorrelation:
    """Two-qubit joint expectation tensor K_ij(m, n)."""

    pair: tuple[int, int]
    k: np.ndarray

    def __post_init__(self) -> None:
        self.pair = (int(self.pair[0]), int(self.pair[1]))
        if self.pair not in PAIRS:
            raise ValueError(f"pair must be one of {PAIRS}, got {self.pair}")
        self.k = np.asarray(self.k, dtype=float).reshape(3, 3)
        top = float(np.max(np.abs(self.k)))
        if top > COMPONENT_CEILING:
            raise ValueError(f"correlation entry {top} exceeds 1")


@dataclass
class TripleCorrelation:
    """Three-qubit joint expectation tensor K_ijk."""

    k: np.ndarray

    def __post_init__(self) -> None:
        self.k = np.asarray(self.k, dtype=float).reshape(3, 3, 3)
        top = float(np.max(np.abs(self.k)))
        if top > COMPONENT_CEILING:
            raise ValueError(f"correlation entry {top} exceeds 1")


@dataclass
class EntanglementTensors:
    """Pairwise tensors M_ij(m, n) and the triple tensor M_ijk."""

    m2: dict[tuple[int, int], np.ndarray]
    m3: np.ndarray


@dataclass
class EntanglementReport:
    """E3, pairwise E2, and the tensors they were built from."""

    e3: float
    e2: dict[tuple[int, int], float]
    tensors: EntanglementTensors
    lambdas: tuple[CoherenceVector, CoherenceVector, CoherenceVector]

    def __post_init__(self) -> None:
        if not 0.0 <= self.e3 <= MEASURE_CEILING:
            raise ValueError(f"E3 value {self.e3} outside [0, 1]")
        for pair, value in self.e2.items():
            if not 0.0 <= value <= MEASURE_CEILING:
                raise ValueError(f"E2{pair} value {value} outside [0, 1]")


def coherence_vector(rho: DensityMatrix, m: int) -> CoherenceVector:
    """Expectation triple of qubit ``m`` (1-based)."""
    _require_three_qubits(rho)
    if m not in QUBITS:
        raise ValueError(f"qubit index must be in {QUBITS}, got {m}")
    return CoherenceVector(m, _expectations(rho.matrix, _SINGLE_OPS[m]))


def correlation2(rho: DensityMatrix, m: int, n: int) -> PairCorrelation:
    """Joint expectation tensor of the ordered qubit pair (m, n)."""
    _require_three_qubits(rho)
    if (m, n) not in PAIRS:
        raise ValueError(f"pair must be one of {PAIRS}, got ({m}, {n})")
    return PairCorrelation((m, n), _expectations(rho.matrix, _PAIR_OPS[(m, n)]))


def correlation3(rho: DensityMatrix) -> TripleCorrelation:
    """Joint expectation tensor over all three qubits."""
    _require_three_qubits(rho)
    return TripleCorrelation(_expectations(rho.matrix, _TRIPLE_OPS))


def _analyze(rho: DensityMatrix):
    lams = {m: _expectations(rho.matrix, _SINGLE_OPS[m]) for m in QUBITS}
    m2 = {
        (m, n): _expectations(rho.matrix, _PAIR_OPS[(m, n)])
        - np.outer(lams[m], lams[n])
        for m, n in PAIRS
    }
    k3 = _expectations(rho.matrix, _TRIPLE_OPS)
    m3 = (
        k3
        - np.einsum("i,jk->ijk", lams[1], m2[(2, 3)])
        - np.einsum("j,ik->ijk", lams[2], m2[(1, 3)])
        - np.einsum("k,ij->ijk", lams[3], m2[(1, 2)])
        - np.einsum("i,j,k->ijk", lams[1], lams[2], lams[3])
    )
    return lams, m2, m3


def entanglement_tensors(rho: DensityMatrix) -> EntanglementTensors:
    """Correlation tensors with all lower-order contributions subtracted.

    The pairwise tensor is K_ij(m,n) - lambda_i(m) lambda_j(n); the triple
    tensor removes the three coherence-weighted pairwise terms and the
    rank-one coherence product from K_ijk.
    """
    _require_three_qubits(rho)
    _, m2, m3 = _analyze(rho)
    return EntanglementTensors(m2=m2, m3=m3)


def measures(rho: DensityMatrix) -> EntanglementReport:
    """E3 and pairwise E2 of a three-qubit density matrix.

    E3 is one quarter of the squared Frobenius norm of the triple tensor;
    each E2 is one third of the squared norm of the matching pairwise
    tensor.
    """
    _require_three_qubits(rho)
    lams, m2, m3 = _analyze(rho)
    e3 = 0.25 * float(np.sum(m3 * m3))
    e2 = {pair: float(np.sum(t * t)) / 3.0 for pair, t in m2.items()}
    lambdas = tuple(CoherenceVector(m, lams[m]) for m in QUBITS)
    return EntanglementReport(
        e3=e3, e2=e2, tensors=EntanglementTensors(m2=m2, m3=m3), lambdas=lambdas
    )


def input_state(alpha: float) -> PureState:
    """Two-corner three-qubit state cos(alpha)|000> + sin(alpha)|111>."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[0] = math.cos(alpha)
    amplitudes[7] = math.sin(alpha)
    return PureState((2, 2, 2), amplitudes)


def closed_form_input_measures(alpha: float) -> tuple[float, float]:
    """Analytic (E3, E2) of the two-corner input state.

    Must agree with ``measures(input_state(alpha).density_matrix())`` to
    1e-12; the trace pipeline stays the source of truth.
    """
    s2 = math.sin(2.0 * alpha) ** 2
    c2 = math.cos(2.0 * alpha) ** 2
    e3 = s2 * (1.0 + s2 * c2)
    e2 = s2 * s2 / 3.0
    return e3, e2
