"""Three-qubit entanglement under local and non-local universal cloning.

The package simulates, from the defining isometries, how the two-corner
family cos(alpha)|000> + sin(alpha)|111> loses its inter-three-qubit (E3)
and inter-two-qubit (E2) entanglement when cloned qubit-by-qubit or as a
whole register, including repeated cloning of the mixed outputs.
"""

from .cloners import (
    CloneOutput,
    CloningIsometry,
    apply_local_cloning,
    apply_nonlocal_cloning,
    closed_form_local_measures,
    closed_form_local_output,
    closed_form_nonlocal_measures,
    closed_form_nonlocal_output,
    fidelity_local,
    fidelity_nonlocal,
    find_e2_crossings,
    local_isometry,
    nonlocal_isometry,
)
from .entanglement import (
    CoherenceVector,
    EntanglementReport,
    EntanglementTensors,
    PairCorrelation,
    TripleCorrelation,
    closed_form_input_measures,
    coherence_vector,
    correlation2,
    correlation3,
    entanglement_tensors,
    input_state,
    measures,
    pauli_operator,
)
from .iteration import (
    IterationStep,
    IterationTrace,
    clone_mixed_nonlocal,
    iterate,
)
from .linalg import (
    DensityMatrix,
    PureState,
    eig_hermitian,
    fidelity_pure,
    kron,
    partial_trace,
    partial_trace_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "CloneOutput",
    "CloningIsometry",
    "CoherenceVector",
    "DensityMatrix",
    "EntanglementReport",
    "EntanglementTensors",
    "IterationStep",
    "IterationTrace",
    "PairCorrelation",
    "PureState",
    "TripleCorrelation",
    "apply_local_cloning",
    "apply_nonlocal_cloning",
    "clone_mixed_nonlocal",
    "closed_form_input_measures",
    "closed_form_local_measures",
    "closed_form_local_output",
    "closed_form_nonlocal_measures",
    "closed_form_nonlocal_output",
    "coherence_vector",
    "correlation2",
    "correlation3",
    "eig_hermitian",
    "entanglement_tensors",
    "fidelity_local",
    "fidelity_nonlocal",
    "fidelity_pure",
    "find_e2_crossings",
    "input_state",
    "iterate",
    "kron",
    "local_isometry",
    "measures",
    "nonlocal_isometry",
    "partial_trace",
    "partial_trace_matrix",
    "pauli_operator",
]
