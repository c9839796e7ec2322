"""Executable verification suite behind ``triclone verify``.

Each check pins one acceptance criterion with its tolerance and reports
the measured residual.  The same checks back tests/test_acceptance.py, so
the CLI and the test suite cannot drift apart.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .cloners import (
    apply_local_cloning,
    apply_nonlocal_cloning,
    closed_form_local_measures,
    closed_form_local_output,
    closed_form_nonlocal_measures,
    closed_form_nonlocal_output,
    fidelity_local,
    fidelity_nonlocal,
    find_e2_crossings,
)
from .entanglement import (
    PAIRS,
    closed_form_input_measures,
    correlation3,
    input_state,
    measures,
)
from .iteration import clone_mixed_nonlocal, iterate
from .linalg import DensityMatrix, eig_hermitian, fidelity_pure, kron_all

DEFAULT_SEED = 12345
GRID_POINTS = 201

# Reference decay table for the balanced (GHZ) input, four printed decimals.
TABLE_E3 = (1.0000, 0.3086, 0.0953, 0.0294, 0.0091, 0.0028)
TABLE_E2 = (0.3333, 0.1029, 0.0318, 0.0098, 0.0030, 0.0009)
TABLE_ATOL = 5e-5
STEP6_CEILING = 1e-3

# Reference window for E2 amplification under non-local cloning.
WINDOW_LO = 0.33065
WINDOW_HI = 0.95287
WINDOW_ATOL = 1e-4

GHZ_EIGENVALUES = tuple([1.0 / 18.0] * 7 + [11.0 / 18.0])


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class GridData:
    """Channel outputs and measures over a uniform alpha grid on [0, pi/2]."""

    alphas: np.ndarray
    psi: np.ndarray  # (n, 8)
    rho_in: np.ndarray  # (n, 8, 8)
    local_out: np.ndarray  # (n, 8, 8), copies side
    nonlocal_out: np.ndarray  # (n, 8, 8), copies side
    e3_in: np.ndarray
    e2_in: np.ndarray  # (n, 3), pair order (1,2), (2,3), (1,3)
    e3_local: np.ndarray
    e2_local: np.ndarray
    e3_nonlocal: np.ndarray
    e2_nonlocal: np.ndarray
    f_local: np.ndarray
    f_nonlocal: np.ndarray


def compute_grid(points: int = GRID_POINTS) -> GridData:
    alphas = np.linspace(0.0, math.pi / 2.0, points)
    n = len(alphas)
    data = GridData(
        alphas=alphas,
        psi=np.zeros((n, 8), dtype=complex),
        rho_in=np.zeros((n, 8, 8), dtype=complex),
        local_out=np.zeros((n, 8, 8), dtype=complex),
        nonlocal_out=np.zeros((n, 8, 8), dtype=complex),
        e3_in=np.zeros(n),
        e2_in=np.zeros((n, 3)),
        e3_local=np.zeros(n),
        e2_local=np.zeros((n, 3)),
        e3_nonlocal=np.zeros(n),
        e2_nonlocal=np.zeros((n, 3)),
        f_local=np.zeros(n),
        f_nonlocal=np.zeros(n),
    )
    for i, alpha in enumerate(alphas):
        psi = input_state(alpha)
        rho = psi.density_matrix()
        local = apply_local_cloning(rho).copies
        nonlocal_ = apply_nonlocal_cloning(rho).copies
        rep_in = measures(rho)
        rep_l = measures(local)
        rep_n = measures(nonlocal_)
        data.psi[i] = psi.amplitudes
        data.rho_in[i] = rho.matrix
        data.local_out[i] = local.matrix
        data.nonlocal_out[i] = nonlocal_.matrix
        data.e3_in[i] = rep_in.e3
        data.e2_in[i] = [rep_in.e2[p] for p in PAIRS]
        data.e3_local[i] = rep_l.e3
        data.e2_local[i] = [rep_l.e2[p] for p in PAIRS]
        data.e3_nonlocal[i] = rep_n.e3
        data.e2_nonlocal[i] = [rep_n.e2[p] for p in PAIRS]
        data.f_local[i] = fidelity_pure(psi, local)
        data.f_nonlocal[i] = fidelity_pure(psi, nonlocal_)
    return data


def _grid(grid: GridData | None) -> GridData:
    return grid if grid is not None else compute_grid()


def check_input_closed_forms(grid: GridData | None = None) -> CheckResult:
    """Trace-based input measures match the analytic curves to 1e-12."""
    grid = _grid(grid)
    cf = np.array([closed_form_input_measures(a) for a in grid.alphas])
    err3 = float(np.max(np.abs(grid.e3_in - cf[:, 0])))
    err2 = float(np.max(np.abs(grid.e2_in - cf[:, 1:2])))
    ghz = measures(input_state(math.pi / 4.0).density_matrix())
    ghz_err = max(
        abs(ghz.e3 - 1.0), max(abs(v - 1.0 / 3.0) for v in ghz.e2.values())
    )
    passed = err3 <= 1e-12 and err2 <= 1e-12 and ghz_err <= 1e-12
    return CheckResult(
        "input-state-closed-forms",
        passed,
        f"max|E3 err|={err3:.2e}, max|E2 err|={err2:.2e}, "
        f"balanced-state err={ghz_err:.2e} (tol 1e-12)",
    )


def check_local_oracle(grid: GridData | None = None) -> CheckResult:
    """Simulated local channel equals its analytic output entrywise."""
    grid = _grid(grid)
    err = 0.0
    for i, alpha in enumerate(grid.alphas):
        ref = closed_form_local_output(alpha).matrix
        err = max(err, float(np.max(np.abs(grid.local_out[i] - ref))))
    rep = measures(
        apply_local_cloning(input_state(math.pi / 4.0).density_matrix()).copies
    )
    m_err = max(
        abs(rep.e3 - 64.0 / 729.0),
        max(abs(v - 16.0 / 243.0) for v in rep.e2.values()),
    )
    passed = err <= 1e-12 and m_err <= 1e-12
    return CheckResult(
        "local-cloning-oracle",
        passed,
        f"max entrywise err={err:.2e}, balanced-state measure err={m_err:.2e} "
        f"(tol 1e-12)",
    )


def check_nonlocal_oracle(grid: GridData | None = None) -> CheckResult:
    """Simulated non-local channel equals its analytic output; spectrum pinned."""
    grid = _grid(grid)
    err = 0.0
    for i, alpha in enumerate(grid.alphas):
        ref = closed_form_nonlocal_output(alpha).matrix
        err = max(err, float(np.max(np.abs(grid.nonlocal_out[i] - ref))))
    out = apply_nonlocal_cloning(input_state(math.pi / 4.0).density_matrix()).copies
    rep = measures(out)
    m_err = max(
        abs(rep.e3 - 25.0 / 81.0),
        max(abs(v - 25.0 / 243.0) for v in rep.e2.values()),
    )
    values, _ = eig_hermitian(out.matrix)
    eig_err = float(np.max(np.abs(np.sort(values) - np.array(GHZ_EIGENVALUES))))
    passed = err <= 1e-12 and m_err <= 1e-12 and eig_err <= 1e-12
    return CheckResult(
        "nonlocal-cloning-oracle",
        passed,
        f"max entrywise err={err:.2e}, measure err={m_err:.2e}, "
        f"spectrum err={eig_err:.2e} (tol 1e-12)",
    )


def check_measure_curves(grid: GridData | None = None) -> CheckResult:
    """Simulated output measures match the analytic curves for both cloners."""
    grid = _grid(grid)
    cf_l = np.array([closed_form_local_measures(a) for a in grid.alphas])
    cf_n = np.array([closed_form_nonlocal_measures(a) for a in grid.alphas])
    err_l = max(
        float(np.max(np.abs(grid.e3_local - cf_l[:, 0]))),
        float(np.max(np.abs(grid.e2_local - cf_l[:, 1:2]))),
    )
    err_n = max(
        float(np.max(np.abs(grid.e3_nonlocal - cf_n[:, 0]))),
        float(np.max(np.abs(grid.e2_nonlocal - cf_n[:, 1:2]))),
    )
    passed = err_l <= 1e-12 and err_n <= 1e-12
    return CheckResult(
        "closed-form-measure-curves",
        passed,
        f"local err={err_l:.2e}, non-local err={err_n:.2e} (tol 1e-12)",
    )


def check_fidelities(grid: GridData | None = None) -> CheckResult:
    """Simulated fidelities match the analytic values; non-local wins everywhere."""
    grid = _grid(grid)
    f1 = np.array([fidelity_local(a) for a in grid.alphas])
    err1 = float(np.max(np.abs(grid.f_local - f1)))
    err2 = float(np.max(np.abs(grid.f_nonlocal - fidelity_nonlocal())))
    min_gap = float(np.min(grid.f_nonlocal - grid.f_local))
    passed = err1 <= 1e-12 and err2 <= 1e-12 and min_gap > 0.0
    return CheckResult(
        "fidelities",
        passed,
        f"local err={err1:.2e}, non-local err={err2:.2e} (tol 1e-12), "
        f"min F2-F1 gap={min_gap:.4f}",
    )


def check_amplification_window() -> CheckResult:
    """E2 crossing points sit at the pinned reference values within 1e-4."""
    lo, hi = find_e2_crossings()
    err_lo = abs(lo - WINDOW_LO)
    err_hi = abs(hi - WINDOW_HI)
    # Sign pattern around the measured roots: amplified outside, degraded
    # inside the window.
    from .cloners import _e2_gap

    signs_ok = (
        _e2_gap(max(lo - 0.02, 1e-3)) > 0.0
        and _e2_gap(0.5 * (lo + hi)) < 0.0
        and _e2_gap(min(hi + 0.02, 1.0 - 1e-3)) > 0.0
    )
    passed = err_lo <= WINDOW_ATOL and err_hi <= WINDOW_ATOL and signs_ok
    return CheckResult(
        "e2-amplification-window",
        passed,
        f"measured roots cos(alpha)=({lo:.6f}, {hi:.6f}), reference "
        f"({WINDOW_LO}, {WINDOW_HI}) tol {WINDOW_ATOL}; sign pattern "
        f"{'ok' if signs_ok else 'WRONG'}; note: any window of these curves "
        f"must satisfy lo^2+hi^2=1 (measured sum {lo * lo + hi * hi:.6f}, "
        f"reference sum {WINDOW_LO**2 + WINDOW_HI**2:.6f})",
    )


def check_iteration_decay() -> CheckResult:
    """Repeated non-local cloning of the balanced state matches the decay table."""
    trace = iterate(math.pi / 4.0, 6)
    err = 0.0
    for k in range(6):
        err = max(err, abs(trace.steps[k].e3 - TABLE_E3[k]))
        err = max(err, abs(trace.steps[k].e2 - TABLE_E2[k]))
    e3_6 = trace.steps[6].e3
    e2_6 = trace.steps[6].e2
    passed = err <= TABLE_ATOL and e3_6 < STEP6_CEILING and e2_6 < STEP6_CEILING
    return CheckResult(
        "iterated-cloning-decay",
        passed,
        f"steps 0-5 max err={err:.2e} (tol {TABLE_ATOL}); step 6 computes to "
        f"E3={e3_6:.6f}, E2={e2_6:.6f} (reference table prints 0.0000; the "
        f"substituted property is decay below {STEP6_CEILING})",
    )


def random_density_matrix(rng: np.random.Generator, dim: int = 8) -> DensityMatrix:
    """Full-rank random density matrix from a complex Gaussian square."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    m = 0.5 * (m + m.conj().T)
    dims = (2, 2, 2) if dim == 8 else (dim,)
    return DensityMatrix(dims, m)


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-distributed unitary via QR with phase fixing."""
    z = (
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    ) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_product_state(rng: np.random.Generator) -> DensityMatrix:
    """Random product density matrix of three independent qubits."""
    parts = []
    for _ in range(3):
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = g @ g.conj().T
        m = m / np.trace(m).real
        parts.append(0.5 * (m + m.conj().T))
    return DensityMatrix((2, 2, 2), kron_all(parts))


def check_channel_properties(seed: int = DEFAULT_SEED) -> CheckResult:
    """Both channels are trace-preserving, Hermitian, PSD and linear."""
    rng = np.random.default_rng(seed)
    states = [random_density_matrix(rng) for _ in range(100)]
    outputs = {"local": [], "nonlocal": []}
    trace_err = herm_err = eig_floor = 0.0
    for rho in states:
        for label, channel in (
            ("local", apply_local_cloning),
            ("nonlocal", apply_nonlocal_cloning),
        ):
            out = channel(rho).copies.matrix
            outputs[label].append(out)
            trace_err = max(trace_err, abs(np.trace(out).real - 1.0))
            herm_err = max(herm_err, float(np.max(np.abs(out - out.conj().T))))
            eig_floor = min(eig_floor, float(np.linalg.eigvalsh(out)[0]))
    lin_err = 0.0
    for i in range(0, 100, 2):
        p = float(rng.uniform(0.1, 0.9))
        mix = DensityMatrix(
            (2, 2, 2), p * states[i].matrix + (1 - p) * states[i + 1].matrix
        )
        for label, channel in (
            ("local", apply_local_cloning),
            ("nonlocal", apply_nonlocal_cloning),
        ):
            combined = p * outputs[label][i] + (1 - p) * outputs[label][i + 1]
            direct = channel(mix).copies.matrix
            lin_err = max(lin_err, float(np.max(np.abs(direct - combined))))
    route_err = 0.0
    for rho in states:
        mixed_route = clone_mixed_nonlocal(rho).matrix
        direct = apply_nonlocal_cloning(rho).copies.matrix
        route_err = max(route_err, float(np.max(np.abs(mixed_route - direct))))
    passed = (
        trace_err <= 1e-12
        and herm_err <= 1e-12
        and eig_floor >= -1e-10
        and lin_err <= 1e-12
        and route_err <= 1e-12
    )
    return CheckResult(
        "channel-properties",
        passed,
        f"100 random states: trace err={trace_err:.2e}, herm err={herm_err:.2e}, "
        f"min eig={eig_floor:.2e}, linearity err={lin_err:.2e}, "
        f"spectral-route err={route_err:.2e}",
    )


def check_measure_properties(seed: int = DEFAULT_SEED) -> CheckResult:
    """Measures are locally invariant, zero on products, and bounded."""
    rng = np.random.default_rng(seed)
    base_states = [
        input_state(math.pi / 4.0).density_matrix(),
        input_state(math.pi / 8.0).density_matrix(),
        random_density_matrix(rng),
    ]
    invariance_err = 0.0
    for trial in range(50):
        rho = base_states[trial % len(base_states)]
        u = kron_all([random_unitary(rng) for _ in range(3)])
        rotated = DensityMatrix((2, 2, 2), u @ rho.matrix @ u.conj().T)
        before = measures(rho)
        after = measures(rotated)
        invariance_err = max(invariance_err, abs(before.e3 - after.e3))
        for pair in PAIRS:
            invariance_err = max(
                invariance_err, abs(before.e2[pair] - after.e2[pair])
            )
    product_err = 0.0
    for _ in range(25):
        rep = measures(random_product_state(rng))
        product_err = max(product_err, rep.e3, max(rep.e2.values()))
    top = 0.0
    bottom = 0.0
    for _ in range(200):
        rep = measures(random_density_matrix(rng))
        top = max(top, rep.e3, max(rep.e2.values()))
        bottom = min(bottom, rep.e3, min(rep.e2.values()))
    passed = (
        invariance_err <= 1e-10
        and product_err <= 1e-12
        and bottom >= 0.0
        and top <= 1.0 + 1e-10
    )
    return CheckResult(
        "measure-properties",
        passed,
        f"local-unitary shift={invariance_err:.2e} (tol 1e-10), product-state "
        f"max={product_err:.2e} (tol 1e-12), range=[{bottom:.2e}, {top:.4f}]",
    )


def check_sweep_determinism() -> CheckResult:
    """Two sweep runs with identical flags emit byte-identical CSV."""
    from .cli import RunConfig, run_sweep

    with tempfile.TemporaryDirectory() as tmp:
        paths = [os.path.join(tmp, f"sweep{i}.csv") for i in (1, 2)]
        payloads = []
        for path in paths:
            code = run_sweep(RunConfig(command="sweep", output_path=path))
            if code != 0:
                return CheckResult(
                    "sweep-determinism", False, f"sweep exited with code {code}"
                )
            with open(path, "rb") as fh:
                payloads.append(fh.read())
    identical = payloads[0] == payloads[1]
    return CheckResult(
        "sweep-determinism",
        identical,
        f"two runs, {len(payloads[0])} bytes each, "
        f"{'identical' if identical else 'DIFFERENT'}",
    )


def informational_notes() -> list[str]:
    """Measured values for the two known reference-table discrepancies."""
    alpha = 0.3
    out = apply_local_cloning(input_state(alpha).density_matrix()).copies
    k333 = correlation3(out).k[2, 2, 2]
    expected = -(8.0 / 27.0) * math.cos(2.0 * alpha)
    note1 = (
        f"info: triple correlation K333 of the local-clone output at "
        f"alpha={alpha} computes to {k333:.9f} = -(8/27)cos(2*alpha) "
        f"({expected:.9f}); the negative sign is forced by consistency with "
        f"the coherence vector and the M333 tensor component"
    )
    trace = iterate(math.pi / 4.0, 2)
    corner = trace.steps[2].rho.matrix[0, 0].real
    note2 = (
        f"info: after two non-local cloning steps of the balanced state, the "
        f"corner diagonal entry computes to {corner:.9f} = 13/54, the value "
        f"forced by unit trace alongside six single-excitation entries of 7/81"
    )
    return [note1, note2]


CHECKS = (
    check_input_closed_forms,
    check_local_oracle,
    check_nonlocal_oracle,
    check_measure_curves,
    check_fidelities,
    check_amplification_window,
    check_iteration_decay,
    check_channel_properties,
    check_measure_properties,
    check_sweep_determinism,
)


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run every verification check once, sharing one grid computation."""
    grid = compute_grid()
    return [
        check_input_closed_forms(grid),
        check_local_oracle(grid),
        check_nonlocal_oracle(grid),
        check_measure_curves(grid),
        check_fidelities(grid),
        check_amplification_window(),
        check_iteration_decay(),
        check_channel_properties(seed),
        check_measure_properties(seed),
        check_sweep_determinism(),
    ]
