import math

import numpy as np
import pytest

from triclone.cloners import (
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
from triclone.entanglement import input_state, measures
from triclone.linalg import (
    DensityMatrix,
    eig_hermitian,
    fidelity_pure,
    partial_trace_matrix,
)
from triclone.verification import random_density_matrix

GRID = np.linspace(0.0, math.pi / 2, 41)

# Analytic crossing points of the pairwise-measure curves: the squared
# boundary in cos(2*alpha) is 9/14, so cos(alpha) = sqrt((1 +/- 3/sqrt(14))/2).
CROSSING_LO = math.sqrt((1.0 - 3.0 / math.sqrt(14.0)) / 2.0)
CROSSING_HI = math.sqrt((1.0 + 3.0 / math.sqrt(14.0)) / 2.0)


def _rho(alpha):
    return input_state(alpha).density_matrix()


class TestLocalIsometry:
    def test_is_isometry(self):
        v = local_isometry().matrix
        assert np.max(np.abs(v.conj().T @ v - np.eye(2))) <= 1e-12

    def test_machine_is_a_qubit(self):
        assert local_isometry().out_dims == (2, 2, 2)

    def test_column_amplitudes(self):
        v = local_isometry().matrix
        s23, s16 = math.sqrt(2 / 3), math.sqrt(1 / 6)
        expected = np.zeros((8, 2))
        expected[0b000, 0] = s23
        expected[0b101, 0] = expected[0b011, 0] = s16
        expected[0b111, 1] = s23
        expected[0b100, 1] = expected[0b010, 1] = s16
        assert np.max(np.abs(v - expected)) <= 1e-14

    def test_copy_fidelity_five_sixths(self):
        v = local_isometry().matrix
        out = v @ np.array([1.0, 0.0], dtype=complex)
        joint = np.outer(out, out.conj())
        copy = partial_trace_matrix(joint, (2, 2, 2), (1,))
        assert copy[0, 0].real == pytest.approx(5.0 / 6.0, abs=1e-12)

    def test_matches_dimension_two_general_cloner(self):
        assert np.max(np.abs(local_isometry().matrix - nonlocal_isometry(2).matrix)) == 0.0


class TestNonlocalIsometry:
    def test_coefficients_for_register_cloner(self):
        v = nonlocal_isometry(8)
        assert v.out_dims == (8, 8, 8)
        column = v.matrix[:, 3].reshape(8, 8, 8)
        assert column[3, 3, 3].real ** 2 == pytest.approx(2.0 / 9.0, abs=1e-14)
        assert column[3, 5, 5].real ** 2 == pytest.approx(1.0 / 18.0, abs=1e-14)
        assert column[5, 3, 5].real ** 2 == pytest.approx(1.0 / 18.0, abs=1e-14)

    def test_is_isometry(self):
        v = nonlocal_isometry(8).matrix
        assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-12

    def test_column_normalization_identity(self):
        for n in (2, 3, 8, 11):
            c2 = 2.0 / (n + 1)
            d2 = 1.0 / (2.0 * (n + 1))
            assert c2 + 2 * (n - 1) * d2 == pytest.approx(1.0, abs=1e-15)

    def test_dimension_two_copy_fidelity(self):
        v = nonlocal_isometry(2).matrix
        out = v @ np.array([1.0, 0.0], dtype=complex)
        joint = np.outer(out, out.conj())
        copy = partial_trace_matrix(joint, (2, 2, 2), (1,))
        assert copy[0, 0].real == pytest.approx(5.0 / 6.0, abs=1e-12)

    def test_rejects_tiny_dimension(self):
        with pytest.raises(ValueError):
            nonlocal_isometry(1)


class TestLocalChannel:
    def test_corner_entries(self):
        for alpha in (0.3, math.pi / 4, 1.2):
            sa, ca = math.sin(alpha), math.cos(alpha)
            out = apply_local_cloning(_rho(alpha)).copies.matrix
            assert out[0, 0].real == pytest.approx(
                (1 + 124 * ca * ca) / 216, abs=1e-12
            )
            assert out[7, 7].real == pytest.approx(
                (1 + 124 * sa * sa) / 216, abs=1e-12
            )
            assert out[7, 0].real == pytest.approx(8 * sa * ca / 27, abs=1e-12)
            assert out[6, 6].real == pytest.approx((5 + 20 * sa * sa) / 216, abs=1e-12)
            assert out[1, 1].real == pytest.approx((5 + 20 * ca * ca) / 216, abs=1e-12)

    def test_matches_closed_form_on_grid(self):
        worst = 0.0
        for alpha in GRID:
            sim = apply_local_cloning(_rho(alpha)).copies.matrix
            ref = closed_form_local_output(alpha).matrix
            worst = max(worst, float(np.max(np.abs(sim - ref))))
        assert worst <= 1e-12

    def test_joint_dimension(self):
        assert apply_local_cloning(_rho(0.5)).joint_dim == 512

    def test_rejects_wrong_dims(self):
        with pytest.raises(ValueError):
            apply_local_cloning(DensityMatrix((2, 2), np.eye(4) / 4))


class TestNonlocalChannel:
    def test_corner_and_single_entries(self):
        for alpha in (0.25, math.pi / 4, 1.3):
            sa, ca = math.sin(alpha), math.cos(alpha)
            out = apply_nonlocal_cloning(_rho(alpha)).copies.matrix
            assert out[0, 0].real == pytest.approx((1 + 10 * ca * ca) / 18, abs=1e-12)
            assert out[7, 0].real == pytest.approx(5 * sa * ca / 9, abs=1e-12)
            for k in range(1, 7):
                assert out[k, k].real == pytest.approx(1.0 / 18.0, abs=1e-12)

    def test_matches_closed_form_on_grid(self):
        worst = 0.0
        for alpha in GRID:
            sim = apply_nonlocal_cloning(_rho(alpha)).copies.matrix
            ref = closed_form_nonlocal_output(alpha).matrix
            worst = max(worst, float(np.max(np.abs(sim - ref))))
        assert worst <= 1e-12


class TestChannelProperties:
    def test_outputs_are_valid_density_matrices(self, rng):
        for _ in range(10):
            rho = random_density_matrix(rng)
            for channel in (apply_local_cloning, apply_nonlocal_cloning):
                out = channel(rho).copies.matrix
                assert abs(np.trace(out).real - 1.0) <= 1e-12
                assert np.max(np.abs(out - out.conj().T)) <= 1e-12
                assert np.linalg.eigvalsh(out)[0] >= -1e-10

    def test_linearity(self, rng):
        for _ in range(5):
            rho1 = random_density_matrix(rng)
            rho2 = random_density_matrix(rng)
            p = float(rng.uniform(0.1, 0.9))
            mixed = DensityMatrix(
                (2, 2, 2), p * rho1.matrix + (1 - p) * rho2.matrix
            )
            for channel in (apply_local_cloning, apply_nonlocal_cloning):
                direct = channel(mixed).copies.matrix
                combined = (
                    p * channel(rho1).copies.matrix
                    + (1 - p) * channel(rho2).copies.matrix
                )
                assert np.max(np.abs(direct - combined)) <= 1e-12

    def test_originals_equal_copies(self, rng):
        for _ in range(5):
            rho = random_density_matrix(rng)
            for channel in (apply_local_cloning, apply_nonlocal_cloning):
                out = channel(rho)
                gap = np.max(np.abs(out.originals.matrix - out.copies.matrix))
                assert gap <= 1e-12


class TestClosedFormOutputs:
    def test_unit_trace_for_all_alpha(self):
        for alpha in GRID:
            for build in (closed_form_local_output, closed_form_nonlocal_output):
                assert abs(np.trace(build(alpha).matrix) - 1.0) <= 1e-14

    def test_local_balanced_state_measures(self):
        report = measures(closed_form_local_output(math.pi / 4))
        assert report.e3 == pytest.approx(64.0 / 729.0, abs=1e-12)

    def test_local_corner_input_is_unentangled(self):
        report = measures(closed_form_local_output(0.0))
        assert report.e3 <= 1e-12
        assert max(report.e2.values()) <= 1e-12

    def test_nonlocal_balanced_state_spectrum(self):
        values, _ = eig_hermitian(closed_form_nonlocal_output(math.pi / 4).matrix)
        expected = np.array([11.0 / 18.0] + [1.0 / 18.0] * 7)
        assert np.max(np.abs(values - expected)) <= 1e-12

    def test_nonlocal_balanced_state_measures(self):
        report = measures(closed_form_nonlocal_output(math.pi / 4))
        assert report.e3 == pytest.approx(25.0 / 81.0, abs=1e-12)
        for value in report.e2.values():
            assert value == pytest.approx(25.0 / 243.0, abs=1e-12)


class TestMeasureCurves:
    def test_simulated_measures_match_closed_forms(self):
        worst = 0.0
        for alpha in GRID:
            rep_l = measures(apply_local_cloning(_rho(alpha)).copies)
            rep_n = measures(apply_nonlocal_cloning(_rho(alpha)).copies)
            e3_l, e2_l = closed_form_local_measures(alpha)
            e3_n, e2_n = closed_form_nonlocal_measures(alpha)
            worst = max(worst, abs(rep_l.e3 - e3_l), abs(rep_l.e2[(1, 2)] - e2_l))
            worst = max(worst, abs(rep_n.e3 - e3_n), abs(rep_n.e2[(1, 2)] - e2_n))
        assert worst <= 1e-12

    def test_nonlocal_cloning_preserves_more(self, grid):
        assert np.all(grid.e3_nonlocal >= grid.e3_local - 1e-12)
        assert np.all(grid.e2_nonlocal >= grid.e2_local - 1e-12)

    def test_e3_never_amplified_by_the_local_channel(self, grid):
        # The local output curve is the input curve scaled by 64/729, so
        # it sits below the input everywhere, corners included.
        assert np.all(grid.e3_local <= grid.e3_in + 1e-12)

    def test_e3_never_amplified_away_from_the_corners(self, grid):
        # The non-local clone of a product corner keeps an E3 floor of
        # 100/531441 while the input E3 vanishes quadratically, so
        # amplification-freedom only holds once the input clears that
        # floor, about 0.00825 rad from each corner; on this grid that is
        # every point except the two nearest each end.
        inner = slice(2, -2)
        assert np.all(grid.e3_nonlocal[inner] <= grid.e3_in[inner] + 1e-12)

    def test_e3_corner_artifact_is_the_known_floor(self, grid):
        for idx in (0, -1):
            assert grid.e3_in[idx] <= 1e-12
            assert grid.e3_local[idx] <= 1e-12
            assert grid.e3_nonlocal[idx] == pytest.approx(
                100.0 / 531441.0, abs=1e-12
            )
        # Inside the corner zone the output stays bounded by the floor's
        # scale even where it exceeds the input.
        for idx in (1, -2):
            assert grid.e3_nonlocal[idx] <= 3e-4

    def test_retention_ratios_for_balanced_input(self):
        e3_ratio = (64.0 / 729.0) / 1.0 * 100
        e2_ratio = (16.0 / 243.0) / (1.0 / 3.0) * 100
        assert abs(e3_ratio - 8.76) <= 0.05
        assert abs(e2_ratio - 19.8) <= 0.05


class TestFidelities:
    def test_local_formula_endpoints(self):
        assert fidelity_local(0.0) == pytest.approx(125.0 / 216.0, abs=1e-14)
        assert fidelity_local(math.pi / 4) == pytest.approx(95.0 / 216.0, abs=1e-14)

    def test_local_matches_simulation(self):
        for alpha in GRID[::4]:
            psi = input_state(alpha)
            sim = fidelity_pure(psi, apply_local_cloning(_rho(alpha)).copies)
            assert sim == pytest.approx(fidelity_local(alpha), abs=1e-12)

    def test_nonlocal_constant(self):
        assert fidelity_nonlocal() == pytest.approx(11.0 / 18.0, abs=1e-15)
        for alpha in GRID[::4]:
            psi = input_state(alpha)
            sim = fidelity_pure(psi, apply_nonlocal_cloning(_rho(alpha)).copies)
            assert sim == pytest.approx(11.0 / 18.0, abs=1e-12)

    def test_nonlocal_always_wins(self, grid):
        assert np.all(grid.f_nonlocal > grid.f_local)


class TestE2Crossings:
    def test_roots_match_analytic_values(self):
        lo, hi = find_e2_crossings()
        assert lo < hi
        assert lo == pytest.approx(CROSSING_LO, abs=2e-6)
        assert hi == pytest.approx(CROSSING_HI, abs=2e-6)

    def test_roots_are_complementary(self):
        lo, hi = find_e2_crossings()
        # Both curves depend only on cos(2*alpha)^2, so the two crossings
        # must satisfy lo^2 + hi^2 = 1.
        assert lo * lo + hi * hi == pytest.approx(1.0, abs=5e-6)

    def test_sign_pattern_around_window(self):
        def gap(x):
            alpha = math.acos(x)
            e3n, e2n = closed_form_nonlocal_measures(alpha)
            s2 = math.sin(2 * alpha) ** 2
            return e2n - s2 * s2 / 3.0

        assert gap(0.20) > 0.0
        assert gap(0.60) < 0.0
        assert gap(0.98) > 0.0
