"""Operator calculus: transforms, multipliers, projections, norms."""

import numpy as np
import pytest

from bosp import (
    PeriodicGrid,
    SpectralField,
    Trajectory,
    analyze,
    antiderivative,
    differentiate,
    hilbert,
    integrate,
    mean_remove,
    multiply,
    norm,
    project,
    random_field,
    symmetry_defect,
    synthesize,
)

from conftest import coeff_distance, dense_lp, dft_direct


def field_from(grid, fn):
    return SpectralField.from_function(grid, fn)


class TestGridAndField:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            PeriodicGrid(1.0, 7)
        with pytest.raises(ValueError):
            PeriodicGrid(1.0, 6)
        with pytest.raises(ValueError):
            PeriodicGrid(-1.0, 64)

    def test_mode_order_has_positive_nyquist(self, grid):
        m = grid.modes
        assert m[0] == 0 and m[grid.n // 2] == grid.n // 2 and m[-1] == -1

    def test_spacing(self):
        g = PeriodicGrid(2.5, 32)
        assert g.dx == 2 * np.pi * 2.5 / 32
        assert np.allclose(np.diff(g.x), g.dx)

    def test_field_rejects_wrong_length(self, grid):
        with pytest.raises(ValueError):
            SpectralField(grid, np.zeros(10))

    def test_analyze_rejects_wrong_length(self, grid):
        with pytest.raises(ValueError):
            analyze(np.zeros(10), grid)

    def test_real_flag_detection(self, grid, random_fields):
        f = random_fields()
        assert f.is_real and symmetry_defect(f.coeffs) < 1e-13
        g = project(f, "plus")
        assert not g.is_real


class TestTransforms:
    def test_single_mode_identity(self, grid):
        f = field_from(grid, lambda x: np.exp(1j * x))
        expected = np.zeros(grid.n, dtype=complex)
        expected[1] = 1.0
        assert np.max(np.abs(f.coeffs - expected)) < 1e-14

    def test_constant(self, grid):
        f = analyze(np.full(grid.n, 3.0), grid)
        assert abs(f.coeffs[0] - 3.0) < 1e-15
        assert np.max(np.abs(f.coeffs[1:])) < 1e-15

    def test_roundtrip_against_direct_dft(self, rng):
        grid = PeriodicGrid(1.0, 64)
        samples = rng.standard_normal(64)
        f = analyze(samples, grid)
        assert np.max(np.abs(f.coeffs - dft_direct(samples, 1.0))) < 1e-12
        back = synthesize(f)
        assert np.max(np.abs(back - samples)) < 1e-12 * np.max(np.abs(samples))

    def test_normalization_carries_lambda(self):
        grid = PeriodicGrid(3.0, 64)
        f = field_from(grid, lambda x: np.cos(x / 3.0))  # one circle period
        assert abs(f.coeffs[1] - 0.5) < 1e-14

    def test_oversampled_synthesis_interpolates(self, grid):
        f = field_from(grid, np.cos)
        vals = synthesize(f, oversample=4)
        fine = PeriodicGrid(grid.lam, 4 * grid.n)
        assert np.max(np.abs(vals - np.cos(fine.x))) < 1e-13

    def test_padded_analysis_rejects_bad_length(self, grid):
        from bosp import analyze_values_padded

        with pytest.raises(ValueError):
            analyze_values_padded(np.zeros(grid.n + 3), grid)


class TestHilbert:
    def test_cos_to_sin(self, grid):
        out = hilbert(field_from(grid, np.cos))
        assert coeff_distance(out, field_from(grid, np.sin)) < 1e-14

    def test_constant_to_zero(self, grid):
        out = hilbert(analyze(np.full(grid.n, 4.2), grid))
        assert np.max(np.abs(out.coeffs)) == 0.0

    def test_squares_to_minus_identity_off_mean(self, grid):
        f = field_from(grid, lambda x: 2.0 + np.cos(x))
        out = hilbert(hilbert(f))
        assert coeff_distance(out, -1.0 * field_from(grid, np.cos)) < 1e-14

    def test_real_to_real(self, random_fields):
        f = random_fields()
        assert hilbert(f).is_real


class TestProjections:
    def test_plus_of_cos(self, grid):
        out = project(field_from(grid, np.cos), "plus")
        expected = np.zeros(grid.n, dtype=complex)
        expected[1] = 0.5
        assert np.max(np.abs(out.coeffs - expected)) < 1e-14

    def test_mean_of_cos_squared(self, grid):
        u = field_from(grid, np.cos)
        u2 = multiply(u, u)
        out = project(u2, "zero")
        assert abs(out.coeffs[0] - 0.5) < 1e-14

    def test_three_way_partition_is_exact(self, grid):
        f = field_from(grid, lambda x: np.exp(-2j * x) + 5.0 + np.exp(3j * x))
        total = project(f, "plus") + project(f, "minus") + project(f, "zero")
        assert np.array_equal(total.coeffs, f.coeffs)

    def test_partition_random(self, random_fields):
        f = random_fields()
        total = project(f, "plus") + project(f, "minus") + project(f, "zero")
        assert np.array_equal(total.coeffs, f.coeffs)

    def test_band_partition_with_mirror(self, random_fields):
        f = random_fields()
        cut = 5.0
        q = f.grid.freqs
        mirror = np.where(q < -cut, f.coeffs, 0.0)
        total = (project(f, "leq", cut).coeffs + project(f, "gt", cut).coeffs
                 + mirror + project(f, "zero").coeffs)
        assert np.array_equal(total, f.coeffs)

    def test_cutoffs_in_physical_units(self):
        grid = PeriodicGrid(2.0, 64)
        f = SpectralField.from_function(grid, lambda x: np.cos(1.5 * x))  # mode 3
        assert np.max(np.abs(project(f, "leq", 1.0).coeffs)) < 1e-15
        kept = project(f, "leq", 1.5)
        assert abs(kept.coeffs[3] - 0.5) < 1e-14

    def test_bad_selector(self, random_fields):
        with pytest.raises(ValueError):
            project(random_fields(), "high")
        with pytest.raises(ValueError):
            project(random_fields(), "leq")


class TestDerivatives:
    def test_half_derivative_unit_mode(self, grid):
        f = field_from(grid, lambda x: np.exp(1j * x))
        out = differentiate(f, "abs_d", 0.5)
        assert coeff_distance(out, f) < 1e-14

    def test_half_derivative_second_mode(self, grid):
        f = field_from(grid, lambda x: np.exp(2j * x))
        out = differentiate(f, "abs_d", 0.5)
        assert np.abs(out.coeffs[2] - np.sqrt(2)) < 1e-14

    def test_first_derivative(self, grid):
        out = differentiate(field_from(grid, np.sin), "d_dx", 1)
        assert coeff_distance(out, field_from(grid, np.cos)) < 1e-13

    def test_bessel_weight(self, grid):
        f = field_from(grid, lambda x: np.exp(1j * x))
        out = differentiate(f, "bessel", 1.0)
        assert np.abs(out.coeffs[1] - np.sqrt(2)) < 1e-14

    def test_negative_exponent_rejected(self, random_fields):
        f = random_fields()
        for kind in ("abs_d", "bessel"):
            with pytest.raises(ValueError):
                differentiate(f, kind, -0.5)

    def test_real_outputs(self, random_fields):
        f = random_fields()
        for kind, order in (("d_dx", 1), ("d_dx", 2), ("abs_d", 0.5), ("bessel", 1.5)):
            out = differentiate(f, kind, order)
            assert out.is_real and symmetry_defect(out.coeffs) < 1e-13


class TestAntiderivative:
    def test_cos_integrates_to_sin(self, grid):
        out = antiderivative(field_from(grid, np.cos))
        assert coeff_distance(out, field_from(grid, np.sin)) < 1e-14

    def test_mean_obstruction(self, grid):
        with pytest.raises(ValueError, match="C_0"):
            antiderivative(analyze(np.ones(grid.n), grid))

    def test_left_inverse_of_derivative(self, random_fields):
        f = random_fields()
        g = differentiate(antiderivative(f), "d_dx", 1)
        assert coeff_distance(g, f) < 1e-12

    def test_zero_mean_output(self, random_fields):
        assert antiderivative(random_fields()).coeffs[0] == 0.0


class TestMeanRemove:
    def test_shift_split(self, grid):
        f = field_from(grid, lambda x: 2.0 + np.cos(x))
        mean, rest = mean_remove(f)
        assert mean == pytest.approx(2.0, abs=1e-14)
        assert coeff_distance(rest, field_from(grid, np.cos)) < 1e-14

    def test_zero_field(self, grid):
        mean, rest = mean_remove(SpectralField.zero(grid))
        assert mean == 0.0 and np.max(np.abs(rest.coeffs)) == 0.0

    def test_double_angle(self, grid):
        u = field_from(grid, np.cos)
        _, m = mean_remove(multiply(u, u))
        expected = field_from(grid, lambda x: 0.5 * np.cos(2 * x))
        assert coeff_distance(m, expected) < 1e-14

    def test_exact_reassembly(self, random_fields):
        f = random_fields(mean=0.7)
        mean, rest = mean_remove(f)
        total = rest.coeffs.copy()
        total[0] += mean
        assert np.array_equal(total, f.coeffs)


class TestNorms:
    def test_hs_single_mode(self, grid):
        f = field_from(grid, lambda x: np.exp(1j * x))
        for s in (0.0, 0.5, 1.0, 2.0):
            assert norm(f, "hs", s=s) == pytest.approx(2 ** (s / 2), rel=1e-14)

    def test_l2_of_cos(self, grid):
        assert norm(field_from(grid, np.cos), "lp", p=2) == pytest.approx(
            np.sqrt(np.pi), rel=1e-14)

    def test_l4_of_cos_against_dense_oracle(self, grid):
        f = field_from(grid, np.cos)
        lib = norm(f, "lp", p=4)
        assert lib == pytest.approx((3 * np.pi / 4) ** 0.25, rel=1e-13)
        assert lib == pytest.approx(dense_lp(f, 4), rel=1e-12)

    def test_linf(self, grid):
        f = field_from(grid, lambda x: 2.0 + np.cos(x))
        assert norm(f, "linf") == pytest.approx(3.0, rel=1e-12)

    def test_hs_dot_kills_mean(self, grid):
        f = field_from(grid, lambda x: 5.0 + np.cos(x))
        assert norm(f, "hs_dot", s=1.0) == pytest.approx(np.sqrt(0.5), rel=1e-13)

    def test_unsupported_p(self, random_fields):
        with pytest.raises(ValueError):
            norm(random_fields(), "lp", p=3)

    def test_missing_smoothness_parameter(self, random_fields):
        f = random_fields()
        with pytest.raises(ValueError):
            norm(f, "hs")
        with pytest.raises(ValueError):
            norm(f, "hs_dot")
        with pytest.raises(ValueError):
            norm(f, "energy")

    def test_parseval(self, rng):
        # coefficient-space L^2 equals dense quadrature, lambda factor included
        for lam in (1.0, 3.5):
            grid = PeriodicGrid(lam, 64)
            f = random_field(grid, rng, n_modes=20)
            assert norm(f, "lp", p=2) == pytest.approx(dense_lp(f, 2), rel=1e-12)


class TestOperatorProperties:
    def test_multiplier_commutation(self, rng):
        grid = PeriodicGrid(2.0, 64)
        for _ in range(100):
            f = random_field(grid, rng, n_modes=24)
            a = hilbert(differentiate(f, "abs_d", 0.5))
            b = differentiate(hilbert(f), "abs_d", 0.5)
            scale = max(np.max(np.abs(a.coeffs)), 1e-300)
            assert coeff_distance(a, b) / scale < 1e-13

    def test_hilbert_antisymmetry(self, rng):
        grid = PeriodicGrid(1.0, 64)
        for _ in range(25):
            f = random_field(grid, rng, n_modes=20)
            g = random_field(grid, rng, n_modes=20)
            lhs = integrate(multiply(f, hilbert(g)))
            rhs = -integrate(multiply(hilbert(f), g))
            assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-14)

    def test_symmetry_preserved_across_operations(self, random_fields):
        from bosp import antiderivative as anti, propagate

        f = random_fields(mean=0.3)
        zero_mean = mean_remove(f)[1]
        outputs = [
            hilbert(f),
            differentiate(f, "d_dx", 1),
            differentiate(f, "abs_d", 1.5),
            differentiate(f, "bessel", 1.0),
            project(f, "leq", 8.0),
            zero_mean,
            anti(zero_mean),
            propagate(f, 0.7),
            multiply(f, f),
        ]
        for out in outputs:
            assert out.is_real
            assert symmetry_defect(out.coeffs) < 1e-13

    def test_product_exactness(self, grid):
        u = field_from(grid, np.cos)
        prod = multiply(u, u)
        expected = field_from(grid, lambda x: 0.5 + 0.5 * np.cos(2 * x))
        assert coeff_distance(prod, expected) < 1e-15


class TestTrajectoryType:
    def test_needs_two_snapshots(self, grid):
        f = SpectralField.zero(grid)
        with pytest.raises(ValueError):
            Trajectory(grid, [0.0], [f], "linear")

    def test_uniform_spacing_enforced(self, grid):
        f = SpectralField.zero(grid)
        with pytest.raises(ValueError):
            Trajectory(grid, [0.0, 0.1, 0.30001], [f, f, f], "linear")

    def test_grid_mismatch(self, grid):
        f = SpectralField.zero(grid)
        g = SpectralField.zero(PeriodicGrid(2.0, grid.n))
        with pytest.raises(ValueError):
            Trajectory(grid, [0.0, 0.1], [f, g], "linear")

    def test_unknown_tag(self, grid):
        f = SpectralField.zero(grid)
        with pytest.raises(ValueError):
            Trajectory(grid, [0.0, 0.1], [f, f], "kdv")
