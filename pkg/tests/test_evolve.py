"""Time stepping: exactness, order, conservation, reversibility, blow-up."""

import numpy as np
import pytest

from bosp import (
    BlowUpError,
    PeriodicGrid,
    SolverConfig,
    SpectralField,
    convergence_order,
    norm,
    propagate,
    solve,
    symmetry_defect,
)

from conftest import coeff_distance


def cos_data(grid, amp=0.1, mean=0.0):
    c = np.zeros(grid.n, dtype=complex)
    c[0] = mean
    c[1] = c[-1] = amp / 2.0
    return SpectralField(grid, c, is_real=True)


class TestConfigValidation:
    def test_bad_values(self):
        with pytest.raises(ValueError):
            SolverConfig("kdv", dt=0.1, t_final=1.0)
        with pytest.raises(ValueError):
            SolverConfig("gbo", dt=-0.1, t_final=1.0)
        with pytest.raises(ValueError):
            SolverConfig("gbo", dt=2.0, t_final=1.0)
        with pytest.raises(ValueError):
            SolverConfig("gbo", dt=0.1, t_final=1.0, scheme="rk45")
        with pytest.raises(ValueError):
            SolverConfig("gbo", dt=0.1, t_final=1.0, dealias="half")
        with pytest.raises(ValueError):
            SolverConfig("gbo", dt=0.1, t_final=1.0, k=0)

    def test_step_count_must_divide(self):
        cfg = SolverConfig("gbo", dt=0.3, t_final=1.0)
        with pytest.raises(ValueError):
            cfg.n_steps()
        cfg = SolverConfig("gbo", dt=0.1, t_final=1.0, sample_stride=3)
        with pytest.raises(ValueError):
            cfg.n_steps()

    def test_complex_data_rejected(self, grid):
        f = SpectralField.from_function(grid, lambda x: np.exp(1j * x))
        with pytest.raises(ValueError):
            solve(f, SolverConfig("gbo", dt=0.1, t_final=0.2))

    def test_renormalized_needs_zero_mean(self, grid):
        u0 = cos_data(grid, mean=0.5)
        with pytest.raises(ValueError, match="zero-mean"):
            solve(u0, SolverConfig("renormalized_gbo", dt=0.1, t_final=0.2))


class TestExactCases:
    def test_zero_data_stays_zero(self, grid):
        traj = solve(SpectralField.zero(grid),
                     SolverConfig("gbo", dt=0.05, t_final=0.5))
        for f in traj:
            assert np.max(np.abs(f.coeffs)) < 1e-14

    def test_constant_data_is_steady(self, grid):
        u0 = cos_data(grid, amp=0.0, mean=0.7)
        traj = solve(u0, SolverConfig("gbo", k=2, dt=0.05, t_final=0.5))
        assert coeff_distance(traj[-1], u0) < 1e-14

    def test_linear_tag_matches_exact_propagator(self, grid, random_fields):
        u0 = random_fields(decay=0.5)
        traj = solve(u0, SolverConfig("linear", dt=0.05, t_final=0.5))
        exact = propagate(u0, 0.5)
        assert coeff_distance(traj[-1], exact) < 1e-12


class TestAccuracy:
    def test_step_halving_ratio_is_fourth_order(self):
        grid = PeriodicGrid(1.0, 128)
        u0 = cos_data(grid, amp=0.1)

        def final(dt):
            cfg = SolverConfig("gbo", k=1, dt=dt, t_final=0.5, dealias="pad4",
                               sample_stride=int(round(0.5 / dt)))
            return solve(u0, cfg)[-1]

        ref = final(0.00625)
        e1 = coeff_distance(final(0.05), ref)
        e2 = coeff_distance(final(0.025), ref)
        assert 12.0 < e1 / e2 < 20.0

    def test_convergence_order_linear_exact(self, grid, random_fields):
        res = convergence_order(random_fields(),
                                SolverConfig("linear", dt=0.05, t_final=0.4),
                                n_levels=3)
        assert res.exact
        assert max(res.errors) < 1e-12

    @pytest.mark.parametrize("k,amp", [(1, 0.1), (3, 0.05)])
    def test_convergence_order_nonlinear(self, k, amp):
        grid = PeriodicGrid(1.0, 128)
        if k == 1:
            u0 = amp * SpectralField.from_function(grid, np.cos)
        else:
            u0 = SpectralField.from_function(
                grid, lambda x: amp * (np.cos(x) + np.sin(2 * x)))
        res = convergence_order(
            u0, SolverConfig("gbo", k=k, dt=0.04, t_final=0.4, dealias="pad4"),
            n_levels=4)
        assert not res.exact
        assert 3.8 <= res.order <= 4.2

    def test_needs_three_levels(self, grid, random_fields):
        with pytest.raises(ValueError):
            convergence_order(random_fields(),
                              SolverConfig("linear", dt=0.1, t_final=0.2), 2)

    def test_schemes_agree(self):
        grid = PeriodicGrid(1.0, 128)
        u0 = cos_data(grid, amp=0.1)
        out = {}
        for scheme in ("if_rk4", "etd_rk4"):
            cfg = SolverConfig("gbo", dt=1e-3, t_final=0.2, scheme=scheme,
                               dealias="pad4", sample_stride=200)
            out[scheme] = solve(u0, cfg)[-1]
        assert coeff_distance(out["if_rk4"], out["etd_rk4"]) < 1e-9


class TestStructurePreservation:
    def test_mean_and_reality(self):
        grid = PeriodicGrid(1.0, 128)
        u0 = cos_data(grid, amp=0.2, mean=0.4)
        traj = solve(u0, SolverConfig("gbo", k=2, dt=1e-3, t_final=0.3,
                                      dealias="pad4", sample_stride=30))
        for f in traj:
            assert abs(f.coeffs[0].real - 0.4) < 1e-12
            assert abs(f.coeffs[0].imag) < 1e-14
            assert f.is_real and symmetry_defect(f.coeffs) < 1e-12

    def test_l2_drift_small(self):
        grid = PeriodicGrid(1.0, 128)
        u0 = cos_data(grid, amp=0.2)
        traj = solve(u0, SolverConfig("gbo", dt=2e-4, t_final=0.2,
                                      dealias="pad4", sample_stride=100))
        m = [norm(f, "lp", p=2) ** 2 for f in traj]
        assert max(abs(v - m[0]) for v in m) / m[0] < 1e-10

    def test_reversibility(self):
        # x -> -x maps the equation to its time reversal; for real fields the
        # reflection is coefficient conjugation
        grid = PeriodicGrid(1.0, 128)
        u0 = cos_data(grid, amp=0.1)
        cfg = SolverConfig("gbo", dt=5e-3, t_final=0.5, dealias="pad4",
                           sample_stride=100)
        fwd = solve(u0, cfg)[-1]
        reflected = SpectralField(grid, np.conj(fwd.coeffs), is_real=True)
        back = solve(reflected, cfg)[-1]
        recovered = SpectralField(grid, np.conj(back.coeffs), is_real=True)

        cfg_half = SolverConfig("gbo", dt=2.5e-3, t_final=0.5, dealias="pad4",
                                sample_stride=200)
        self_err = coeff_distance(fwd, solve(u0, cfg_half)[-1])
        assert coeff_distance(recovered, u0) <= 10 * max(self_err, 1e-15)


class TestBlowUp:
    def test_blow_up_reports_last_good_time(self):
        grid = PeriodicGrid(1.0, 64)
        u0 = 8.0 * SpectralField.from_function(grid, np.cos)
        with pytest.raises(BlowUpError) as err:
            solve(u0, SolverConfig("gbo", k=3, dt=0.05, t_final=5.0))
        assert 0.0 <= err.value.last_good_time < 5.0
