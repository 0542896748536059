"""Gauge transform of the circle equations and its derived identities.

Setup.  For a real zero-mean solution u of

    u_t + H u_xx = 2 u u_x                                   (variant "bo")

let F be the zero-mean primitive of u and define the filtered variable

    w = -i P_+(e^{-iF} u)  ( = d_x P_+(e^{-iF}) ).

Then w solves the Schroedinger-type equation

    w_t - i w_xx = -2 d_x P_+( P_-(u_x) e^{-iF} ) + P_0(u^2) P_+(u e^{-iF}).

For a real zero-mean solution v of the renormalized equation

    v_t + H v_xx = 2 M(v^k) v_x,   M(g) = g - mean(g),       (variant "gbo")

let F be the zero-mean primitive of M(v^k) and w = P_+(e^{-iF} v).  Then

    w_t - i w_xx = a + b + c + d,
    a =  i P_0(M(v^k)^2) P_+(e^{-iF} v),
    b = -2i P_+(e^{-iF} P_-(v_xx)),
    c = -2k P_+(e^{-iF} v M(v^{k-1} P_-(v_x))),
    d = -i k(k-1) P_+(e^{-iF} v h),   h = antiderivative of M(v^{k-2} v_x H v_x).

(At k = 1 the second equation, multiplied by -i, reduces to the first:
P_+(u e^{-iF}) = i w there, and the b and c terms collapse into the single
derivative term via d_x P_+(e^{-iF} P_-(u_x)) = P_+(e^{-iF} P_-(u_xx))
- i P_+(u e^{-iF} P_-(u_x)).)

``gauge_residual`` turns these identities into numbers: instantaneous mode
substitutes the evolution equation for the time derivative (no time
stepping at all), trajectory mode uses fourth-order centered differences
on uniformly sampled snapshots.

All products involving e^{-iF} are formed pointwise on a 4x zero-padded
grid and truncated back, so the only error left is the spectral tail of
the data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    ZERO_MEAN_TOL,
    SpectralField,
    Trajectory,
    analyze_values_padded,
    antiderivative,
    differentiate,
    hilbert,
    mean_remove,
    norm,
    project,
    synthesize,
)

__all__ = [
    "GaugeState",
    "build_gauge",
    "RhsBo",
    "rhs_bo",
    "GboTerms",
    "rhs_gbo_terms",
    "ResidualNorms",
    "gauge_residual",
    "reconstruct_u",
    "LipschitzGap",
    "gauge_lipschitz_gap",
    "remove_mean_bo",
    "renormalize_gbo",
    "pde_residual",
]

_PAD = 4


def _vals(f: SpectralField) -> np.ndarray:
    return synthesize(f, _PAD)


def _field(values, grid, is_real=None) -> SpectralField:
    return analyze_values_padded(values, grid, is_real=is_real)


def _plus(values, grid) -> SpectralField:
    return project(_field(values, grid), "plus")


@dataclass(frozen=True)
class GaugeState:
    """The triple (F, W, w) of the gauge transform at one time.

    F is the real zero-mean phase, W = P_+(e^{-iF}), and w is the filtered
    variable: -i P_+(e^{-iF} v) for ``bo``, P_+(e^{-iF} v) for ``gbo``.
    """

    F: SpectralField
    W: SpectralField
    w: SpectralField
    variant: str
    k: int = 1


def _phase(v: SpectralField, variant: str, k: int) -> SpectralField:
    """The gauge phase F: primitive of v (bo) or of M(v^k) (gbo)."""
    if variant == "bo":
        return antiderivative(v)
    if variant == "gbo":
        _, mvk = mean_remove(_field(_vals(v) ** k, v.grid))
        return antiderivative(mvk)
    raise ValueError(f"unknown gauge variant {variant!r}")


def build_gauge(v: SpectralField, variant: str = "bo", k: int = 1) -> GaugeState:
    """Construct the gauge state of a real field.

    ``bo`` requires zero-mean input (the primitive must be periodic); the
    ``gbo`` phase uses M(v^k), which removes the mean itself.
    """
    if not v.is_real:
        raise ValueError("gauge transform is defined for real fields")
    F = _phase(v, variant, k)
    E = np.exp(-1j * synthesize(F, _PAD))
    W = _plus(E, v.grid)
    wv = _plus(E * _vals(v), v.grid)
    w = (-1j) * wv if variant == "bo" else wv
    return GaugeState(F=F, W=W, w=w, variant=variant, k=k)


@dataclass(frozen=True)
class RhsBo:
    """Right-hand side of the bo gauge equation, term by term."""

    dx_term: SpectralField
    mean_term: SpectralField

    @property
    def total(self) -> SpectralField:
        return self.dx_term + self.mean_term


def rhs_bo(u: SpectralField, F: SpectralField | None = None) -> RhsBo:
    """-2 d_x P_+(P_-(u_x) e^{-iF}) + P_0(u^2) P_+(u e^{-iF}) for zero-mean u."""
    if abs(u.coeffs[0]) >= ZERO_MEAN_TOL:
        raise ValueError(
            f"bo gauge right-hand side needs zero-mean input: |C_0| = {abs(u.coeffs[0]):.3e}"
        )
    if F is None:
        F = antiderivative(u)
    E = np.exp(-1j * synthesize(F, _PAD))
    u_vals = _vals(u)
    ux_minus = synthesize(project(differentiate(u, "d_dx", 1), "minus"), _PAD)
    dx_term = (-2.0) * differentiate(_plus(ux_minus * E, u.grid), "d_dx", 1)
    p0_u2 = float(np.mean(u_vals * u_vals))
    mean_term = p0_u2 * _plus(u_vals * E, u.grid)
    return RhsBo(dx_term=dx_term, mean_term=mean_term)


@dataclass(frozen=True)
class GboTerms:
    """The four terms a, b, c, d of the gbo gauge equation."""

    a: SpectralField
    b: SpectralField
    c: SpectralField
    d: SpectralField

    @property
    def total(self) -> SpectralField:
        return self.a + self.b + self.c + self.d


def rhs_gbo_terms(v: SpectralField, k: int) -> GboTerms:
    """The a + b + c + d right-hand side for zero-mean real v; d = 0 at k = 1."""
    if abs(v.coeffs[0]) >= ZERO_MEAN_TOL:
        raise ValueError(
            f"gbo gauge right-hand side needs zero-mean input: |C_0| = {abs(v.coeffs[0]):.3e}"
        )
    if k < 1:
        raise ValueError("k must be at least 1")
    grid = v.grid
    F = _phase(v, "gbo", k)
    E = np.exp(-1j * synthesize(F, _PAD))
    v_vals = _vals(v)
    vx = differentiate(v, "d_dx", 1)
    vx_vals = _vals(vx)

    mvk_vals = v_vals ** k - np.mean(v_vals ** k)
    p0_m2 = float(np.mean(mvk_vals ** 2))
    a = 1j * p0_m2 * _plus(E * v_vals, grid)

    vxx_minus = synthesize(project(differentiate(v, "d_dx", 2), "minus"), _PAD)
    b = -2j * _plus(E * vxx_minus, grid)

    vx_minus = synthesize(project(vx, "minus"), _PAD)
    g = v_vals ** (k - 1) * vx_minus
    c = (-2.0 * k) * _plus(E * v_vals * (g - np.mean(g)), grid)

    if k >= 2:
        base = v_vals ** (k - 2) * vx_vals * _vals(hilbert(vx))
        _, m_base = mean_remove(_field(base, grid))
        h = antiderivative(m_base)
        d = (-1j * k * (k - 1)) * _plus(E * v_vals * _vals(h), grid)
    else:
        d = SpectralField.zero(grid)
    return GboTerms(a=a, b=b, c=c, d=d)


def _ut_bo2(u: SpectralField) -> SpectralField:
    """u_t = -H u_xx + 2 u u_x, the conservative form d_x(u^2)."""
    u2 = _field(_vals(u) ** 2, u.grid)
    return -1.0 * hilbert(differentiate(u, "d_dx", 2)) + differentiate(u2, "d_dx", 1)


def _vt_gbo(v: SpectralField, k: int) -> SpectralField:
    """v_t = -H v_xx + 2 M(v^k) v_x."""
    v_vals = _vals(v)
    mvk = v_vals ** k - np.mean(v_vals ** k)
    nl = _field(2.0 * mvk * _vals(differentiate(v, "d_dx", 1)), v.grid)
    return -1.0 * hilbert(differentiate(v, "d_dx", 2)) + nl


@dataclass(frozen=True)
class ResidualNorms:
    """L^2 and H^1 norms of a gauge-equation residual."""

    l2: float
    h1: float
    per_sample_l2: tuple = ()
    per_sample_times: tuple = ()


def _instantaneous_residual(v: SpectralField, variant: str, k: int) -> ResidualNorms:
    grid = v.grid
    if variant == "bo":
        ut = _ut_bo2(v)
        F = antiderivative(v)
        Ft = antiderivative(ut)
        E = np.exp(-1j * synthesize(F, _PAD))
        wt = (-1j) * _plus(E * (-1j * _vals(Ft) * _vals(v) + _vals(ut)), grid)
        w = (-1j) * _plus(E * _vals(v), grid)
        rhs = rhs_bo(v, F).total
    elif variant == "gbo":
        vt = _vt_gbo(v, k)
        F = _phase(v, "gbo", k)
        vt_vals = _vals(vt)
        _, m_kvt = mean_remove(_field(k * _vals(v) ** (k - 1) * vt_vals, grid))
        Ft = antiderivative(m_kvt)
        E = np.exp(-1j * synthesize(F, _PAD))
        wt = _plus(E * (-1j * _vals(Ft) * _vals(v) + vt_vals), grid)
        w = _plus(E * _vals(v), grid)
        rhs = rhs_gbo_terms(v, k).total
    else:
        raise ValueError(f"unknown gauge variant {variant!r}")
    resid = wt - 1j * differentiate(w, "d_dx", 2) - rhs
    return ResidualNorms(l2=norm(resid, "lp", p=2), h1=norm(resid, "hs", s=1.0))


_STENCIL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def _trajectory_residual(traj: Trajectory, variant: str, k: int) -> ResidualNorms:
    if len(traj) < 5:
        raise ValueError("trajectory mode needs at least 5 uniformly spaced snapshots")
    h = traj.sample_dt
    states = [build_gauge(f, variant, k) for f in traj]
    l2s, h1s, times = [], [], []
    for i in range(2, len(traj) - 2):
        wt_coeffs = sum(
            c * states[i + off].w.coeffs
            for off, c in zip((-2, -1, 0, 1, 2), _STENCIL)
        ) / h
        wt = SpectralField(traj.grid, wt_coeffs, is_real=False)
        v = traj[i]
        rhs = rhs_bo(v, states[i].F).total if variant == "bo" else rhs_gbo_terms(v, k).total
        resid = wt - 1j * differentiate(states[i].w, "d_dx", 2) - rhs
        l2s.append(norm(resid, "lp", p=2))
        h1s.append(norm(resid, "hs", s=1.0))
        times.append(float(traj.times[i]))
    return ResidualNorms(
        l2=float(np.max(l2s)), h1=float(np.max(h1s)),
        per_sample_l2=tuple(l2s), per_sample_times=tuple(times),
    )


def gauge_residual(target, variant: str = "bo", k: int = 1,
                   mode: str = "instantaneous") -> ResidualNorms:
    """Residual of the derived gauge equation, ||w_t - i w_xx - RHS||.

    ``instantaneous`` takes a single field, substitutes the evolution
    equation for the time derivative, and must vanish to spectral accuracy;
    ``trajectory`` takes a uniformly sampled Trajectory (>= 5 snapshots) and
    differentiates w in time with a fourth-order centered stencil, so the
    residual decays like the fourth power of the sampling interval.
    """
    if mode == "instantaneous":
        if not isinstance(target, SpectralField):
            raise TypeError("instantaneous mode expects a SpectralField")
        return _instantaneous_residual(target, variant, k)
    if mode == "trajectory":
        if not isinstance(target, Trajectory):
            raise TypeError("trajectory mode expects a Trajectory")
        return _trajectory_residual(target, variant, k)
    raise ValueError(f"unknown mode {mode!r}")


def reconstruct_u(gauge: GaugeState, v: SpectralField) -> SpectralField:
    """Invert the bo gauge: e^{iF} (i w) + e^{iF} P_-(e^{-iF} v) equals v.

    Only the ``bo`` variant admits this two-term inversion: there the mean
    mode of e^{-iF} v vanishes identically (e^{-iF} v = i d_x e^{-iF} is an
    exact derivative).  For ``gbo`` the discarded mean term does not vanish,
    so reconstruction is refused.
    """
    if gauge.variant != "bo":
        raise ValueError("reconstruction is only defined for the bo gauge")
    grid = v.grid
    F_vals = synthesize(gauge.F, _PAD)
    E = np.exp(-1j * F_vals)
    Ebar = np.exp(1j * F_vals)
    iw_vals = synthesize(1j * gauge.w, _PAD)
    minus_vals = synthesize(project(_field(E * _vals(v), grid), "minus"), _PAD)
    rec = _field(Ebar * (iw_vals + minus_vals), grid)
    return SpectralField(grid, rec.coeffs, is_real=v.is_real)


@dataclass(frozen=True)
class LipschitzGap:
    """Sup-norm gap between two gauge phases and its scaled ratio."""

    gap: float
    bound_ratio: float
    degenerate: bool


def gauge_lipschitz_gap(phi1: SpectralField, phi2: SpectralField,
                        variant: str = "bo", k: int = 1) -> LipschitzGap:
    """gap = ||e^{-iF1} - e^{-iF2}||_inf and gap / (sqrt(lam) ||phi1 - phi2||_L2).

    Equal inputs report a zero ratio with the degenerate flag set.
    """
    phi1._check_same_grid(phi2)
    if np.array_equal(phi1.coeffs, phi2.coeffs):
        return LipschitzGap(gap=0.0, bound_ratio=0.0, degenerate=True)
    E1 = np.exp(-1j * synthesize(_phase(phi1, variant, k), _PAD))
    E2 = np.exp(-1j * synthesize(_phase(phi2, variant, k), _PAD))
    gap = float(np.max(np.abs(E1 - E2)))
    dist = norm(phi1 - phi2, "lp", p=2)
    ratio = gap / (np.sqrt(phi1.grid.lam) * dist)
    return LipschitzGap(gap=gap, bound_ratio=float(ratio), degenerate=False)


# ---------------------------------------------------------------------------
# trajectory renormalizations
# ---------------------------------------------------------------------------


def remove_mean_bo(traj: Trajectory) -> Trajectory:
    """Shift a constant-mean solution to the zero-mean sector.

    v(t, x) = u(t, x - c*gamma*t) - gamma with gamma the conserved mean and
    c the coefficient of the nonlinearity (1 for ``gbo`` k=1, 2 for
    ``bo2``); v solves the same equation with zero mean.  Realized as the
    phase multiplier exp(-i*q*c*gamma*t) plus a mean subtraction.
    """
    if not (traj.equation == "bo2" or (traj.equation == "gbo" and traj.k == 1)):
        raise ValueError("mean removal applies to the k = 1 equations only")
    gamma = float(traj[0].coeffs[0].real)
    rate = (2.0 if traj.equation == "bo2" else 1.0) * gamma
    q = traj.grid.freqs
    out = []
    for t, f in zip(traj.times, traj):
        shifted = f.coeffs * np.exp(-1j * q * rate * t)
        shifted[0] -= gamma
        out.append(SpectralField(traj.grid, shifted, is_real=f.is_real))
    return traj.with_snapshots(out)


def renormalize_gbo(traj: Trajectory) -> Trajectory:
    """Map a gbo solution to the renormalized zero-mean-flux form.

    v(t, x) = 2^(-1/k) u(t, x - S(t)),  S(t) = integral_0^t mean(u^k),
    which solves v_t + H v_xx = 2 M(v^k) v_x.  The amplitude factor makes
    the coefficient of the renormalized nonlinearity exactly 2, and the
    drift S(t) (accumulated with the trapezoid rule on the sample times)
    removes the mean transport.
    """
    if traj.equation != "gbo":
        raise ValueError("renormalization applies to gbo trajectories only")
    k = traj.k
    amp = 2.0 ** (-1.0 / k)
    means = np.array([
        float(np.mean(synthesize(f, _PAD) ** k).real) for f in traj
    ])
    dt = traj.sample_dt
    shifts = np.concatenate(([0.0], np.cumsum(0.5 * dt * (means[1:] + means[:-1]))))
    q = traj.grid.freqs
    out = []
    for s, f in zip(shifts, traj):
        coeffs = amp * f.coeffs * np.exp(-1j * q * s)
        out.append(SpectralField(traj.grid, coeffs, is_real=f.is_real))
    return traj.with_snapshots(out, equation="renormalized_gbo", k=k)


def _equation_rhs(f: SpectralField, equation: str, k: int) -> SpectralField:
    """Right-hand side -H u_xx + N(u) of the tagged equation."""
    lin = -1.0 * hilbert(differentiate(f, "d_dx", 2))
    if equation == "linear":
        return lin
    if equation == "bo2":
        return lin + differentiate(_field(_vals(f) ** 2, f.grid), "d_dx", 1)
    if equation == "gbo":
        flux = _field(_vals(f) ** (k + 1), f.grid)
        return lin + (1.0 / (k + 1)) * differentiate(flux, "d_dx", 1)
    if equation == "renormalized_gbo":
        return _vt_gbo(f, k)
    raise ValueError(f"unknown equation tag {equation!r}")


def pde_residual(traj: Trajectory) -> ResidualNorms:
    """Residual of the trajectory's own evolution equation.

    Time derivatives use the fourth-order centered stencil on the sample
    times, so this measures how well the stored snapshots satisfy the
    tagged equation (used to validate the mean-removal and renormalization
    maps, and as a sampling-rate diagnostic).
    """
    if len(traj) < 5:
        raise ValueError("need at least 5 uniformly spaced snapshots")
    h = traj.sample_dt
    l2s, h1s, times = [], [], []
    for i in range(2, len(traj) - 2):
        ut_coeffs = sum(
            c * traj[i + off].coeffs for off, c in zip((-2, -1, 0, 1, 2), _STENCIL)
        ) / h
        rhs = _equation_rhs(traj[i], traj.equation, traj.k)
        resid = SpectralField(traj.grid, ut_coeffs - rhs.coeffs, is_real=False)
        l2s.append(norm(resid, "lp", p=2))
        h1s.append(norm(resid, "hs", s=1.0))
        times.append(float(traj.times[i]))
    return ResidualNorms(
        l2=float(np.max(l2s)), h1=float(np.max(h1s)),
        per_sample_l2=tuple(l2s), per_sample_times=tuple(times),
    )
