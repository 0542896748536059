"""Conserved quantities, drift reports, space-time norms and dilations.

The model equations conserve the mean I(u) = integral u, the mass
M(u) = integral u^2, and a higher functional depending on the equation:

* for u_t + H u_xx = u u_x the weighted functional
  F(u) = integral u_x^2 - (3/4) u^2 H(u_x) + (1/8) u^4,
* for u_t + H u_xx = u^k u_x the energy
  E_k(u) = integral (1/2) |D^{1/2} u|^2 - u^{k+2} / ((k+1)(k+2)).

Each sign is pinned by a variational computation: writing dF/dt =
integral u_t * (dF/du) along the flow and solving the resulting linear
system over random fields leaves exactly one coefficient choice with an
identically vanishing derivative (a = 3/4, b = -1/8 in
F = int u_x^2 - a u^2 H u_x - b u^4 for the u u_x right-hand side, matching
the classical integrable normalization after u -> -u/2).  The ``sign``
argument flips the odd term, which is the convention conserved by the
mirror equation u_t + H u_xx = -u^k u_x; the drift separation test in the
suite re-checks the selection on a reference run.  Quadratic pieces use
Parseval exactly; higher powers use 4x padded quadrature, which is exact
for the polynomial degrees involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    SpectralField,
    Trajectory,
    PeriodicGrid,
    differentiate,
    hilbert,
    norm,
    synthesize,
)

__all__ = [
    "invariant",
    "InvariantReport",
    "drift_report",
    "xnorm",
    "xnorm_series",
    "H1Check",
    "h1_apriori_check",
    "dilate",
]

_DRIFT_FLOOR = 1e-8


def _power_integral(f: SpectralField, p: int) -> float:
    """integral f^p dx via 4x padded rectangle rule (exact for p <= 7)."""
    vals = synthesize(f, 4)
    return float(f.grid.circumference * np.mean(vals ** p))


def invariant(f: SpectralField, which: str, k: int = 1, sign: float = 1.0) -> float:
    """Evaluate a conserved functional on a real field.

    which:
      ``I``     -- integral u,
      ``M``     -- integral u^2,
      ``F_bo``  -- integral u_x^2 - sign*(3/4) u^2 H(u_x) + (1/8) u^4,
      ``E_gbo`` -- integral (1/2)|D^{1/2}u|^2 - sign * u^{k+2}/((k+1)(k+2)).

    ``sign=1`` is the convention conserved by u_t + H u_xx = u^k u_x;
    ``sign=-1`` selects the mirror convention (conserved when the
    right-hand side carries the opposite sign), used by the separation
    tests.
    """
    if not f.is_real:
        raise ValueError("invariants are defined for real fields")
    circ = f.grid.circumference
    c = f.coeffs
    q = f.grid.freqs
    if which == "I":
        return float(circ * c[0].real)
    if which == "M":
        return float(circ * np.sum(np.abs(c) ** 2))
    if which == "F_bo":
        grad_sq = float(circ * np.sum((q * np.abs(c)) ** 2))
        ux = differentiate(f, "d_dx", 1)
        hux_vals = synthesize(hilbert(ux), 4)
        u_vals = synthesize(f, 4)
        cubic = float(circ * np.mean(u_vals * u_vals * hux_vals))
        quartic = _power_integral(f, 4)
        return grad_sq - sign * 0.75 * cubic + 0.125 * quartic
    if which == "E_gbo":
        half_deriv = 0.5 * float(circ * np.sum(np.abs(q) * np.abs(c) ** 2))
        power = _power_integral(f, k + 2) / ((k + 1) * (k + 2))
        return half_deriv - sign * power
    raise ValueError(f"unknown invariant {which!r}")


@dataclass(frozen=True)
class InvariantReport:
    """Values of the tag-appropriate invariants along a trajectory.

    ``drifts[name]`` is max_t |val(t) - val(0)| / max(|val(0)|, 1e-8).
    """

    equation: str
    k: int
    times: np.ndarray
    values: dict
    drifts: dict


def _invariant_set(equation: str, k: int):
    if equation == "linear":
        return ("I", "M")
    if equation == "bo2":
        return ("I", "M", "F_bo")
    if equation == "gbo":
        return ("I", "M", "F_bo", "E_gbo") if k == 1 else ("I", "M", "E_gbo")
    return ("I", "M")  # renormalized_gbo conserves both


def drift_report(traj: Trajectory) -> InvariantReport:
    """Evaluate the invariants of the trajectory's equation at every sample."""
    names = _invariant_set(traj.equation, traj.k)
    values = {
        name: np.array([invariant(f, name, k=traj.k) for f in traj]) for name in names
    }
    drifts = {}
    for name, series in values.items():
        ref = series[0]
        drifts[name] = float(np.max(np.abs(series - ref)) / max(abs(ref), _DRIFT_FLOOR))
    return InvariantReport(traj.equation, traj.k, traj.times.copy(), values, drifts)


def xnorm_series(times, fields, level: int) -> float:
    """Mixed space-time norm of an arbitrary sampled field sequence."""
    if level not in (0, 1, 2):
        raise ValueError(f"level must be 0, 1 or 2, got {level!r}")
    times = np.asarray(times, dtype=float)
    total = 0.0
    for j in range(level + 1):
        derivs = [differentiate(f, "d_dx", j) if j else f for f in fields]
        l2s = np.array([norm(f, "lp", p=2) for f in derivs])
        l4s = np.array([norm(f, "lp", p=4) for f in derivs])
        total += float(np.max(l2s))
        total += float(np.trapezoid(l4s ** 4, times) ** 0.25)
    return total


def xnorm(traj: Trajectory, level: int) -> float:
    """Mixed space-time norm: sum over derivatives 0..level of
    sup_t ||d^j u||_{L^2} + (integral_0^T ||d^j u||_{L^4}^4 dt)^(1/4).

    The time quadrature is the composite trapezoid rule on the sample times.
    """
    return xnorm_series(traj.times, list(traj), level)


@dataclass(frozen=True)
class H1Check:
    ratio: float
    degenerate: bool


def h1_apriori_check(traj: Trajectory) -> H1Check:
    """max_t ||u(t)||_{H^1} / ||u(0)||_{H^1}; degenerate for zero data."""
    h1s = np.array([norm(f, "hs", s=1.0) for f in traj])
    if h1s[0] == 0.0:
        return H1Check(float("nan"), True)
    return H1Check(float(np.max(h1s) / h1s[0]), False)


def dilate(f: SpectralField, lam: float, variant: str = "bo", k: int = 1) -> SpectralField:
    """Carry a field to the lam-times-larger circle.

    Mode m keeps its index (its frequency becomes m over the enlarged
    period parameter), and the amplitude picks up lam^(-1) for ``bo`` or
    lam^(-1/k) for ``gbo``; if u(t, x) solves the equation on the source
    circle, lam^(-1/k) u(t/lam^2, x/lam) solves it on the target circle.
    """
    if lam < 1:
        raise ValueError(f"dilation parameter must be >= 1, got {lam!r}")
    if variant == "bo":
        amp = 1.0 / lam
    elif variant == "gbo":
        amp = lam ** (-1.0 / k)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    target = PeriodicGrid(f.grid.lam * lam, f.grid.n)
    return SpectralField(target, amp * f.coeffs, is_real=f.is_real)
