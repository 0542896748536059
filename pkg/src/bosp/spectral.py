"""Fourier-side operator calculus on the circle of circumference 2*pi*lam.

Conventions
-----------
A function on the circle is represented by its Fourier coefficients

    C_q(f) = (1 / 2*pi*lam) * integral_0^{2*pi*lam} f(x) exp(-i q x) dx,

where the physical frequency q = m / lam runs over the integer modes
m = 0, 1, ..., n/2, -n/2 + 1, ..., -1 in standard transform order.  The
single self-conjugate slot at index n/2 is labelled +n/2 (positive
frequency); for real fields it must be real.

Odd multipliers (sgn q, odd powers of iq, 1/(iq)) zero that Nyquist slot so
that real fields map to real fields exactly; see
http://math.mit.edu/~stevenj/fft-deriv.pdf for the standard argument.

Norm conventions follow the coefficient-space definitions used throughout:

* ``||f||_{L^2}^2 = 2*pi*lam * sum |C_q|^2``  (Parseval with the circle
  measure),
* ``||f||_{H^s}^2 = sum (1 + q^2)^s |C_q|^2``  (plain coefficient sum, no
  measure factor) -- note the deliberate mismatch between the two, which is
  documented here once and respected everywhere.

L^p norms for p not equal to 2 are evaluated by the rectangle rule on a
4x zero-padded synthesis grid, which is exact for trigonometric
polynomials up to the padded degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ZERO_MEAN_TOL",
    "PeriodicGrid",
    "SpectralField",
    "Trajectory",
    "analyze",
    "synthesize",
    "analyze_values_padded",
    "hilbert",
    "project",
    "differentiate",
    "antiderivative",
    "mean_remove",
    "norm",
    "multiply",
    "field_power",
    "integrate",
    "symmetry_defect",
]

# Absolute tolerance on |C_0| below which a field counts as zero-mean.
ZERO_MEAN_TOL = 1e-10

_DEFAULT_PAD = 4


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform collocation grid x_j = 2*pi*lam*j/n on the circle.

    ``lam`` is the period parameter (circumference 2*pi*lam) and ``n`` the
    number of collocation points; ``n`` must be even and at least 8.
    """

    lam: float
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 8 and self.n % 2 == 0):
            raise ValueError(f"n must be an even integer >= 8, got {self.n!r}")
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam!r}")
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "n", int(self.n))

    @property
    def circumference(self) -> float:
        return 2.0 * np.pi * self.lam

    @property
    def dx(self) -> float:
        return self.circumference / self.n

    @property
    def x(self) -> np.ndarray:
        return self.dx * np.arange(self.n)

    @property
    def modes(self) -> np.ndarray:
        """Integer mode labels in transform order, Nyquist labelled +n/2."""
        m = np.arange(self.n)
        return np.where(m <= self.n // 2, m, m - self.n)

    @property
    def freqs(self) -> np.ndarray:
        """Physical frequencies q = m / lam."""
        return self.modes / self.lam


def symmetry_defect(coeffs: np.ndarray) -> float:
    """Max deviation of a coefficient array from conjugate symmetry.

    Measures max |C_{-m} - conj(C_m)| together with |Im C_{n/2}|, scaled by
    the largest coefficient magnitude (absolute when everything is tiny).
    """
    c = np.asarray(coeffs)
    n = c.size
    rev = np.conj(np.roll(c[::-1], 1))  # slot m -> conj(slot -m)
    defect = float(np.max(np.abs(c - rev)))
    defect = max(defect, abs(float(c[n // 2].imag)))
    scale = float(np.max(np.abs(c)))
    return defect / scale if scale > 1e-300 else defect


class SpectralField:
    """One snapshot of a function on the circle, stored as coefficients.

    Coefficients are the truth; physical values are always derived.  The
    ``is_real`` flag marks fields whose coefficients are conjugate
    symmetric; every operator propagates it.
    """

    __slots__ = ("grid", "coeffs", "is_real")

    def __init__(self, grid: PeriodicGrid, coeffs, is_real=None):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != (grid.n,):
            raise ValueError(
                f"coefficient array has shape {coeffs.shape}, expected ({grid.n},)"
            )
        if is_real is None:
            is_real = symmetry_defect(coeffs) < 1e-13
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "is_real", bool(is_real))

    def __setattr__(self, name, value):
        raise AttributeError("SpectralField is immutable")

    @classmethod
    def from_function(cls, grid: PeriodicGrid, fn) -> "SpectralField":
        return analyze(fn(grid.x), grid)

    @classmethod
    def zero(cls, grid: PeriodicGrid) -> "SpectralField":
        return cls(grid, np.zeros(grid.n, dtype=np.complex128), is_real=True)

    @property
    def mean(self):
        """C_0, the mean value over the circle."""
        c0 = self.coeffs[0]
        return float(c0.real) if self.is_real else complex(c0)

    def values(self, oversample: int = 1) -> np.ndarray:
        return synthesize(self, oversample=oversample)

    def _with(self, coeffs, is_real) -> "SpectralField":
        return SpectralField(self.grid, coeffs, is_real=is_real)

    def _check_same_grid(self, other: "SpectralField"):
        if self.grid != other.grid:
            raise ValueError("fields live on different grids")

    def __add__(self, other):
        self._check_same_grid(other)
        return self._with(self.coeffs + other.coeffs, self.is_real and other.is_real)

    def __sub__(self, other):
        self._check_same_grid(other)
        return self._with(self.coeffs - other.coeffs, self.is_real and other.is_real)

    def __neg__(self):
        return self._with(-self.coeffs, self.is_real)

    def __mul__(self, scalar):
        scalar = complex(scalar)
        real_scalar = scalar.imag == 0.0
        return self._with(self.coeffs * scalar, self.is_real and real_scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return (
            f"SpectralField(lam={self.grid.lam:.6g}, n={self.grid.n}, "
            f"is_real={self.is_real})"
        )


# ---------------------------------------------------------------------------
# transforms and padding
# ---------------------------------------------------------------------------


def analyze(samples, grid: PeriodicGrid) -> SpectralField:
    """Point values -> coefficients, with the 1/(2*pi*lam) normalization.

    C_0 of the result equals the mean of the samples.
    """
    samples = np.asarray(samples)
    if samples.shape != (grid.n,):
        raise ValueError(
            f"sample array has shape {samples.shape}, expected ({grid.n},)"
        )
    coeffs = np.fft.fft(samples) / grid.n
    return SpectralField(grid, coeffs, is_real=np.isrealobj(samples))


def _pad_coeffs(coeffs: np.ndarray, n: int, factor: int, real_split: bool) -> np.ndarray:
    """Zero-pad an n-coefficient array to factor*n modes.

    For real-flagged fields the self-conjugate Nyquist slot is split
    half-half between +n/2 and -n/2 so oversampled values stay real.
    """
    half = n // 2
    big = np.zeros(factor * n, dtype=np.complex128)
    big[: half + 1] = coeffs[: half + 1]
    big[factor * n - (half - 1):] = coeffs[half + 1:]
    if real_split and coeffs[half] != 0:
        v = coeffs[half]
        big[half] = 0.5 * v
        big[factor * n - half] = 0.5 * np.conj(v)
    return big


def _truncate_coeffs(big: np.ndarray, n: int) -> np.ndarray:
    """Keep modes |m| <= n/2 of a padded array, folding -n/2 into +n/2."""
    nbig = big.size
    half = n // 2
    out = np.empty(n, dtype=np.complex128)
    out[: half + 1] = big[: half + 1]
    out[half + 1:] = big[nbig - (half - 1):]
    out[half] += big[nbig - half]
    return out


def synthesize(f: SpectralField, oversample: int = 1) -> np.ndarray:
    """Coefficients -> point values, optionally on an oversampled grid.

    Returns a real array for real-flagged fields.
    """
    n = f.grid.n
    if oversample == 1:
        vals = np.fft.ifft(f.coeffs * n)
    else:
        big = _pad_coeffs(f.coeffs, n, oversample, real_split=f.is_real)
        vals = np.fft.ifft(big * (oversample * n))
    return vals.real if f.is_real else vals


def analyze_values_padded(values, grid: PeriodicGrid, is_real=None) -> SpectralField:
    """Values on an oversampled grid -> field truncated to grid.n modes."""
    values = np.asarray(values)
    nbig = values.size
    if nbig % grid.n != 0 or nbig < grid.n:
        raise ValueError("padded value array length must be a multiple of grid.n")
    big = np.fft.fft(values) / nbig
    coeffs = _truncate_coeffs(big, grid.n)
    if is_real is None:
        is_real = np.isrealobj(values)
    return SpectralField(grid, coeffs, is_real=is_real)


def multiply(f: SpectralField, g: SpectralField, oversample: int = _DEFAULT_PAD) -> SpectralField:
    """Pointwise product via oversampled synthesis (alias-safe for 4x)."""
    f._check_same_grid(g)
    vals = synthesize(f, oversample) * synthesize(g, oversample)
    return analyze_values_padded(vals, f.grid)


def field_power(f: SpectralField, k: int, oversample: int = _DEFAULT_PAD) -> SpectralField:
    """f**k computed pointwise on the oversampled grid."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    vals = synthesize(f, oversample) ** k
    return analyze_values_padded(vals, f.grid)


def integrate(f: SpectralField):
    """Integral of f over the circle, i.e. 2*pi*lam * C_0."""
    val = f.grid.circumference * f.coeffs[0]
    return float(val.real) if f.is_real else complex(val)


# ---------------------------------------------------------------------------
# multiplier operators
# ---------------------------------------------------------------------------


def hilbert(f: SpectralField) -> SpectralField:
    """Hilbert transform: multiplier -i*sgn(q), zero on the mean mode."""
    m = f.grid.modes
    mult = -1j * np.sign(m).astype(np.complex128)
    mult[f.grid.n // 2] = 0.0  # odd symbol: drop the self-conjugate slot
    return f._with(mult * f.coeffs, f.is_real)


def project(f: SpectralField, kind: str, cutoff: float | None = None) -> SpectralField:
    """Frequency projection.

    kind:
      ``plus``  -- strictly positive frequencies (Nyquist slot included),
      ``minus`` -- strictly negative frequencies,
      ``zero``  -- the mean mode only,
      ``leq``   -- 0 < |q| <= cutoff (cutoff in physical frequency units),
      ``gt``    -- q > cutoff, one-sided.

    ``leq`` + ``gt`` + the negative mirror of ``gt`` + ``zero`` reassemble
    the identity exactly.
    """
    q = f.grid.freqs
    if kind == "plus":
        mask, real_out = q > 0, False
    elif kind == "minus":
        mask, real_out = q < 0, False
    elif kind == "zero":
        mask, real_out = q == 0, f.is_real
    elif kind == "leq":
        if cutoff is None or cutoff < 0:
            raise ValueError("leq projection needs a nonnegative cutoff")
        mask, real_out = (q != 0) & (np.abs(q) <= cutoff), f.is_real
    elif kind == "gt":
        if cutoff is None or cutoff < 0:
            raise ValueError("gt projection needs a nonnegative cutoff")
        mask, real_out = q > cutoff, False
    else:
        raise ValueError(f"unknown projection kind {kind!r}")
    out = np.where(mask, f.coeffs, 0.0)
    return f._with(out, real_out)


def differentiate(f: SpectralField, kind: str = "d_dx", order: float = 1) -> SpectralField:
    """Derivative-type multipliers.

    kind:
      ``d_dx``   -- (i q)^order with integer order >= 0; odd orders zero the
                    Nyquist slot,
      ``abs_d``  -- |q|^order with order >= 0 (zeroes q = 0 when order > 0),
      ``bessel`` -- (1 + q^2)^(order/2) with order >= 0.

    All three map real fields to real fields.
    """
    q = f.grid.freqs
    nyq = f.grid.n // 2
    if kind == "d_dx":
        if order != int(order) or order < 0:
            raise ValueError("d_dx order must be a nonnegative integer")
        order = int(order)
        mult = (1j * q) ** order
        if order % 2 == 1:
            mult = mult.copy()
            mult[nyq] = 0.0
    elif kind == "abs_d":
        if order < 0:
            raise ValueError("abs_d exponent must be nonnegative")
        mult = np.abs(q) ** order
    elif kind == "bessel":
        if order < 0:
            raise ValueError("bessel exponent must be nonnegative")
        mult = (1.0 + q * q) ** (order / 2.0)
    else:
        raise ValueError(f"unknown derivative kind {kind!r}")
    return f._with(mult * f.coeffs, f.is_real)


def antiderivative(f: SpectralField) -> SpectralField:
    """Zero-mean primitive: multiplier 1/(i q) away from q = 0.

    Requires |C_0| < ZERO_MEAN_TOL; the Nyquist slot is zeroed (odd symbol).
    """
    c0 = abs(f.coeffs[0])
    if c0 >= ZERO_MEAN_TOL:
        raise ValueError(
            f"antiderivative needs a zero-mean field: |C_0| = {c0:.3e} "
            f">= {ZERO_MEAN_TOL:.0e}"
        )
    q = f.grid.freqs
    mult = np.zeros(f.grid.n, dtype=np.complex128)
    nz = q != 0
    mult[nz] = 1.0 / (1j * q[nz])
    mult[f.grid.n // 2] = 0.0
    out = mult * f.coeffs
    out[0] = 0.0
    return f._with(out, f.is_real)


def mean_remove(f: SpectralField):
    """Split f into (mean, f - mean); the sum reassembles f exactly."""
    mean = f.mean
    out = f.coeffs.copy()
    out[0] = 0.0
    return mean, f._with(out, f.is_real)


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------


def norm(f: SpectralField, kind: str, p: int | None = None, s: float | None = None) -> float:
    """Norms on the circle.

    kind:
      ``lp``     -- L^p over [0, 2*pi*lam]; p in {1, 2, 4}.  p = 2 uses
                    Parseval; p in {1, 4} use 4x oversampled quadrature.
      ``hs``     -- (sum (1+q^2)^s |C_q|^2)^(1/2); pass s.
      ``hs_dot`` -- (sum |q|^(2s) |C_q|^2)^(1/2); pass s.
      ``linf``   -- max |f| on the 4x oversampled grid.
    """
    if kind == "lp":
        if p == 2:
            return float(np.sqrt(f.grid.circumference * np.sum(np.abs(f.coeffs) ** 2)))
        if p in (1, 4):
            vals = synthesize(f, _DEFAULT_PAD)
            w = f.grid.circumference / vals.size
            return float((w * np.sum(np.abs(vals) ** p)) ** (1.0 / p))
        raise ValueError(f"unsupported Lp exponent p = {p!r} (use 1, 2 or 4)")
    if kind == "hs":
        if s is None:
            raise ValueError("hs norm needs the smoothness parameter s")
        q = f.grid.freqs
        return float(np.sqrt(np.sum((1.0 + q * q) ** s * np.abs(f.coeffs) ** 2)))
    if kind == "hs_dot":
        if s is None:
            raise ValueError("hs_dot norm needs the smoothness parameter s")
        q = f.grid.freqs
        return float(np.sqrt(np.sum(np.abs(q) ** (2 * s) * np.abs(f.coeffs) ** 2)))
    if kind == "linf":
        return float(np.max(np.abs(synthesize(f, _DEFAULT_PAD))))
    raise ValueError(f"unknown norm kind {kind!r}")


# ---------------------------------------------------------------------------
# trajectories
# ---------------------------------------------------------------------------


class Trajectory:
    """Uniformly sampled time history of spectral fields.

    ``equation`` tags which right-hand side produced the data: one of
    ``linear``, ``bo2`` (u_t + H u_xx = 2 u u_x), ``gbo``
    (u_t + H u_xx = u^k u_x) or ``renormalized_gbo``
    (v_t + H v_xx = 2 (v^k - mean v^k) v_x).  Solver metadata is optional
    (checkpointed trajectories do not carry it).
    """

    EQUATIONS = ("linear", "bo2", "gbo", "renormalized_gbo")

    def __init__(self, grid, times, snapshots, equation, k=1,
                 scheme=None, dt=None, dealias=None):
        times = np.asarray(times, dtype=float)
        snapshots = list(snapshots)
        if len(snapshots) < 2:
            raise ValueError("a trajectory needs at least 2 snapshots")
        if times.shape != (len(snapshots),):
            raise ValueError("times and snapshots must have equal length")
        for f in snapshots:
            if f.grid != grid:
                raise ValueError("all snapshots must share the trajectory grid")
        steps = np.diff(times)
        h = steps[0]
        if h <= 0 or np.max(np.abs(steps - h)) > 1e-12 * max(abs(h), 1e-300):
            raise ValueError("sample times must be uniformly increasing")
        if equation not in self.EQUATIONS:
            raise ValueError(f"unknown equation tag {equation!r}")
        self.grid = grid
        self.times = times
        self.snapshots = snapshots
        self.equation = equation
        self.k = int(k)
        self.scheme = scheme
        self.dt = dt
        self.dealias = dealias

    @property
    def sample_dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def __len__(self):
        return len(self.snapshots)

    def __getitem__(self, i) -> SpectralField:
        return self.snapshots[i]

    def __iter__(self):
        return iter(self.snapshots)

    def with_snapshots(self, snapshots, equation=None, k=None) -> "Trajectory":
        """Copy with replaced snapshots (same times and metadata)."""
        return Trajectory(
            self.grid, self.times, snapshots,
            equation or self.equation,
            self.k if k is None else k,
            scheme=self.scheme, dt=self.dt, dealias=self.dealias,
        )

    def __repr__(self):
        return (
            f"Trajectory({self.equation}, k={self.k}, lam={self.grid.lam:.6g}, "
            f"n={self.grid.n}, samples={len(self)}, T={self.times[-1]:.6g})"
        )
