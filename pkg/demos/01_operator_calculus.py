"""Tour of the Fourier-side operator calculus.

Everything in this library lives in coefficient space: a field on the
circle of circumference 2*pi*lam is a vector of Fourier coefficients, and
every operator is either a diagonal multiplier or a pointwise product
formed on an oversampled grid.  This script walks through the basic
operators on closed-form inputs where every answer is known exactly.
"""

import numpy as np

from bosp import (
    PeriodicGrid,
    SpectralField,
    antiderivative,
    differentiate,
    hilbert,
    mean_remove,
    multiply,
    norm,
    project,
)

grid = PeriodicGrid(lam=1.0, n=64)
cos = SpectralField.from_function(grid, np.cos)
print(f"grid: {grid.n} points on a circle of circumference {grid.circumference:.4f}")

print("\n-- Hilbert transform (multiplier -i sgn q) --")
h = hilbert(cos)
sin = SpectralField.from_function(grid, np.sin)
print(f"H(cos) = sin:  max coefficient error {np.max(np.abs(h.coeffs - sin.coeffs)):.2e}")
hh = hilbert(hilbert(SpectralField.from_function(grid, lambda x: 2 + np.cos(x))))
print(f"H(H(2 + cos)) = -cos:  error {np.max(np.abs(hh.coeffs + cos.coeffs)):.2e}")

print("\n-- frequency projections --")
p = project(cos, 'plus')
print(f"P+(cos) keeps the single coefficient 1/2 at mode +1: C_1 = {p.coeffs[1]:.3f}")
u2 = multiply(cos, cos)
print(f"mean of cos^2 via the zero projection: {project(u2, 'zero').coeffs[0].real:.6f}")

print("\n-- derivatives and the primitive --")
half = differentiate(SpectralField.from_function(grid, lambda x: np.exp(2j * x)),
                     'abs_d', 0.5)
print(f"|D|^(1/2) e^(2ix) scales by sqrt(2): C_2 = {half.coeffs[2]:.6f}")
F = antiderivative(cos)
print(f"primitive of cos is sin: error {np.max(np.abs(F.coeffs - sin.coeffs)):.2e}")

print("\n-- mean split --")
mean, rest = mean_remove(SpectralField.from_function(grid, lambda x: 2 + np.cos(x)))
print(f"2 + cos splits into mean {mean:.1f} plus cos "
      f"(error {np.max(np.abs(rest.coeffs - cos.coeffs)):.2e})")

print("\n-- norms --")
print(f"||cos||_L2       = {norm(cos, 'lp', p=2):.12f}   (exact sqrt(pi) = {np.sqrt(np.pi):.12f})")
print(f"||cos||_L4       = {norm(cos, 'lp', p=4):.12f}   (exact (3 pi/4)^(1/4) = {(3 * np.pi / 4) ** 0.25:.12f})")
print(f"||e^(ix)||_H1    = {norm(SpectralField.from_function(grid, lambda x: np.exp(1j * x)), 'hs', s=1.0):.12f}"
      f"   (exact sqrt(2) = {np.sqrt(2):.12f})")
