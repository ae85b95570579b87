"""Fourier pseudospectral grids, transforms, and diagonal symbols.

Transforms delegate to numpy's pocketfft, which handles mixed-radix extents
(e.g. 700 = 2^2 * 5^2 * 7). Conventions pinned here and checked against a
direct-summation oracle in the tests: the forward transform is unnormalized,
the inverse carries the 1/N factor, and the integer wavenumber table per
direction is 0, 1, ..., floor(n/2), -ceil(n/2)+1, ..., -1 scaled by
2*pi/(b-a). Note the positive sign at the Nyquist slot for even n.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FourierGrid",
    "dft_forward",
    "dft_inverse",
    "wavenumber_table",
    "build_symbol",
    "symbol_exponential",
    "pointwise_apply",
]


def wavenumber_table(n, interval):
    """Per-direction wavenumbers for a periodic grid of n points on (a, b)."""
    a, b = interval
    if n < 2:
        raise ValueError("need at least two grid points per direction")
    if not b > a:
        raise ValueError(f"empty interval ({a}, {b})")
    modes = np.arange(n)
    modes = np.where(modes > n // 2, modes - n, modes)
    return modes * (2.0 * np.pi / (b - a))


@dataclass(frozen=True)
class FourierGrid:
    """Uniform periodic grid: extents (n_1, ..., n_d), intervals ((a, b), ...)."""

    extents: tuple
    intervals: tuple

    def __post_init__(self):
        object.__setattr__(self, "extents", tuple(int(n) for n in self.extents))
        object.__setattr__(self, "intervals",
                           tuple((float(a), float(b)) for a, b in self.intervals))
        if len(self.extents) != len(self.intervals):
            raise ValueError("one interval per direction required")
        for n, (a, b) in zip(self.extents, self.intervals):
            if n < 2:
                raise ValueError("need at least two grid points per direction")
            if not b > a:
                raise ValueError(f"empty interval ({a}, {b})")

    @property
    def ndim(self):
        return len(self.extents)

    @property
    def shape(self):
        return self.extents

    def nodes(self, axis):
        """Grid nodes x_j = a + j (b - a)/n, j = 0..n-1 (left endpoint kept)."""
        n = self.extents[axis]
        a, b = self.intervals[axis]
        return a + np.arange(n) * ((b - a) / n)

    def wavenumbers(self, axis):
        return wavenumber_table(self.extents[axis], self.intervals[axis])

    def meshgrid(self):
        axes = [self.nodes(k) for k in range(self.ndim)]
        return np.meshgrid(*axes, indexing="ij")


def dft_forward(u):
    """Unnormalized forward DFT over all axes."""
    return np.fft.fftn(np.asarray(u))


def dft_inverse(uhat):
    """Inverse DFT carrying the 1/N normalization."""
    return np.fft.ifftn(np.asarray(uhat))


def build_symbol(grid, params, advection_sign=0):
    """Diagonal Fourier symbol of the linear part.

    value[j] = (alpha1 + i beta1) * (-sum_mu k_mu[j_mu]^2) + alpha2
               + advection_sign * alpha0 * (i k_1[j_1])

    advection_sign is +1 for the first coupled component, -1 for the
    second, 0 for scalar problems.
    """
    if advection_sign not in (-1, 0, 1):
        raise ValueError("advection_sign must be -1, 0 or +1")
    shape = grid.shape
    ksq = np.zeros(shape)
    for axis in range(grid.ndim):
        k = grid.wavenumbers(axis)
        expand = [None] * grid.ndim
        expand[axis] = slice(None)
        ksq = ksq + (k ** 2)[tuple(expand)]
    symbol = params.diffusion * (-ksq) + params.alpha2
    if advection_sign != 0:
        k1 = grid.wavenumbers(0)
        expand = [None] * grid.ndim
        expand[0] = slice(None)
        symbol = symbol + advection_sign * params.alpha0 * (1j * k1[tuple(expand)])
    return symbol


def symbol_exponential(symbol, tau):
    """Elementwise exponential tensor exp(tau * symbol)."""
    if not np.isfinite(tau):
        raise ValueError("tau must be finite")
    return np.exp(tau * np.asarray(symbol))


def pointwise_apply(factor, u):
    """Elementwise product with shape validation."""
    factor = np.asarray(factor)
    u = np.asarray(u)
    if factor.shape != u.shape:
        raise ValueError(f"shape mismatch {factor.shape} vs {u.shape}")
    return factor * u
