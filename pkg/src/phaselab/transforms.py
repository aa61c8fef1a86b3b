"""Discrete Fourier and Gabor transforms on Z_L.

All transforms use the unitary ``1/sqrt(L)`` convention, and the
time-frequency shift carries the same prefactor::

    shift(x, m, n)(l) = x(l - m) * exp(2j*pi*l*n/L) / sqrt(L)

so that ``dgt(x, phi)[m, n] == vdot(shift(phi, m, n), x)``.  Indices are
periodic everywhere; negative shifts are reduced modulo ``L``.

Signals are 1-D complex ``numpy`` arrays and grids are ``L x L`` arrays with
row index ``m`` (time shift) and column index ``n`` (frequency bin).
"""

import numpy as np

from .errors import DimensionError

__all__ = [
    "as_signal",
    "as_grid",
    "dft",
    "idft",
    "dft2",
    "shift",
    "dgt",
    "measure",
    "frobenius_distance",
]


def as_signal(x, name="signal"):
    """Validate and return ``x`` as a finite 1-D complex array of length >= 2."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise DimensionError(f"{name} must have length >= 2, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} contains non-finite entries")
    return arr


def as_grid(M, name="grid"):
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be a square L x L array, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DimensionError(f"{name} must have L >= 2")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} contains non-finite entries")
    return arr


def _same_length(x, phi):
    if x.size != phi.size:
        raise DimensionError(f"length mismatch: signal has L={x.size}, window has L={phi.size}")


def _phase_ramp(L, n):
    # exp(2j*pi*l*n/L) with the exponent reduced mod L before scaling.
    l = np.arange(L)
    return np.exp(2j * np.pi * ((l * (n % L)) % L) / L)


def dft(x):
    """Unitary DFT, ``X(k) = L**-0.5 * sum_l x(l) exp(-2j*pi*l*k/L)``."""
    return np.fft.fft(as_signal(x), norm="ortho")


def idft(X):
    """Inverse of :func:`dft`."""
    return np.fft.ifft(as_signal(X), norm="ortho")


def dft2(M):
    """Two-dimensional unitary DFT (total prefactor ``1/L``) of an ``L x L`` grid."""
    return np.fft.fft2(as_grid(M), norm="ortho")


def shift(x, m, n):
    """Time-frequency shift ``Pi_(m,n)`` including its ``1/sqrt(L)`` factor.

    The operator is *not* unitary: ``shift(x, 0, 0) == x / sqrt(L)``.
    """
    x = as_signal(x)
    L = x.size
    l = np.arange(L)
    return x[(l - int(m)) % L] * _phase_ramp(L, int(n)) / np.sqrt(L)


def windowed_rows(x, phi):
    """Matrix with row ``m`` equal to ``x(l) * conj(phi(l - m))``."""
    L = x.size
    l = np.arange(L)
    idx = (l[None, :] - l[:, None]) % L
    return x[None, :] * np.conj(phi[idx])


def dgt(x, phi):
    """Discrete Gabor transform ``V_phi[x](m, n)``, computed as ``L`` windowed DFTs.

    Args:
        x: signal of length ``L``.
        phi: window of the same length.

    Returns:
        Complex ``L x L`` array indexed ``[m, n]``.
    """
    x = as_signal(x)
    phi = as_signal(phi, "window")
    _same_length(x, phi)
    return np.fft.fft(windowed_rows(x, phi), axis=1, norm="ortho")


def measure(x, phi):
    """Spectrogram measurements ``|V_phi[x](m, n)|**2``."""
    V = dgt(x, phi)
    return V.real**2 + V.imag**2


def frobenius_distance(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DimensionError(f"grid shapes differ: {A.shape} vs {B.shape}")
    return float(np.linalg.norm(A - B))
