"""Ambiguity-function and autocorrelation relations for spectrogram data.

The spectrogram ``M = measure(x, phi)`` satisfies, for every integer ``s``
and frequency ``l``::

    dft2(M)[l, -s] = A_x(s, l) * conj(A_phi(s, l))

where ``A_x(m, n) = (x, shift(x, m, n))`` is the ambiguity function.  Dividing
by the window factor wherever it is safely away from zero recovers rows of
``A_x``; the inverse DFT of row ``s`` is the local correlation
``x(n) * conj(x(n - s))`` used for phase propagation.

The Fourier-dual relation ``dft2(M)[s, l] = B(s, l) * conj(A_{dft(phi)}(s, l))``
with ``B = A_{dft(x)}`` is handled by :func:`dual_estimate_ambiguity`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .transforms import as_grid, as_signal, dft, dft2, dgt, idft

__all__ = [
    "AmbiguityGrid",
    "LocalCorrelation",
    "ambiguity",
    "autocorr_slice",
    "estimate_signal_ambiguity",
    "dual_estimate_ambiguity",
    "local_correlations",
]


@dataclass(frozen=True)
class AmbiguityGrid:
    """Ambiguity data ``A(m, n)`` with a per-entry reliability mask.

    Unreliable entries are stored as exactly 0; callers must consult ``mask``.
    """

    values: np.ndarray
    mask: np.ndarray

    @property
    def L(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class LocalCorrelation:
    """``G_sigma(n) = x(n) * conj(x(n - sigma))`` for one shift ``sigma``.

    ``mask`` is constant along the vector: the inverse DFT mixes every entry of
    the ambiguity row, so a single masked entry degrades all of ``G_sigma``.
    """

    sigma: int
    values: np.ndarray
    mask: np.ndarray

    @property
    def reliable(self):
        return bool(self.mask.all())


def ambiguity(x):
    """Full ambiguity function ``A(m, n) = (x, shift(x, m, n))`` of a signal."""
    x = as_signal(x)
    A = dgt(x, x)
    return AmbiguityGrid(A, np.ones(A.shape, dtype=bool))


def autocorr_slice(M, m):
    """Inverse DFT of measurement row ``m``.

    For ``M = measure(x, phi)`` this equals ``L**-0.5 * (x_m * x_m^#)(n)`` with
    ``x_m(l) = x(l) * conj(phi(l - m))``.
    """
    M = as_grid(M, "measurements")
    L = M.shape[0]
    if not 0 <= int(m) < L:
        raise DimensionError(f"row index {m} outside 0..{L - 1}")
    return idft(M[int(m)])


def _check_delta(delta1):
    if not delta1 > 0:
        raise ParameterError(f"delta1 must be > 0, got {delta1}")


def _check_shifts(shifts, L):
    out = sorted({int(s) for s in shifts})
    half = L // 2
    for s in out:
        if not -half <= s <= half:
            raise ParameterError(f"shift {s} outside -{half}..{half}")
    return out


def _mirror_row(row, s, L):
    # A(-s, l) = exp(2j*pi*s*l/L) * conj(A(s, -l)); the same reindexing maps the mask.
    l = np.arange(L)
    ramp = np.exp(2j * np.pi * ((s * l) % L) / L)
    return ramp * np.conj(row[(-l) % L])


def _divide_rows(F_rows, divisor_rows, shifts, delta1, L):
    """Fill an AmbiguityGrid from ``F_rows[s] / divisor_rows[s]`` for s >= 0.

    Negative shifts are filled from the non-negative row ``|s|`` by conjugate
    symmetry rather than a separate division.
    """
    values = np.zeros((L, L), dtype=complex)
    mask = np.zeros((L, L), dtype=bool)
    positive = sorted({abs(s) for s in shifts})
    for s in positive:
        den = divisor_rows(s)
        ok = np.abs(den) > delta1
        row = np.zeros(L, dtype=complex)
        row[ok] = F_rows(s)[ok] / den[ok]
        if s in shifts or (-s) % L == s % L:
            values[s % L] = row
            mask[s % L] = ok
        if -s in shifts and (-s) % L != s % L:
            values[-s % L] = _mirror_row(row, s, L)
            mask[-s % L] = ok[(-np.arange(L)) % L]
    return AmbiguityGrid(values, mask)


def estimate_signal_ambiguity(M, phi, delta1, shifts):
    """Recover rows of the signal's ambiguity function from measurements.

    Args:
        M: measurement grid.
        phi: window used to produce ``M``.
        delta1: entries whose window ambiguity has modulus ``<= delta1`` are
            zero-filled and masked out.
        shifts: time shifts ``s`` (rows of the result) to recover, each in
            ``-L//2..L//2``.

    Returns:
        AmbiguityGrid with ``values[s % L, l]`` estimating ``(x, shift(x, s, l))``
        on the requested rows; all other rows are masked.
    """
    M = as_grid(M, "measurements")
    phi = as_signal(phi, "window")
    L = M.shape[0]
    if phi.size != L:
        raise DimensionError(f"window length {phi.size} does not match grid size {L}")
    _check_delta(delta1)
    shifts = _check_shifts(shifts, L)
    F = dft2(M)
    A_phi = dgt(phi, phi)
    return _divide_rows(
        lambda s: F[:, (-s) % L],
        lambda s: np.conj(A_phi[s % L]),
        shifts, delta1, L,
    )


def dual_estimate_ambiguity(M, phi, delta1, shifts):
    """Recover rows of ``B(s, l) = (dft(x), shift(dft(x), s, l))`` from measurements.

    Row ``s`` here is a *frequency* shift of the spectrum; the divisor is the
    ambiguity of ``dft(phi)``, thresholded as in :func:`estimate_signal_ambiguity`.
    """
    M = as_grid(M, "measurements")
    phi = as_signal(phi, "window")
    L = M.shape[0]
    if phi.size != L:
        raise DimensionError(f"window length {phi.size} does not match grid size {L}")
    _check_delta(delta1)
    shifts = _check_shifts(shifts, L)
    F = dft2(M)
    P = dft(phi)
    A_P = dgt(P, P)
    return _divide_rows(
        lambda s: F[s % L],
        lambda s: np.conj(A_P[s % L]),
        shifts, delta1, L,
    )


def local_correlations(A, sigma):
    """Inverse DFT of ambiguity row ``sigma``: ``G(n) = x(n) conj(x(n - sigma))``."""
    L = A.L
    row = A.values[int(sigma) % L]
    ok = bool(A.mask[int(sigma) % L].all())
    return LocalCorrelation(int(sigma), idft(row), np.full(L, ok))
