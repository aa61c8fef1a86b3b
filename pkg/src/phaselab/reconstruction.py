"""Phase retrieval from spectrogram measurements by phase propagation.

Three methods share one pattern: recover magnitudes, build an island graph on
the entries above ``delta0``, recover relative phases ``z(v) conj(z(u))`` along
graph edges, and accumulate angles outward from each island's root (whose
phase is fixed to 0).

* :func:`reconstruct_time` uses rows ``0..delta_time+1`` of the signal's
  ambiguity function (ambiguity-function propagation).
* :func:`reconstruct_li` uses lag ``l_phi`` of the measurement-row
  autocorrelations for windows with short support.
* :func:`reconstruct_freq` works on ``dft(x)`` through the Fourier-dual
  ambiguity relation and reports a spectrum.

Off the vertex set the estimate is exactly 0.
"""

from dataclasses import dataclass, field

import numpy as np

from .ambiguity import dual_estimate_ambiguity, estimate_signal_ambiguity, local_correlations
from .errors import DimensionError, HypothesisError, ParameterError
from .graphs import GraphParams, build_graph, window_support
from .transforms import as_grid, as_signal, dft, dft2, idft

__all__ = [
    "ReconstructionResult",
    "retrieve_magnitudes",
    "reconstruct_time",
    "reconstruct_li",
    "reconstruct_freq",
    "wrap_angle",
]


def wrap_angle(a):
    """Map angles to ``(-pi, pi]``."""
    a = np.asarray(a, dtype=float)
    out = np.angle(np.exp(1j * a))
    out = np.where(out <= -np.pi, out + 2 * np.pi, out)
    return out if out.ndim else float(out)


@dataclass
class ReconstructionResult:
    """Output of a reconstruction.

    Attributes:
        estimate: recovered signal (``domain == "time"``) or spectrum
            (``domain == "frequency"``); zero off the vertex set.
        islands: graph the phases were propagated on.
        domain: ``"time"`` or ``"frequency"``.
        magnitude_mask: entries of the magnitude deconvolution that passed
            the ``delta1`` threshold.
        clamped: entries whose squared-magnitude estimate was negative and
            clamped to 0.
        edge_reliable: per entry, whether the edge used to reach it was
            reliable (roots and off-vertex entries are ``True``).
        island_reliable: per island, all of its edges reliable.
    """

    estimate: np.ndarray
    islands: object
    domain: str
    magnitude_mask: np.ndarray
    clamped: np.ndarray
    edge_reliable: np.ndarray
    island_reliable: list = field(default_factory=list)

    @property
    def roots(self):
        return list(self.islands.roots)

    def time_signal(self):
        """The estimate mapped to the time domain."""
        return self.estimate if self.domain == "time" else idft(self.estimate)


def _check_common(M, phi, delta1):
    M = as_grid(M, "measurements")
    phi = as_signal(phi, "window")
    if phi.size != M.shape[0]:
        raise DimensionError(f"window length {phi.size} does not match grid size {M.shape[0]}")
    if not delta1 > 0:
        raise ParameterError(f"delta1 must be > 0, got {delta1}")
    return np.asarray(M, dtype=float), phi


def _sqrt_clamped(sq):
    clamped = sq < 0
    return np.sqrt(np.where(clamped, 0.0, sq)), clamped


def _squared_magnitudes(M, phi, delta1):
    col = dft2(M)[:, 0]
    den = np.conj(dft(np.abs(phi) ** 2))
    mask = np.abs(den) > delta1
    spec = np.zeros_like(col)
    spec[mask] = col[mask] / den[mask]
    return idft(spec).real, mask


def retrieve_magnitudes(M, phi, delta1):
    """Estimate ``|x|`` from measurements.

    Column 0 of ``dft2(M)`` equals ``dft(|x|**2) * conj(dft(|phi|**2))``; the
    quotient is zero-filled wherever the divisor has modulus ``<= delta1``.

    Returns:
        ``(magnitudes, mask)`` where ``mask`` marks the frequencies that passed
        the threshold.
    """
    M, phi = _check_common(M, phi, delta1)
    sq, mask = _squared_magnitudes(M, phi, delta1)
    mags, _ = _sqrt_clamped(sq)
    return mags, mask


def _propagate(graph, mags, relative, floor):
    """Accumulate phases along each island's BFS tree.

    ``relative(parent, child, step)`` returns the complex value whose argument
    is ``phase(child) - phase(parent)`` and a flag for the edge's reliability.
    """
    L = graph.L
    phase = np.zeros(L)
    edge_ok = np.ones(L, dtype=bool)
    island_ok = []
    for k, order in enumerate(graph.order):
        ok_k = True
        for v in order[1:]:
            u = int(graph.parent[v])
            z, ok = relative(u, v, int(graph.step[v]))
            if abs(z) < floor:
                ok = False
            phase[v] = phase[u] + np.angle(z)
            edge_ok[v] = ok
            ok_k &= ok
        island_ok.append(bool(ok_k))
    est = np.zeros(L, dtype=complex)
    idx = list(graph.vertices)
    est[idx] = mags[idx] * np.exp(1j * phase[idx])
    return est, edge_ok, island_ok


def _correlation_edges(A, max_shift):
    G = {s: local_correlations(A, s) for s in range(0, max_shift + 1)}

    def relative(u, v, s):
        if s > 0:
            g = G[s]
            return g.values[v], g.reliable
        g = G[-s]
        return np.conj(g.values[u]), g.reliable

    return relative


def _check_reach(reach, L, name):
    if not 0 <= int(reach) <= L // 2 - 1:
        raise ParameterError(f"{name} must lie in 0..{L // 2 - 1}, got {reach}")
    return int(reach)


def reconstruct_time(M, phi, delta0, delta1, delta_time=0):
    """Ambiguity-function phase propagation across temporal islands.

    Args:
        M: measurement grid.
        phi: window.
        delta0: magnitude threshold defining the vertex set.
        delta1: window-ambiguity threshold for the deconvolution.
        delta_time: maximal gap bridged by one propagation step is
            ``delta_time + 1``.
    """
    M, phi = _check_common(M, phi, delta1)
    L = M.shape[0]
    delta_time = _check_reach(delta_time, L, "delta_time")
    params = GraphParams(delta0, "time", delta_time)
    sq, mag_mask = _squared_magnitudes(M, phi, delta1)
    mags, clamped = _sqrt_clamped(sq)
    graph = build_graph(mags, params)
    A = estimate_signal_ambiguity(M, phi, delta1, range(0, delta_time + 2))
    relative = _correlation_edges(A, delta_time + 1)
    est, edge_ok, island_ok = _propagate(graph, mags, relative, 0.5 * delta0**2)
    return ReconstructionResult(est, graph, "time", mag_mask, clamped, edge_ok, island_ok)


def reconstruct_li(M, phi, delta0, delta1, support_tol=0.0):
    """Autocorrelation phase propagation for windows with short support.

    The window must be supported on a circular interval ``[n0, n0 + l_phi]``
    with ``l_phi < L/2``.  Lag ``l_phi`` of the inverse DFT of measurement row
    ``a - n0`` then isolates ``x(a + l_phi) conj(x(a))`` up to the known factor
    ``phi(n0) conj(phi(n0 + l_phi)) / sqrt(L)``.
    """
    M, phi = _check_common(M, phi, delta1)
    L = M.shape[0]
    n0, ell = window_support(phi, support_tol)
    factor = phi[n0] * np.conj(phi[(n0 + ell) % L])
    if ell == 0 or abs(factor) == 0:
        raise HypothesisError("degenerate window endpoints: phi(n0) * phi(n0 + l_phi) = 0")
    params = GraphParams(delta0, "window-step", ell)
    sq, mag_mask = _squared_magnitudes(M, phi, delta1)
    mags, clamped = _sqrt_clamped(sq)
    graph = build_graph(mags, params)

    rows = np.fft.ifft(M, axis=1, norm="ortho")
    a = np.arange(L)
    # H[a] = x(a + l_phi) * conj(x(a))
    H = np.sqrt(L) * rows[(a - n0) % L, ell] / factor

    def relative(u, v, s):
        if s > 0:
            return H[u], True
        return np.conj(H[v]), True

    est, edge_ok, island_ok = _propagate(graph, mags, relative, 0.5 * delta0**2)
    return ReconstructionResult(est, graph, "time", mag_mask, clamped, edge_ok, island_ok)


def reconstruct_freq(M, phi, delta0, delta1, delta_freq=0):
    """Phase propagation on the spectrum across frequency islands.

    Magnitudes of ``dft(x)`` come from row 0 of the dual ambiguity estimate and
    relative phases from rows ``1..delta_freq+1``.  The result lives in the
    frequency domain; use :meth:`ReconstructionResult.time_signal` for ``x``.
    """
    M, phi = _check_common(M, phi, delta1)
    L = M.shape[0]
    delta_freq = _check_reach(delta_freq, L, "delta_freq")
    params = GraphParams(delta0, "frequency", delta_freq)
    B = dual_estimate_ambiguity(M, phi, delta1, range(0, delta_freq + 2))
    sq = local_correlations(B, 0).values.real
    mags, clamped = _sqrt_clamped(sq)
    graph = build_graph(mags, params)
    relative = _correlation_edges(B, delta_freq + 1)
    est, edge_ok, island_ok = _propagate(graph, mags, relative, 0.5 * delta0**2)
    return ReconstructionResult(est, graph, "frequency", B.mask[0].copy(), clamped, edge_ok, island_ok)
