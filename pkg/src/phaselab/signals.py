"""Windows, test signals and measurement noise."""

import numpy as np

from .errors import ParameterError
from .transforms import as_grid, frobenius_distance, idft

__all__ = [
    "WINDOW_KINDS",
    "make_window",
    "two_bump",
    "random_signal",
    "add_noise",
    "random_short_window",
]

WINDOW_KINDS = ("gaussian", "hamming", "hann", "rectangular")


def make_window(kind, L, *, center=None, width=None, support=None):
    """Build one of the standard windows on Z_L.

    ``gaussian`` is ``exp(-pi (l - center)^2 / width^2)`` with defaults
    ``center = L/2`` and ``width = L/32``.  The other kinds live on the prefix
    ``l = 0..support-1`` (default ``support = L/16``)::

        hamming      25/46 - 21/46 cos(2 pi l / (support - 1))
        hann         1/2 - 1/2 cos(2 pi l / (support - 1))
        rectangular  1

    At ``L = 1024`` the defaults give the width-32 Gaussian centred at 512 and
    the 64-sample compactly supported windows.
    """
    L = int(L)
    if L < 2:
        raise ParameterError(f"L must be >= 2, got {L}")
    l = np.arange(L, dtype=float)
    if kind == "gaussian":
        c = L / 2 if center is None else float(center)
        w = L / 32 if width is None else float(width)
        if not w > 0:
            raise ParameterError(f"gaussian width must be > 0, got {w}")
        return np.exp(-np.pi * (l - c) ** 2 / w**2).astype(complex)
    if kind not in WINDOW_KINDS:
        raise ParameterError(f"unknown window kind {kind!r}; expected one of {WINDOW_KINDS}")
    S = max(2, L // 16) if support is None else int(support)
    if not 2 <= S <= L:
        raise ParameterError(f"support must lie in 2..{L}, got {S}")
    phi = np.zeros(L)
    k = np.arange(S)
    if kind == "hamming":
        phi[:S] = 25 / 46 - 21 / 46 * np.cos(2 * np.pi * k / (S - 1))
    elif kind == "hann":
        phi[:S] = 0.5 - 0.5 * np.cos(2 * np.pi * k / (S - 1))
    else:
        phi[:S] = 1.0
    return phi.astype(complex)


def two_bump(L, lam, sign=1, width=1.0, samples_per_width=8):
    """Sample ``g(t - lam) + sign * g(t + lam)`` with ``g(t) = exp(-pi (t/width)^2)``.

    The grid is ``t_j = (j - L//2) * h`` with ``h = width / samples_per_width``,
    i.e. ``L`` points covering ``[-T, T)`` with ``T = L h / 2``.  Index
    ``L//2`` is ``t = 0`` and the grid is exactly symmetric about it.
    """
    L = int(L)
    if L < 2:
        raise ParameterError(f"L must be >= 2, got {L}")
    if lam < 0:
        raise ParameterError(f"lambda must be >= 0, got {lam}")
    if not width > 0 or not samples_per_width > 0:
        raise ParameterError("width and samples_per_width must be > 0")
    if sign not in (1, -1):
        raise ParameterError(f"sign must be +1 or -1, got {sign}")
    h = width / samples_per_width
    t = (np.arange(L) - L // 2) * h
    g = lambda s: np.exp(-np.pi * (s / width) ** 2)
    return (g(t - lam) + sign * g(t + lam)).astype(complex)


def _runs(runs, L, what):
    idx = []
    for start, length in runs:
        if length < 0:
            raise ParameterError(f"{what} length must be >= 0")
        idx.extend((int(start) + j) % L for j in range(int(length)))
    if len(set(idx)) != len(idx):
        raise ParameterError(f"{what} runs overlap")
    return idx


def _random_values(rng, n, floor, spread):
    mag = floor + spread * rng.random(n)
    return mag * np.exp(2j * np.pi * rng.random(n))


def random_signal(L, seed, profile="floor", *, floor=0.5, spread=1.0, gaps=(), bands=()):
    """Seeded random test signal.

    Profiles:
        ``floor``: magnitudes uniform in ``[floor, floor + spread)``, uniform phases.
        ``gaps``: as ``floor``, then exact zeros on the ``(start, length)`` runs in
            ``gaps`` (taken mod ``L``).
        ``band``: ``dft(x)`` is a ``floor`` profile on the ``(start, length)``
            frequency runs in ``bands`` and zero elsewhere.

    The same ``(L, seed, profile, ...)`` always yields the same signal.
    """
    L = int(L)
    if L < 2:
        raise ParameterError(f"L must be >= 2, got {L}")
    if floor < 0 or spread < 0:
        raise ParameterError("floor and spread must be >= 0")
    rng = np.random.default_rng(seed)
    if profile == "floor":
        return _random_values(rng, L, floor, spread)
    if profile == "gaps":
        x = _random_values(rng, L, floor, spread)
        idx = _runs(gaps, L, "gap")
        if len(idx) >= L:
            raise ParameterError("gaps cover the whole signal")
        x[idx] = 0
        return x
    if profile == "band":
        idx = _runs(bands, L, "band")
        if not idx:
            raise ParameterError("band profile needs at least one non-empty band")
        spec = np.zeros(L, dtype=complex)
        spec[sorted(idx)] = _random_values(rng, len(idx), floor, spread)
        return idft(spec)
    raise ParameterError(f"unknown profile {profile!r}")


def random_short_window(L, ell_phi, seed, *, n0=0, low=0.5, high=1.5):
    """Random positive window supported on ``[n0, n0 + ell_phi]`` (mod L)."""
    L = int(L)
    if not 0 <= ell_phi < L:
        raise ParameterError(f"ell_phi must lie in 0..{L - 1}")
    rng = np.random.default_rng(seed)
    phi = np.zeros(L, dtype=complex)
    idx = (int(n0) + np.arange(ell_phi + 1)) % L
    phi[idx] = rng.uniform(low, high, ell_phi + 1)
    return phi


def add_noise(M, level, model="additive-gaussian", seed=0):
    """Perturb a measurement grid and clamp it at 0.

    ``additive-gaussian`` adds ``level * N(0, 1)`` per entry; ``relative``
    multiplies each entry by ``1 + level * N(0, 1)``.

    Returns:
        ``(noisy, realized)`` with ``realized = ||noisy - M||_F``.
    """
    M = np.asarray(as_grid(M, "measurements"), dtype=float)
    if level < 0:
        raise ParameterError(f"noise level must be >= 0, got {level}")
    if level == 0:
        return M.copy(), 0.0
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(M.shape)
    if model == "additive-gaussian":
        noisy = M + level * noise
    elif model == "relative":
        noisy = M * (1 + level * noise)
    else:
        raise ParameterError(f"unknown noise model {model!r}")
    noisy = np.maximum(noisy, 0.0)
    return noisy, frobenius_distance(noisy, M)
