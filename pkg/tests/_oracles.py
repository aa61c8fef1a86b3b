"""Independent reference implementations used by the tests.

Everything here is written from the defining sums with explicit loops or dense
matrices; nothing calls numpy.fft or phaselab's transforms.
"""

import math

import numpy as np


def naive_dft(x):
    L = len(x)
    return np.array(
        [sum(x[l] * np.exp(-2j * np.pi * l * k / L) for l in range(L)) for k in range(L)]
    ) / math.sqrt(L)


def naive_idft(X):
    L = len(X)
    return np.array(
        [sum(X[k] * np.exp(2j * np.pi * l * k / L) for k in range(L)) for l in range(L)]
    ) / math.sqrt(L)


def dft_matrix(L):
    j = np.arange(L)
    return np.exp(-2j * np.pi * np.outer(j, j) / L) / math.sqrt(L)


def matrix_dft2(M):
    W = dft_matrix(M.shape[0])
    return W @ M @ W.T


def naive_shift(x, m, n):
    L = len(x)
    return np.array([x[(l - m) % L] * np.exp(2j * np.pi * l * n / L) for l in range(L)]) / math.sqrt(L)


def inner(a, b):
    return np.sum(np.asarray(a) * np.conj(b))


def naive_dgt(x, phi):
    L = len(x)
    V = np.zeros((L, L), dtype=complex)
    for m in range(L):
        for n in range(L):
            V[m, n] = sum(
                x[l] * np.conj(phi[(l - m) % L]) * np.exp(-2j * np.pi * l * n / L) for l in range(L)
            ) / math.sqrt(L)
    return V


def dense_ambiguity(x):
    """A(m, n) = (x, shift(x, m, n)) via dense shifted copies (vectorized, no FFT)."""
    L = len(x)
    l = np.arange(L)
    xs = np.stack([x[(l - m) % L] for m in range(L)])          # xs[m, l] = x(l - m)
    E = np.exp(-2j * np.pi * np.outer(l, l) / L)                # E[l, n] = e^{-2 pi i l n / L}
    return (x[None, :] * np.conj(xs)) @ E / math.sqrt(L)


def dense_measure(x, phi):
    L = len(x)
    l = np.arange(L)
    rows = np.stack([x * np.conj(phi[(l - m) % L]) for m in range(L)])
    return np.abs(rows @ dft_matrix(L).T) ** 2


def autocorr_direct_sum(x, phi, m):
    """L^{-1/2} sum_l x(l) conj(x(l - n)) phi(l - n - m) conj(phi(l - m)) for every n."""
    L = len(x)
    out = np.zeros(L, dtype=complex)
    for n in range(L):
        s = 0
        for l in range(L):
            s += x[l] * np.conj(x[(l - n) % L]) * phi[(l - n - m) % L] * np.conj(phi[(l - m) % L])
        out[n] = s / math.sqrt(L)
    return out


def grid_search_alignment(x, y, n_angles):
    """Minimum of ||x - e^{ia} y|| over equispaced angles."""
    a = np.linspace(-np.pi, np.pi, n_angles, endpoint=False)
    xx = np.vdot(x, x).real
    yy = np.vdot(y, y).real
    c = np.sum(x * np.conj(y))
    vals = xx + yy - 2 * np.real(np.exp(-1j * a) * c)
    return math.sqrt(max(vals.min(), 0.0))


def brute_components(L, vertices, steps):
    """Connected components by repeated flood fill on an explicit adjacency."""
    vs = set(vertices)
    seen, comps = set(), []
    for v in sorted(vs):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for s in steps:
                w = (u + s) % L
                if w in vs and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps
