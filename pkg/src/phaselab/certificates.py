"""Semi-global stability certificates.

For a pair of signals ``x, y`` and a window ``phi`` every certificate compares

    lhs = min over alpha_k of sum_k ||x - exp(i alpha_k) y||_{l2(V_k)}

with ``rhs = constant_main * ||M[x] - M[y]||_F + constant_eps * epsilon``,
where ``V_k`` are the islands of the two-signal graph and ``epsilon`` collects
the ambiguity-function differences the ``delta1`` threshold cannot see.

Five variants are available (``THEOREMS``): magnitude retrieval, single and
multiple temporal islands, frequency islands, and the short-support window
graph.  :func:`check_split_inequality` and :func:`check_propagation_inequality`
are the two pointwise estimates the certificates are built from.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DimensionError, HypothesisError, ParameterError
from .graphs import GraphParams, build_graph, window_support
from .reconstruction import wrap_angle
from .transforms import as_signal, dft, dgt, frobenius_distance, measure

__all__ = [
    "THEOREMS",
    "SLACK",
    "StabilityReport",
    "aligned_distance",
    "epsilon_magnitude",
    "epsilon_time",
    "epsilon_time_single",
    "epsilon_freq",
    "certify",
    "check_split_inequality",
    "check_propagation_inequality",
]

THEOREMS = ("magnitude", "time-single", "time-multi", "frequency", "window-step")
SLACK = 1e-9


@dataclass
class StabilityReport:
    theorem: str
    lhs: float
    measurement_gap: float
    constant_main: float
    constant_eps: float
    epsilon: float
    rhs: float
    alphas: list
    satisfied: bool
    L: int = 0
    K: int = 0
    n_vertices: int = 0
    delta0: float = 0.0
    delta1: float = 0.0
    reach: int = 0
    island_sizes: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def aligned_distance(x, y, components):
    """Distance after aligning ``y`` to ``x`` by one phase per component.

    Args:
        x, y: signals of equal length.
        components: disjoint index sets.

    Returns:
        ``(value, alphas)``: the summed per-component distance and the optimal
        phase ``alpha_k = arg(sum_{V_k} x conj(y))`` for each component (0 when
        that sum vanishes), wrapped to ``(-pi, pi]``.
    """
    x = as_signal(x)
    y = as_signal(y)
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} vs {y.size}")
    seen = set()
    total = 0.0
    alphas = []
    for comp in components:
        idx = [int(i) % x.size for i in comp]
        if seen.intersection(idx) or len(set(idx)) != len(idx):
            raise ParameterError("components must be disjoint")
        seen.update(idx)
        xs, ys = x[idx], y[idx]
        c = np.sum(xs * np.conj(ys))
        alpha = wrap_angle(np.angle(c)) if c != 0 else 0.0
        # Direct residual; the expanded ||x||^2 + ||y||^2 - 2|c| loses ~sqrt(eps) accuracy.
        total += float(np.linalg.norm(xs - np.exp(1j * alpha) * ys))
        alphas.append(float(alpha))
    return total, alphas


def _check_delta1(delta1):
    if not delta1 > 0:
        raise ParameterError(f"delta1 must be > 0, got {delta1}")


def _pair(x, y, phi):
    x = as_signal(x)
    y = as_signal(y)
    phi = as_signal(phi, "window")
    if not x.size == y.size == phi.size:
        raise DimensionError("x, y and phi must share one length")
    return x, y, phi


def epsilon_magnitude(x, y, phi, delta1):
    """Residual of magnitude retrieval on frequencies where ``|dft(|phi|^2)| <= delta1``."""
    _check_delta1(delta1)
    x, y, phi = _pair(x, y, phi)
    sel = np.abs(dft(np.abs(phi) ** 2)) <= delta1
    diff = dft(np.abs(x) ** 2 - np.abs(y) ** 2)
    return float(np.sqrt(np.sum(np.abs(diff[sel]) ** 2)))


def _masked_rows(x, y, phi, delta1, rows):
    # Sum over the given time-shift rows of |A_x - A_y|^2 where |A_phi| <= delta1.
    A_phi = dgt(phi, phi)[rows]
    D = dgt(x, x)[rows] - dgt(y, y)[rows]
    sel = np.abs(A_phi) <= delta1
    return np.sum(np.abs(D) ** 2 * sel, axis=1)


def epsilon_time(x, y, phi, delta1, delta_time):
    """``sqrt(2 * sum_{k=0}^{delta_time+1} sum_{l : |A_phi(k,l)| <= delta1} |A_x - A_y|^2)``."""
    _check_delta1(delta1)
    x, y, phi = _pair(x, y, phi)
    if not 0 <= int(delta_time) <= x.size // 2 - 1:
        raise ParameterError(f"delta_time outside 0..{x.size // 2 - 1}")
    S = _masked_rows(x, y, phi, delta1, list(range(int(delta_time) + 2)))
    return float(np.sqrt(2.0 * S.sum()))


def epsilon_time_single(x, y, phi, delta1):
    """``sqrt(S_0 + 2 S_1)``: the row-0 term carries weight 1, unlike :func:`epsilon_time`."""
    _check_delta1(delta1)
    x, y, phi = _pair(x, y, phi)
    S = _masked_rows(x, y, phi, delta1, [0, 1])
    return float(np.sqrt(S[0] + 2.0 * S[1]))


def epsilon_freq(x, y, phi, delta1, delta_freq):
    """Mirror of :func:`epsilon_time` over frequency shifts ``k = 0..delta_freq+1``.

    Sums ``|A_x(l, k) - A_y(l, k)|^2`` over all time shifts ``l`` with
    ``|A_phi(l, k)| <= delta1``.
    """
    _check_delta1(delta1)
    x, y, phi = _pair(x, y, phi)
    if not 0 <= int(delta_freq) <= x.size // 2 - 1:
        raise ParameterError(f"delta_freq outside 0..{x.size // 2 - 1}")
    cols = list(range(int(delta_freq) + 2))
    A_phi = dgt(phi, phi)[:, cols]
    D = dgt(x, x)[:, cols] - dgt(y, y)[:, cols]
    sel = np.abs(A_phi) <= delta1
    return float(np.sqrt(2.0 * np.sum(np.abs(D) ** 2 * sel)))


def _ambiguity_constants(delta0, delta1, sup, size):
    shape = 0.5 + sup / delta0 * size
    return shape / (delta0 * delta1), shape / delta0


def certify(x, y, phi, theorem, delta0, delta1, reach=0, support_tol=0.0):
    """Evaluate one stability certificate on a concrete instance.

    Args:
        x, y: the two signals.
        phi: window.
        theorem: one of ``THEOREMS``.
        delta0: magnitude threshold for the two-signal vertex set.
        delta1: window threshold.
        reach: ``delta_time`` for ``time-multi``, ``delta_freq`` for
            ``frequency``; ignored otherwise.
        support_tol: tolerance for detecting the window support
            (``window-step`` only).

    Returns:
        StabilityReport.

    Raises:
        HypothesisError: when the instance violates the theorem's hypotheses
            (disconnected graph for a single-island theorem, degenerate
            window endpoints).
    """
    if theorem not in THEOREMS:
        raise ParameterError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")
    if not delta0 > 0:
        raise ParameterError(f"delta0 must be > 0, got {delta0}")
    _check_delta1(delta1)
    x, y, phi = _pair(x, y, phi)
    L = x.size
    gap = frobenius_distance(measure(x, phi), measure(y, phi))
    reach_used = 0

    if theorem == "frequency":
        u, v = dft(x), dft(y)
        reach_used = int(reach)
        params = GraphParams(delta0, "frequency", reach_used)
    elif theorem == "window-step":
        n0, ell = window_support(phi, support_tol)
        endpoints = abs(phi[n0] * phi[(n0 + ell) % L])
        if ell == 0 or endpoints == 0:
            raise HypothesisError("degenerate window endpoints: phi(n0) * phi(n0 + l_phi) = 0")
        u, v = x, y
        reach_used = ell
        params = GraphParams(delta0, "window-step", ell)
    else:
        u, v = x, y
        reach_used = int(reach) if theorem == "time-multi" else 0
        params = GraphParams(delta0, "time", reach_used)

    graph = build_graph(np.vstack([np.abs(u), np.abs(v)]), params)
    sizes = [len(c) for c in graph.components]
    n_v = len(graph.vertices)
    sup = min(np.max(np.abs(u)), np.max(np.abs(v)))

    if theorem in ("time-single", "window-step") and graph.K != 1:
        raise HypothesisError(
            f"{theorem} requires a connected graph; found {graph.K} components"
        )

    alphas = []
    if theorem == "magnitude":
        idx = list(graph.vertices)
        lhs = float(np.linalg.norm(np.abs(x[idx]) - np.abs(y[idx])))
        c_main, c_eps = 1.0 / (2 * delta0 * delta1), 1.0 / (2 * delta0)
        eps = epsilon_magnitude(x, y, phi, delta1)
    else:
        lhs, alphas = aligned_distance(u, v, graph.components)
        if theorem == "window-step":
            c_main = (1.0 / delta0) * (
                1.0 / (2 * delta1) + np.sqrt(2 * L) * sup / (delta0 * endpoints) * n_v
            )
            c_eps = 1.0 / (2 * delta0)
            eps = epsilon_magnitude(x, y, phi, delta1)
        else:
            c_main, c_eps = _ambiguity_constants(delta0, delta1, sup, sum(sizes))
            if theorem == "time-single":
                eps = epsilon_time_single(x, y, phi, delta1)
            elif theorem == "time-multi":
                eps = epsilon_time(x, y, phi, delta1, reach_used)
            else:
                eps = epsilon_freq(x, y, phi, delta1, reach_used)

    rhs = c_main * gap + c_eps * eps
    return StabilityReport(
        theorem=theorem,
        lhs=float(lhs),
        measurement_gap=float(gap),
        constant_main=float(c_main),
        constant_eps=float(c_eps),
        epsilon=float(eps),
        rhs=float(rhs),
        alphas=[float(a) for a in alphas],
        satisfied=bool(lhs <= rhs + SLACK),
        L=L,
        K=graph.K,
        n_vertices=n_v,
        delta0=float(delta0),
        delta1=float(delta1),
        reach=int(reach_used),
        island_sizes=sizes,
    )


def _unit(z):
    return z / np.abs(z)


def check_split_inequality(a, b, alpha, tol=1e-12):
    """Splitting of ``|a - e^{i alpha} b|`` into magnitude and phase parts.

    For nonzero ``a, b`` checks ``|a - e^{ia}b| <= ||a|-|b|| + min(|a|,|b|) |a/|a| - e^{ia} b/|b||``;
    if either vanishes, checks equality ``|a - e^{ia}b| == ||a|-|b||``.
    Works elementwise on arrays.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    rot = np.exp(1j * np.asarray(alpha, dtype=float))
    lhs = np.abs(a - rot * b)
    ma, mb = np.abs(a), np.abs(b)
    scale = np.maximum(1.0, ma + mb)
    zero = (ma == 0) | (mb == 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        phase = np.abs(a / np.where(zero, 1, ma) - rot * b / np.where(zero, 1, mb))
    rhs = np.abs(ma - mb) + np.minimum(ma, mb) * phase
    ok = np.where(zero, np.abs(lhs - np.abs(ma - mb)) <= tol * scale, lhs <= rhs + tol * scale)
    return bool(ok) if ok.ndim == 0 else ok


def check_propagation_inequality(xk, xl, yk, yl, alpha, tol=1e-12):
    """Phase-propagation estimate between two entries ``k`` and ``l``.

    Checks ``|u(x_k) - e^{ia} u(y_k)| <= |u(x_l) - e^{ia} u(y_l)|
    + 2 |x_k conj(x_l) - y_k conj(y_l)| / max(|x_k x_l|, |y_k y_l|)`` with
    ``u(z) = z/|z|``.  Works elementwise on arrays.
    """
    xk, xl, yk, yl = (np.asarray(v, dtype=complex) for v in (xk, xl, yk, yl))
    if np.any(np.abs(xk) == 0) or np.any(np.abs(xl) == 0) or np.any(np.abs(yk) == 0) or np.any(np.abs(yl) == 0):
        raise ParameterError("all four entries must be nonzero")
    rot = np.exp(1j * np.asarray(alpha, dtype=float))
    lhs = np.abs(_unit(xk) - rot * _unit(yk))
    rhs = np.abs(_unit(xl) - rot * _unit(yl)) + 2 * np.abs(xk * np.conj(xl) - yk * np.conj(yl)) / np.maximum(
        np.abs(xk * xl), np.abs(yk * yl)
    )
    ok = lhs <= rhs + tol
    return bool(ok) if ok.ndim == 0 else ok
