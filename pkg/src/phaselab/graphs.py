"""Island graphs on Z_L and their BFS propagation trees.

Vertices are the indices where every supplied magnitude vector exceeds
``delta0``.  Edges depend on the mode, using the circular distance
``d(a, b) = min(|a - b|, L - |a - b|)``:

* ``time`` / ``frequency``: ``1 <= d <= reach + 1``;
* ``window-step``: ``d == reach`` (the window support length ``l_phi``).

Each connected component (island) gets a root of minimum eccentricity, and
a BFS tree from that root fixes the order in which phases are propagated.
"""

from collections import deque
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import ParameterError, WindowSupportError
from .transforms import as_signal

__all__ = [
    "MODES",
    "GraphParams",
    "IslandGraph",
    "build_graph",
    "propagation_order",
    "window_support",
    "is_connected",
    "coprime_condition",
]

MODES = ("time", "frequency", "window-step")


@dataclass(frozen=True)
class GraphParams:
    delta0: float
    mode: str = "time"
    reach: int = 0

    def __post_init__(self):
        if not self.delta0 > 0:
            raise ParameterError(f"delta0 must be > 0, got {self.delta0}")
        if self.mode not in MODES:
            raise ParameterError(f"unknown graph mode {self.mode!r}; expected one of {MODES}")

    def steps(self, L):
        """Signed steps to try from a vertex, ordered by ``|step|`` then sign (+ first)."""
        r = int(self.reach)
        if self.mode == "window-step":
            if not 0 <= r <= (L + 1) // 2 - 1:
                raise ParameterError(f"window-step reach {r} outside 0..{(L + 1) // 2 - 1}")
            return [] if r == 0 else [r, -r]
        if not 0 <= r <= L // 2 - 1:
            raise ParameterError(f"reach {r} outside 0..{L // 2 - 1}")
        out = []
        for d in range(1, r + 2):
            out.extend([d, -d])
        return out


@dataclass
class IslandGraph:
    """Vertex set, islands and BFS trees.

    Attributes:
        L: ambient length.
        vertices: sorted vertex indices.
        params: construction parameters.
        components: islands as sorted tuples, ordered by their smallest vertex.
        roots: one root per component.
        parent: length-``L`` array; ``-1`` for roots and non-vertices.
        step: signed step ``vertex - parent`` (reduced), 0 where no parent.
        depth: BFS depth from the island's root, ``-1`` off the vertex set.
        order: per component, the BFS visiting order starting at the root.
    """

    L: int
    vertices: tuple
    params: GraphParams
    components: list
    roots: list
    parent: np.ndarray
    step: np.ndarray
    depth: np.ndarray
    order: list = field(repr=False)

    @property
    def K(self):
        return len(self.components)

    def membership(self):
        """Island index per entry, ``-1`` off the vertex set."""
        out = np.full(self.L, -1, dtype=int)
        for k, comp in enumerate(self.components):
            out[list(comp)] = k
        return out


def _signed(d, L):
    d %= L
    return d - L if d > L // 2 else d


def _bfs(start, adj):
    """Plain BFS; returns (visit order, {vertex: (parent, step, depth)})."""
    info = {start: (-1, 0, 0)}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        du = info[u][2]
        for v, s in adj[u]:
            if v not in info:
                info[v] = (u, s, du + 1)
                order.append(v)
                queue.append(v)
    return order, info


def build_graph(magnitudes, params):
    """Build the island graph of one or two magnitude vectors.

    Args:
        magnitudes: a length-``L`` real vector, or a pair of them; an index is
            a vertex only if every supplied vector exceeds ``params.delta0`` there.
        params: threshold, mode and reach.

    Returns:
        IslandGraph with components, roots and BFS trees.
    """
    mags = np.asarray(magnitudes, dtype=float)
    if mags.ndim == 1:
        mags = mags[None, :]
    if mags.ndim != 2 or mags.shape[0] not in (1, 2):
        raise ParameterError("magnitudes must be one vector or a pair of equal-length vectors")
    L = mags.shape[1]
    steps = params.steps(L)
    is_vertex = np.all(mags > params.delta0, axis=0)
    vertices = tuple(int(v) for v in np.flatnonzero(is_vertex))

    adj = {}
    for v in vertices:
        seen = set()
        nbrs = []
        for s in steps:
            w = (v + s) % L
            if w != v and is_vertex[w] and w not in seen:
                seen.add(w)
                nbrs.append((w, _signed(s, L)))
        adj[v] = nbrs

    parent = np.full(L, -1, dtype=int)
    step = np.zeros(L, dtype=int)
    depth = np.full(L, -1, dtype=int)
    components, roots, orders = [], [], []
    assigned = set()
    for v in vertices:
        if v in assigned:
            continue
        comp_order, _ = _bfs(v, adj)
        comp = tuple(sorted(comp_order))
        assigned.update(comp)
        # Minimum eccentricity root; ties go to the smallest index (comp is sorted).
        best_root, best_ecc, best = None, None, None
        for r in comp:
            order, info = _bfs(r, adj)
            ecc = max(d for _, _, d in info.values())
            if best_ecc is None or ecc < best_ecc:
                best_root, best_ecc, best = r, ecc, (order, info)
        order, info = best
        for u, (p, s, d) in info.items():
            parent[u] = p
            step[u] = s
            depth[u] = d
        components.append(comp)
        roots.append(best_root)
        orders.append(order)

    return IslandGraph(L, vertices, params, components, roots, parent, step, depth, orders)


def propagation_order(g, k):
    """BFS order of island ``k`` as ``(vertex, parent, step)`` triples.

    The root comes first with ``parent`` and ``step`` set to ``None``.
    """
    if not 0 <= k < g.K:
        raise ParameterError(f"component index {k} outside 0..{g.K - 1}")
    out = []
    for v in g.order[k]:
        if g.parent[v] < 0:
            out.append((v, None, None))
        else:
            out.append((v, int(g.parent[v]), int(g.step[v])))
    return out


def window_support(phi, tol=0.0):
    """Locate the circular support interval ``[n0, n0 + l_phi]`` of a window.

    Raises:
        WindowSupportError: if the entries with ``|phi| > tol`` do not form a
            single circular interval, or if ``l_phi >= ceil(L/2)``.
    """
    phi = as_signal(phi, "window")
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol}")
    L = phi.size
    above = np.abs(phi) > tol
    count = int(above.sum())
    if count == 0:
        raise WindowSupportError("unsupported window shape: window vanishes identically")
    if count >= (L + 1) // 2 + 1:
        raise WindowSupportError(
            f"support exceeds L/2 requirement: {count} entries above tol for L={L}"
        )
    starts = np.flatnonzero(above & ~np.roll(above, 1))
    if starts.size != 1:
        raise WindowSupportError("unsupported window shape: support is not a circular interval")
    return int(starts[0]), count - 1


def is_connected(g):
    return g.K == 1


def coprime_condition(ell_phi, L):
    """Coprimality ``gcd(l_phi - 1, L) == 1`` of the window-length uniqueness condition.

    Kept separate from :func:`is_connected`; for full vertex sets the
    window-step graph is connected iff ``gcd(l_phi, L) == 1`` instead.
    """
    return gcd(int(ell_phi) - 1, int(L)) == 1
