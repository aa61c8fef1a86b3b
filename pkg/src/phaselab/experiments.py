"""Batch experiments: certificate sweeps and the two-bump instability demo."""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .certificates import THEOREMS, aligned_distance, certify
from .errors import ParameterError
from .graphs import GraphParams, build_graph
from .signals import make_window, random_signal, two_bump
from .transforms import frobenius_distance, measure

__all__ = [
    "worker_count",
    "parse_window_spec",
    "SweepInstance",
    "sweep_instances",
    "run_sweep",
    "loglog_slope",
    "two_bump_demo",
]


def worker_count(n_tasks=None):
    """Worker cap from ``PHASELAB_THREADS`` (default: CPU count, at most 8)."""
    env = os.environ.get("PHASELAB_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise ParameterError(f"PHASELAB_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise ParameterError(f"PHASELAB_THREADS must be >= 1, got {n}")
    else:
        n = min(8, os.cpu_count() or 1)
    return max(1, min(n, n_tasks)) if n_tasks else n


def parse_window_spec(spec, L):
    """Window from ``kind`` or ``kind:key=value,...`` (keys: center, width, support)."""
    kind, _, rest = str(spec).partition(":")
    kw = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in ("center", "width", "support"):
                raise ParameterError(f"bad window option {item!r} in {spec!r}")
            kw[key] = int(val) if key == "support" else float(val)
    return make_window(kind.strip(), L, **kw)


@dataclass(frozen=True)
class SweepInstance:
    L: int
    index: int
    seed: int
    theorem: str
    window: str
    delta0: float
    delta1: float
    reach: int
    noise: float
    floor: float = 0.5


def sweep_instances(Ls, n_per_L, seed, theorem="time-multi", window="gaussian",
                    delta0=0.25, delta1=1e-3, reach=0, noise=1e-3, floor=0.5):
    """Expand a config grid into instances, in ``(L, index)`` order."""
    if theorem not in THEOREMS:
        raise ParameterError(f"unknown theorem {theorem!r}")
    if n_per_L < 1:
        raise ParameterError("need at least one instance per L")
    out = []
    for L in Ls:
        for i in range(n_per_L):
            # Per-instance seed depends only on (seed, L, i), not on scheduling.
            s = int(np.random.SeedSequence([int(seed), int(L), i]).generate_state(1)[0])
            out.append(SweepInstance(int(L), i, s, theorem, window, float(delta0),
                                     float(delta1), int(reach), float(noise), float(floor)))
    return out


def _instance_pair(inst):
    rng = np.random.default_rng(inst.seed)
    x = random_signal(inst.L, rng.integers(2**63), "floor", floor=inst.floor)
    pert = rng.standard_normal(inst.L) + 1j * rng.standard_normal(inst.L)
    y = np.exp(2j * np.pi * rng.random()) * (x + inst.noise * pert)
    return x, y


def _run_one(inst):
    x, y = _instance_pair(inst)
    phi = parse_window_spec(inst.window, inst.L)
    return certify(x, y, phi, inst.theorem, inst.delta0, inst.delta1, reach=inst.reach)


def run_sweep(instances, workers=None):
    """Certify every instance; results follow the input order."""
    instances = list(instances)
    workers = worker_count(len(instances)) if workers is None else int(workers)
    if workers <= 1:
        return [_run_one(i) for i in instances]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_run_one, instances))


def loglog_slope(xs, ys):
    """Least-squares slope of ``log y`` against ``log x``."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    return float(np.polyfit(lx, ly, 1)[0])


def two_bump_demo(lams, L=128, width=1.0, samples_per_width=8, window="gaussian:width=8",
                  delta0=1e-3):
    """Measurement gap against aligned distances for ``f_lam^+`` vs ``f_lam^-``.

    Returns:
        List of dicts with ``lam``, ``gap`` (Frobenius distance of the two
        spectrograms), ``global_distance`` (one phase for the whole signal),
        ``island_distance`` (one phase per island of the two-signal graph at
        ``delta0``) and ``K``.
    """
    phi = parse_window_spec(window, L)
    rows = []
    for lam in lams:
        fp = two_bump(L, lam, +1, width, samples_per_width)
        fm = two_bump(L, lam, -1, width, samples_per_width)
        gap = frobenius_distance(measure(fp, phi), measure(fm, phi))
        glob, _ = aligned_distance(fp, fm, [range(L)])
        g = build_graph(np.vstack([np.abs(fp), np.abs(fm)]), GraphParams(delta0, "time", 0))
        isl, alphas = aligned_distance(fp, fm, g.components)
        rows.append({
            "lam": float(lam),
            "gap": float(gap),
            "global_distance": float(glob),
            "island_distance": float(isl),
            "K": g.K,
            "alphas": alphas,
        })
    return rows
