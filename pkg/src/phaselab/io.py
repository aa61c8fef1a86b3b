"""Readers and writers for signals, grids, graphs, results and reports.

Formats:
    signal JSON      ``{"L": int, "re": [...], "im": [...]}``
    grid CSV         ``L`` rows of ``L`` values, row index = time shift ``m``
    ambiguity CSVs   ``<stem>_re.csv``, ``<stem>_im.csv``, ``<stem>_mask.csv`` (0/1)
    graph JSON       vertices, components, roots, parent pointers, steps, depths
    result JSON      estimate (re/im), island membership, per-entry flags
    report JSON      the StabilityReport fields
    sweep CSV        one StabilityReport per row, header in ``SWEEP_COLUMNS``

CSV numbers are written with 17 significant digits so doubles round-trip.
"""

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .ambiguity import AmbiguityGrid
from .errors import DimensionError, ParameterError
from .transforms import as_grid, as_signal

__all__ = [
    "NUMBER_FORMAT",
    "SWEEP_COLUMNS",
    "signal_to_dict",
    "signal_from_dict",
    "write_signal",
    "read_signal",
    "format_grid",
    "write_grid",
    "read_grid",
    "write_ambiguity",
    "read_ambiguity",
    "graph_to_dict",
    "result_to_dict",
    "result_from_dict",
    "write_json",
    "read_json",
    "write_sweep",
    "read_sweep",
]

NUMBER_FORMAT = "%.17g"

SWEEP_COLUMNS = (
    "theorem", "L", "K", "V", "delta0", "delta1", "reach",
    "lhs", "gap", "C_main", "C_eps", "epsilon", "rhs", "satisfied", "C_main_per_V",
)


def _num(v):
    return NUMBER_FORMAT % v


def signal_to_dict(x):
    x = as_signal(x)
    return {"L": int(x.size), "re": [float(v) for v in x.real], "im": [float(v) for v in x.imag]}


def signal_from_dict(d):
    try:
        L, re, im = int(d["L"]), d["re"], d["im"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed signal JSON: {exc}") from None
    if len(re) != L or len(im) != L:
        raise DimensionError(f"signal JSON declares L={L} but has {len(re)}/{len(im)} entries")
    return as_signal(np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float))


def write_json(obj, path):
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


def write_signal(x, path):
    write_json(signal_to_dict(x), path)


def read_signal(path):
    return signal_from_dict(read_json(path))


def format_grid(G):
    G = np.asarray(G)
    if G.ndim != 2:
        raise DimensionError(f"grid must be 2-D, got shape {G.shape}")
    return "".join(",".join(_num(v) for v in row) + "\n" for row in G)


def write_grid(G, path):
    Path(path).write_text(format_grid(G))


def read_grid(path, square=True):
    rows = [line for line in Path(path).read_text().splitlines() if line.strip()]
    G = np.array([[float(v) for v in line.split(",")] for line in rows])
    return as_grid(G, str(path)) if square else G


def write_ambiguity(A, stem):
    """Write the re/im/mask CSV triple; returns the three paths."""
    stem = Path(stem)
    paths = [stem.with_name(stem.name + s) for s in ("_re.csv", "_im.csv", "_mask.csv")]
    write_grid(A.values.real, paths[0])
    write_grid(A.values.imag, paths[1])
    Path(paths[2]).write_text(
        "".join(",".join("1" if v else "0" for v in row) + "\n" for row in A.mask)
    )
    return paths


def read_ambiguity(stem):
    stem = Path(stem)
    re = read_grid(stem.with_name(stem.name + "_re.csv"))
    im = read_grid(stem.with_name(stem.name + "_im.csv"))
    mask = read_grid(stem.with_name(stem.name + "_mask.csv")) != 0
    if not re.shape == im.shape == mask.shape:
        raise DimensionError("ambiguity CSVs disagree in shape")
    return AmbiguityGrid(re + 1j * im, mask)


def graph_to_dict(g):
    return {
        "L": int(g.L),
        "mode": g.params.mode,
        "delta0": float(g.params.delta0),
        "reach": int(g.params.reach),
        "vertices": [int(v) for v in g.vertices],
        "components": [[int(v) for v in c] for c in g.components],
        "roots": [int(r) for r in g.roots],
        "parent": [int(p) for p in g.parent],
        "step": [int(s) for s in g.step],
        "depth": [int(d) for d in g.depth],
        "order": [[int(v) for v in o] for o in g.order],
    }


def result_to_dict(res):
    d = {
        "domain": res.domain,
        "estimate": signal_to_dict(res.estimate),
        "membership": [int(k) for k in res.islands.membership()],
        "roots": [int(r) for r in res.roots],
        "magnitude_mask": [bool(v) for v in res.magnitude_mask],
        "clamped": [bool(v) for v in res.clamped],
        "edge_reliable": [bool(v) for v in res.edge_reliable],
        "island_reliable": [bool(v) for v in res.island_reliable],
        "islands": graph_to_dict(res.islands),
    }
    if res.domain == "frequency":
        d["time_signal"] = signal_to_dict(res.time_signal())
    return d


def result_from_dict(d):
    """Parse the parts of a result JSON that carry data (graph is kept as a dict)."""
    return {
        "domain": d["domain"],
        "estimate": signal_from_dict(d["estimate"]),
        "membership": np.asarray(d["membership"], dtype=int),
        "roots": list(d["roots"]),
        "magnitude_mask": np.asarray(d["magnitude_mask"], dtype=bool),
        "clamped": np.asarray(d["clamped"], dtype=bool),
        "edge_reliable": np.asarray(d["edge_reliable"], dtype=bool),
        "island_reliable": list(d["island_reliable"]),
        "islands": d["islands"],
    }


def _sweep_row(rep):
    V = rep.n_vertices
    vals = {
        "theorem": rep.theorem,
        "L": str(rep.L),
        "K": str(rep.K),
        "V": str(V),
        "delta0": _num(rep.delta0),
        "delta1": _num(rep.delta1),
        "reach": str(rep.reach),
        "lhs": _num(rep.lhs),
        "gap": _num(rep.measurement_gap),
        "C_main": _num(rep.constant_main),
        "C_eps": _num(rep.constant_eps),
        "epsilon": _num(rep.epsilon),
        "rhs": _num(rep.rhs),
        "satisfied": "true" if rep.satisfied else "false",
        "C_main_per_V": _num(rep.constant_main / V) if V else "nan",
    }
    return [vals[c] for c in SWEEP_COLUMNS]


def write_sweep(reports, path):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for rep in reports:
        w.writerow(_sweep_row(rep))
    Path(path).write_text(buf.getvalue())


def read_sweep(path):
    """Rows as dicts with numeric columns converted."""
    ints = {"L", "K", "V", "reach"}
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rec = {}
            for k, v in row.items():
                if k == "theorem":
                    rec[k] = v
                elif k == "satisfied":
                    rec[k] = v == "true"
                elif k in ints:
                    rec[k] = int(v)
                else:
                    rec[k] = float(v)
            out.append(rec)
    return out
