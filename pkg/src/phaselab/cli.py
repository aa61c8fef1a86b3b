"""Command-line front end.

Every subcommand writes its outputs plus ``config.json`` (the resolved
arguments) into ``--out DIR``.  Module errors exit with status 1 and print
``{"error": <code>, "message": <text>}`` on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .ambiguity import ambiguity
from .certificates import THEOREMS, aligned_distance, certify
from .errors import ParameterError, PhaselabError
from .experiments import loglog_slope, parse_window_spec, run_sweep, sweep_instances, two_bump_demo
from .graphs import MODES, GraphParams, build_graph, window_support
from .reconstruction import reconstruct_freq, reconstruct_li, reconstruct_time
from .signals import add_noise, random_signal
from .transforms import dft, measure

METHODS = ("ambiguity", "autocorr", "frequency")


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def _runs(text):
    # "4:3,10:2" -> [(4, 3), (10, 2)]
    out = []
    for item in str(text).split(","):
        if item.strip():
            a, _, b = item.partition(":")
            out.append((int(a), int(b)))
    return out


def _load_window(spec, L):
    p = Path(spec)
    if p.suffix == ".json" and p.exists():
        phi = io.read_signal(p)
        if L is not None and phi.size != L:
            raise ParameterError(f"window file has length {phi.size}, expected {L}")
        return phi
    if L is None:
        raise ParameterError("--L is required for a named window")
    return parse_window_spec(spec, L)


def _signal(args, path_attr="signal", seed_offset=0):
    path = getattr(args, path_attr, None)
    if path:
        return io.read_signal(path)
    if args.L is None:
        raise ParameterError(f"either --{path_attr.replace('_', '-')} or --L is required")
    return random_signal(args.L, args.seed + seed_offset, args.profile, floor=args.floor,
                         gaps=_runs(args.gaps), bands=_runs(args.bands))


def _add_common(p, *, delta=True, window=True):
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--L", type=int, default=None, help="signal length")
    p.add_argument("--seed", type=int, default=0)
    if window:
        p.add_argument("--window", default="gaussian",
                       help="kind[:center=..,width=..,support=..] or a signal JSON path")
    if delta:
        p.add_argument("--delta0", type=float, default=0.1)
        p.add_argument("--delta1", type=float, default=1e-6)
        p.add_argument("--delta-time", type=int, default=0)
        p.add_argument("--delta-freq", type=int, default=0)


def _add_profile(p):
    p.add_argument("--profile", choices=("floor", "gaps", "band"), default="floor")
    p.add_argument("--floor", type=float, default=0.5)
    p.add_argument("--gaps", default="", help="zero runs start:length,...")
    p.add_argument("--bands", default="", help="spectral runs start:length,...")


def build_parser():
    ap = argparse.ArgumentParser(prog="phaselab", description="Spectrogram phase retrieval and stability certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="signal + window -> measurement CSV")
    _add_common(p, delta=False)
    _add_profile(p)
    p.add_argument("--signal", help="signal JSON (default: random signal from --L/--seed/--profile)")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--noise-model", choices=("additive-gaussian", "relative"), default="additive-gaussian")

    p = sub.add_parser("reconstruct", help="measurement CSV + window -> result JSON")
    _add_common(p)
    p.add_argument("--measurements", required=True)
    p.add_argument("--method", choices=METHODS, default="ambiguity")
    p.add_argument("--reference", help="true signal JSON; reports the per-island aligned distance")

    p = sub.add_parser("islands", help="signal(s) -> island graph JSON")
    _add_common(p)
    _add_profile(p)
    p.add_argument("--signal")
    p.add_argument("--signal2")
    p.add_argument("--mode", choices=MODES, default="time")

    p = sub.add_parser("certify", help="pair + window -> stability report JSON")
    _add_common(p)
    _add_profile(p)
    p.add_argument("--x", dest="x_path")
    p.add_argument("--y", dest="y_path")
    p.add_argument("--theorem", choices=THEOREMS, default="time-multi")
    p.add_argument("--noise", type=float, default=0.0, help="y = x + noise * complex gaussian when --y is absent")

    p = sub.add_parser("sweep", help="config grid -> CSV of stability reports")
    _add_common(p)
    p.add_argument("--Ls", default="16,32,64,128,256")
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--theorem", choices=THEOREMS, default="time-multi")
    p.add_argument("--noise", type=float, default=1e-3)
    p.set_defaults(delta0=0.25, delta1=1e-3)

    p = sub.add_parser("ambiguity-grid", help="window -> |(phi, shift(phi, m, n))| CSV")
    _add_common(p, delta=False)
    p.add_argument("--complex", action="store_true", help="also write re/im/mask CSVs")

    p = sub.add_parser("two-bump-demo", help="lambda list -> Frobenius-gap table")
    _add_common(p, delta=False, window=False)
    p.add_argument("--lambdas", default="1,1.5,2,2.5,3")
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--samples-per-width", type=int, default=8)
    p.add_argument("--window", default="gaussian:width=8")
    p.add_argument("--delta0", type=float, default=1e-3)
    p.set_defaults(L=128)
    return ap


def _cmd_measure(args, out):
    x = _signal(args)
    phi = _load_window(args.window, x.size)
    M = measure(x, phi)
    files = {"measurements": "measurements.csv", "signal": "signal.json", "window": "window.json"}
    if args.noise > 0:
        M, realized = add_noise(M, args.noise, args.noise_model, args.seed)
        files["noise"] = "noise.json"
        io.write_json({"level": args.noise, "model": args.noise_model, "realized_gap": realized},
                      out / "noise.json")
    io.write_grid(M, out / "measurements.csv")
    io.write_signal(x, out / "signal.json")
    io.write_signal(phi, out / "window.json")
    return files


def _cmd_reconstruct(args, out):
    M = io.read_grid(args.measurements)
    L = M.shape[0]
    phi = _load_window(args.window, L)
    if args.method == "ambiguity":
        res = reconstruct_time(M, phi, args.delta0, args.delta1, args.delta_time)
    elif args.method == "autocorr":
        res = reconstruct_li(M, phi, args.delta0, args.delta1)
    else:
        res = reconstruct_freq(M, phi, args.delta0, args.delta1, args.delta_freq)
    d = io.result_to_dict(res)
    d["method"] = args.method
    if args.reference:
        ref = io.read_signal(args.reference)
        target = dft(ref) if res.domain == "frequency" else ref
        dist, alphas = aligned_distance(target, res.estimate, res.islands.components)
        d["aligned_distance"] = dist
        d["alphas"] = alphas
    io.write_json(d, out / "result.json")
    return {"result": "result.json"}


def _cmd_islands(args, out):
    sigs = [_signal(args)]
    if args.signal2:
        sigs.append(io.read_signal(args.signal2))
    x = sigs[0]
    if args.mode == "frequency":
        sigs = [dft(s) for s in sigs]
    mags = [np.abs(s) for s in sigs]
    if args.mode == "frequency":
        reach = args.delta_freq
    elif args.mode == "window-step":
        _, reach = window_support(_load_window(args.window, x.size))
    else:
        reach = args.delta_time
    g = build_graph(np.vstack(mags), GraphParams(args.delta0, args.mode, reach))
    io.write_json(io.graph_to_dict(g), out / "islands.json")
    return {"islands": "islands.json"}


def _cmd_certify(args, out):
    x = io.read_signal(args.x_path) if args.x_path else _signal(args)
    if args.y_path:
        y = io.read_signal(args.y_path)
    else:
        rng = np.random.default_rng([args.seed, 1])
        y = x + args.noise * (rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size))
    phi = _load_window(args.window, x.size)
    reach = args.delta_freq if args.theorem == "frequency" else args.delta_time
    rep = certify(x, y, phi, args.theorem, args.delta0, args.delta1, reach=reach)
    io.write_json(rep.to_dict(), out / "report.json")
    return {"report": "report.json"}


def _cmd_sweep(args, out):
    Ls = _ints(args.Ls)
    reach = args.delta_freq if args.theorem == "frequency" else args.delta_time
    inst = sweep_instances(Ls, args.instances, args.seed, args.theorem, args.window,
                           args.delta0, args.delta1, reach, args.noise)
    reports = run_sweep(inst)
    io.write_sweep(reports, out / "sweep.csv")
    V = [r.n_vertices for r in reports]
    C = [r.constant_main for r in reports]
    summary = {
        "instances": len(reports),
        "all_satisfied": all(r.satisfied for r in reports),
        "C_main_vs_V_loglog_slope": loglog_slope(V, C) if len(set(V)) > 1 else None,
    }
    io.write_json(summary, out / "summary.json")
    return {"sweep": "sweep.csv", "summary": "summary.json"}


def _cmd_ambiguity(args, out):
    phi = _load_window(args.window, args.L)
    A = ambiguity(phi)
    io.write_grid(np.abs(A.values), out / "ambiguity_abs.csv")
    files = {"abs": "ambiguity_abs.csv"}
    if args.complex:
        paths = io.write_ambiguity(A, out / "ambiguity")
        files.update(re=paths[0].name, im=paths[1].name, mask=paths[2].name)
    return files


def _cmd_two_bump(args, out):
    rows = two_bump_demo(_floats(args.lambdas), args.L, args.width, args.samples_per_width,
                         args.window, args.delta0)
    lines = ["lam,gap,global_distance,island_distance,K\n"]
    for r in rows:
        lines.append(",".join([io.NUMBER_FORMAT % r["lam"], io.NUMBER_FORMAT % r["gap"],
                               io.NUMBER_FORMAT % r["global_distance"],
                               io.NUMBER_FORMAT % r["island_distance"], str(r["K"])]) + "\n")
    (out / "two_bump.csv").write_text("".join(lines))
    return {"table": "two_bump.csv"}


COMMANDS = {
    "measure": _cmd_measure,
    "reconstruct": _cmd_reconstruct,
    "islands": _cmd_islands,
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
    "ambiguity-grid": _cmd_ambiguity,
    "two-bump-demo": _cmd_two_bump,
}


def _fail(code, message):
    print(json.dumps({"error": code, "message": message}, sort_keys=True), file=sys.stderr)
    return 1


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        files = COMMANDS[args.command](args, out)
        config = {k: v for k, v in sorted(vars(args).items())}
        config["files"] = files
        io.write_json(config, out / "config.json")
    except PhaselabError as exc:
        return _fail(exc.code, str(exc))
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail("input-error", f"{type(exc).__name__}: {exc}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
