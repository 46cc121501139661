"""Command-line interface: ``norm``, ``stft``, ``multiplier`` and ``verify``.

Every command accepts ``--config FILE`` (JSON); command-line flags
override the fields of the config file.  Output paths are resolved against
``--output-dir``, then ``$ORLICZMOD_OUTPUT``, then the working directory.
"""

import argparse
import csv
import json
import math
import os
import sys

from . import io, young
from .field import Grid, boundary_mass, make_signal, make_window
from .multiplier import apply_multiplier, hormander_profile, mihlin_study, parse_symbol, classify_growth
from .norms import NormSpec, amalgam_norm, luxemburg_norm, mixed_norm, modulation_norm, wiener_space_norm
from .tfa import stft

__all__ = ["main", "build_parser"]


class CliError(Exception):
    pass


def _spec_list(text):
    name, _, args = text.partition(":")
    params = [float(a) for a in args.split(",") if a.strip()] if args else []
    return name.strip(), params


def _number(text):
    return math.inf if str(text).lower() in ("inf", "infinity") else float(text)


def _add_common(p):
    p.add_argument("--config", help="JSON file with default values for the flags")
    p.add_argument("--output-dir", help="directory for relative output paths")


def _add_field_args(p):
    p.add_argument("--signal", help="generated signal, e.g. gaussian:1 or random:SEED")
    p.add_argument("--input", help="field file (.csv text or binary)")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dx", type=float)
    p.add_argument("--window", help="window kind:sigma (default gaussian:1)")


def build_parser():
    parser = argparse.ArgumentParser(prog="orliczmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="Orlicz, mixed, modulation, Wiener or amalgam norm of a field")
    _add_common(p)
    _add_field_args(p)
    p.add_argument("--space", choices=["L", "mixed", "M", "W", "amalgam"])
    p.add_argument("--phi", help="quasi-Young function, e.g. power:2 or powerlog:1,1")
    p.add_argument("--psi", help="second quasi-Young function")
    p.add_argument("--order", choices=["inner_first", "outer_first"])
    p.add_argument("--p", help="W^{p,q} position exponent")
    p.add_argument("--q", help="W^{p,q} frequency exponent")
    p.add_argument("--r", help="local exponent of the amalgam norm")
    p.add_argument("--out", help="record file (.json or .csv)")

    p = sub.add_parser("stft", help="short-time Fourier transform of a field")
    _add_common(p)
    _add_field_args(p)
    p.add_argument("--oversample", type=int)
    p.add_argument("--out", help="time-frequency field file (.csv or binary)")

    p = sub.add_parser("multiplier", help="apply a Fourier multiplier or tabulate its conditions")
    _add_common(p)
    _add_field_args(p)
    p.add_argument("--symbol", help="symbol spec, e.g. homogeneous_chirp:1,2")
    p.add_argument("--check", choices=["mihlin", "hormander"])
    p.add_argument("--doublings", type=int)
    p.add_argument("--R", help="comma separated radii for the Hormander check")
    p.add_argument("--out", help="output field file or condition table (.csv)")

    p = sub.add_parser("verify", help="run the verification suite")
    _add_common(p)
    p.add_argument("--only", action="append", help="check group to run (repeatable)")
    p.add_argument("--seed", type=int)
    p.add_argument("--emit-plots", action="store_true", default=None,
                   help="also write plot-ready CSV per check")
    p.add_argument("--list", action="store_true", help="list check groups and exit")
    return parser


def _merged(args):
    config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise CliError("config must be a JSON object")
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "command"):
            config[key] = value
    return config


def _out_path(cfg, name):
    base = cfg.get("output_dir") or io.output_dir()
    return name if os.path.isabs(name) else os.path.join(base, name)


def _grid(cfg):
    return Grid(cfg.get("d", 1), cfg.get("n", 512), cfg.get("dx", 0.125))


def _load_signal(cfg):
    if cfg.get("input"):
        return io.load_field(cfg["input"])
    grid = _grid(cfg)
    name, params = _spec_list(cfg.get("signal", "gaussian:1"))
    if name == "random":
        from .field import random_bandlimited
        seed = int(params[0]) if params else 0
        return random_bandlimited(grid, 0.5, seed)
    return make_signal(name, grid, *params)


def _window(cfg, grid):
    kind, params = _spec_list(cfg.get("window", "gaussian:1"))
    return make_window(kind, grid, *(params[:1] or [1.0]))


def _young(cfg, key, default=None):
    text = cfg.get(key, default)
    if text is None:
        raise CliError(f"--{key} is required")
    return young.parse_young(text)


def cmd_norm(cfg):
    f = _load_signal(cfg)
    space = cfg.get("space", "M")
    g = f.grid
    if space == "L":
        phi = _young(cfg, "phi")
        value, spec = luxemburg_norm(f.values, g.cell, phi), young.to_config(phi)
    elif space == "mixed":
        if g.d != 2:
            raise CliError("the mixed norm acts on the two axes of a d = 2 field")
        ns = NormSpec(_young(cfg, "phi"), _young(cfg, "psi"), cfg.get("order", "inner_first"))
        value, spec = mixed_norm(f.values, ns, (g.dx, g.dx)), ns.to_config()
    elif space == "M":
        ns = NormSpec(_young(cfg, "phi"), _young(cfg, "psi", cfg.get("phi")))
        value, spec = modulation_norm(f, _window(cfg, g), ns), ns.to_config()
    elif space == "W":
        p, q = _number(cfg.get("p", 2)), _number(cfg.get("q", 2))
        value, spec = wiener_space_norm(f, _window(cfg, g), p, q), {"p": p, "q": q}
    elif space == "amalgam":
        r = _number(cfg.get("r", 1))
        ns = NormSpec(_young(cfg, "phi"), _young(cfg, "psi", cfg.get("phi")))
        value = amalgam_norm(stft(f, _window(cfg, g)), r, ns)
        spec = {"r": r, "outer": ns.to_config()}
    else:
        raise CliError(f"unknown space {space!r}")
    record = io.norm_record(space, spec, value, g, boundary_mass(f))
    if cfg.get("out"):
        io.write_records([record], _out_path(cfg, cfg["out"]))
    print(json.dumps(record, sort_keys=True, default=str))
    return 0


def cmd_stft(cfg):
    f = _load_signal(cfg)
    F = stft(f, _window(cfg, f.grid), int(cfg.get("oversample", 1)))
    path = _out_path(cfg, cfg.get("out", "stft.bin"))
    io.save_tf_field(F, path)
    print(json.dumps({"output": path, "position_grid": F.position_grid.describe(),
                      "frequency_grid": F.frequency_grid.describe(),
                      "l2_norm": F.l2_norm()}, sort_keys=True))
    return 0


def _condition_rows(cfg, m, grid):
    doublings = int(cfg.get("doublings", 2))
    if cfg["check"] == "mihlin":
        study = mihlin_study(lambda _: m, grid, doublings)
        return [(a, vals, verdict) for a, (vals, verdict) in study.items()]
    grids = [grid.refined(2 ** k) if k else grid for k in range(doublings + 1)]
    R = [float(v) for v in str(cfg.get("R", "2,3,4")).split(",")]
    tables = [hormander_profile(m, g, R) for g in grids]
    rows = []
    for a in tables[0]:
        vals = [float(t[a].max()) for t in tables]
        rows.append((a, vals, classify_growth(vals)))
    return rows


def cmd_multiplier(cfg):
    if not cfg.get("symbol"):
        raise CliError("--symbol is required")
    d = cfg.get("d", 1)
    m = parse_symbol(cfg["symbol"], d)
    if cfg.get("check"):
        rows = _condition_rows(cfg, m, _grid(cfg))
        print(f"{cfg['check']} functional of {m.name} across domain doublings")
        for a, vals, verdict in rows:
            print(f"  alpha={a}  " + "  ".join(f"{v:.6g}" for v in vals) + f"  {verdict}")
        if cfg.get("out"):
            with open(_out_path(cfg, cfg["out"]), "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["alpha"] + [f"level{k}" for k in range(len(rows[0][1]))] + ["verdict"])
                for a, vals, verdict in rows:
                    w.writerow(["-".join(map(str, a))] + [repr(v) for v in vals] + [verdict])
        return 0
    f = _load_signal(cfg)
    out = apply_multiplier(m, f)
    path = _out_path(cfg, cfg.get("out", "multiplied.bin"))
    io.save_field(out, path)
    print(json.dumps({"output": path, "symbol": m.name, "l2_in": f.l2_norm(),
                      "l2_out": out.l2_norm()}, sort_keys=True))
    return 0


def _plot_csvs(reports, directory):
    os.makedirs(directory, exist_ok=True)
    for r in reports:
        name = r.check_name.replace(":", "_")
        with open(os.path.join(directory, f"{name}.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "lhs", "rhs"])
            for i, (a, b) in enumerate(zip(r.lhs, r.rhs)):
                w.writerow([i, repr(float(a)), repr(float(b))])
        with open(os.path.join(directory, f"{name}_trend.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "trend"])
            for i, v in enumerate(r.refinement_trend):
                w.writerow([i, repr(float(v))])


def cmd_verify(cfg):
    from .verify import suite
    from .verify.report import summary_table, write_reports
    if cfg.get("list"):
        print("\n".join(suite.CHECKS))
        return 0
    suite_cfg = {k: v for k, v in cfg.items() if k in suite.DEFAULT_CONFIG}
    if cfg.get("only"):
        suite_cfg["checks"] = [c for item in cfg["only"] for c in str(item).split(",") if c]
    try:
        reports = suite.run_suite(suite_cfg, progress=lambda n: print(f"running {n}", file=sys.stderr))
    except (ValueError, TypeError) as exc:
        raise CliError(f"config error: {exc}") from exc
    base = cfg.get("output_dir") or io.output_dir()
    os.makedirs(base, exist_ok=True)
    write_reports(reports, os.path.join(base, "reports.json"), os.path.join(base, "reports.csv"))
    if cfg.get("emit_plots"):
        _plot_csvs(reports, os.path.join(base, "plots"))
    if reports:
        print(summary_table(reports))
    status = suite.exit_status(reports)
    print("suite passed" if status == 0 else "suite FAILED")
    return status


COMMANDS = {"norm": cmd_norm, "stft": cmd_stft, "multiplier": cmd_multiplier,
            "verify": cmd_verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _merged(args)
        return COMMANDS[args.command](cfg)
    except (CliError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
