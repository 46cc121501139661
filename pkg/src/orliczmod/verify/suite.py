"""Default verification suite: configuration, per-check jobs and aggregation."""

import copy
import math
import zlib

import numpy as np

from .. import multiplier as mult
from .. import young
from ..field import Grid, SampledField, make_signal, make_window
from . import checks
from .ensembles import compact_members, level_grids, pair_ensemble, probe_ensemble
from .report import suite_passed

__all__ = ["DEFAULT_CONFIG", "CHECKS", "run_suite", "exit_status", "load_config",
           "check_seed"]

DEFAULT_CONFIG = {
    "seed": 0,
    "checks": None,  # None runs every registered check
    "grid": {"d": 1, "n": 512, "dx": 0.125},
    "grid_2d": {"d": 2, "n": 64, "dx": 0.25},
    "levels": 2,
    "ensemble": {"random": 16, "band_fraction": 0.5, "structured": True},
    "window_sigma": 1.0,
}


def load_config(config=None):
    """Merge a (possibly partial) config into the defaults, validating keys."""
    out = copy.deepcopy(DEFAULT_CONFIG)
    for key, value in (config or {}).items():
        if key not in out:
            raise ValueError(f"unknown config key {key!r}")
        if isinstance(out[key], dict) and isinstance(value, dict):
            unknown = set(value) - set(out[key])
            if unknown:
                raise ValueError(f"unknown keys in {key!r}: {sorted(unknown)}")
            out[key].update(value)
        else:
            out[key] = value
    if out["checks"] is not None:
        bad = [c for c in out["checks"] if c not in CHECKS]
        if bad:
            raise ValueError(f"unknown checks {bad}; available: {sorted(CHECKS)}")
    if int(out["levels"]) < 2:
        raise ValueError("at least two refinement levels are required")
    return out


def check_seed(name, seed):
    """Per-check seed, independent of the order in which checks run."""
    return int(seed) * 100003 + zlib.crc32(name.encode()) % 100003


class _Context:
    def __init__(self, config, name):
        self.config = config
        self.seed = check_seed(name, config["seed"])
        self.grid = Grid(**config["grid"])
        self.grids = level_grids(self.grid, int(config["levels"]))
        self.ens = config["ensemble"]
        self.sigma = float(config["window_sigma"])

    def window(self, g):
        return make_window("gaussian", g, self.sigma)

    def ensemble(self, g, seed=None):
        return probe_ensemble(g, self.ens["random"], self.seed if seed is None else seed,
                              self.ens["band_fraction"], self.grids[0].n,
                              self.ens["structured"])

    def pairs(self, g):
        return pair_ensemble(g, self.ens["random"], self.seed, self.ens["band_fraction"],
                             self.grids[0].n)


def _commutation(ctx):
    symbols = [mult.identity(), mult.homogeneous_chirp(0.5, 2), mult.rational_mihlin(0),
               mult.sign_type(0)]
    return [checks.commutation_report(symbols, ctx.ensemble, ctx.grids, ctx.window)]


def _commutation_2d(ctx):
    grid = Grid(**ctx.config["grid_2d"])
    grids = level_grids(grid, 2)
    symbols = [mult.homogeneous_chirp(0.5, 2, d=2), mult.rational_mihlin(0, d=2)]

    def ensemble(g):
        return probe_ensemble(g, 2, ctx.seed, ctx.ens["band_fraction"], grids[0].n, False)

    return [checks.commutation_report(symbols, ensemble, grids, ctx.window,
                                      name="commutation_2d")]


def _moyal(ctx):
    return [checks.moyal_report(ctx.ensemble, ctx.grids, ctx.window)]


def _transference(ctx):
    P2, P4 = young.Power(2), young.Power(4)
    cases = [("identity", mult.identity(), P2, P2),
             ("chirp", mult.homogeneous_chirp(0.5, 2), P2, P2),
             ("rational_mihlin", mult.rational_mihlin(0), P4, P2)]
    return [checks.check_transference(m, phi, phi, psi, ctx.ensemble, ctx.window, ctx.grids,
                                      name=f"transference:{label}")
            for label, m, phi, psi in cases]


CONVOLUTION_TRIPLES = (
    ("power2", young.Power(2), young.Power(2), 1.0),
    ("powerlog", young.PowerLog(1, 1), young.Power(2), 1.0),
    ("power_half", young.Power(0.5), young.Power(1), 0.5),
)


def _convolution(ctx):
    return [checks.check_convolution_bound(phi, psi, r, ctx.pairs, ctx.window, ctx.grids,
                                           name=f"convolution_bound:{label}")
            for label, phi, psi, r in CONVOLUTION_TRIPLES]


def symbol_grid(band=16.0, n=256):
    """Position grid whose dual samples frequencies on ``[-band/2, band/2)``."""
    return Grid(1, n, 2 * math.pi / band)


def compact_symbols(pg):
    """Smooth compactly supported (or rapidly decaying) symbols on ``pg.dual()``."""
    eta = pg.dual().x
    chi = mult.Cutoff()
    table = [
        ("gaussian_bump", np.exp(-eta ** 2)),
        ("cutoff", chi(eta)),
        ("modulated_cutoff", chi(eta / 2) * np.exp(1j * eta)),
        ("quadratic_chirp_cutoff", chi(eta) * np.exp(0.5j * eta ** 2)),
        ("cutoff_piece_1", chi(eta) * np.exp(1j * np.abs(eta) ** 1.5)),
    ]
    return [(name, SampledField(pg.dual(), v)) for name, v in table]


def _wm_duality(ctx):
    pg = symbol_grid()
    return [checks.wm_duality_report(compact_symbols(pg), pg, ctx.window(pg))]


def mtilde_choices(step):
    """Ten modulation choices with grid-aligned translations (``step`` = spacing)."""
    r = checks.grid_rounded
    zero = None
    return [
        ("zero", zero, zero),
        ("alpha_const", lambda x: 0.7 + 0 * x, zero),
        ("alpha_quadratic", lambda x: x ** 2, zero),
        ("beta_one_step", zero, lambda x: step + 0 * x),
        ("beta_minus_three", zero, lambda x: -3 * step + 0 * x),
        ("beta_linear", zero, r(lambda x: 2 * x, step)),
        ("quadratic_pair", lambda x: x ** 2, r(lambda x: 2 * x, step)),
        ("affine_pair", lambda x: 1 - x, r(lambda x: 0.5 * x + 1, step)),
        ("cubic_pair", lambda x: x ** 3, r(lambda x: 3 * x ** 2 / 10, step)),
        ("sign_pair", lambda x: np.sign(x), r(lambda x: 4 * np.sign(x), step)),
    ]


def _mtilde(ctx):
    pg = symbol_grid()
    sg = pg.dual()
    step = 2 * math.pi / (sg.n * sg.dx)
    m = dict(compact_symbols(pg))["cutoff_piece_1"]
    return [checks.mtilde_report(m, ctx.window(sg), 1.0, mtilde_choices(step))]


def _compact_support(ctx):
    def fields(g):
        return compact_members(g, 8, ctx.seed, reference_n=ctx.grids[0].n)

    _, _, rep = checks.check_compact_support_equivalence(
        fields, None, 1, 2, 2, grids=ctx.grids, window=ctx.window)
    return [rep]


CHIRP_A = (0.05, -0.05, 0.1, -0.1, 0.2, -0.2)


def _chirp_covariance(ctx):
    return [checks.chirp_covariance_report(
        CHIRP_A, lambda g: make_signal("gaussian", g, 1.0), ctx.window, ctx.grids)]


def _symbol_levels(band=32.0, n=256, levels=2):
    pg = symbol_grid(band, n)
    return [Grid(1, n * 2 ** k, pg.dx) for k in range(levels + 1)]


def full_chirp(alpha, c=1.0):
    def build(pg):
        eta = pg.dual().x
        return SampledField(pg.dual(), np.exp(1j * c * np.abs(eta) ** alpha))
    return build


def compact_chirp(alpha, c=1.0):
    def build(pg):
        m1, _, _ = mult.build_cutoff_pieces(pg, c, alpha)
        return m1.as_field(pg)
    return build


def _wpr(ctx):
    compact_levels = _symbol_levels(16.0, 128)
    full_levels = _symbol_levels(32.0, 256)
    out = [
        checks.check_wpr_membership(
            compact_chirp(1.5), (1.0, 2.0, math.inf), 1.0, compact_levels, ctx.window,
            series=lambda g: mult.taylor_terms(g, 30, 1.0, 1.5),
            name="wpr_membership:compact_a1.5_r1"),
        checks.check_wpr_membership(
            compact_chirp(1.5), (1.0, math.inf), 0.5, compact_levels, ctx.window,
            name="wpr_membership:compact_a1.5_r0.5"),
        checks.check_wpr_membership(
            full_chirp(1.5), (math.inf,), 1.0, full_levels, ctx.window, interior_fraction=0.25,
            name="wpr_membership:full_a1.5_r1"),
        checks.check_wpr_membership(
            full_chirp(1.5), (math.inf,), 0.5, full_levels, ctx.window, interior_fraction=0.25,
            name="wpr_membership:full_a1.5_r0.5"),
        checks.check_wpr_membership(
            full_chirp(0.5), (math.inf,), 0.5, full_levels, ctx.window, interior_fraction=0.25,
            name="wpr_membership:full_a0.5_r0.5", expected=None),
    ]
    return out


def _mihlin(ctx):
    g = ctx.grid
    return [checks.mihlin_report("mihlin:rational_mihlin", lambda _: mult.rational_mihlin(0), g),
            checks.mihlin_report("mihlin:quadratic_chirp", lambda _: mult.homogeneous_chirp(1, 2),
                                 g, expected="divergent")]


def _hormander(ctx):
    g = ctx.grid
    R = [2.0, 3.0, 4.0, 6.0]
    return [checks.hormander_report("hormander:rational_mihlin", mult.rational_mihlin(0), g, R),
            checks.hormander_report("hormander:sign_type", mult.sign_type(0), g, R)]


def _exponent_gate(ctx):
    return [checks.exponent_gate_report()]


CHECKS = {
    "moyal": _moyal,
    "commutation": _commutation,
    "commutation_2d": _commutation_2d,
    "transference": _transference,
    "convolution_bound": _convolution,
    "wm_duality": _wm_duality,
    "mtilde": _mtilde,
    "compact_support": _compact_support,
    "chirp_covariance": _chirp_covariance,
    "wpr_membership": _wpr,
    "mihlin": _mihlin,
    "hormander": _hormander,
    "exponent_gate": _exponent_gate,
}


def run_suite(config=None, progress=None):
    """Run the configured checks and return their reports.

    Parameters
    ----------
    config : dict, optional
        Partial configuration merged into `DEFAULT_CONFIG`.  ``checks``
        selects check groups by name (an empty list runs nothing).
    progress : callable, optional
        Called with each group name before it runs.
    """
    config = load_config(config)
    names = list(CHECKS) if config["checks"] is None else list(config["checks"])
    reports = []
    for name in names:
        if progress:
            progress(name)
        reports.extend(CHECKS[name](_Context(config, name)))
    return reports


def exit_status(reports):
    return 0 if suite_passed(reports) else 1
