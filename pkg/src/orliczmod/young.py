"""Quasi-Young functions.

A quasi-Young function of order ``r`` is a map ``Phi: [0, inf) -> [0, inf]``
such that ``t -> Phi(t**(1/r))`` is a Young function (convex, vanishing at
zero, finite somewhere, unbounded).  This module provides the builtin
families, their right derivatives, sampled Lebesgue exponents (Simonenko
indices), the Delta_2 test and a sampled estimate of the order.

``+inf`` is a legal value of ``Phi``; every routine here propagates it.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuasiYoungFunction", "Power", "PowerLog", "ExpMinusOne",
    "IndicatorJump", "Tabulated", "Rescaled", "LebesgueExponents",
    "evaluate", "right_derivative", "lebesgue_exponents", "is_delta2",
    "estimate_order", "check_exponent_window", "midpoint_convex",
    "from_config", "parse_young", "to_config",
]

# divergence detection for p_Phi
_DIVERGENCE_THRESHOLD = 1e6
_EXTENSION_FACTOR = 1e3
_N_EXTENSIONS = 3

# midpoint-convexity test
_CONVEXITY_GRID = (1e-3, 1e3, 64)
_CONVEXITY_TOL = 1e-9


class QuasiYoungFunction:
    """Base class of the quasi-Young families.

    Subclasses implement ``_eval`` (on a float array ``t >= 0``), ``_deriv``
    (right derivative) and optionally ``_index_ratio`` (``t Phi'(t)/Phi(t)``
    in a numerically stable form).  ``omega`` describes the set
    ``{t > 0 : 0 < Phi(t) < inf}``: ``"full"``, ``"partial"`` or ``"empty"``.
    """

    family = None
    omega = "full"

    def __init__(self, declared_order=1.0):
        declared_order = float(declared_order)
        if not 0 < declared_order <= 1:
            raise ValueError(
                f"declared order must lie in (0, 1], got {declared_order}")
        self.declared_order = declared_order

    def __call__(self, t):
        return evaluate(self, t)

    def params(self):
        return {}

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other):
        return (type(self) is type(other) and self.params() == other.params()
                and self.declared_order == other.declared_order)

    def __hash__(self):
        return hash((type(self).__name__, repr(self.params())))

    def _index_ratio(self, t):
        phi = self._eval(t)
        return t * self._deriv(t) / phi


class Power(QuasiYoungFunction):
    """``Phi(t) = t**p``; ``p = inf`` stands for the sup norm."""

    family = "power"

    def __init__(self, p):
        p = float(p)
        if not p > 0:
            raise ValueError(f"power exponent must be positive, got {p}")
        self.p = p
        super().__init__(min(p, 1.0) if math.isfinite(p) else 1.0)
        if math.isinf(p):
            self.omega = "empty"

    def params(self):
        return {"p": self.p}

    def _eval(self, t):
        if math.isinf(self.p):
            return np.where(t <= 1.0, 0.0, np.inf)
        return t ** self.p

    def _deriv(self, t):
        if math.isinf(self.p):
            return np.where(t < 1.0, 0.0, np.inf)
        return self.p * t ** (self.p - 1)

    def _index_ratio(self, t):
        return np.full_like(t, self.p)


class PowerLog(QuasiYoungFunction):
    """``Phi(t) = t**p * log(1 + t)**a`` with ``p >= 1`` and ``a >= 0``."""

    family = "powerlog"

    def __init__(self, p=1.0, a=1.0):
        p, a = float(p), float(a)
        if p < 1 or a < 0:
            raise ValueError("powerlog needs p >= 1 and a >= 0")
        self.p, self.a = p, a
        super().__init__(1.0)

    def params(self):
        return {"p": self.p, "a": self.a}

    def _eval(self, t):
        return t ** self.p * np.log1p(t) ** self.a

    def _deriv(self, t):
        log = np.log1p(t)
        out = self.p * t ** (self.p - 1) * log ** self.a
        if self.a:
            out = out + self.a * t ** self.p * log ** (self.a - 1) / (1 + t)
        return out

    def _index_ratio(self, t):
        # t/((1+t) log(1+t)) -> 1 as t -> 0
        return self.p + self.a * t / ((1 + t) * np.log1p(t))


class ExpMinusOne(QuasiYoungFunction):
    """``Phi(t) = exp(t) - 1``."""

    family = "exp_minus_one"

    def __init__(self):
        super().__init__(1.0)

    def _eval(self, t):
        with np.errstate(over="ignore"):
            return np.expm1(t)

    def _deriv(self, t):
        with np.errstate(over="ignore"):
            return np.exp(t)

    def _index_ratio(self, t):
        return t / -np.expm1(-t)


class IndicatorJump(QuasiYoungFunction):
    """``Phi = 0`` on ``[0, t0]`` and ``+inf`` beyond (gives the sup norm)."""

    family = "indicator_jump"
    omega = "empty"

    def __init__(self, t0=1.0):
        t0 = float(t0)
        if not t0 > 0:
            raise ValueError("jump point must be positive")
        self.t0 = t0
        super().__init__(1.0)

    def params(self):
        return {"t0": self.t0}

    def _eval(self, t):
        return np.where(t <= self.t0, 0.0, np.inf)

    def _deriv(self, t):
        return np.where(t < self.t0, 0.0, np.inf)


class Tabulated(QuasiYoungFunction):
    """Piecewise-linear interpolation of non-decreasing knots.

    The point ``(0, 0)`` is prepended when missing; beyond the last finite
    knot the last slope is continued, unless a knot carries ``+inf``, in
    which case ``Phi = +inf`` past the last finite knot.  Convexity of the
    data is the caller's responsibility (see `midpoint_convex`); the order
    estimate for tabulated data is only as good as the knot density.
    """

    family = "tabulated"

    def __init__(self, knots, values, declared_order=1.0):
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.ndim != 1 or knots.shape != values.shape or knots.size < 2:
            raise ValueError("knots and values must be matching 1d arrays")
        if np.any(np.diff(knots) <= 0) or knots[0] < 0:
            raise ValueError("knots must be non-negative and increasing")
        if knots[0] > 0:
            knots = np.concatenate([[0.0], knots])
            values = np.concatenate([[0.0], values])
        if values[0] != 0:
            raise ValueError("Phi(0) must be 0")
        if np.any(np.diff(values[np.isfinite(values)]) < 0) or np.any(values < 0):
            raise ValueError("values must be non-negative and non-decreasing")
        finite = np.isfinite(values)
        if finite.sum() < 2:
            raise ValueError("need at least one finite positive knot")
        if not np.all(finite[:finite.sum()]):
            raise ValueError("+inf values may only appear at the end")
        self._has_jump = not finite.all()
        self._raw = (knots.tolist(), values.tolist())
        self.knots = knots[finite]
        self.values = values[finite]
        slope = (self.values[-1] - self.values[-2]) / (self.knots[-1] - self.knots[-2])
        if not self._has_jump and slope <= 0:
            raise ValueError("Phi must tend to infinity")
        self._slope = slope
        super().__init__(declared_order)
        if self._has_jump or self.values[1] == 0:
            self.omega = "partial"

    def params(self):
        return {"knots": self._raw[0], "values": self._raw[1],
                "order": self.declared_order}

    def _eval(self, t):
        out = np.interp(t, self.knots, self.values)
        beyond = t > self.knots[-1]
        if self._has_jump:
            out = np.where(beyond, np.inf, out)
        else:
            out = np.where(beyond, self.values[-1] + self._slope * (t - self.knots[-1]), out)
        return out

    def _deriv(self, t):
        h = np.maximum(t, 1.0) * 1e-6
        return (self._eval(t + h) - self._eval(t)) / h


class Rescaled(QuasiYoungFunction):
    """``Phi(t) = base(t**s)``; the order scales by ``s`` (capped at 1)."""

    family = "rescaled"

    def __init__(self, base, s):
        s = float(s)
        if not s > 0:
            raise ValueError("exponent s must be positive")
        self.base, self.s = base, s
        super().__init__(min(1.0, base.declared_order * s))
        self.omega = base.omega

    def params(self):
        return {"base": to_config(self.base), "s": self.s}

    def _eval(self, t):
        return self.base._eval(t ** self.s)

    def _deriv(self, t):
        return self.base._deriv(t ** self.s) * self.s * t ** (self.s - 1)

    def _index_ratio(self, t):
        return self.s * self.base._index_ratio(t ** self.s)


@dataclass(frozen=True)
class LebesgueExponents:
    """Sampled lower/upper Lebesgue exponents ``(q_Phi, p_Phi)``."""

    q_lower: float
    p_upper: float
    grid_used: str


def _as_nonneg(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0):
        raise ValueError("quasi-Young functions are defined on [0, inf)")
    return t


def evaluate(phi, t):
    """Evaluate ``phi`` at ``t >= 0`` (scalar or array); may return ``inf``."""
    t = _as_nonneg(t)
    out = np.asarray(phi._eval(t), dtype=float)
    out = np.where(t == 0, 0.0, out)
    return out[()] if out.ndim == 0 else out


def right_derivative(phi, t):
    """Right derivative of ``phi`` at ``t > 0``.

    Analytic for the parametric families; a forward difference with step
    ``max(t, 1) * 1e-6`` for `Tabulated`.  Raises `ValueError` where the
    slope is infinite (at or past a jump to ``+inf``).
    """
    t = _as_nonneg(t)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.asarray(phi._deriv(t), dtype=float)
    if not np.all(np.isfinite(out)):
        raise ValueError("infinite right derivative (jump to +inf)")
    return out[()] if out.ndim == 0 else out


def _index_ratio(phi, t):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return np.asarray(phi._index_ratio(t), dtype=float)


def lebesgue_exponents(phi, t_min=1e-3, t_max=1e3, n=200):
    """Sample ``q_Phi = inf`` and ``p_Phi = sup`` of ``t Phi'(t) / Phi(t)``.

    The extrema are taken over the points of a log-spaced grid that lie in
    ``Omega = {0 < Phi < inf}`` (floating-point overflow of ``Phi`` does not
    remove a point from ``Omega`` for families with ``Omega = (0, inf)``).  ``p_upper`` is ``inf`` when ``Omega`` is
    not all of ``(0, inf)``, or when the ratio keeps growing as the grid is
    extended (three extensions by ``1e3`` in each direction; growth past
    ``1e6`` or strictly increasing sups both count as divergence).
    """
    if n < 2 or not 0 < t_min < t_max:
        raise ValueError("need n >= 2 and 0 < t_min < t_max")
    desc = f"geomspace({t_min:g}, {t_max:g}, {n})"
    if phi.omega == "empty":
        return LebesgueExponents(math.inf, math.inf, desc)

    def sample(lo, hi):
        t = np.geomspace(lo, hi, n)
        with np.errstate(over="ignore"):
            vals = phi._eval(t)
        inside = vals > 0
        if phi.omega != "full":
            inside &= np.isfinite(vals)
        ratio = _index_ratio(phi, t[inside])
        return ratio[np.isfinite(ratio)]

    ratio = sample(t_min, t_max)
    if ratio.size == 0:
        raise ValueError(f"sampling grid {desc} misses Omega entirely")
    q_lower, p_upper = float(ratio.min()), float(ratio.max())
    if phi.omega != "full":
        return LebesgueExponents(q_lower, math.inf, desc)

    sups = [p_upper]
    for k in range(1, _N_EXTENSIONS + 1):
        f = _EXTENSION_FACTOR ** k
        ext = np.concatenate([sample(t_min / f, t_min), sample(t_max, t_max * f)])
        sups.append(max(sups[-1], float(ext.max())) if ext.size else sups[-1])
    growing = all(b > a * 1.01 for a, b in zip(sups, sups[1:]))
    if max(sups) > _DIVERGENCE_THRESHOLD or growing:
        p_upper = math.inf
    return LebesgueExponents(q_lower, p_upper, desc)


def is_delta2(phi):
    """True iff ``phi`` satisfies the Delta_2 condition (``p_Phi < inf``)."""
    return math.isfinite(lebesgue_exponents(phi).p_upper)


def midpoint_convex(phi, r, grid=_CONVEXITY_GRID, tol=_CONVEXITY_TOL):
    """Sampled midpoint-convexity test of ``s -> phi(s**(1/r))``.

    Every pair ``s < u`` of a log-spaced grid is checked against
    ``g((s+u)/2) <= (g(s) + g(u))/2 + tol * (1 + |values|)``.
    """
    s = np.geomspace(*grid)
    i, j = np.triu_indices(s.size, k=1)
    with np.errstate(over="ignore", invalid="ignore"):
        g = evaluate(phi, s ** (1.0 / r))
        mid = evaluate(phi, ((s[i] + s[j]) / 2) ** (1.0 / r))
        rhs = (g[i] + g[j]) / 2
        slack = tol * (1 + np.abs(mid) + np.abs(rhs))
        ok = (mid <= rhs + slack) | (np.isinf(rhs) & (rhs > 0))
    return bool(np.all(ok))


def estimate_order(phi, candidates=(1.0, 0.75, 0.5, 0.25)):
    """Largest candidate ``r`` for which ``phi(t**(1/r))`` passes the
    midpoint-convexity test; warns and returns the declared order if none does.
    """
    candidates = sorted((float(c) for c in candidates), reverse=True)
    if not candidates:
        raise ValueError("candidate list is empty")
    for r in candidates:
        if midpoint_convex(phi, r):
            return r
    warnings.warn(f"no candidate order passed for {phi!r}; "
                  f"falling back to declared order {phi.declared_order}")
    return phi.declared_order


def check_exponent_window(phi, q, p):
    """Interpolation gate ``q < q_Phi <= p_Phi < p``."""
    if not 0 < q < p:
        raise ValueError("need 0 < q < p")
    ex = lebesgue_exponents(phi)
    return bool(q < ex.q_lower and ex.p_upper < p)


_FAMILIES = {
    "power": lambda c: Power(c["p"]),
    "powerlog": lambda c: PowerLog(c.get("p", 1.0), c.get("a", 1.0)),
    "exp_minus_one": lambda c: ExpMinusOne(),
    "exp": lambda c: ExpMinusOne(),
    "indicator_jump": lambda c: IndicatorJump(c.get("t0", 1.0)),
    "indicator": lambda c: IndicatorJump(c.get("t0", 1.0)),
    "tabulated": lambda c: Tabulated(c["knots"], c["values"], c.get("order", 1.0)),
    "rescaled": lambda c: Rescaled(from_config(c["base"]), c["s"]),
}

_POSITIONAL = {
    "power": ("p",), "powerlog": ("p", "a"), "indicator_jump": ("t0",),
    "indicator": ("t0",), "exp": (), "exp_minus_one": (),
}


def from_config(config):
    """Build a family from a mapping such as ``{"family": "power", "p": 2}``."""
    if isinstance(config, QuasiYoungFunction):
        return config
    config = dict(config)
    name = str(config.get("family", "")).lower()
    if name not in _FAMILIES:
        raise ValueError(f"unknown quasi-Young family {name!r}")
    try:
        return _FAMILIES[name](config)
    except KeyError as exc:
        raise ValueError(f"family {name!r} is missing parameter {exc}") from None


def parse_young(text):
    """Parse the compact form ``family[:v1,v2,...]``, e.g. ``power:2``, ``inf`` allowed."""
    name, _, args = text.partition(":")
    name = name.strip().lower()
    if name not in _POSITIONAL:
        raise ValueError(f"unknown quasi-Young family {name!r}")
    values = [float(v) for v in args.split(",") if v.strip()] if args else []
    keys = _POSITIONAL[name]
    if len(values) > len(keys) or (name == "power" and not values):
        raise ValueError(f"bad parameters for {name!r}: {args!r}")
    return from_config({"family": name, **dict(zip(keys, values))})


def to_config(phi):
    """Inverse of `from_config`."""
    return {"family": phi.family, **phi.params()}
