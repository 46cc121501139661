"""Fourier multipliers ``m(D) = F^{-1} (m .) F`` and their condition functionals.

Parametric symbols are sympy expressions in ``xi_1, ..., xi_d``; their
partial derivatives are exact (``sympy.diff``) and evaluated with numpy.
Tabulated symbols carry samples on a frequency grid and are differentiated
by central differences with one Richardson step.

Symbols singular at the origin have their origin sample set to 0, and the
origin is excluded from every condition functional.
"""

import itertools
import math

import numpy as np
import sympy as sp

from .field import SampledField, cfft, forward_fourier, icfft, inverse_fourier

__all__ = [
    "MultiplierSymbol", "Cutoff", "identity", "homogeneous_chirp",
    "quadratic_chirp", "rational_mihlin", "sign_type", "tabulated",
    "symbol_from_config", "parse_symbol", "apply_multiplier", "apply_along",
    "multi_indices", "mihlin_functional", "mihlin_study", "hormander_profile",
    "hormander_functional", "classify_growth", "build_cutoff_pieces",
    "dyadic_pieces", "taylor_terms", "taylor_tail_bound", "envelope_G",
    "homogeneous_phase",
]


def _origin_index(grid):
    return (grid.n // 2,) * grid.d


class MultiplierSymbol:
    """Frequency-domain symbol, parametric (sympy) or tabulated.

    Use the builtin constructors (`homogeneous_chirp`, ...) or `tabulated`.
    """

    def __init__(self, name, d, *, expr=None, values=None, grid=None,
                 params=None, singular_at_origin=False):
        if (expr is None) == (values is None):
            raise ValueError("give exactly one of expr or values")
        self.name = name
        self.d = int(d)
        self.params = dict(params or {})
        self.singular_at_origin = bool(singular_at_origin)
        self.expr = expr
        self.grid = grid
        self.values = None if values is None else np.asarray(values, dtype=complex)
        if self.values is not None and self.values.shape != grid.shape:
            raise ValueError("tabulated values must match the grid shape")
        self._symbols = sp.symbols(f"xi1:{self.d + 1}", real=True)
        self._cache = {}

    @property
    def kind(self):
        return "parametric" if self.expr is not None else "tabulated"

    def __repr__(self):
        return f"MultiplierSymbol({self.name!r}, d={self.d}, {self.params})"

    def _check_grid(self, grid):
        if grid.d != self.d:
            raise ValueError(f"symbol is {self.d}-dimensional, grid is {grid.d}-dimensional")
        if self.kind == "tabulated" and grid != self.grid:
            raise ValueError("tabulated symbol used on a different grid")

    def _lambdified(self, alpha):
        if alpha not in self._cache:
            e = self.expr
            for axis, k in enumerate(alpha):
                if k:
                    e = sp.diff(e, self._symbols[axis], k)
            self._cache[alpha] = sp.lambdify(self._symbols, e, "numpy")
        return self._cache[alpha]

    def partial(self, alpha, grid):
        """``d^alpha m`` sampled on the frequency grid of ``grid``."""
        self._check_grid(grid)
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.d:
            raise ValueError("multi-index length must equal d")
        if self.kind == "parametric":
            with np.errstate(all="ignore"):
                out = self._lambdified(alpha)(*grid.frequencies())
            out = np.broadcast_to(np.asarray(out, dtype=complex), grid.shape).copy()
        else:
            out = self.values.copy()
            for axis, k in enumerate(alpha):
                for _ in range(k):
                    out = _central_difference(out, axis, grid.dxi)
        if self.singular_at_origin:
            out[_origin_index(grid)] = 0
        return out

    def evaluate(self, grid):
        return self.partial((0,) * self.d, grid)

    def as_field(self, grid):
        """The symbol as a `SampledField` on ``grid.dual()`` (positions = frequencies)."""
        return SampledField(grid.dual(), self.evaluate(grid))


def _central_difference(values, axis, h):
    def diff(step):
        return (np.roll(values, -step, axis) - np.roll(values, step, axis)) / (2 * step * h)

    return (4 * diff(1) - diff(2)) / 3


def _radius(xs):
    return sp.sqrt(sum(x ** 2 for x in xs))


def _rational(value):
    return sp.nsimplify(value, rational=True)


def identity(d=1):
    return MultiplierSymbol("identity", d, expr=sp.Integer(1))


def homogeneous_chirp(c=1.0, alpha=2.0, d=1):
    """``exp(i c |xi|^alpha)``."""
    m = MultiplierSymbol("homogeneous_chirp", d, expr=sp.Integer(0),
                         params={"c": c, "alpha": alpha})
    a = _rational(alpha)
    m.expr = sp.exp(sp.I * _rational(c) * _radius(m._symbols) ** a)
    m.singular_at_origin = not (a.is_integer and a % 2 == 0)
    return m


def quadratic_chirp(A):
    """``exp(i <A xi, xi>)`` for a symmetric real matrix (or scalar when d = 1)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != A.shape[1] or not np.allclose(A, A.T):
        raise ValueError("A must be a symmetric square matrix")
    d = A.shape[0]
    m = MultiplierSymbol("quadratic_chirp", d, expr=sp.Integer(0), params={"A": A.tolist()})
    xs = m._symbols
    phase = sum(_rational(A[i, j]) * xs[i] * xs[j] for i in range(d) for j in range(d))
    m.expr = sp.exp(sp.I * phase)
    return m


def rational_mihlin(j=0, d=1):
    """``xi_j^2 / (1 + |xi|^2)``."""
    m = MultiplierSymbol("rational_mihlin", d, expr=sp.Integer(0), params={"j": j})
    xs = m._symbols
    m.expr = xs[j] ** 2 / (1 + sum(x ** 2 for x in xs))
    return m


def sign_type(j=0, d=1):
    """``xi_j / |xi|``."""
    m = MultiplierSymbol("sign_type", d, expr=sp.Integer(0), params={"j": j},
                         singular_at_origin=True)
    m.expr = m._symbols[j] / _radius(m._symbols)
    return m


def tabulated(values, grid, name="tabulated", singular_at_origin=False):
    """Symbol given by samples on the frequency grid of ``grid``."""
    return MultiplierSymbol(name, grid.d, values=values, grid=grid,
                            singular_at_origin=singular_at_origin)


_BUILTINS = {
    "identity": (lambda d, c: identity(d), ()),
    "homogeneous_chirp": (lambda d, c: homogeneous_chirp(c["c"], c["alpha"], d), ("c", "alpha")),
    "quadratic_chirp": (lambda d, c: quadratic_chirp(c["A"] if d == 1 else
                                                     np.reshape(c["A"], (d, d))), ("A",)),
    "rational_mihlin": (lambda d, c: rational_mihlin(int(c.get("j", 0)), d), ("j",)),
    "sign_type": (lambda d, c: sign_type(int(c.get("j", 0)), d), ("j",)),
}


def symbol_from_config(config, d=1):
    """``{"symbol": "homogeneous_chirp", "c": 1.0, "alpha": 1.5}`` -> symbol."""
    config = dict(config)
    name = config.pop("symbol", None)
    if name not in _BUILTINS:
        raise ValueError(f"unknown symbol {name!r}")
    build, _ = _BUILTINS[name]
    try:
        return build(int(config.pop("d", d)), config)
    except KeyError as exc:
        raise ValueError(f"symbol {name!r} is missing parameter {exc}") from None


def parse_symbol(text, d=1):
    """Compact form ``name[:v1,v2,...]``, e.g. ``homogeneous_chirp:1,2``."""
    name, _, args = text.partition(":")
    if name not in _BUILTINS:
        raise ValueError(f"unknown symbol {name!r}")
    keys = _BUILTINS[name][1]
    values = [float(v) for v in args.split(",") if v.strip()] if args else []
    if name == "quadratic_chirp":
        if len(values) != d * d:
            raise ValueError(f"quadratic_chirp needs {d * d} matrix entries")
        return symbol_from_config({"symbol": name, "A": values if d > 1 else values[0]}, d)
    required = {"homogeneous_chirp": 2}.get(name, 0)
    if len(values) < required or len(values) > len(keys):
        raise ValueError(f"bad parameters for {name!r}: {args!r}")
    return symbol_from_config({"symbol": name, **dict(zip(keys, values))}, d)


def _checked_values(m, grid):
    vals = m.evaluate(grid)
    bad = ~np.isfinite(vals)
    if bad.any():
        raise ValueError(f"symbol {m.name!r} is not finite at a grid frequency")
    return vals


def apply_multiplier(m, f):
    """``m(D) f = F^{-1}[m F[f]]``."""
    F = forward_fourier(f)
    return inverse_fourier(F.with_values(_checked_values(m, f.grid) * F.values))


def apply_along(m, values, grid, axes=None):
    """Apply ``m(D)`` to the axes ``axes`` of an array sampled on ``grid``.

    The quadrature constants of the forward and inverse transforms cancel,
    so this is the centered DFT, a pointwise product and its inverse.
    """
    axes = tuple(range(grid.d)) if axes is None else tuple(axes)
    mv = _checked_values(m, grid)
    shape = [1] * np.ndim(values)
    for a, ax in enumerate(axes):
        shape[ax] = grid.n
    return icfft(mv.reshape(shape) * cfft(values, axes), axes)


def multi_indices(d, max_order):
    return [a for a in itertools.product(range(max_order + 1), repeat=d)
            if sum(a) <= max_order]


def _default_order(d):
    return d // 2 + 1


def mihlin_functional(m, grid, max_order=None):
    """``max_{xi != 0} |xi|^|alpha| |d^alpha m(xi)|`` on the grid, per multi-index."""
    max_order = _default_order(grid.d) if max_order is None else max_order
    rad = np.sqrt(sum(c ** 2 for c in grid.frequencies()))
    off = rad > 0
    out = {}
    for alpha in multi_indices(grid.d, max_order):
        vals = rad ** sum(alpha) * np.abs(m.partial(alpha, grid))
        out[alpha] = float(np.max(vals[off]))
    return out


def classify_growth(values, growth=1.25, drift=0.10):
    """``divergent`` if the sequence grows by more than ``growth`` twice in a
    row, ``bounded`` if the last relative change is below ``drift``,
    otherwise ``inconclusive``.
    """
    values = [float(v) for v in values]
    ratios = [b / a if a > 0 else (math.inf if b > 0 else 1.0)
              for a, b in zip(values, values[1:])]
    for r1, r2 in zip(ratios, ratios[1:]):
        if r1 > growth and r2 > growth:
            return "divergent"
    if ratios and abs(ratios[-1] - 1) < drift:
        return "bounded"
    return "inconclusive"


def mihlin_study(m_factory, grid, doublings=2, max_order=None):
    """Mihlin functionals over grids whose frequency extent doubles.

    ``m_factory(grid)`` returns the symbol for a grid (builtin parametric
    symbols can ignore it).  Each doubling halves ``dx`` at fixed box length,
    so the frequency spacing is unchanged.  Returns ``{alpha: (values, verdict)}``.
    """
    grids = [grid]
    for _ in range(doublings):
        grids.append(grids[-1].refined())
    tables = [mihlin_functional(m_factory(g), g, max_order) for g in grids]
    return {a: ([t[a] for t in tables], classify_growth([t[a] for t in tables]))
            for a in tables[0]}


def _annulus_weights(grid, R, sub=16):
    """Measure of each frequency cell inside ``R < |xi| < 2R``."""
    h = grid.dxi
    if grid.d == 1:
        xi = grid.xi
        lo, hi = xi - h / 2, xi + h / 2

        def overlap(a, b):
            return np.clip(np.minimum(hi, b) - np.maximum(lo, a), 0, None)

        return overlap(R, 2 * R) + overlap(-2 * R, -R)
    offsets = (np.arange(sub) + 0.5) / sub - 0.5
    X, Y = grid.frequencies()
    frac = np.zeros(grid.shape)
    for ox in offsets:
        for oy in offsets:
            r = np.hypot(X + ox * h, Y + oy * h)
            frac += (r > R) & (r < 2 * R)
    return frac / sub ** 2 * h ** 2


def hormander_profile(m, grid, R_values, max_order=None):
    """``R^(-d + 2|alpha|) int_{R<|xi|<2R} |d^alpha m|^2`` for each R, per alpha."""
    max_order = _default_order(grid.d) if max_order is None else max_order
    R_values = np.asarray(R_values, dtype=float)
    lo, hi = 2 * grid.dxi, grid.extent / 4
    if np.any(R_values < lo * (1 - 1e-12)) or np.any(R_values > hi * (1 + 1e-12)):
        raise ValueError(f"R values must lie in the resolvable band [{lo:g}, {hi:g}]")
    weights = [_annulus_weights(grid, R) for R in R_values]
    if any(not np.any(w) for w in weights):
        raise ValueError("empty annulus")
    d = grid.d
    out = {}
    for alpha in multi_indices(d, max_order):
        sq = np.abs(m.partial(alpha, grid)) ** 2
        out[alpha] = np.array([R ** (-d + 2 * sum(alpha)) * np.sum(w * sq)
                               for R, w in zip(R_values, weights)])
    return out


def hormander_functional(m, grid, R_values, max_order=None):
    """Max over ``R_values`` of `hormander_profile`, per multi-index."""
    return {a: float(v.max()) for a, v in hormander_profile(m, grid, R_values, max_order).items()}


class Cutoff:
    """Smooth radial cutoff: 1 on ``|xi| <= 1``, 0 on ``|xi| >= 2``.

    In between ``h(2 - s) / (h(2 - s) + h(s - 1))`` with ``h(t) = exp(-1/t)``.
    """

    def __call__(self, xi):
        """Evaluate at 1d points ``xi`` (or radii ``|xi|``)."""
        s = np.abs(np.asarray(xi, dtype=float))
        out = np.where(s <= 1, 1.0, 0.0)
        mid = (s > 1) & (s < 2)
        a = np.exp(-1.0 / (2 - s[mid]))
        b = np.exp(-1.0 / (s[mid] - 1))
        out[mid] = a / (a + b)
        return out[()] if out.ndim == 0 else out

    def on_grid(self, grid, scale=1.0):
        """``chi(scale * xi)`` on the frequency grid."""
        return self(scale * np.sqrt(sum(c ** 2 for c in grid.frequencies())))


def homogeneous_phase(c, alpha):
    """``mu(xi) = c |xi|^alpha`` as a function of the frequency coordinate list."""
    def mu(coords):
        return c * np.sqrt(sum(x ** 2 for x in coords)) ** alpha
    return mu


def build_cutoff_pieces(grid, c=1.0, alpha=1.5, mu=None, chi=None):
    """Split ``exp(i mu)`` into ``m1 = exp(i mu) chi`` and ``m2 = exp(i mu)(1 - chi)``.

    Returns tabulated symbols on ``grid`` together with the cutoff.
    """
    if not 0 < alpha <= 2:
        raise ValueError("alpha must lie in (0, 2]")
    mu = homogeneous_phase(c, alpha) if mu is None else mu
    chi = Cutoff() if chi is None else chi
    phase = np.exp(1j * mu(grid.frequencies()))
    cut = chi.on_grid(grid)
    m1 = tabulated(phase * cut, grid, "cutoff_piece_1")
    m2 = tabulated(phase * (1 - cut), grid, "cutoff_piece_2")
    return m1, m2, chi


def dyadic_pieces(chi, J, grid):
    """``[psi(2^j xi) for j = 1..J]`` with ``psi(xi) = chi(xi/2) - chi(xi)``.

    Their sum telescopes to ``chi(xi) - chi(2^J xi)`` (so it vanishes at 0).
    """
    if J < 1:
        raise ValueError("J must be at least 1")
    return [chi.on_grid(grid, 2.0 ** (j - 1)) - chi.on_grid(grid, 2.0 ** j)
            for j in range(1, J + 1)]


def taylor_tail_bound(sup, K):
    """Remainder bound ``sup^(K+1) / (K+1)!`` of the exponential series."""
    return math.exp((K + 1) * math.log(sup) - math.lgamma(K + 2)) if sup > 0 else 0.0


def taylor_terms(grid, K, c=1.0, alpha=1.5, mu=None, chi=None, tol=1e-12):
    """``[mu^k chi for k = 0..K]``; ``sum i^k/k! phi_k`` approximates ``exp(i mu) chi``.

    Raises `ValueError` when the remainder bound with ``sup |mu chi|``
    exceeds ``tol``.
    """
    mu = homogeneous_phase(c, alpha) if mu is None else mu
    chi = Cutoff() if chi is None else chi
    cut = chi.on_grid(grid)
    phase = mu(grid.frequencies())
    sup = float(np.max(np.abs(phase * cut)))
    bound = taylor_tail_bound(sup, K)
    if bound >= tol:
        raise ValueError(f"K = {K} leaves a tail bound {bound:.3g} >= {tol:g}")
    return [phase ** k * cut for k in range(K + 1)]


def envelope_G(N, grid):
    """``G(y) = 1 / max(|y_1|^N, ..., |y_d|^N, 1)`` on the position grid."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    big = np.maximum.reduce([np.abs(c) ** N for c in grid.positions()])
    return 1.0 / np.maximum(big, 1.0)
