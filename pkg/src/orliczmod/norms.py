"""Luxemburg quasi-norms, mixed Orlicz norms and Wiener amalgam norms.

All norms depend on ``|F|`` only.  Position-type axes carry the grid cell
measure, lattice (sequence) norms use counting measure.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from . import young
from .tfa import TimeFrequencyField, stft

__all__ = [
    "NormSpec", "CubeSequence", "LuxemburgBracketError", "luxemburg_norm",
    "luxemburg_profile", "lr_quasinorm", "mixed_norm", "cube_sequence",
    "amalgam_norm", "modulation_norm", "wiener_space_norm",
    "sequence_convolution_bound", "modular",
]

REL_TOL = 1e-12
MAX_DOUBLINGS = 200


class LuxemburgBracketError(RuntimeError):
    """The bisection bracket could not be established."""


def _is_sup(phi):
    return isinstance(phi, young.Power) and math.isinf(phi.p)


def _rho(A, w, phi, lam):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        vals = phi._eval(A / lam)
        return np.sum(w * vals, axis=0)


def luxemburg_profile(values, weights, phi):
    """Luxemburg norms of the columns of ``values`` (norm taken along axis 0).

    ``weights`` holds the measure of each row (length ``values.shape[0]``)
    or a scalar.  Bisection on ``lambda`` for ``rho(lambda) = sum w Phi(|f|/lambda)``
    until the relative bracket width is at most ``1e-12``; ``rho = +inf``
    counts as ``> 1``.
    """
    A = np.abs(np.asarray(values))
    if A.ndim == 1:
        A = A[:, None]
    if not np.all(np.isfinite(A)):
        raise ValueError("samples must be finite")
    w = np.broadcast_to(np.asarray(weights, dtype=float), A.shape[:1])[:, None]
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    amax = A.max(axis=0)
    out = np.zeros(A.shape[1])
    cols = amax > 0
    if not cols.any():
        return out
    if _is_sup(phi):
        out[cols] = amax[cols]
        return out
    A = A[:, cols]
    lo = amax[cols].copy()
    hi = lo.copy()
    for _ in range(MAX_DOUBLINGS):
        grow = _rho(A, w, phi, hi) > 1
        if not grow.any():
            break
        hi[grow] *= 2
    else:
        raise LuxemburgBracketError("no lambda with rho(f/lambda) <= 1 found")
    for _ in range(MAX_DOUBLINGS):
        shrink = ~(_rho(A, w, phi, lo) > 1)
        if not shrink.any():
            break
        lo[shrink] /= 2
    else:
        raise LuxemburgBracketError("no lambda with rho(f/lambda) > 1 found")
    while True:
        mid = 0.5 * (lo + hi)
        # subnormal brackets can run out of floats before reaching the tolerance
        active = (hi - lo > REL_TOL * hi) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        above = _rho(A, w, phi, mid) > 1
        lo = np.where(active & above, mid, lo)
        hi = np.where(active & ~above, mid, hi)
    out[cols] = hi
    return out


def luxemburg_norm(samples, weights, phi):
    """``inf{lambda > 0 : sum w Phi(|f|/lambda) <= 1}`` for a flat sample array."""
    samples = np.ravel(samples)
    weights = np.broadcast_to(np.asarray(weights, dtype=float), np.shape(samples)).ravel()
    return float(luxemburg_profile(samples, weights, phi)[0])


def modular(samples, weights, phi):
    """``rho_Phi(f) = sum w Phi(|f|)``."""
    return float(np.sum(np.ravel(weights) * young.evaluate(phi, np.abs(np.ravel(samples)))))


def lr_quasinorm(samples, weights, r):
    """``(sum w |f|^r)^(1/r)``, or ``max |f|`` for ``r = inf``."""
    r = float(r)
    if not r > 0:
        raise ValueError("r must be positive")
    a = np.abs(np.ravel(samples))
    if a.size == 0:
        return 0.0
    if math.isinf(r):
        return float(a.max())
    w = np.broadcast_to(np.asarray(weights, dtype=float), a.shape)
    return float(np.sum(w * a ** r) ** (1.0 / r))


@dataclass(frozen=True)
class NormSpec:
    """Pair ``(Phi, Psi)`` with an axis-order flag.

    ``Phi`` always acts on the first axis and ``Psi`` on the second;
    ``order="inner_first"`` computes the ``Phi`` norm first (``L^{Phi,Psi}``),
    ``order="outer_first"`` the ``Psi`` norm first (``L_*^{Phi,Psi}``).
    """

    inner: young.QuasiYoungFunction
    outer: young.QuasiYoungFunction
    order: str = "inner_first"

    def __post_init__(self):
        if self.order not in ("inner_first", "outer_first"):
            raise ValueError(f"unknown order flag {self.order!r}")

    @classmethod
    def lebesgue(cls, p, q, order="inner_first"):
        return cls(young.Power(p), young.Power(q), order)

    @classmethod
    def from_config(cls, config):
        return cls(young.from_config(config["inner"]), young.from_config(config["outer"]),
                   config.get("order", "inner_first"))

    def to_config(self):
        return {"inner": young.to_config(self.inner),
                "outer": young.to_config(self.outer), "order": self.order}


def _as_spec(spec):
    if isinstance(spec, NormSpec):
        return spec
    if isinstance(spec, (int, float)):
        return NormSpec.lebesgue(spec, spec)
    raise TypeError(f"expected NormSpec or exponent, got {spec!r}")


def mixed_norm(F, spec, weights=None):
    """Mixed Orlicz norm of a two-axis field.

    Parameters
    ----------
    F : TimeFrequencyField or 2d array
        For a time-frequency field the first axis is position (all ``d``
        position axes flattened) and the second is frequency, each carrying
        its grid cell measure.
    spec : NormSpec
    weights : pair of scalars or arrays, optional
        Measures of the two axes for array input (default: counting).
    """
    spec = _as_spec(spec)
    if isinstance(F, TimeFrequencyField):
        M = F.matrix()
        weights = (F.position_grid.cell, F.frequency_grid.cell)
    else:
        M = np.asarray(F)
        if M.ndim != 2:
            raise ValueError("mixed_norm expects a 2d array")
        weights = (1.0, 1.0) if weights is None else weights
    w1, w2 = weights
    if spec.order == "inner_first":
        profile = luxemburg_profile(M, w1, spec.inner)
        return luxemburg_norm(profile, w2, spec.outer)
    profile = luxemburg_profile(M.T, w2, spec.outer)
    return luxemburg_norm(profile, w1, spec.inner)


@dataclass
class CubeSequence:
    """Non-negative lattice sequence on a box of ``Z^k``.

    ``values[i]`` is the entry at lattice index ``origin + i``.
    """

    origin: tuple
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.origin = tuple(int(o) for o in self.origin)
        if len(self.origin) != self.values.ndim:
            raise ValueError("origin must have one entry per axis")
        if np.any(self.values < 0):
            raise ValueError("cube sequences are non-negative")


def _tf_coords(F):
    d = F.d
    return ([F.position_grid.x] * d + [F.frequency_grid.x] * d,
            [F.position_grid.dx] * d + [F.frequency_grid.dx] * d)


def cube_sequence(values, coords, r, spacings=None):
    """Local ``L^r`` quasi-norms on the unit cubes ``j + [0, 1)^k``.

    Each sample is assigned to the cube containing its coordinate, and
    carries the cell measure ``prod(spacings)``.  Spacings larger than 1
    would leave cubes without samples and are rejected.
    """
    values = np.abs(np.asarray(values))
    if len(coords) != values.ndim:
        raise ValueError("need one coordinate array per axis")
    if spacings is None:
        spacings = [float(c[1] - c[0]) if len(c) > 1 else 1.0 for c in coords]
    if any(h > 1 + 1e-12 for h in spacings):
        raise ValueError("misaligned cube partition: grid spacing exceeds the unit cube")
    cell = float(np.prod(spacings))
    ids = [np.floor(np.asarray(c) + 1e-9).astype(int) for c in coords]
    origin = tuple(int(i.min()) for i in ids)
    shape = tuple(int(i.max() - i.min() + 1) for i in ids)
    flat_ids = np.ravel_multi_index(
        np.meshgrid(*[i - o for i, o in zip(ids, origin)], indexing="ij"), shape)
    out = np.zeros(int(np.prod(shape)))
    r = float(r)
    if math.isinf(r):
        np.maximum.at(out, flat_ids.ravel(), values.ravel())
    else:
        np.add.at(out, flat_ids.ravel(), cell * values.ravel() ** r)
        out = out ** (1.0 / r)
    return CubeSequence(origin, out.reshape(shape))


def amalgam_norm(F, r, outer, coords=None, n_first=None):
    """Wiener amalgam norm ``||F||_{W^r(B)} = ||a||_B``.

    ``a(j, k)`` is the local ``L^r`` quasi-norm of ``F`` on the cube
    ``Q(j) x Q(k)`` and ``B`` is a lattice mixed norm (a `NormSpec`, or a
    number ``p`` for ``l^{p,p}``) under counting measure.

    Parameters
    ----------
    F : TimeFrequencyField or array
    r : float
        Local exponent, ``inf`` for the local sup.
    outer : NormSpec or float
    coords : list of 1d arrays, optional
        Coordinates per axis for array input.
    n_first : int, optional
        Number of leading axes forming the first lattice variable
        (default: half of the axes).
    """
    spacings = None
    if isinstance(F, TimeFrequencyField):
        coords, spacings = _tf_coords(F)
        F = F.values
    F = np.asarray(F)
    if coords is None:
        raise ValueError("coords are required for array input")
    n_first = F.ndim // 2 if n_first is None else n_first
    a = cube_sequence(F, coords, r, spacings).values
    rows = int(np.prod(a.shape[:n_first]))
    return mixed_norm(a.reshape(rows, -1), _as_spec(outer))


def modulation_norm(f, phi, spec, oversample=1):
    """``||f||_{M^{Phi,Psi}} = ||V_phi f||_{L^{Phi,Psi}}`` (position axis inner)."""
    return mixed_norm(stft(f, phi, oversample), _as_spec(spec))


def wiener_space_norm(f, phi, p, q, oversample=1):
    """``||f||_{W^{p,q}} = ||V_phi f||_{L_*^{p,q}}``: ``L^q`` over frequency, then ``L^p`` over position."""
    return mixed_norm(stft(f, phi, oversample), NormSpec.lebesgue(p, q, "outer_first"))


def _dense(a):
    return a.values if isinstance(a, CubeSequence) else np.abs(np.asarray(a, dtype=float))


def sequence_convolution_bound(a, b, phi, r):
    """Both sides of ``||a * b||_{l^Phi} <= C ||a||_{l^r} ||b||_{l^Phi}``.

    Returns ``(lhs, rhs)`` with the lattice convolution computed directly.
    """
    A, B = _dense(a), _dense(b)
    conv = signal.convolve(A, B, mode="full", method="direct")
    lhs = luxemburg_norm(conv, 1.0, phi)
    rhs = lr_quasinorm(A, 1.0, r) * luxemburg_norm(B, 1.0, phi)
    return lhs, rhs
