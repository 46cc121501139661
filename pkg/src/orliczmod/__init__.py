"""Orlicz modulation spaces on sampled grids.

Quasi-Young functions and their indices (`young`), grids and sampled fields
(`field`), short-time Fourier transforms (`tfa`), Luxemburg, mixed,
modulation and amalgam norms (`norms`), Fourier multipliers with their
condition functionals (`multiplier`) and a verification harness
(`verify`).
"""

from . import field, io, multiplier, norms, tfa, young
from .field import Grid, SampledField, forward_fourier, inverse_fourier, make_signal, make_window
from .norms import NormSpec, luxemburg_norm, mixed_norm, modulation_norm, wiener_space_norm
from .tfa import stft, stft_T
from .young import parse_young

__all__ = [
    "field", "io", "multiplier", "norms", "tfa", "young", "Grid", "SampledField",
    "forward_fourier", "inverse_fourier", "make_signal", "make_window", "NormSpec",
    "luxemburg_norm", "mixed_norm", "modulation_norm", "wiener_space_norm", "stft",
    "stft_T", "parse_young",
]

__version__ = "0.1.0"
