"""Exact certificates that blow-ups of projective space at points are log Fano."""

from .certifier import Theorem, build_config, certify, classify_log_fano
from .lattice import CurveClass, DivisorClass, anticanonical, pair, standard_curve
from .mori import EpsilonInterval, decompose_curve, epsilon_interval, mori_generators, positivity_report

__version__ = "0.1.0"

__all__ = [
    "CurveClass",
    "DivisorClass",
    "EpsilonInterval",
    "Theorem",
    "anticanonical",
    "build_config",
    "certify",
    "classify_log_fano",
    "decompose_curve",
    "epsilon_interval",
    "mori_generators",
    "pair",
    "positivity_report",
    "standard_curve",
]
