"""Reductions as (forward, pullback) pairs addressable by name."""

from .base import REGISTRY, Immediate, Reduced, Reduction, checked, get_reduction, register
from . import coloring, ekr, konig, long_choice, ramsey, short_choice  # noqa: F401  (registration)
from .long_choice import IntervalState, interval_state
from .ramsey import RamseyHammingConfig
from .short_choice import RangeTracker, range_tracker

__all__ = [
    "REGISTRY", "Immediate", "Reduced", "Reduction", "checked", "get_reduction", "register",
    "IntervalState", "interval_state", "RamseyHammingConfig", "RangeTracker", "range_tracker",
]
