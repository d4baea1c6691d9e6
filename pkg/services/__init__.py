__all__ = [
    "geometry",
    "antenna",
    "channel",
    "theory",
    "montecarlo",
    "comparison",
    "enumerate_paths",
    "synthesize_signal",
    "run_ensemble",
    "compare_with_theory",
]

from . import geometry, antenna, channel, theory, montecarlo, comparison
from .channel import enumerate_paths, synthesize_signal
from .montecarlo import run_ensemble
from .comparison import compare_with_theory
