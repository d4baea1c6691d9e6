__all__ = [
    "Base",
    "Position",
    "MirrorIndex",
    "DIRECT_PATH",
    "Room",
    "AntennaPattern",
    "IsotropicPattern",
    "CapPattern",
    "PatternSpec",
    "Terminal",
    "RadioConfig",
    "SampleGrid",
    "PathComponent",
    "PathSet",
    "SignalTrace",
    "SceneSummary",
    "Dirac",
    "TheoryCurve",
    "McEstimate",
    "Ecdf",
    "McConfig",
    "McSection",
    "Tolerances",
    "RunConfigFile",
]

from .base import Base
from .room import Position, MirrorIndex, DIRECT_PATH, Room
from .antenna_pattern import AntennaPattern, IsotropicPattern, CapPattern, PatternSpec, Terminal
from .radio import RadioConfig, SampleGrid
from .path import PathComponent, PathSet, SignalTrace
from .scene import SceneSummary
from .curves import Dirac, TheoryCurve, McEstimate, Ecdf
from .run_config import McConfig, McSection, Tolerances, RunConfigFile
