"""Geometric quantisation checks for the spin-statistics relation.

Phase spaces of spinning particles, their prequantum circle bundles, line
holonomy, and the exchange-phase machinery that reads off statistics.
"""

__version__ = "0.1.0"

from . import algebra, config, errors, exchange, holonomy, phasespaces, prequant  # noqa: E402
from .errors import (  # noqa: E402
    AmbiguousAxisError, DegenerateInputError, DiagonalViolationError, DomainError,
    InconsistencyError, ScenarioParseError, SpinstatError, UnsupportedOperationError,
)
from .exchange import (  # noqa: E402
    TYPE_I, TYPE_II, build_any_exchange, classify_statistics, exchange_phase,
)
from .holonomy import integrality_check, line_holonomy, surface_flux  # noqa: E402
from .phasespaces import (  # noqa: E402
    Anyon, FreeRel, Massless, MassiveSpin, PhasePoint, SpinSphere, ThreeD,
)
from .prequant import AnyonBundle, BundlePoint, DiracBundle, Hopf, TrivialU1  # noqa: E402

__all__ = [
    "AmbiguousAxisError", "Anyon", "AnyonBundle", "BundlePoint", "DegenerateInputError",
    "DiagonalViolationError", "DiracBundle", "DomainError", "FreeRel", "Hopf",
    "InconsistencyError", "Massless", "MassiveSpin", "PhasePoint", "ScenarioParseError",
    "SpinSphere", "SpinstatError", "TYPE_I", "TYPE_II", "ThreeD", "TrivialU1",
    "UnsupportedOperationError", "__version__", "algebra", "build_any_exchange",
    "classify_statistics", "config", "errors", "exchange", "exchange_phase", "holonomy",
    "integrality_check", "line_holonomy", "phasespaces", "prequant", "surface_flux",
]
