"""
Доменный слой (Domain Layer)
Содержит доменные модели, ошибки и события
"""

from chiralflow.core.domain.bath import PRNG_ID, BathModes, BathParams, SamplingScheme
from chiralflow.core.domain.chain import ChainParams, FrequencyConvention, SystemSpectrum
from chiralflow.core.domain.errors import (
    ChiralFlowError,
    ConfigurationError,
    DensityMatrixError,
    EigensolverError,
    GridError,
    IntegrationError,
    ModeIndexError,
    NormalizationError,
    ParameterError,
    ShapeError,
)
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import (
    DomainEvent,
    PoleDiagnostic,
    RunCompleted,
    RunFailed,
    RunStarted,
    SweepPointFailed,
)
from chiralflow.core.domain.experiment import (
    EngineKind,
    InitialPair,
    InitialState,
    OutputOptions,
    RunConfig,
    SeedPolicy,
    SweepParameter,
    SweepSpec,
)
from chiralflow.core.domain.flow import FlowSegment, FlowSegments, FlowSeries, ReducedDensityMatrix
from chiralflow.core.domain.kernel import (
    KernelParams,
    KernelVariant,
    LaplaceSystem,
    PoleCancellation,
    RationalSolution,
)
from chiralflow.core.domain.state import (
    AmplitudeState,
    EvolveConfig,
    EvolveMethod,
    Frame,
    Trajectory,
)

__all__ = [
    # Models
    "ChainParams",
    "FrequencyConvention",
    "SystemSpectrum",
    "BathParams",
    "BathModes",
    "SamplingScheme",
    "PRNG_ID",
    "AmplitudeState",
    "EvolveConfig",
    "EvolveMethod",
    "Frame",
    "Trajectory",
    "KernelParams",
    "KernelVariant",
    "LaplaceSystem",
    "PoleCancellation",
    "RationalSolution",
    "ReducedDensityMatrix",
    "FlowSeries",
    "FlowSegment",
    "FlowSegments",
    "EngineKind",
    "InitialPair",
    "InitialState",
    "OutputOptions",
    "RunConfig",
    "SeedPolicy",
    "SweepParameter",
    "SweepSpec",
    # Errors
    "ChiralFlowError",
    "ConfigurationError",
    "DensityMatrixError",
    "EigensolverError",
    "GridError",
    "IntegrationError",
    "ModeIndexError",
    "NormalizationError",
    "ParameterError",
    "ShapeError",
    # Events
    "DomainEvent",
    "RunStarted",
    "RunCompleted",
    "RunFailed",
    "SweepPointFailed",
    "PoleDiagnostic",
    "EventDispatcher",
]
