from chiralflow.adapters.engines.analytic import AnalyticEngine
from chiralflow.adapters.engines.full_propagator import FullPropagatorEngine
from chiralflow.adapters.engines.kernel_volterra import KernelVolterraEngine

__all__ = ["AnalyticEngine", "FullPropagatorEngine", "KernelVolterraEngine"]
