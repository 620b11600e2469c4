"""
Движок уравнения с ядром памяти
"""

from chiralflow.core.domain.experiment import InitialState
from chiralflow.core.domain.state import Trajectory
from chiralflow.core.ports.engine import AbstractDynamicsEngine
from chiralflow.core.services.experiment import ExperimentContext
from chiralflow.core.services.kernel import evolve_volterra
from chiralflow.infrastructure.metrics.prometheus import engine_evolve_seconds, timing_metric


class KernelVolterraEngine(AbstractDynamicsEngine):
    """Интегрирование c_n(t) с экспоненциальным ядром через вспомогательные переменные"""

    name = "kernel_volterra"

    def __init__(self, context: ExperimentContext):
        self.context = context

    @timing_metric(engine_evolve_seconds, label_attr="name")
    def evolve(self, initial: InitialState) -> Trajectory:
        cfg = self.context.config.evolve
        return evolve_volterra(
            initial.c_n,
            self.context.kernel,
            cfg.t_max,
            cfg.n_samples,
            c0=initial.c0,
            rel_tol=cfg.rel_tol,
            abs_tol=cfg.abs_tol,
        )
