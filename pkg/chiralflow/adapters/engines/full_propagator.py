"""
Движок полного пропагатора: кольцо + дискретные моды бани
"""

from chiralflow.core.domain.experiment import InitialState
from chiralflow.core.domain.state import AmplitudeState, EvolveMethod, Trajectory
from chiralflow.core.ports.engine import AbstractDynamicsEngine
from chiralflow.core.services.experiment import ExperimentContext
from chiralflow.core.services.propagator import evolve_eig, evolve_ode
from chiralflow.infrastructure.metrics.prometheus import engine_evolve_seconds, timing_metric


class FullPropagatorEngine(AbstractDynamicsEngine):
    """Точная эволюция (c_n, f_k): собственное разложение или DOP853"""

    name = "full_propagator"

    def __init__(self, context: ExperimentContext):
        self.context = context

    @timing_metric(engine_evolve_seconds, label_attr="name")
    def evolve(self, initial: InitialState) -> Trajectory:
        cfg = self.context.config.evolve
        init = AmplitudeState.from_system(
            initial.c0, initial.c_n, self.context.modes.k_max, frame=cfg.frame
        )
        if cfg.method == EvolveMethod.EIGEN_PROPAGATE:
            return evolve_eig(init, cfg, self.context.spectrum, self.context.modes)
        return evolve_ode(init, cfg, self.context.spectrum, self.context.modes)
