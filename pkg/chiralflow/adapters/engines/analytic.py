"""
Движок обратного преобразования Лапласа по вычетам (N=3)
"""

import logging
from typing import Optional

from chiralflow.core.domain.errors import ParameterError
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import PoleDiagnostic
from chiralflow.core.domain.experiment import InitialState
from chiralflow.core.domain.kernel import RationalSolution
from chiralflow.core.domain.state import Trajectory
from chiralflow.core.ports.engine import AbstractDynamicsEngine
from chiralflow.core.services.experiment import ExperimentContext
from chiralflow.core.services.laplace import residue_expansion
from chiralflow.infrastructure.metrics.prometheus import engine_evolve_seconds, timing_metric

logger = logging.getLogger(__name__)


class AnalyticEngine(AbstractDynamicsEngine):
    """
    Решение по вычетам для кольца из трёх спинов

    Диагностика (растущие полюсы, сокращения) публикуется событиями PoleDiagnostic.
    """

    name = "analytic3"

    def __init__(self, context: ExperimentContext, dispatcher: Optional[EventDispatcher] = None):
        if context.spectrum.N != 3:
            raise ParameterError(f"Движок analytic3 требует N=3, получено N={context.spectrum.N}")
        self.context = context
        self.dispatcher = dispatcher

    def expand(self, initial: InitialState) -> RationalSolution:
        """Полюсы, кратности и вычеты для начального состояния"""
        solution = residue_expansion(
            initial.c_n, self.context.kernel, self.context.config.clustering_eps
        )
        logger.debug(
            f"analytic3: кратности полюсов {solution.multiplicities.tolist()}"
        )
        if self.dispatcher:
            for pole in solution.unstable_poles:
                self.dispatcher.publish(
                    PoleDiagnostic(kind="unstable_pole", pole_real=pole.real, pole_imag=pole.imag)
                )
            for cancellation in solution.cancellations:
                self.dispatcher.publish(
                    PoleDiagnostic(
                        kind="cancellation",
                        pole_real=cancellation.pole.real,
                        pole_imag=cancellation.pole.imag,
                        channel=cancellation.channel + 1,
                        order=cancellation.order,
                    )
                )
        return solution

    @timing_metric(engine_evolve_seconds, label_attr="name")
    def evolve(self, initial: InitialState) -> Trajectory:
        grid = self.context.config.evolve.grid
        solution = self.expand(initial)
        return Trajectory(
            t=grid, c0=initial.c0, c=solution.evaluate(grid), f=None, frame=solution.frame
        )
