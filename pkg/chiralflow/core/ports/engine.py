"""
Интерфейс движка динамики амплитуд
"""

from abc import ABC, abstractmethod

from chiralflow.core.domain.experiment import InitialState
from chiralflow.core.domain.state import Trajectory


class AbstractDynamicsEngine(ABC):
    """
    Движок, превращающий начальное состояние в траекторию на выходной сетке

    Реализации: полный пропагатор, уравнение с ядром памяти, вычеты (N=3).
    Контекст (спектр, баня, сетка) передаётся в конструктор.
    """

    name: str = "abstract"

    @abstractmethod
    def evolve(self, initial: InitialState) -> Trajectory:
        """
        Эволюция одного начального состояния

        Args:
            initial: Начальные амплитуды (c₀, c_n)

        Returns:
            Траектория на равномерной сетке [0, t_max]

        Raises:
            IntegrationError: Сбой интегратора
            EigensolverError: Сбой собственного разложения
        """
        pass
