"""
Порты (интерфейсы) ядра
"""

from chiralflow.core.ports.config import AbstractConfigProvider
from chiralflow.core.ports.engine import AbstractDynamicsEngine

__all__ = ["AbstractConfigProvider", "AbstractDynamicsEngine"]
