"""
Доменные модели хирального кольца: параметры, спектр одного возбуждения
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from chiralflow.core.domain.errors import ParameterError


class FrequencyConvention(str, Enum):
    """Способ отсчёта собственных частот ω_n"""

    # ω_n = (E_n − B·N)/ħ, как напечатано
    AS_PRINTED = "as_printed"
    # ω_n = (E_n − E_g)/ħ
    GROUND_REFERENCED = "ground_referenced"


@dataclass(frozen=True)
class ChainParams:
    """
    Параметры кольца из N спинов

    Константа DM задаётся либо напрямую (D), либо через магнитоэлектрическую
    связь D = c_ME·E_field. Энергии в единицах |J1|, ħ = 1.
    """

    N: int
    J1: float = -1.0
    J2: float = 1.0
    D: Optional[float] = None
    c_ME: Optional[float] = None
    E_field: Optional[float] = None
    B: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, (int, np.integer)):
            raise ParameterError(f"N должно быть целым, получено {self.N!r}")
        if self.N < 3:
            raise ParameterError(f"Кольцо требует N >= 3, получено N={self.N}")
        if self.hbar != 1.0:
            raise ParameterError("Используются безразмерные единицы, hbar фиксирован равным 1")

        if self.c_ME is not None and self.E_field is not None:
            derived = self.c_ME * self.E_field
            if self.D is not None and self.D != derived:
                raise ParameterError(
                    f"D={self.D} противоречит c_ME·E_field={derived}"
                )
            object.__setattr__(self, "D", derived)
        elif self.D is None:
            object.__setattr__(self, "D", 0.0)

        for name in ("J1", "J2", "D", "B"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"Константа {name} должна быть конечной, получено {value}")

    def with_field(self, **changes: Any) -> "ChainParams":
        """Копия параметров с изменёнными полями (B, D, ...)"""
        data = self.to_dict()
        data.update(changes)
        if "D" in changes:
            # явный D отменяет магнитоэлектрическую параметризацию
            data["c_ME"] = None
            data["E_field"] = None
        return ChainParams(**data)

    def to_dict(self) -> Dict[str, Any]:
        """Преобразование параметров в словарь"""
        return {
            "N": int(self.N),
            "J1": self.J1,
            "J2": self.J2,
            "D": self.D,
            "c_ME": self.c_ME,
            "E_field": self.E_field,
            "B": self.B,
            "hbar": self.hbar,
        }


@dataclass(frozen=True)
class SystemSpectrum:
    """Спектр сектора одного возбуждения"""

    E_g: float
    E_n: np.ndarray
    omega_n: np.ndarray
    convention: FrequencyConvention

    def __post_init__(self):
        for name in ("E_n", "omega_n"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        if self.E_n.shape != self.omega_n.shape:
            raise ParameterError("E_n и omega_n должны иметь одинаковую длину")

    @property
    def N(self) -> int:
        return int(self.E_n.shape[0])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "E_g": self.E_g,
            "E_n": self.E_n.tolist(),
            "omega_n": self.omega_n.tolist(),
            "convention": self.convention.value,
        }
