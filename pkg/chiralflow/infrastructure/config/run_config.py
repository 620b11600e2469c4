"""
Схемы конфигурации запуска (JSON/YAML) и их преобразование в доменные модели
"""

from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from chiralflow.core.domain.bath import BathParams, SamplingScheme
from chiralflow.core.domain.chain import ChainParams, FrequencyConvention
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
from chiralflow.core.domain.kernel import KernelVariant
from chiralflow.core.domain.state import EvolveConfig, EvolveMethod, Frame

# число или пара [Re, Im]
ComplexLike = Union[float, Tuple[float, float]]


def _to_complex(value: ComplexLike) -> complex:
    if isinstance(value, (tuple, list)):
        return complex(value[0], value[1])
    return complex(value)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ChainSchema(_Strict):
    """Параметры кольца"""

    N: int = Field(default=50, ge=3, description="Число спинов")
    J1: float = Field(default=-1.0, description="Обмен с ближайшими соседями")
    J2: float = Field(default=1.0, description="Обмен со вторыми соседями")
    D: Optional[float] = Field(default=None, description="Константа DM")
    c_ME: Optional[float] = Field(default=None, description="Магнитоэлектрический коэффициент")
    E_field: Optional[float] = Field(default=None, description="Электрическое поле")
    B: float = Field(default=0.0, description="Магнитное поле вдоль z")
    convention: FrequencyConvention = Field(
        default=FrequencyConvention.AS_PRINTED, description="Отсчёт частот ω_n"
    )

    def to_domain(self) -> ChainParams:
        return ChainParams(
            N=self.N,
            J1=self.J1,
            J2=self.J2,
            D=self.D,
            c_ME=self.c_ME,
            E_field=self.E_field,
            B=self.B,
        )


class BathSchema(_Strict):
    """Параметры бани"""

    gamma0: float = Field(default=1.0, ge=0.0)
    lam: float = Field(default=0.1, gt=0.0, alias="lambda")
    omega_c: Optional[float] = Field(default=None, description="None: центр по кольцу без поля")
    k_max: int = Field(default=200, ge=1)
    window_halfwidth: float = Field(default=20.0, gt=0.0, description="В единицах lambda")
    seed: int = Field(default=0, ge=0, lt=2**64)
    scheme: SamplingScheme = SamplingScheme.IID_UNIFORM
    jitter: float = Field(default=1.0, ge=0.0, le=1.0)

    def to_domain(self) -> BathParams:
        return BathParams(
            gamma0=self.gamma0,
            lam=self.lam,
            omega_c=self.omega_c,
            k_max=self.k_max,
            window_halfwidth=self.window_halfwidth,
            seed=self.seed,
            scheme=self.scheme,
            jitter=self.jitter,
        )


class EvolveSchema(_Strict):
    """Выходная сетка и интегратор"""

    t_max: float = Field(default=50.0, gt=0.0)
    n_samples: int = Field(default=2001, ge=3)
    method: EvolveMethod = EvolveMethod.EIGEN_PROPAGATE
    rel_tol: float = Field(default=1e-10, gt=0.0)
    abs_tol: float = Field(default=1e-12, gt=0.0)
    frame: Frame = Frame.LAB

    def to_domain(self) -> EvolveConfig:
        return EvolveConfig(
            t_max=self.t_max,
            n_samples=self.n_samples,
            method=self.method,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            frame=self.frame,
        )


class KernelSchema(_Strict):
    variant: KernelVariant = KernelVariant.OFF_DIAGONAL_AS_PRINTED
    clustering_eps: float = Field(default=1e-8, gt=0.0)


class FlowSchema(_Strict):
    deadband: float = Field(default=1e-10, ge=0.0)


class InitialStateSchema(_Strict):
    """Начальное состояние: c₀ и разреженные амплитуды мод {n: amplitude}"""

    c0: ComplexLike = 0.0
    amplitudes: Dict[int, ComplexLike] = Field(default_factory=dict)

    def to_domain(self, N: int, normalize: bool) -> InitialState:
        return InitialState.from_amplitudes(
            _to_complex(self.c0),
            {mode: _to_complex(value) for mode, value in self.amplitudes.items()},
            N,
            normalize=normalize,
        )


class InitialPairSchema(_Strict):
    """Пара начальных состояний: пресет или два явных состояния"""

    preset: Optional[Literal["plus_minus"]] = "plus_minus"
    first: Optional[InitialStateSchema] = None
    second: Optional[InitialStateSchema] = None
    normalize: bool = False

    @model_validator(mode="after")
    def check_pair(self) -> "InitialPairSchema":
        explicit = self.first is not None or self.second is not None
        if explicit and (self.first is None or self.second is None):
            raise ValueError("Нужно задать оба состояния first и second")
        if explicit:
            self.preset = None
        return self

    def to_domain(self, N: int) -> InitialPair:
        if self.preset == "plus_minus":
            return InitialPair.plus_minus(N)
        assert self.first is not None and self.second is not None
        return InitialPair(
            first=self.first.to_domain(N, self.normalize),
            second=self.second.to_domain(N, self.normalize),
        )


class OutputSchema(_Strict):
    dir: Path = Path("results")
    svg: bool = False
    verbose_bath: bool = False

    def to_domain(self) -> OutputOptions:
        return OutputOptions(directory=self.dir, svg=self.svg, verbose_bath=self.verbose_bath)


class SweepSpecSchema(_Strict):
    """Развёртка по одному параметру"""

    parameter: SweepParameter
    values: List[float] = Field(min_length=1)
    seed_policy: SeedPolicy = SeedPolicy.SHARED
    workers: int = Field(default=1, ge=1)

    def to_domain(self) -> SweepSpec:
        return SweepSpec(
            parameter=self.parameter, values=tuple(self.values), seed_policy=self.seed_policy
        )


class RunConfigSchema(_Strict):
    """Корневая схема файла конфигурации"""

    chain: ChainSchema = Field(default_factory=ChainSchema)
    bath: BathSchema = Field(default_factory=BathSchema)
    evolve: EvolveSchema = Field(default_factory=EvolveSchema)
    kernel: KernelSchema = Field(default_factory=KernelSchema)
    flow: FlowSchema = Field(default_factory=FlowSchema)
    engine: EngineKind = EngineKind.FULL_PROPAGATOR
    initial_pair: InitialPairSchema = Field(default_factory=InitialPairSchema)
    output: OutputSchema = Field(default_factory=OutputSchema)
    sweep: Optional[SweepSpecSchema] = None

    @model_validator(mode="after")
    def check_engine(self) -> "RunConfigSchema":
        if self.engine == EngineKind.ANALYTIC3 and self.chain.N != 3:
            raise ValueError(f"Движок analytic3 требует chain.N=3, получено {self.chain.N}")
        return self

    def to_domain(self) -> RunConfig:
        return RunConfig(
            chain=self.chain.to_domain(),
            bath=self.bath.to_domain(),
            evolve=self.evolve.to_domain(),
            engine=self.engine,
            convention=self.chain.convention,
            kernel_variant=self.kernel.variant,
            clustering_eps=self.kernel.clustering_eps,
            deadband=self.flow.deadband,
            initial_pair=self.initial_pair.to_domain(self.chain.N),
            output=self.output.to_domain(),
        )
