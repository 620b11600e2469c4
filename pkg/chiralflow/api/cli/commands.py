"""
Команды CLI: spectrum, sample-bath, evolve, flow, analytic3, sweep, compare
"""

import argparse
import asyncio
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from chiralflow import __version__
from chiralflow.adapters.engines import AnalyticEngine
from chiralflow.adapters.output import (
    LineTrace,
    SvgLineChart,
    write_bath_csv,
    write_flow_csv,
    write_json,
    write_spectrum_csv,
    write_sweep_csv,
    write_trajectory_csv,
)
from chiralflow.core.domain.errors import (
    ChiralFlowError,
    ConfigurationError,
    EigensolverError,
    IntegrationError,
)
from chiralflow.core.domain.experiment import EngineKind, RunConfig, SeedPolicy, SweepParameter
from chiralflow.core.services.bath import resolve_center, sample_modes
from chiralflow.core.services.experiment import RunResult, prepare_context
from chiralflow.core.services.model import build_spectrum
from chiralflow.infrastructure.config import (
    Settings,
    init_settings,
    load_run_config,
    load_sweep_spec,
)
from chiralflow.infrastructure.config.run_config import SweepSpecSchema
from chiralflow.infrastructure.dependencies import init_services
from chiralflow.infrastructure.logging import setup_logging
from chiralflow.infrastructure.metrics import get_metrics, record_sweep_point, setup_metrics

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICS = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Файл конфигурации (JSON или YAML)")
    common.add_argument("--seed", type=int, help="Зерно бани (u64), перекрывает конфигурацию")
    common.add_argument(
        "--engine", choices=[e.value for e in EngineKind], help="Движок динамики"
    )
    common.add_argument("--out", type=Path, help="Каталог артефактов")
    common.add_argument("--workers", type=int, help="Число параллельных точек развёртки")
    common.add_argument("--svg", action="store_true", default=None, help="Писать SVG график")
    common.add_argument(
        "--verbose-bath",
        action="store_true",
        default=None,
        help="Дописывать амплитуды f_k в траектории",
    )
    common.add_argument("--log-level", help="Уровень логирования")
    common.add_argument("--json-logs", action="store_true", default=None, help="Логи в JSON")
    common.add_argument("--metrics-port", type=int, help="Порт экспорта Prometheus метрик")
    common.add_argument(
        "--metrics-file", type=Path, help="Записать метрики Prometheus в файл после команды"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Парсер аргументов со всеми подкомандами"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="chiralflow",
        description="Немарковская динамика кирального спинового кольца и поток информации",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("spectrum", parents=[common], help="Спектр кольца: spectrum.csv")
    commands.add_parser("sample-bath", parents=[common], help="Моды бани: bath.csv")
    commands.add_parser(
        "evolve", parents=[common], help="Траектории пары состояний: trajectory_a/b.csv"
    )
    commands.add_parser("flow", parents=[common], help="D(t), R(t) и разбиение на периоды")
    commands.add_parser(
        "analytic3", parents=[common], help="Решение по вычетам для N=3 и residues.json"
    )

    sweep = commands.add_parser("sweep", parents=[common], help="Развёртка по параметру")
    sweep.add_argument("--sweep", dest="sweep_file", type=Path, help="Файл описания развёртки")
    sweep.add_argument("--parameter", choices=[p.value for p in SweepParameter])
    sweep.add_argument("--values", type=float, nargs="+")
    sweep.add_argument("--seed-policy", choices=[p.value for p in SeedPolicy])

    compare = commands.add_parser("compare", parents=[common], help="Сравнение двух движков")
    compare.add_argument(
        "--against",
        choices=[e.value for e in EngineKind],
        default=EngineKind.KERNEL_VOLTERRA.value,
        help="Второй движок (по умолчанию kernel_volterra)",
    )
    return parser


def resolve_config(
    args: argparse.Namespace, settings: Settings
) -> Tuple[RunConfig, Optional[SweepSpecSchema]]:
    """
    Разрешение конфигурации: флаг CLI > окружение (только каталог) > файл > умолчания
    """
    output_dir = args.out or settings.env.output_dir
    overrides: Dict[str, Any] = {
        "bath.seed": args.seed,
        "engine": args.engine,
        "output.dir": str(output_dir) if output_dir is not None else None,
        "output.svg": args.svg,
        "output.verbose_bath": args.verbose_bath,
    }
    return load_run_config(args.config, overrides)


def write_run_artifacts(result: RunResult, directory: Path, svg: bool) -> List[Path]:
    """flow.csv, segments.json и (опционально) flow.svg"""
    paths = [
        write_flow_csv(directory / "flow.csv", result.series, result.segments),
        write_json(directory / "segments.json", result.report()),
    ]
    if svg:
        chart = SvgLineChart()
        paths.append(
            chart.write(
                directory / "flow.svg",
                [
                    LineTrace(result.series.t, result.series.D, "D(t)"),
                    LineTrace(result.series.t, result.series.R, "R(t)"),
                ],
                title=f"{result.context.config.engine.value}: n_switch={result.segments.n_switch}",
                x_label="t",
                y_label="D, R",
            )
        )
    return paths


def cmd_spectrum(args: argparse.Namespace, config: RunConfig, _: Any) -> int:
    spectrum = build_spectrum(config.chain, config.convention)
    directory = config.output.directory
    write_spectrum_csv(directory / "spectrum.csv", spectrum)
    write_json(
        directory / "spectrum.json",
        {**spectrum.to_dict(), "provenance": config.to_dict()},
    )
    print(f"E_g={spectrum.E_g:.17g}, N={spectrum.N}: {directory / 'spectrum.csv'}")
    return EXIT_OK


def cmd_sample_bath(args: argparse.Namespace, config: RunConfig, _: Any) -> int:
    bath = resolve_center(config.bath, config.chain, config.convention)
    modes = sample_modes(bath)
    directory = config.output.directory
    write_bath_csv(directory / "bath.csv", modes)
    print(f"k_max={modes.k_max}, Σg_k²={modes.coupling_mass:.17g}: {directory / 'bath.csv'}")
    return EXIT_OK


def cmd_evolve(args: argparse.Namespace, config: RunConfig, services: Any) -> int:
    experiment, _ = services
    context = prepare_context(config)
    first, second = experiment.evolve_pair(context)
    directory = config.output.directory
    for name, trajectory in (("trajectory_a.csv", first), ("trajectory_b.csv", second)):
        trajectory = trajectory.to_frame(
            config.evolve.frame, context.spectrum.omega_n, context.modes.omega_k
        )
        write_trajectory_csv(directory / name, trajectory, config.output.verbose_bath)
    defect = max(float(first.norm_defects().max()), float(second.norm_defects().max()))
    print(f"max дефект нормировки: {defect:.3e}")
    return EXIT_OK


def _print_metrics(result: RunResult) -> None:
    metrics = result.segments.metrics()
    print(
        f"n_switch={metrics['n_switch']} a_mod={metrics['a_mod']:.6g} "
        f"positive_fraction={metrics['positive_fraction']:.6g} backflow={metrics['backflow']:.6g}"
    )


def cmd_flow(args: argparse.Namespace, config: RunConfig, services: Any) -> int:
    experiment, _ = services
    result = experiment.run(config)
    write_run_artifacts(result, config.output.directory, config.output.svg)
    _print_metrics(result)
    return EXIT_OK


def cmd_analytic3(args: argparse.Namespace, config: RunConfig, services: Any) -> int:
    experiment, _ = services
    config = config.with_engine(EngineKind.ANALYTIC3)
    result = experiment.run(config)
    directory = config.output.directory
    write_run_artifacts(result, directory, config.output.svg)

    engine = AnalyticEngine(result.context)
    pair = config.initial_pair
    assert pair is not None
    write_json(
        directory / "residues.json",
        {
            "first": engine.expand(pair.first).to_dict(),
            "second": engine.expand(pair.second).to_dict(),
            "provenance": result.context.provenance(),
        },
    )
    _print_metrics(result)
    return EXIT_OK


def _resolve_sweep(
    args: argparse.Namespace, embedded: Optional[SweepSpecSchema]
) -> Tuple[Any, int]:
    if args.sweep_file is not None:
        spec, workers = load_sweep_spec(args.sweep_file)
    elif args.parameter is not None or args.values is not None:
        data: Dict[str, Any] = {"parameter": args.parameter, "values": args.values or []}
        spec, workers = load_sweep_spec(data=data)
    elif embedded is not None:
        spec, workers = embedded.to_domain(), embedded.workers
    else:
        raise ConfigurationError(
            "Развёртка не задана", ["sweep: нужен --sweep, --parameter/--values или ключ sweep"]
        )
    if args.seed_policy:
        spec = replace(spec, seed_policy=SeedPolicy(args.seed_policy))
    return spec, args.workers or workers


def cmd_sweep(
    args: argparse.Namespace,
    config: RunConfig,
    services: Any,
    embedded: Optional[SweepSpecSchema] = None,
) -> int:
    _, sweeper = services
    spec, workers = _resolve_sweep(args, embedded)
    rows = asyncio.run(sweeper.sweep(config, spec, workers))

    for row in rows:
        record_sweep_point(spec.parameter.value, row.status)
        if row.result is not None:
            write_run_artifacts(row.result, row.config.output.directory, config.output.svg)
    write_sweep_csv(config.output.directory / "sweep.csv", [row.to_row() for row in rows])

    for row in rows:
        print(f"{spec.parameter.value}={row.value:.6g}: {row.status}")
    if all(row.result is None for row in rows):
        logger.error("Все точки развёртки завершились ошибкой")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, config: RunConfig, services: Any) -> int:
    experiment, _ = services
    report = experiment.compare(config, config.engine, EngineKind(args.against))
    write_json(config.output.directory / "compare.json", report)
    deviation = report.get("max_abs_D_deviation")
    print(
        f"max|Δ|c||={report['max_abs_amplitude_deviation']:.3e} "
        f"max|ΔD|={'n/a' if deviation is None else f'{deviation:.3e}'}"
    )
    return EXIT_OK


COMMANDS: Dict[str, Callable[..., int]] = {
    "spectrum": cmd_spectrum,
    "sample-bath": cmd_sample_bath,
    "evolve": cmd_evolve,
    "flow": cmd_flow,
    "analytic3": cmd_analytic3,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
}


def _report_config_error(error: ConfigurationError) -> None:
    print(f"Ошибка конфигурации: {error}", file=sys.stderr)
    for field_error in error.field_errors:
        print(f"  {field_error}", file=sys.stderr)


def _write_metrics(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(get_metrics())
        logger.info(f"Метрики записаны в {path}")
    except OSError as e:
        logger.warning(f"Не удалось записать метрики в {path}: {e}")


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Выполнение команды CLI

    Args:
        argv: Аргументы без имени программы (None: sys.argv[1:])

    Returns:
        Код выхода: 0 успех, 1 ошибка расчёта, 2 ошибка конфигурации,
        3 сбой интегратора или собственного разложения
    """
    args = build_parser().parse_args(argv)

    try:
        settings = init_settings()
    except ValidationError as e:
        print(f"Ошибка переменных окружения: {e}", file=sys.stderr)
        return EXIT_CONFIG
    setup_logging(log_level=args.log_level, json_format=args.json_logs)
    setup_metrics(__version__, port=args.metrics_port)

    try:
        return _dispatch(args, settings)
    finally:
        if args.metrics_file is not None:
            _write_metrics(args.metrics_file)


def _dispatch(args: argparse.Namespace, settings: Settings) -> int:
    try:
        config, embedded = resolve_config(args, settings)
        services = init_services()
        handler = COMMANDS[args.command]
        if args.command == "sweep":
            return cmd_sweep(args, config, services, embedded)
        return handler(args, config, services)
    except ConfigurationError as e:
        _report_config_error(e)
        return EXIT_CONFIG
    except IntegrationError as e:
        logger.error(f"Интегрирование прервано на t={e.t_reached:.6g}: {e}")
        return EXIT_NUMERICS
    except EigensolverError as e:
        logger.error(f"Сбой собственного разложения: {e}")
        return EXIT_NUMERICS
    except ChiralFlowError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
