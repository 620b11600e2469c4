"""
Запись таблиц CSV (RFC 4180, точка как десятичный разделитель, 17 значащих цифр)
"""

import csv
import logging
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Sequence

import numpy as np

from chiralflow.core.domain.bath import BathModes
from chiralflow.core.domain.chain import SystemSpectrum
from chiralflow.core.domain.flow import FlowSeries, FlowSegments
from chiralflow.core.domain.state import Trajectory

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["value", "n_switch", "a_mod", "positive_fraction", "backflow", "status", "error"]


def format_float(value: Any) -> str:
    """Число с 17 значащими цифрами; None даёт пустую ячейку"""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """
    Запись таблицы

    Args:
        path: Файл назначения (каталоги создаются)
        columns: Заголовок
        rows: Строки значений в порядке колонок

    Returns:
        Путь к файлу
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_float(value) for value in row])
    logger.debug(f"Записан {path}")
    return path


def write_flow_csv(path: Path, series: FlowSeries, segments: FlowSegments) -> Path:
    """Колонки t, D, R, sign"""
    return write_table(
        path,
        ["t", "D", "R", "sign"],
        zip(series.t, series.D, series.R, segments.signs.astype(int)),
    )


def trajectory_columns(N: int, k_max: int = 0) -> List[str]:
    columns = ["t"]
    for n in range(1, N + 1):
        columns += [f"re_c{n}", f"im_c{n}"]
    columns += ["bath_population", "norm_defect"]
    for k in range(1, k_max + 1):
        columns += [f"re_f{k}", f"im_f{k}"]
    return columns


def write_trajectory_csv(path: Path, trajectory: Trajectory, verbose_bath: bool = False) -> Path:
    """
    Траектория: Re/Im c_n, населённость бани, дефект нормировки

    Args:
        verbose_bath: Дописать колонки Re/Im f_k (только при отслеживаемой бане)
    """
    N = trajectory.c.shape[1]
    dump_bath = verbose_bath and trajectory.f is not None
    k_max = trajectory.f.shape[1] if dump_bath and trajectory.f is not None else 0

    excited = np.sum(np.abs(trajectory.c) ** 2, axis=1)
    if trajectory.f is not None:
        bath = np.sum(np.abs(trajectory.f) ** 2, axis=1)
    else:
        bath = 1.0 - abs(trajectory.c0) ** 2 - excited
    defects = trajectory.norm_defects()

    def rows() -> Iterable[List[Any]]:
        for s, t in enumerate(trajectory.t):
            row: List[Any] = [t]
            for amplitude in trajectory.c[s]:
                row += [amplitude.real, amplitude.imag]
            row += [bath[s], defects[s]]
            if dump_bath and trajectory.f is not None:
                for amplitude in trajectory.f[s]:
                    row += [amplitude.real, amplitude.imag]
            yield row

    return write_table(path, trajectory_columns(N, k_max), rows())


def write_spectrum_csv(path: Path, spectrum: SystemSpectrum) -> Path:
    """Колонки n, E_n, omega_n"""
    return write_table(
        path,
        ["n", "E_n", "omega_n"],
        ((n + 1, e, w) for n, (e, w) in enumerate(zip(spectrum.E_n, spectrum.omega_n))),
    )


def write_bath_csv(path: Path, modes: BathModes) -> Path:
    """Колонки k, omega_k, g_k"""
    return write_table(
        path,
        ["k", "omega_k", "g_k"],
        ((k + 1, w, g) for k, (w, g) in enumerate(zip(modes.omega_k, modes.g_k))),
    )


def write_sweep_csv(path: Path, rows: Iterable[Mapping[str, Any]]) -> Path:
    """Таблица развёртки в порядке значений"""
    return write_table(path, SWEEP_COLUMNS, ([row[c] for c in SWEEP_COLUMNS] for row in rows))
