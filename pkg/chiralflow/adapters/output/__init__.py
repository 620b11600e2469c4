"""
Запись артефактов: CSV таблицы, JSON отчёты, SVG графики
"""

from chiralflow.adapters.output.csv_writer import (
    format_float,
    write_bath_csv,
    write_flow_csv,
    write_spectrum_csv,
    write_sweep_csv,
    write_table,
    write_trajectory_csv,
)
from chiralflow.adapters.output.json_writer import to_jsonable, write_json
from chiralflow.adapters.output.svg_plot import LineTrace, SvgLineChart

__all__ = [
    "LineTrace",
    "SvgLineChart",
    "format_float",
    "to_jsonable",
    "write_bath_csv",
    "write_flow_csv",
    "write_json",
    "write_spectrum_csv",
    "write_sweep_csv",
    "write_table",
    "write_trajectory_csv",
]
