"""
Минимальный линейный график SVG: оси, несколько кривых, легенда
Рендеринг через шаблон Jinja2
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import jinja2
import numpy as np

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


@dataclass(frozen=True)
class LineTrace:
    """Кривая графика"""

    x: np.ndarray
    y: np.ndarray
    label: str


def _format(value: float) -> str:
    return f"{value:.3f}"


def _ticks(low: float, high: float, count: int = 5) -> List[float]:
    if high <= low:
        return [low]
    return [float(v) for v in np.linspace(low, high, count)]


class SvgLineChart:
    """
    Рендерер линейного графика

    Координаты округляются до тысячных, поэтому вывод побайтно воспроизводим.
    """

    def __init__(
        self,
        width: int = 800,
        height: int = 450,
        templates_dir: Optional[Path] = None,
    ):
        self.width = width
        self.height = height
        self.margin = {"left": 70, "right": 20, "top": 35, "bottom": 50}
        self._env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(str(templates_dir or TEMPLATES_DIR)),
            autoescape=True,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self._template = self._env.get_template("line_chart.svg.j2")

    def render(
        self,
        traces: Sequence[LineTrace],
        title: str = "",
        x_label: str = "t",
        y_label: str = "",
    ) -> str:
        """
        Рендеринг графика в строку SVG

        Args:
            traces: Кривые (не более пяти различимых цветов, далее цвета повторяются)
            title: Заголовок
            x_label: Подпись оси x
            y_label: Подпись оси y
        """
        plot = {
            "left": self.margin["left"],
            "right": self.width - self.margin["right"],
            "top": self.margin["top"],
            "bottom": self.height - self.margin["bottom"],
        }

        finite = [np.asarray(t.y, dtype=float) for t in traces]
        xs = [np.asarray(t.x, dtype=float) for t in traces]
        x_min = min((float(np.min(x)) for x in xs if x.size), default=0.0)
        x_max = max((float(np.max(x)) for x in xs if x.size), default=1.0)
        y_min = min((float(np.nanmin(y)) for y in finite if y.size), default=0.0)
        y_max = max((float(np.nanmax(y)) for y in finite if y.size), default=1.0)
        if x_max <= x_min:
            x_max = x_min + 1.0
        if y_max <= y_min:
            pad = max(abs(y_min), 1.0) * 0.5
            y_min, y_max = y_min - pad, y_max + pad

        def sx(x: np.ndarray) -> np.ndarray:
            return plot["left"] + (x - x_min) / (x_max - x_min) * (plot["right"] - plot["left"])

        def sy(y: np.ndarray) -> np.ndarray:
            return plot["bottom"] - (y - y_min) / (y_max - y_min) * (plot["bottom"] - plot["top"])

        rendered: List[Dict[str, str]] = []
        for index, (trace, x, y) in enumerate(zip(traces, xs, finite)):
            px, py = sx(x), sy(y)
            points = " ".join(f"{_format(a)},{_format(b)}" for a, b in zip(px, py))
            rendered.append(
                {"points": points, "label": trace.label, "color": PALETTE[index % len(PALETTE)]}
            )

        x_ticks = [
            {"position": _format(float(sx(np.float64(v)))), "label": f"{v:.4g}"}
            for v in _ticks(x_min, x_max)
        ]
        y_ticks = [
            {"position": _format(float(sy(np.float64(v)))), "label": f"{v:.3g}"}
            for v in _ticks(y_min, y_max)
        ]
        zero_line = _format(float(sy(np.float64(0.0)))) if y_min < 0.0 < y_max else None

        return self._template.render(
            width=self.width,
            height=self.height,
            plot=plot,
            title=title,
            x_label=x_label,
            y_label=y_label,
            traces=rendered,
            x_ticks=x_ticks,
            y_ticks=y_ticks,
            zero_line=zero_line,
        )

    def write(self, path: Path, traces: Sequence[LineTrace], **kwargs: str) -> Path:
        """Рендеринг и запись в файл"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(traces, **kwargs), encoding="utf-8")
        logger.debug(f"Записан {path}")
        return path
