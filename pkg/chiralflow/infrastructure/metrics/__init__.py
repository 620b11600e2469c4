"""
Метрики Prometheus
"""

from chiralflow.infrastructure.metrics.prometheus import (
    get_metrics,
    record_domain_event,
    record_pole_diagnostic,
    record_run_metrics,
    record_sweep_point,
    setup_metrics,
    subscribe_metrics,
    timing_metric,
)

__all__ = [
    "get_metrics",
    "record_domain_event",
    "record_pole_diagnostic",
    "record_run_metrics",
    "record_sweep_point",
    "setup_metrics",
    "subscribe_metrics",
    "timing_metric",
]
