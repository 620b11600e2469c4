from chiralflow.infrastructure.logging.setup import (
    JSONFormatter,
    StructuredFormatter,
    setup_logging,
)

__all__ = ["setup_logging", "StructuredFormatter", "JSONFormatter"]
