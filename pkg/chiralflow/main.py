"""
Точка входа chiralflow
"""

import sys
from typing import List, Optional

from chiralflow.api.cli import run_cli


def main(argv: Optional[List[str]] = None) -> int:
    """Запуск CLI, возвращает код выхода"""
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
