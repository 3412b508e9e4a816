"""Root logger configuration for the knot engine.

Console output always; a file handler under ``log_dir`` when one is given.
The level comes from the ``LOG_LEVEL`` environment variable.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Optional


def setup_logging(log_dir: Optional[str] = None) -> None:
    """Configure the root logger.

    Parameters
    ----------
    log_dir: Optional[str]
        Directory for ``hnp_knot.log``. ``None`` keeps logging on the console only.
    """
    log_level = getattr(logging, os.getenv("LOG_LEVEL", "INFO").upper(), logging.INFO)

    root = logging.getLogger()
    root.setLevel(log_level)
    root.handlers = []

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    console = logging.StreamHandler()
    console.setFormatter(formatter)
    root.addHandler(console)

    if log_dir:
        path = Path(log_dir)
        path.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path / "hnp_knot.log")
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
