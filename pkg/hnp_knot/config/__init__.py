"""Configuration helpers for the knot engine."""

from .loader import build_run_config, load_config

__all__ = ["build_run_config", "load_config"]
