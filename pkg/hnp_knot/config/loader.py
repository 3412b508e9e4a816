"""Configuration loader for the knot engine.

A YAML file supplies defaults. String values may contain ``${VAR:default}``
placeholders, which are replaced from the environment (nested lists and
mappings included). ``build_run_config`` then lays the command-line flags on
top and validates the result as a ``RunConfig``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import ValidationError

from ..errors import InputError
from ..schemas.models import RunConfig

_ENV_PATTERN = re.compile(r"\${([^:}]+)(?::([^}]*))?}")

_METHOD_FLAGS = {
    "classifier": ["classifier"],
    "cohomology": ["cohomology"],
    "both": ["classifier", "cohomology"],
}


def _resolve_value(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _resolve_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_resolve_value(item) for item in value]
    if isinstance(value, str):
        def replacer(match: re.Match[str]) -> str:
            var, default = match.group(1), match.group(2) or ""
            return os.getenv(var, default)
        return _ENV_PATTERN.sub(replacer, value)
    return value


def load_config(path: str) -> Dict[str, Any]:
    """Load a YAML configuration file and resolve its placeholders.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    """
    config_path = Path(path)
    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")
    with config_path.open("r", encoding="utf-8") as f:
        raw_config = yaml.safe_load(f) or {}
    return _resolve_value(raw_config)


def _depth(value: Any) -> int:
    depth = 0
    while isinstance(value, list) and value:
        value = value[0]
        depth += 1
    return depth


def parse_mats(text: Optional[str]) -> List[List[List[int]]]:
    """``"[[1,1],[0,1]],[[0,-1],[1,0]]"`` -> list of 2x2 integer matrices."""
    if not text:
        return []
    try:
        mats = json.loads(f"[{text}]")
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse matrices: {exc.msg}", f"--mats:{exc.pos}") from exc
    if len(mats) == 1 and _depth(mats[0]) == 3:
        # already bracketed as a list of matrices
        mats = mats[0]
    for k, m in enumerate(mats):
        ok = (
            isinstance(m, list)
            and len(m) == 2
            and all(isinstance(r, list) and len(r) == 2 and all(isinstance(x, int) for x in r) for r in m)
        )
        if not ok:
            raise InputError("expected a 2x2 integer matrix", f"--mats[{k}]")
    return mats


def build_run_config(config: Dict[str, Any], args: argparse.Namespace) -> RunConfig:
    """Merge YAML defaults, ``KNOT_CAP`` and command-line flags; flags win when given."""
    merged: Dict[str, Any] = {
        key: config[key]
        for key in (
            "order_cap",
            "schur_cap",
            "concurrency",
            "methods",
            "fast_p_part",
            "cross_check_fast_path",
            "sylow_reduction",
            "adequacy_samples",
            "seed",
            "output_dir",
        )
        if config.get(key) not in (None, "")
    }
    if os.getenv("KNOT_CAP"):
        merged["order_cap"] = os.environ["KNOT_CAP"]
    merged["command"] = args.command
    flags = {
        "input_path": getattr(args, "input", None),
        "group_name": getattr(args, "name", None),
        "suite": getattr(args, "suite", None),
        "p": getattr(args, "p", None),
        "n": getattr(args, "n", None),
        "concurrency": getattr(args, "jobs", None),
        "fast_p_part": getattr(args, "fast_p_part", None),
        "cross_check_fast_path": getattr(args, "cross_check", None),
        "output_dir": getattr(args, "out", None),
        "csv_path": getattr(args, "csv", None),
    }
    merged.update({k: v for k, v in flags.items() if v is not None})
    method = getattr(args, "method", None)
    if method:
        merged["methods"] = _METHOD_FLAGS[method]
    merged["mats"] = parse_mats(getattr(args, "mats", None))
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InputError(first["msg"], location) from exc
