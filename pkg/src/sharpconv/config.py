"""Run configuration: built-in defaults < JSON config file < explicit overrides.

The config file path comes from ``--config`` or the ``SHARPCONV_CONFIG``
environment variable. Files carry ``"schema_version": 1`` and a flat set of
the keys in :data:`DEFAULTS`; unknown keys are rejected.
"""

from __future__ import annotations

import copy
import hashlib
import json
import os
from typing import Mapping, Optional

SCHEMA_VERSION = 1
ENV_CONFIG = "SHARPCONV_CONFIG"

DEFAULTS: dict = {
    # convolution execution
    "conv_method": "auto",            # direct | fft | auto
    "direct_work_limit": 20_000_000,  # auto picks direct while |f|*|g| stays below this
    "max_cells": 60_000_000,          # output-box cell limit (BudgetError beyond)
    "max_frac_work": 4_000_000_000,   # |out_box| * |supp f| limit for the Riesz operator
    # verdict thresholds on fitted slopes
    "bounded_below": 0.02,
    "diverging_above": 0.1,
    # default schedules
    "schedule_n1": [16, 32, 64, 128, 256, 512, 1024],
    "schedule_n2": [8, 16, 32, 64],
    "log_radius_factor": 8,
    "eps_delta_cap": 0.05,
    # dilation probe
    "dilation_lambdas": [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125],
    "dilation_cells_per_radius": 64,
    # weight capability
    "capability_schedule": [2 ** k for k in range(4, 17)],
    "capability_schedule_n2": [8, 16, 32, 64, 128, 256],
    "capability_flat_band": 0.03,
    "continuous_cells_per_unit": 4,
    "continuous_refine_levels": 6,
    # sweeps
    "workers": 1,
    "max_grid": 200_000,
    "verify_schedule": [16, 32, 64, 128, 256],
}


def resolve_config(overrides: Optional[Mapping] = None, path: Optional[str] = None,
                   use_env: bool = True) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    if path is None and use_env:
        path = os.environ.get(ENV_CONFIG) or None
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        version = data.pop("schema_version", None)
        if version != SCHEMA_VERSION:
            raise ValueError(f"config file {path}: schema_version must be {SCHEMA_VERSION}, got {version!r}")
        _merge(cfg, data, source=path)
    if overrides:
        _merge(cfg, {k: v for k, v in overrides.items() if v is not None}, source="overrides")
    return cfg


def _merge(cfg: dict, data: Mapping, source: str) -> None:
    for key, value in data.items():
        if key not in DEFAULTS:
            raise ValueError(f"{source}: unknown config key {key!r}")
        cfg[key] = value


def get_config(config: Optional[Mapping]) -> dict:
    """Library entry points accept ``None`` (pure defaults) or a partial mapping."""
    if config is None:
        return copy.deepcopy(DEFAULTS)
    merged = copy.deepcopy(DEFAULTS)
    _merge(merged, config, source="config")
    return merged


def config_digest(cfg: Mapping) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
