"""Experiment reports: deterministic JSON and frozen-column CSV."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .config import config_digest
from .kernels import BACKEND

FORMAT_VERSION = 1
CSV_COLUMNS = ("operator", "family", "tuple", "N", "ratio", "fit_exponent", "verdict")


@dataclass
class ExperimentReport:
    operator: str
    tuple: dict
    family: str
    schedule: list
    ratios: list
    fit_exponent: float
    fit_kind: str
    verdict: str
    config: dict
    tail_bound: Optional[float] = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.ratios) != len(self.schedule):
            raise ValueError("one ratio per schedule point is required")
        for r in self.ratios:
            if not (math.isfinite(r) and r > 0):
                raise ValueError(f"ratios must be finite and positive, got {r}")

    def to_dict(self) -> dict:
        d = {
            "format_version": FORMAT_VERSION,
            "operator": self.operator,
            "family": self.family,
            "tuple": self.tuple,
        }
        if self.operator == "riesz":
            d["lambda"] = self.tuple.get("lambda")
        d.update({
            "schedule": list(self.schedule),
            "ratios": [float(r) for r in self.ratios],
            "fit_exponent": float(self.fit_exponent),
            "fit_kind": self.fit_kind,
            "verdict": self.verdict,
            "tail_bound": None if self.tail_bound is None else float(self.tail_bound),
            "extras": self.extras,
            "config": self.config,
            "config_digest": config_digest(self.config),
            "provenance": {"package": "sharpconv", "version": __version__, "backend": BACKEND},
        })
        return d

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False, allow_nan=False)

    def csv_rows(self) -> list:
        tup = " ".join(f"{k}={v}" for k, v in self.tuple.items() if not isinstance(v, dict))
        return [(self.operator, self.family, tup, n, repr(float(r)), repr(float(self.fit_exponent)), self.verdict)
                for n, r in zip(self.schedule, self.ratios)]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        w.writerows(self.csv_rows())
        return buf.getvalue()
