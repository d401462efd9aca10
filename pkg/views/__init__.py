# Views package: one renderer per CLI command

from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
import pandas as pd

from data.config_loader import RunConfig
from quantum.flows import FlowKind, FlowParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CERTIFICATION_FAILED = 3


@dataclass
class ViewResult:
    """What a renderer hands back to the router"""

    exit_code: int
    body: str
    rows: int
    summary_name: Optional[str] = None
    summary_value: Optional[float] = None
    frame: Optional[pd.DataFrame] = None
    report: Optional[Dict] = None


def flow_setup(cfg: RunConfig):
    """FlowKind and FlowParams from a RunConfig; the direction is normalized"""
    kind = FlowKind.parse(cfg.flow)
    params = FlowParams.along(cfg.e, cfg.g)
    return kind, params


def time_grid(cfg: RunConfig, default_gt) -> tuple:
    """cfg.t if given, else the default gt values converted to times"""
    if cfg.t is not None:
        return tuple(cfg.t)
    return tuple(float(gt) / cfg.g for gt in default_gt)


DEFAULT_TRAJECTORY_GT = tuple(np.round(np.arange(0.0, 5.0 + 1e-12, 0.5), 12))
