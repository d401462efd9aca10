import logging

import numpy as np
import pandas as pd

from data.config_loader import RunConfig
from quantum.flows import flow, rk4_integrate
from quantum.qstate import BlochVector, bloch_to_density, von_neumann_entropy
from utils.column_mapper import get_schema
from utils.formatting import frame_to_csv, frame_to_json
from utils.validators import ConfigError
from views import DEFAULT_TRAJECTORY_GT, EXIT_OK, ViewResult, flow_setup, time_grid

logger = logging.getLogger(__name__)


def render_evolve(cfg: RunConfig) -> ViewResult:
    """Trajectory of one initial Bloch vector, optionally checked against RK4"""
    if cfg.xi is None:
        raise ConfigError("evolve needs an initial Bloch vector (--xi)")

    kind, params = flow_setup(cfg)
    xi = BlochVector(cfg.xi)
    times = time_grid(cfg, DEFAULT_TRAJECTORY_GT)

    records = []
    for t in times:
        n = flow(kind, xi, params, t).n
        row = {
            "t": t,
            "gt": params.g * t,
            "n_x": n[0],
            "n_y": n[1],
            "n_z": n[2],
            "norm": float(np.linalg.norm(n)),
            "entropy": von_neumann_entropy(bloch_to_density(n)),
        }
        if cfg.rk4:
            m = rk4_integrate(kind, xi, params, t, cfg.steps)
            row.update(
                {
                    "rk4_n_x": m[0],
                    "rk4_n_y": m[1],
                    "rk4_n_z": m[2],
                    "mismatch": float(np.linalg.norm(m - n)),
                }
            )
        records.append(row)

    df = pd.DataFrame(records, columns=get_schema("evolve", rk4=cfg.rk4))
    logger.info("evolve: %s flow, %d rows", kind.value, len(df))

    summary_name, summary_value = None, None
    if cfg.rk4:
        summary_name, summary_value = "max_mismatch", float(df["mismatch"].max())

    if cfg.format == "json":
        summary = None if summary_name is None else {summary_name: summary_value}
        body = frame_to_json(df, summary)
    else:
        body = frame_to_csv(df)

    return ViewResult(EXIT_OK, body, len(df), summary_name, summary_value, frame=df)
