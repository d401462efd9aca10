import logging

from data.config_loader import RunConfig
from quantum.gisin import (
    ExperimentConfig,
    Weighting,
    default_gt_grid,
    default_phi_grid,
    sweep,
    sweep_frame,
)
from utils.formatting import frame_to_csv, frame_to_json
from views import EXIT_OK, ViewResult, flow_setup, time_grid

logger = logging.getLogger(__name__)


def render_gisin(cfg: RunConfig) -> ViewResult:
    """Signaling sweep over A's settings and B's evolution times"""
    kind, params = flow_setup(cfg)
    experiment = ExperimentConfig(
        kind=kind,
        params=params,
        phis=cfg.phi if cfg.phi is not None else default_phi_grid(),
        times=time_grid(cfg, default_gt_grid()),
        weighting=Weighting.parse(cfg.weighting),
    )

    df = sweep_frame(sweep(experiment))
    max_distance = float(df["distance"].max())
    logger.info(
        "gisin: %s flow, %s weighting, %d rows, max distance %.3g",
        kind.value, experiment.weighting.value, len(df), max_distance,
    )

    if cfg.format == "json":
        body = frame_to_json(df, {"max_distance": max_distance})
    else:
        body = frame_to_csv(df)

    return ViewResult(EXIT_OK, body, len(df), "max_distance", max_distance, frame=df)
