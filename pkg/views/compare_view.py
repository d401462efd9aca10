import logging

import pandas as pd

from data.config_loader import RunConfig
from data.sampling import make_rng
from quantum.flows import FlowKind, FlowParams, flow
from quantum.qstate import BlochVector
from quantum.quasilin import fit_lambda, sample_ensemble
from utils.column_mapper import get_schema
from utils.formatting import frame_to_csv, frame_to_json
from views import DEFAULT_TRAJECTORY_GT, EXIT_OK, ViewResult, time_grid

logger = logging.getLogger(__name__)

_PREFIX = {FlowKind.QUASI_LINEAR_BOOST: "boost", FlowKind.WEINBERG: "weinberg"}


def initial_ensemble(cfg: RunConfig):
    """(ξ_a, ξ_b, λ) from flags, with any missing piece drawn from the seed"""
    xi_a, xi_b, lam = sample_ensemble(make_rng(cfg.seed))
    if cfg.xi_a is not None:
        xi_a = BlochVector(cfg.xi_a).n
    if cfg.xi_b is not None:
        xi_b = BlochVector(cfg.xi_b).n
    if cfg.lam is not None:
        lam = cfg.lam
    return xi_a, xi_b, lam


def render_compare(cfg: RunConfig) -> ViewResult:
    """Boost and Weinberg trajectories of one mixture side by side, with chord residuals"""
    params = FlowParams.along(cfg.e, cfg.g)
    xi_a, xi_b, lam = initial_ensemble(cfg)
    xi = lam * xi_a + (1.0 - lam) * xi_b
    times = time_grid(cfg, DEFAULT_TRAJECTORY_GT)

    records = []
    for t in times:
        row = {"t": t, "gt": params.g * t}
        for kind, prefix in _PREFIX.items():
            n = flow(kind, xi, params, t).n
            fit = fit_lambda(flow(kind, xi_a, params, t), flow(kind, xi_b, params, t), n)
            row.update(
                {
                    f"{prefix}_n_x": n[0],
                    f"{prefix}_n_y": n[1],
                    f"{prefix}_n_z": n[2],
                    f"{prefix}_lambda": fit.lambda_star,
                    f"{prefix}_residual": fit.residual,
                }
            )
        records.append(row)

    df = pd.DataFrame(records, columns=get_schema("compare"))
    max_weinberg = float(df["weinberg_residual"].max())
    logger.info(
        "compare: %d rows, max boost residual %.3g, max weinberg residual %.3g",
        len(df), float(df["boost_residual"].max()), max_weinberg,
    )

    if cfg.format == "json":
        summary = {
            "xi_a": [float(x) for x in xi_a],
            "xi_b": [float(x) for x in xi_b],
            "lam": float(lam),
            "max_weinberg_residual": max_weinberg,
        }
        body = frame_to_json(df, summary)
    else:
        body = frame_to_csv(df)

    return ViewResult(EXIT_OK, body, len(df), "max_weinberg_residual", max_weinberg, frame=df)
