import logging

import pandas as pd

from data.config_loader import RunConfig
from quantum.flows import FlowKind
from quantum.quasilin import PASS_TOL, VIOLATION_TOL, certify_quasilinearity
from utils.column_mapper import get_schema
from utils.formatting import frame_to_csv, report_to_json
from views import EXIT_CERTIFICATION_FAILED, EXIT_OK, ViewResult, flow_setup, time_grid

logger = logging.getLogger(__name__)

DEFAULT_CERTIFY_GT = (0.5, 1.0, 3.0)


def _flatten(report: dict) -> pd.DataFrame:
    """Single-row table; vectors become ';'-joined text"""
    row = {}
    for key in get_schema("certify"):
        value = report[key]
        if key == "t_grid":
            value = ";".join(repr(t) for t in value)
        elif key == "worst_case":
            value = "xi_a=[{}] xi_b=[{}] lam={!r} t={!r}".format(
                ";".join(repr(x) for x in value["xi_a"]),
                ";".join(repr(x) for x in value["xi_b"]),
                value["lam"],
                value["t"],
            )
        row[key] = value
    return pd.DataFrame([row], columns=get_schema("certify"))


def render_certify(cfg: RunConfig) -> ViewResult:
    """Quasi-linearity certificate; exit 3 when any sample violates it"""
    kind, params = flow_setup(cfg)
    tol = cfg.tol
    if tol is None:
        tol = PASS_TOL if kind is FlowKind.QUASI_LINEAR_BOOST else VIOLATION_TOL

    t_grid = time_grid(cfg, DEFAULT_CERTIFY_GT)
    report = certify_quasilinearity(kind, params, cfg.samples, t_grid, tol, cfg.seed).to_dict()

    exit_code = EXIT_OK if report["violations"] == 0 else EXIT_CERTIFICATION_FAILED
    logger.info(
        "certify: %s flow, %d samples, %d violations, max residual %.3g",
        kind.value, report["samples"], report["violations"], report["max_residual"],
    )

    if cfg.format == "csv":
        body = frame_to_csv(_flatten(report))
    else:
        body = report_to_json(report)

    return ViewResult(exit_code, body, 1, "violations", float(report["violations"]), report=report)
