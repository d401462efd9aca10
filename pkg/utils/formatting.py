# utils/formatting.py - deterministic CSV/JSON emission

import json
import math
import re
from typing import Dict

import pandas as pd

FLOAT_FORMAT = "%.17g"

# floats travel through json.dumps as tagged strings and are unquoted afterwards
_FLOAT_TAG = "\x00f:"
_TAGGED_FLOAT = re.compile(r'"\\u0000f:([^"]*)"')


def _plain(value):
    # numpy scalars -> builtin int/float/str for json
    return value.item() if hasattr(value, "item") else value


def _tag_floats(value):
    value = _plain(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r} cannot be written as JSON")
        return _FLOAT_TAG + format_number(value)
    if isinstance(value, dict):
        return {k: _tag_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_tag_floats(v) for v in value]
    return value


def _dumps(payload) -> str:
    text = json.dumps(_tag_floats(payload), indent=2)
    return _TAGGED_FLOAT.sub(r"\1", text) + "\n"


def frame_to_csv(df: pd.DataFrame) -> str:
    """UTF-8 CSV text, header row, '\\n' line endings, 17 significant digits"""
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def frame_to_json(df: pd.DataFrame, summary: Dict = None) -> str:
    """
    Single top-level object {"columns": [...], "rows": [[...], ...], "summary": {...}}

    Floats use the same 17 significant digits as the CSV output.
    """
    payload = {
        "columns": list(df.columns),
        "rows": [list(row) for row in df.itertuples(index=False, name=None)],
    }
    if summary is not None:
        payload["summary"] = summary
    return _dumps(payload)


def report_to_json(report: Dict) -> str:
    return _dumps(report)


def format_number(value: float) -> str:
    return FLOAT_FORMAT % value
