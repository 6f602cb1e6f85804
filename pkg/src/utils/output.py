"""Result files: JSON reports with a config echo and CSV tables."""

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from .. import __version__
from .logging import get_logger

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = "%.15g"


class NumpyEncoder(json.JSONEncoder):
    """Custom JSON encoder that handles numpy scalars and arrays and pydantic models."""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            if np.iscomplexobj(obj):
                return np.stack([obj.real, obj.imag], axis=-1).tolist()
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, BaseModel):
            return obj.model_dump(mode="json")
        return super().default(obj)


def envelope(command: str, config: BaseModel, results: Any) -> Dict[str, Any]:
    """Report body: command, package version, config echo and results."""
    return {
        "command": command,
        "version": __version__,
        "config": config.model_dump(mode="json"),
        "results": results,
    }


def write_json(path: Union[str, Path], payload: Any) -> Path:
    """Write ``payload`` as sorted, indented JSON; identical payloads give identical bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, cls=NumpyEncoder, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("Wrote report", path=str(path))
    return path


def write_csv(path: Union[str, Path], frame: pd.DataFrame) -> Path:
    """Write a table with a header row and 15 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info("Wrote table", path=str(path), rows=len(frame))
    return path
