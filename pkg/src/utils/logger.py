"""Execution traces for CLI runs, written as JSON."""
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict

import numpy as np


def to_jsonable(data: Any) -> Any:
    """Plain JSON types for numpy values, tuples and sets."""
    if isinstance(data, (str, int, float, bool, type(None))):
        return data
    if isinstance(data, np.bool_):
        return bool(data)
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.floating):
        return float(data)
    if isinstance(data, np.ndarray):
        return data.tolist()
    if isinstance(data, dict):
        return {str(k): to_jsonable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple, set, frozenset)):
        return [to_jsonable(item) for item in data]
    return str(data)


class RunLogger:
    """Logger for command execution traces."""

    def __init__(self, logs_dir: str = "logs"):
        self.logs_dir = Path(logs_dir)
        self.logs_dir.mkdir(parents=True, exist_ok=True)
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        self.logs = []

    def log_step(self, step: str, input_data: Any, output_data: Any, metadata: Dict = None):
        """Log a completed step."""
        self.logs.append({
            "timestamp": datetime.now().isoformat(),
            "step": step,
            "input": to_jsonable(input_data),
            "output": to_jsonable(output_data),
            "metadata": to_jsonable(metadata or {}),
        })

    def log_error(self, step: str, error: Exception, context: Dict = None):
        """Log an error."""
        self.logs.append({
            "timestamp": datetime.now().isoformat(),
            "step": step,
            "error": str(error),
            "error_type": type(error).__name__,
            "context": to_jsonable(context or {}),
        })

    def save(self) -> str:
        """Save logs to file."""
        log_file = self.logs_dir / f"execution_{self.session_id}.json"
        with open(log_file, 'w', encoding='utf-8') as f:
            json.dump({"session_id": self.session_id, "logs": self.logs}, f, indent=2)
        return str(log_file)
