"""Tests for the task executor, run logger, config and run settings."""
import json
import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from orchestrator.parallel_executor import ParallelExecutor
from utils.config_loader import get_logs_dir, get_reports_dir, load_config
from utils.logger import RunLogger, to_jsonable
from utils.run_config import RunConfig, parse_selection


def _fail():
    raise ValueError("boom")


def test_execute_parallel_captures_errors():
    """Test a failing task does not stop the others."""
    results = ParallelExecutor(max_workers=2).execute_parallel([
        {'name': 'ok', 'func': lambda x: x * 2, 'args': [21]},
        {'name': 'bad', 'func': _fail},
    ])
    assert results['ok'] == 42
    assert results['bad'] == {"error": "ValueError: boom"}


def test_map_ordered_keeps_input_order():
    """Test results come back in input order."""
    assert ParallelExecutor(max_workers=4).map_ordered(lambda x: x * x, list(range(10))) == \
        [x * x for x in range(10)]


def test_dependencies_inject_results():
    """Test dependent tasks see their dependencies' results."""
    graph = {
        'a': {'func': lambda: 2},
        'b': {'func': lambda: 3},
        'sum': {'func': lambda deps: deps['a'] + deps['b'], 'depends_on': ['a', 'b'], 'inject': True},
    }
    assert ParallelExecutor().execute_with_dependencies(graph)['sum'] == 5


def test_circular_dependencies_are_detected():
    """Test a dependency cycle raises."""
    graph = {
        'a': {'func': lambda: 1, 'depends_on': ['b']},
        'b': {'func': lambda: 1, 'depends_on': ['a']},
    }
    with pytest.raises(RuntimeError):
        ParallelExecutor().execute_with_dependencies(graph)


def test_executor_rejects_zero_workers():
    """Test worker count validation."""
    with pytest.raises(ValueError):
        ParallelExecutor(max_workers=0)


def test_run_logger_writes_trace(tmp_path):
    """Test steps and errors are saved as JSON."""
    logger = RunLogger(str(tmp_path / "logs"))
    logger.log_step("gen", {"n": np.int64(3)}, {"ok": np.bool_(True), "dev": np.float64(1e-13)})
    logger.log_error("verify", ValueError("too large"), {"n": 20})
    saved = json.loads(Path(logger.save()).read_text())
    assert saved["logs"][0]["input"] == {"n": 3}
    assert saved["logs"][0]["output"]["ok"] is True
    assert saved["logs"][1]["error_type"] == "ValueError"


def test_to_jsonable():
    """Test conversion of numpy values and containers."""
    assert to_jsonable({1: (np.int8(2), {3})}) == {"1": [2, [3]]}
    assert to_jsonable(np.arange(3)) == [0, 1, 2]


def test_config_and_output_dirs(tmp_path, monkeypatch):
    """Test the repository config loads and output dirs follow the env variable."""
    config = load_config()
    assert config['verification']['unitary_cap'] == 8
    monkeypatch.setenv("MUB_OUTPUT_DIR", str(tmp_path))
    assert get_reports_dir(config) == tmp_path / "reports"
    assert get_logs_dir(config) == tmp_path / "logs"


def test_selection_parsing():
    """Test index selections."""
    assert parse_selection("5", 3, 100) == [5]
    assert parse_selection("2-4", 3, 100) == [2, 3, 4]
    assert parse_selection("all", 2, 100) == [0, 1, 2, 3]
    for bad in ("8", "4-2", "x", "all"):
        with pytest.raises(ValueError):
            parse_selection(bad, 3, 4)


def test_run_config_validation():
    """Test invalid settings are rejected."""
    assert RunConfig(n=3, selection="7").indices() == [7]
    assert len(RunConfig(n=300, sample=4, seed=2).indices()) == 4
    with pytest.raises(ValueError):
        RunConfig(n=0)
    with pytest.raises(ValueError):
        RunConfig(n=2, selection="9")
    with pytest.raises(ValueError):
        RunConfig(n=2, output_format="svg")


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
