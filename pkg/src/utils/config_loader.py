"""Configuration loader utility."""
import os
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent.parent / "config" / "config.yaml"


def load_config(config_path: str = None) -> Dict[str, Any]:
    """Load configuration from YAML file; .env values become visible through os.environ."""
    load_dotenv()
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    with open(path, 'r', encoding='utf-8') as f:
        config = yaml.safe_load(f)
    return config


def get_output_root(config: Dict[str, Any]) -> Path:
    """Root directory for reports and logs; the configured env variable wins over the working directory."""
    env_name = config['output'].get('output_dir_env', 'MUB_OUTPUT_DIR')
    return Path(os.getenv(env_name) or ".")


def get_reports_dir(config: Dict[str, Any]) -> Path:
    return get_output_root(config) / config['output']['reports_dir']


def get_logs_dir(config: Dict[str, Any]) -> Path:
    return get_output_root(config) / config['output']['logs_dir']
