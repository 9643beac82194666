import json
import yaml
import os
import logging
from typing import Any, Dict, Optional, Tuple

from src.core.affine import AffineMap, commutator_constant
from src.core.rationals import RationalSyntaxError, format_rational, parse_rational

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config", "config.yaml")

DEFAULT_CONFIG: Dict[str, Any] = {
    "app": {
        "name": "collatz-rearrange",
        "description": "Exact commutator rearrangement of Collatz composition words"
    },
    "logging": {"level": "INFO"},
    "scan": {"step_cap": 1000000, "jobs": 1, "chunk_size": 2048, "show_progress": False},
    "verify": {"random_words": 0, "seed": 2024, "max_blocks": 8, "max_exponent": 6}
}


class ConfigError(ValueError):
    """
    Raised for a missing or malformed system configuration
    """


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file

    Args:
        config_path: Path to the configuration file (defaults to src/config/config.yaml)

    Returns:
        Dictionary containing configuration settings
    """
    config_path = config_path or DEFAULT_CONFIG_PATH
    try:
        with open(config_path, 'r') as file:
            config = yaml.safe_load(file) or {}
        if not isinstance(config, dict):
            logger.error(f"Configuration in {config_path} is not a mapping, using defaults")
            return DEFAULT_CONFIG
        logger.debug(f"Configuration loaded successfully from {config_path}")
        return config
    except Exception as e:
        logger.error(f"Error loading configuration: {e}")
        # Return default configuration
        return DEFAULT_CONFIG


def _section(name: str, config_path: Optional[str] = None) -> Dict[str, Any]:
    config = load_config(config_path)
    section = dict(DEFAULT_CONFIG[name])
    section.update(config.get(name) or {})
    return section


def get_app_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Get application configuration settings

    Returns:
        Dictionary containing app configuration
    """
    return _section("app", config_path)


def get_logging_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    return _section("logging", config_path)


def get_scan_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Get orbit scan settings (step_cap, jobs, chunk_size, show_progress)

    Returns:
        Dictionary containing scan configuration
    """
    return _section("scan", config_path)


def get_verify_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Get random-word verification settings

    Returns:
        Dictionary containing verify configuration
    """
    return _section("verify", config_path)


def _parse_map(document: Dict[str, Any], key: str) -> AffineMap:
    entry = document.get(key)
    if not isinstance(entry, dict):
        raise ConfigError(f"system config needs an object under {key!r}")

    for name in ("slope", "intercept", "label"):
        if name not in entry:
            raise ConfigError(f"{key}.{name} is missing")
        if not isinstance(entry[name], str):
            raise ConfigError(f"{key}.{name} must be a string (rationals are written as \"3/2\")")

    try:
        return AffineMap(parse_rational(entry["slope"]), parse_rational(entry["intercept"]), entry["label"])
    except (RationalSyntaxError, ValueError) as e:
        raise ConfigError(f"{key}: {e}") from e


def load_system_config(path: str) -> Tuple[AffineMap, AffineMap]:
    """
    Load a generic affine pair (Q, R) from a JSON document

    Expected layout:
        {"first_map":  {"slope": "2",   "intercept": "3", "label": "Q"},
         "second_map": {"slope": "1/3", "intercept": "0", "label": "R"}}

    Args:
        path: Path to the JSON file

    Returns:
        Tuple of (first map, second map)

    Raises:
        ConfigError: if the file is missing or malformed, a slope is zero or labels clash
    """
    if not os.path.exists(path):
        logger.error(f"System config not found at {path}")
        raise ConfigError(f"system config not found: {path}")

    try:
        with open(path, 'r') as file:
            document = json.load(file)
    except json.JSONDecodeError as e:
        logger.error(f"Error parsing system config {path}: {e}")
        raise ConfigError(f"system config {path} is not valid JSON: {e}") from e
    except OSError as e:
        logger.error(f"Error reading system config {path}: {e}")
        raise ConfigError(f"system config {path} cannot be read: {e}") from e

    if not isinstance(document, dict):
        raise ConfigError("system config must be a JSON object")

    first = _parse_map(document, "first_map")
    second = _parse_map(document, "second_map")
    if first.label == second.label:
        raise ConfigError(f"map labels must differ, both are {first.label!r}")

    commutator = commutator_constant(first, second)
    logger.info(f"Loaded system {first.describe()}, {second.describe()}; "
                f"[{first.label},{second.label}] = {format_rational(commutator)}")
    return first, second
