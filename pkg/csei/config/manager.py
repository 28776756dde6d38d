"""
Configuration management for the CSEI pipeline.

This module handles loading, validating, overriding and saving the run
configuration from YAML files.
"""

from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import ValidationError

from csei.config.models import RunConfig, all_keys, nest_flat_keys
from csei.utils import ConfigurationError, InputFileError, get_logger

logger = get_logger(__name__)

DEFAULTS_FILE = Path(__file__).resolve().parent / "defaults.yaml"


class ConfigManager:
    """Manages the run configuration."""

    DEFAULT_CONFIG_LOCATIONS = [
        Path.cwd() / "csei.yaml",
        Path.cwd() / ".csei.yaml",
    ]

    def __init__(self, config_path: Optional[Path] = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Optional path to configuration file
        """
        self.config_path = config_path
        self._config: Optional[RunConfig] = None

    @property
    def config(self) -> RunConfig:
        """
        Get current configuration, loading it if necessary.

        Returns:
            RunConfig instance

        Raises:
            ConfigurationError: If configuration cannot be loaded
        """
        if self._config is None:
            self._config = self.load()
        return self._config

    def load(
        self,
        config_path: Optional[Path] = None,
        overrides: Optional[dict[str, Any]] = None,
    ) -> RunConfig:
        """
        Load configuration from file (or defaults) and apply overrides.

        Args:
            config_path: Optional path to configuration file
            overrides: Flat key -> value overrides (command-line flags)

        Returns:
            Validated RunConfig

        Raises:
            ConfigurationError: If the file or any value is invalid
        """
        path = config_path or self.config_path
        data: dict[str, Any] = {}

        if path:
            if not Path(path).exists():
                raise InputFileError(f"Configuration file not found: {path}", path=Path(path))
            data = self._read_file(Path(path))
        else:
            for default_path in self.DEFAULT_CONFIG_LOCATIONS:
                if default_path.exists():
                    logger.info(f"Loading configuration from {default_path}")
                    data = self._read_file(default_path)
                    break
            else:
                logger.debug("No configuration file found, using defaults")

        if overrides:
            data = merge_overrides(data, overrides)

        try:
            config = RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid configuration: {_format_errors(e)}") from e

        self._config = config
        return config

    def _read_file(self, path: Path) -> dict[str, Any]:
        """
        Read a YAML configuration file.

        Args:
            path: Path to configuration file

        Returns:
            Parsed mapping

        Raises:
            ConfigurationError: If file cannot be parsed
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in configuration file: {e}")
        except OSError as e:
            raise InputFileError(f"Cannot read configuration file: {e}", path=path)

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigurationError(f"Configuration file must contain a mapping: {path}")
        logger.debug(f"Read configuration from {path}")
        return data

    def save(self, path: Path, config: Optional[RunConfig] = None) -> None:
        """
        Save configuration to a YAML file.

        Args:
            path: Destination path
            config: Configuration to save (uses current if None)

        Raises:
            ConfigurationError: If configuration cannot be saved
        """
        cfg = config or self.config
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            data = cfg.model_dump(mode="json")
            with open(path, "w", encoding="utf-8") as f:
                yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False, indent=2)
            logger.info(f"Configuration saved to {path}")
        except OSError as e:
            raise ConfigurationError(f"Failed to save configuration: {e}")

    def init_default_config(self, path: Path, force: bool = False) -> Path:
        """
        Write the default configuration to a file.

        Args:
            path: Target file
            force: Overwrite an existing file

        Returns:
            Path to created configuration file

        Raises:
            ConfigurationError: If file already exists and force=False
        """
        if path.exists() and not force:
            raise ConfigurationError(
                f"Configuration file already exists: {path}. Use force=True to overwrite."
            )
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(DEFAULTS_FILE.read_text(encoding="utf-8"), encoding="utf-8")
        logger.info(f"Default configuration written to {path}")
        return path


def merge_overrides(data: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """
    Apply flat key overrides on top of (nested or flat) file data.

    Args:
        data: Parsed configuration file
        overrides: Flat key -> value mapping

    Returns:
        New nested mapping

    Raises:
        ConfigurationError: If a key is unknown or a section is not a mapping
    """
    try:
        merged = nest_flat_keys(data)
        for section, values in nest_flat_keys(overrides).items():
            merged.setdefault(section, {}).update(values)
    except ValueError as e:
        raise ConfigurationError(f"Invalid configuration: {e}") from e
    return merged


def parse_override_args(args: list[str]) -> dict[str, Any]:
    """
    Parse `--key value` / `--key=value` command-line pairs.

    Values are parsed as YAML scalars so numbers and booleans keep their
    types; a bare `--flag` means true. Dashes in names map to underscores.

    Args:
        args: Extra command-line arguments

    Returns:
        Flat key -> value mapping

    Raises:
        ConfigurationError: On malformed or unknown flags
    """
    keys = all_keys()
    overrides: dict[str, Any] = {}
    i = 0
    while i < len(args):
        token = args[i]
        if not token.startswith("--") or len(token) <= 2:
            raise ConfigurationError(f"Unexpected argument: {token}")
        name, has_value, raw = token[2:].partition("=")
        key = name.replace("-", "_")
        if key not in keys:
            raise ConfigurationError(f"Unknown option: --{name}")
        if not has_value:
            if i + 1 < len(args) and not args[i + 1].startswith("--"):
                raw = args[i + 1]
                i += 1
            else:
                raw = "true"
        overrides[key] = _parse_scalar(raw)
        i += 1
    return overrides


def _parse_scalar(raw: str) -> Any:
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError:
        return raw
    return raw if isinstance(value, (dict, list)) or value is None else value


def _format_errors(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item["loc"]) or "config"
        parts.append(f"{loc}: {item['msg']}")
    return "; ".join(parts)


def load_config(
    config_path: Optional[Path] = None, overrides: Optional[dict[str, Any]] = None
) -> RunConfig:
    """
    Load and validate a run configuration.

    Args:
        config_path: Optional path to configuration file
        overrides: Flat key -> value overrides

    Returns:
        RunConfig instance
    """
    return ConfigManager(config_path).load(overrides=overrides)
