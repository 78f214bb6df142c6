"""
Configuration management for the poset polytopes toolkit.
Handles loading, validation, and access to configuration parameters.
"""

import os
import yaml
from typing import Dict, List, Optional
from pydantic import BaseModel, Field
import logging

logger = logging.getLogger(__name__)


class DataConfig(BaseModel):
    """Data locations."""
    input_dir: str = "posets"
    reports_dir: str = "reports"


class GeometryConfig(BaseModel):
    """Polyhedral engine limits."""
    max_dimension: int = 6
    count_chunk_size: int = 250000


class AnalysisConfig(BaseModel):
    """Defaults for the analyze pipeline."""
    kinds: List[str] = Field(default_factory=lambda: ["OO", "OC", "CC"])
    include_toric: bool = True
    include_equivalence: bool = True


class ToricConfig(BaseModel):
    """Toric ideal verification settings."""
    degree_cap: int = 4
    max_dimension: int = 3


class SweepConfig(BaseModel):
    """Verification sweep settings."""
    min_dimension: int = 2
    max_dimension: int = 4
    toric_max_dimension: int = 3
    exhaustive_pair_limit: int = 5000
    sample_pairs: int = 500
    pair_timeout: float = 600.0


class LoggingConfig(BaseModel):
    """Logging configuration."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: str = "logs/polytopes.log"
    max_bytes: int = 10 * 1024 * 1024
    backup_count: int = 5
    slow_seconds: float = 5.0


class PerformanceConfig(BaseModel):
    """Performance settings."""
    parallel_processing: bool = True
    max_workers: int = 4


class ReportingConfig(BaseModel):
    """Reporting configuration."""
    format: str = "json"
    indent: int = 2


class Config(BaseModel):
    """Main configuration class."""
    data: DataConfig = Field(default_factory=DataConfig)
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    toric: ToricConfig = Field(default_factory=ToricConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    performance: PerformanceConfig = Field(default_factory=PerformanceConfig)
    reporting: ReportingConfig = Field(default_factory=ReportingConfig)


class ConfigManager:
    """Manages configuration loading and access."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration manager.

        Args:
            config_path: Path to configuration file. Defaults to 'config.yaml'.
        """
        self.config_path = config_path or "config.yaml"
        self._config: Optional[Config] = None
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from YAML file."""
        try:
            if os.path.exists(self.config_path):
                with open(self.config_path, 'r', encoding='utf-8') as file:
                    config_data = yaml.safe_load(file) or {}
                    self._config = Config(**config_data)
                    logger.info(f"Configuration loaded from {self.config_path}")
            else:
                logger.warning(f"Configuration file {self.config_path} not found. Using defaults.")
                self._config = Config()
        except Exception as e:
            logger.error(f"Error loading configuration: {e}")
            self._config = Config()

    def get_config(self) -> Config:
        """Get the current configuration."""
        return self._config

    def reload_config(self, config_path: Optional[str] = None) -> None:
        """Reload configuration, optionally from a different file."""
        if config_path:
            self.config_path = config_path
        self._load_config()

    def get_data_config(self) -> DataConfig:
        return self._config.data

    def get_geometry_config(self) -> GeometryConfig:
        return self._config.geometry

    def get_analysis_config(self) -> AnalysisConfig:
        return self._config.analysis

    def get_toric_config(self) -> ToricConfig:
        return self._config.toric

    def get_sweep_config(self) -> SweepConfig:
        return self._config.sweep

    def get_logging_config(self) -> LoggingConfig:
        return self._config.logging

    def get_performance_config(self) -> PerformanceConfig:
        return self._config.performance

    def get_reporting_config(self) -> ReportingConfig:
        return self._config.reporting


# Global configuration instance
config_manager = ConfigManager()


def get_config() -> Config:
    """Get the global configuration instance."""
    return config_manager.get_config()


def load_config(config_path: str) -> Config:
    """Point the global configuration at another YAML file and return it."""
    config_manager.reload_config(config_path)
    return config_manager.get_config()


def get_data_config() -> DataConfig:
    """Get data configuration."""
    return config_manager.get_data_config()


def get_geometry_config() -> GeometryConfig:
    """Get geometry configuration."""
    return config_manager.get_geometry_config()


def get_analysis_config() -> AnalysisConfig:
    """Get analysis configuration."""
    return config_manager.get_analysis_config()


def get_toric_config() -> ToricConfig:
    """Get toric configuration."""
    return config_manager.get_toric_config()


def get_sweep_config() -> SweepConfig:
    """Get sweep configuration."""
    return config_manager.get_sweep_config()


def get_logging_config() -> LoggingConfig:
    """Get logging configuration."""
    return config_manager.get_logging_config()


def get_performance_config() -> PerformanceConfig:
    """Get performance configuration."""
    return config_manager.get_performance_config()


def get_reporting_config() -> ReportingConfig:
    """Get reporting configuration."""
    return config_manager.get_reporting_config()
