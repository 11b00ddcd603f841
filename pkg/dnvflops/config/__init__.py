"""
Configuration management for enumeration runs
"""
from .config_manager import (
    ConfigurationManager, EnumerationConfig, CertificateConfig, RunConfig,
    load_config_from_file
)

__all__ = [
    'ConfigurationManager',
    'EnumerationConfig',
    'CertificateConfig',
    'RunConfig',
    'load_config_from_file',
]
