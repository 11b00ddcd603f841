"""
Configuration management for enumeration runs
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..utils import ConfigValidator, FileManager, ValidationError


@dataclass
class EnumerationConfig:
    """How states are searched and filtered"""
    method: str = "criterion"  # 'criterion', 'lp' or 'both'
    projective_only: bool = True
    max_depth: Optional[int] = None

    def validate(self) -> tuple[bool, List[str]]:
        return ConfigValidator.validate_enumeration_config(asdict(self))


@dataclass
class CertificateConfig:
    """Boundary degree the explicit ample classes start from"""
    base_degree: int = 16

    def validate(self) -> tuple[bool, List[str]]:
        return ConfigValidator.validate_certificate_config(asdict(self))


@dataclass
class RunConfig:
    """Complete configuration of a run"""
    enumeration: EnumerationConfig = field(default_factory=EnumerationConfig)
    certificates: CertificateConfig = field(default_factory=CertificateConfig)
    log_level: str = "WARNING"

    def validate(self) -> tuple[bool, List[str]]:
        errors = []
        for section, part in (("enumeration", self.enumeration), ("certificates", self.certificates)):
            is_valid, part_errors = part.validate()
            if not is_valid:
                errors.extend(f"{section}: {e}" for e in part_errors)
        is_valid, error = ConfigValidator.validate_log_level(self.log_level)
        if not is_valid:
            errors.append(error)
        return len(errors) == 0, errors


class ConfigurationManager:
    """Load and save run configurations"""

    SECTIONS = ("enumeration", "certificates", "log_level")

    def __init__(self):
        self.current_config: Optional[RunConfig] = None

    def load_from_dict(self, config_dict: Dict[str, Any]) -> RunConfig:
        if not isinstance(config_dict, dict):
            raise ValidationError("Configuration must be a JSON object")
        unknown = sorted(set(config_dict) - set(self.SECTIONS))
        if unknown:
            raise ValidationError(f"Unknown configuration sections: {', '.join(unknown)}")

        try:
            config = RunConfig(
                enumeration=EnumerationConfig(**config_dict.get('enumeration', {})),
                certificates=CertificateConfig(**config_dict.get('certificates', {})),
                log_level=config_dict.get('log_level', "WARNING"),
            )
        except TypeError as e:
            raise ValidationError(f"Invalid configuration field: {e}")

        is_valid, errors = config.validate()
        if not is_valid:
            raise ValidationError("Configuration validation failed: " + "; ".join(errors))

        self.current_config = config
        return config

    def load_from_file(self, file_path: str) -> RunConfig:
        """Load configuration from JSON file"""
        try:
            config_dict = FileManager.read_json(file_path)
        except FileNotFoundError:
            raise FileNotFoundError(f"Configuration file not found: {file_path}")
        except json.JSONDecodeError as e:
            raise ValidationError(f"Invalid JSON in configuration file: {e}")
        except OSError as e:
            raise ValidationError(f"Error reading configuration file: {e}")

        return self.load_from_dict(config_dict)

    def save_to_file(self, config: RunConfig, file_path: str) -> None:
        if not FileManager.write_json(self.to_dict(config), file_path):
            raise ValidationError(f"Error writing configuration file: {file_path}")

    @staticmethod
    def to_dict(config: RunConfig) -> Dict[str, Any]:
        return asdict(config)

    def validate_config_file(self, file_path: str) -> tuple[bool, List[str]]:
        """Validate configuration file without keeping it"""
        try:
            self.load_from_file(file_path)
            return True, []
        except (ValidationError, FileNotFoundError) as e:
            return False, [str(e)]


def load_config_from_file(file_path: str) -> RunConfig:
    """Load configuration from file (convenience function)"""
    return ConfigurationManager().load_from_file(file_path)
