"""
dnvflops - Flops and models of the degree 2 Dolgachev-Nikulin-Voisin family

Enumerates the projective type III models of the family by flopping curves
between the components of the central fibre, decides projectivity, and
counts the maximal cones of the Mori fan and of its secondary fan.
"""

# Main classes
from .core import (
    FlopExplorer, ExplorerConfig, create_explorer,
    CentralFibreState, build_YP, build_YT
)

# Configuration management
from .config import (
    ConfigurationManager, RunConfig, EnumerationConfig, CertificateConfig,
    load_config_from_file
)

# Utilities
from .utils import (
    FileManager, FormatParser, InputValidator, StateValidator, ConfigValidator, ValidationError
)

# Version info
__version__ = "1.0.0"
__description__ = "Flop graph and Mori fan enumeration for a degree 2 K3 degeneration"

__all__ = [
    # Core API
    'FlopExplorer',
    'ExplorerConfig',
    'create_explorer',
    'CentralFibreState',
    'build_YP',
    'build_YT',

    # Configuration
    'ConfigurationManager',
    'RunConfig',
    'EnumerationConfig',
    'CertificateConfig',
    'load_config_from_file',

    # Utilities
    'FileManager',
    'FormatParser',
    'InputValidator',
    'StateValidator',
    'ConfigValidator',
    'ValidationError',

    # Version
    '__version__'
]


def get_version() -> str:
    """Get library version"""
    return __version__


# Quick start functions
def quick_enumerate(class_filter: str = "both", method: str = "criterion") -> dict:
    """Count isomorphism classes of projective models

    Args:
        class_filter: 'P', 'T' or 'both'
        method: projectivity route, 'criterion', 'lp' or 'both'

    Returns:
        dict: Result with success/error information and totals
    """
    result = create_explorer(method=method).enumerate(class_filter)
    return {
        "success": result.success,
        "totals": result.totals,
        "strata": result.strata,
        "symmetric": result.symmetric,
        "error": result.error_message
    }


def quick_count_cones() -> dict:
    """Maximal cones of the Mori fan, split by class"""
    result = create_explorer().count_cones()
    census = result.census
    return {
        "success": result.success,
        "total": census.total if census else None,
        "by_class": census.by_class if census else {},
        "error": result.error_message
    }


def quick_check(document: str) -> dict:
    """Decide projectivity of a JSON state document

    Args:
        document: text produced by ``dnvflops build`` or ``core.serialization.emit``

    Returns:
        dict: Criterion and LP verdicts
    """
    from .core.serialization import parse
    try:
        state = parse(document)
    except ValidationError as e:
        return {"success": False, "error": str(e)}
    result = create_explorer().check(state)
    return {
        "success": result.success,
        "criterion": result.criterion,
        "lp": result.lp,
        "problems": result.problems,
        "error": result.error_message
    }
