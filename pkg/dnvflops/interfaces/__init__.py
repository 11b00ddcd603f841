"""
Abstract interfaces for flops, projectivity oracles and progress reporting
"""
from .base_interface import FlopOperation, ProjectivityOracle, ProgressReporter

__all__ = ['FlopOperation', 'ProjectivityOracle', 'ProgressReporter']
