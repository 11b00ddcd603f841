"""
Base interfaces for flop exploration
"""
from abc import ABC, abstractmethod
from typing import Any


class FlopOperation(ABC):
    """Abstract base class for flop moves on a central fibre state"""

    @abstractmethod
    def execute(self) -> Any:
        """Apply the move and return the new state"""
        pass

    @abstractmethod
    def validate(self) -> bool:
        """Check the move is available in its state"""
        pass


class ProjectivityOracle(ABC):
    """Abstract base class for projectivity deciders"""

    name = "oracle"

    @abstractmethod
    def is_projective(self, state: Any) -> bool:
        """Decide whether the state is the central fibre of a projective model"""
        pass

    @abstractmethod
    def decide(self, state: Any) -> Any:
        """Verdict with the evidence behind it"""
        pass


class ProgressReporter(ABC):
    """Receives progress from long searches and censuses"""

    @abstractmethod
    def report_start(self, operation: str, total_steps: int) -> None:
        """Called once; total_steps is 0 when the search size is unknown"""
        pass

    @abstractmethod
    def report_progress(self, step: int, message: str) -> None:
        pass

    @abstractmethod
    def report_complete(self, success: bool, message: str) -> None:
        """Called once with the overall outcome"""
        pass
