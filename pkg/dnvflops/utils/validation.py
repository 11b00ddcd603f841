"""
Validation utilities and the package error hierarchy
"""
import re
from typing import Any, Dict, List, Optional, Tuple

from .format_utils import FormatParser


class ValidationError(Exception):
    """Base error for every failure raised by the package"""
    pass


class LatticeError(ValidationError):
    """Dimension mismatch or an illegal contraction"""
    pass


class FlopError(ValidationError):
    """A flop move or gluing that is not available in the given state"""
    pass


class CurveStructureError(ValidationError):
    """Interior curves meeting with multiplicity outside the curve-structure model"""
    pass


class UncoveredCaseError(ValidationError):
    """A regularity pattern the combinatorial projectivity criteria do not cover"""
    pass


class InconsistencyError(ValidationError):
    """Two independent computations disagree where they must agree"""
    pass


class DocumentError(ValidationError):
    """Malformed state document"""
    pass


CLASS_FILTERS = ("P", "T", "both")
OUTPUT_FORMATS = ("json", "csv", "dot")
PROJECTIVITY_METHODS = ("criterion", "lp", "both")

TOTAL_CURVES = 24
PICARD_RANK = 21


class InputValidator:
    """Validate user supplied arguments"""

    @staticmethod
    def validate_class_filter(value: str) -> Tuple[bool, Optional[str]]:
        if value not in CLASS_FILTERS:
            return False, f"Invalid class filter: '{value}'. Use one of {', '.join(CLASS_FILTERS)}"
        return True, None

    @staticmethod
    def validate_format(value: str, allowed: Tuple[str, ...] = OUTPUT_FORMATS) -> Tuple[bool, Optional[str]]:
        if value not in allowed:
            return False, f"Invalid format: '{value}'. Use one of {', '.join(allowed)}"
        return True, None

    @staticmethod
    def validate_method(value: str) -> Tuple[bool, Optional[str]]:
        if value not in PROJECTIVITY_METHODS:
            return False, f"Invalid projectivity method: '{value}'"
        return True, None

    @staticmethod
    def validate_triple(text: str) -> Tuple[bool, Optional[str]]:
        """Validate a triple written like '(1, 2, -1)' or '1,2,-1'"""
        if FormatParser.parse_triple(text) is None:
            return False, f"Invalid triple: '{text}'. Use three integers such as '1,2,-1'"
        return True, None

    @staticmethod
    def validate_depth(depth: Optional[int]) -> Tuple[bool, Optional[str]]:
        if depth is not None and depth < 0:
            return False, "Search depth cannot be negative"
        return True, None


class StateValidator:
    """Check the structural invariants of a central fibre state"""

    @staticmethod
    def validate_state(state: Any, check_lattices: bool = False) -> Tuple[bool, List[str]]:
        """Validate conserved sums, curve count, Picard rank and anchor accounting"""
        errors = []

        for gluing in state.gluings:
            total = state.side_square(gluing.side_a) + state.side_square(gluing.side_b)
            if total != gluing.conserved_sum:
                errors.append(
                    f"Gluing {gluing.label()}: squares sum to {total}, expected {gluing.conserved_sum}"
                )

        curve_count = sum(len(c.curves) for c in state.components)
        if curve_count != TOTAL_CURVES:
            errors.append(f"Expected {TOTAL_CURVES} tracked curves, found {curve_count}")

        rank = sum(c.lattice.rank for c in state.components) - len(state.gluings)
        if rank != PICARD_RANK:
            errors.append(f"Expected Picard rank {PICARD_RANK}, found {rank}")

        for index, component in enumerate(state.components, start=1):
            for problem in StateValidator.anchor_problems(component):
                errors.append(f"Component {index}: {problem}")
            if check_lattices:
                is_valid, lattice_errors = StateValidator.validate_lattice(component.lattice)
                errors.extend(f"Component {index}: {e}" for e in lattice_errors)

        return len(errors) == 0, errors

    @staticmethod
    def anchor_problems(component: Any) -> List[str]:
        """Interior curves must meet each side only through its anchor or its node"""
        problems = []
        lattice = component.lattice
        for side in component.boundary:
            anchor = dict(side.anchor)
            through_node = component.node_contributions(side.name)
            for curve in component.curves:
                expected = anchor.get(curve.name, 0) + through_node.get(curve.name, 0)
                actual = lattice.pairing(curve.cls, side.cls)
                if actual != expected:
                    problems.append(
                        f"curve {curve.name} meets {side.name} {actual} times, anchors account for {expected}"
                    )
        return problems

    @staticmethod
    def validate_lattice(lattice: Any) -> Tuple[bool, List[str]]:
        errors = []
        if not lattice.is_unimodular():
            errors.append(f"Gram determinant {lattice.determinant()} is not a unit")
        positive, negative = lattice.signature()
        if (positive, negative) != (1, lattice.rank - 1):
            errors.append(f"Signature ({positive}, {negative}) is not hyperbolic")
        return len(errors) == 0, errors


class ConfigValidator:
    """Validate configuration dictionaries"""

    @staticmethod
    def validate_enumeration_config(config: Dict[str, Any]) -> Tuple[bool, List[str]]:
        errors = []
        if 'method' in config:
            is_valid, error = InputValidator.validate_method(config['method'])
            if not is_valid:
                errors.append(error)
        if 'max_depth' in config:
            depth = config['max_depth']
            if depth is not None and (not isinstance(depth, int) or depth < 0):
                errors.append("'max_depth' must be a non-negative integer or null")
        if 'projective_only' in config and not isinstance(config['projective_only'], bool):
            errors.append("'projective_only' must be a boolean")
        return len(errors) == 0, errors

    @staticmethod
    def validate_certificate_config(config: Dict[str, Any]) -> Tuple[bool, List[str]]:
        errors = []
        base = config.get('base_degree')
        if base is not None and (not isinstance(base, int) or base <= 0):
            errors.append("'base_degree' must be a positive integer")
        return len(errors) == 0, errors

    @staticmethod
    def validate_log_level(level: str) -> Tuple[bool, Optional[str]]:
        if not re.fullmatch(r"(?i)debug|info|warning|error", level or ""):
            return False, f"Unknown log level: '{level}'"
        return True, None
