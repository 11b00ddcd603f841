"""
Flop moves as command objects
"""
from typing import List

from .degeneration import (
    TYPE_I, TYPE_II, CentralFibreState, FlopMove, GluingRecord,
    apply_type_I, apply_type_II, available_type_I, available_type_II
)
from ..interfaces.base_interface import FlopOperation
from ..utils.validation import FlopError


class TypeIFlop(FlopOperation):
    """Flop an interior (-1)-curve into the neighbouring component"""

    kind = TYPE_I

    def __init__(self, state: CentralFibreState, move: FlopMove, checked: bool = False):
        self.state = state
        self.move = move
        # taken from available_type_I(state)
        self.checked = checked

    def validate(self) -> bool:
        return self.checked or self.move in available_type_I(self.state)

    def execute(self) -> CentralFibreState:
        if not self.validate():
            raise FlopError(f"Type I move {self.move.label()} is not available")
        return apply_type_I(self.state, self.move)

    def label(self) -> str:
        return f"I:{self.move.label()}"


class TypeIIFlop(FlopOperation):
    """Flop a (-1, -1) double curve, switching between class P and class T"""

    kind = TYPE_II

    def __init__(self, state: CentralFibreState, gluing: GluingRecord, checked: bool = False):
        self.state = state
        self.gluing = gluing
        self.checked = checked

    def validate(self) -> bool:
        return self.checked or self.gluing in available_type_II(self.state)

    def execute(self) -> CentralFibreState:
        if not self.validate():
            raise FlopError(f"Type II flop along {self.gluing.label()} is not available")
        return apply_type_II(self.state, self.gluing)

    def label(self) -> str:
        return f"II:{self.gluing.label()}"


def type_I_flops(state: CentralFibreState) -> List[TypeIFlop]:
    return [TypeIFlop(state, m, checked=True) for m in available_type_I(state)]


def type_II_flops(state: CentralFibreState) -> List[TypeIIFlop]:
    return [TypeIIFlop(state, g, checked=True) for g in available_type_II(state)]


def available_flops(state: CentralFibreState, include_type_II: bool = True) -> List[FlopOperation]:
    """Every flop available in a state, type I moves first, in a fixed order"""
    flops: List[FlopOperation] = list(type_I_flops(state))
    if include_type_II:
        flops.extend(type_II_flops(state))
    return flops
