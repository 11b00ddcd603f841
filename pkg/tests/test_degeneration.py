import random
from collections import Counter

import pytest

from dnvflops.core.degeneration import (
    CLASS_P, CLASS_T, NODAL, SELF_GLUED, SMOOTH, TYPE_I, TYPE_II, FlopMove, apply_type_I, apply_type_II,
    available_type_I, available_type_II, build_YP, build_YT, inverse_move
)
from dnvflops.core.enumeration import iso_class_key, labelled_key, t_coordinates
from dnvflops.core.flops import TypeIFlop, TypeIIFlop, available_flops
from dnvflops.utils.validation import FlopError, StateValidator, ValidationError


def _assert_valid(state):
    is_valid, errors = StateValidator.validate_state(state)
    assert is_valid, errors


WALKS_PER_SEED = 25


def _random_walk(rng, steps):
    """Random flops of both types from a random reference state; returns the kinds taken"""
    state = rng.choice((build_YP, build_YT))()
    kinds = []
    for _ in range(steps):
        flops = available_flops(state)
        if not flops:
            break
        flop = rng.choice(flops)
        before = state.class_tag
        state = flop.execute()
        kinds.append(flop.kind)
        if flop.kind == TYPE_II:
            assert state.class_tag != before
        else:
            assert state.class_tag == before
        _assert_valid(state)
        assert state.curve_count() == 24
        assert state.picard_rank() == 21
    return kinds


class TestReferenceStates:

    def test_yp_structure(self, yp):
        assert yp.class_tag == CLASS_P
        assert yp.special is None
        assert [c.base_tag for c in yp.components] == ["Y2", "Y2", "Y2"]
        assert {g.kind for g in yp.gluings} == {SMOOTH}
        assert yp.dual_edges() == [(1, 2), (1, 3), (2, 3)]
        _assert_valid(yp)

    def test_yt_structure(self, yt):
        assert yt.class_tag == CLASS_T
        assert yt.special == 3
        assert [c.base_tag for c in yt.components] == ["Y1", "Y1", "Y4"]
        assert sorted(g.kind for g in yt.gluings) == [NODAL, NODAL, SELF_GLUED]
        assert yt.dual_edges() == [(1, 3), (2, 3), (3, 3)]
        _assert_valid(yt)

    @pytest.mark.parametrize("builder", [build_YP, build_YT])
    def test_curve_count_and_rank(self, builder):
        state = builder()
        assert state.curve_count() == 24
        assert state.picard_rank() == 21

    @pytest.mark.parametrize("special", [1, 2, 3])
    def test_yt_placements(self, special):
        state = build_YT(special)
        assert state.special == special
        assert state.component(special).base_tag == "Y4"
        _assert_valid(state)

    def test_yt_rejects_bad_placement(self):
        with pytest.raises(ValidationError):
            build_YT(4)

    def test_gluing_lookup(self, yp):
        gluing = yp.gluing_of((1, "D12"))
        assert gluing.partner((1, "D12")) == (2, "D21")
        with pytest.raises(ValidationError):
            gluing.partner((3, "D31"))


class TestTypeI:

    def test_available_moves(self, yp, yt):
        assert len(available_type_I(yp)) == 6
        assert len(available_type_I(yt)) == 4
        assert FlopMove(1, "D12", "1:e1") in available_type_I(yp)

    def test_self_glued_sides_are_not_flippable(self, yt):
        assert all(m.side not in ("S1", "S2") for m in available_type_I(yt))

    def test_flop_moves_the_curve(self, yp):
        move = FlopMove(1, "D12", "1:e1")
        state = apply_type_I(yp, move)

        assert state.locate_curve("1:e1") == 2
        assert state.component(1).rank == 7
        assert state.component(2).rank == 9
        assert state.side_square((1, "D12")) == 0
        assert state.side_square((2, "D21")) == -2
        assert state.curve_count() == 24
        assert state.picard_rank() == 21
        _assert_valid(state)

    @pytest.mark.parametrize("builder", [build_YP, build_YT])
    def test_flops_are_involutions(self, builder):
        state = builder()
        reference = labelled_key(state)
        for move in available_type_I(state):
            flopped = apply_type_I(state, move)
            back = inverse_move(state, move)
            assert back in available_type_I(flopped)
            assert labelled_key(apply_type_I(flopped, back)) == reference

    def test_unavailable_move(self, yp):
        with pytest.raises(FlopError):
            apply_type_I(yp, FlopMove(1, "D12", "1:c"))

    @pytest.mark.parametrize("seed", range(10))
    def test_random_walks_keep_invariants(self, seed):
        _random_walk(random.Random(seed), steps=8)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(40))
    def test_random_flop_sequences(self, seed):
        rng = random.Random(1000 + seed)
        kinds = Counter()
        for _ in range(WALKS_PER_SEED):
            kinds.update(_random_walk(rng, steps=6))
        assert kinds[TYPE_I] > 0
        assert kinds[TYPE_II] > 0


class TestTypeII:

    def test_available_gluings(self, yp, yt):
        assert len(available_type_II(yp)) == 3
        (gluing,) = available_type_II(yt)
        assert gluing.kind == SELF_GLUED

    def test_p_to_t(self, yp):
        gluing = yp.gluing_of((1, "D12"))
        state = apply_type_II(yp, gluing)

        assert state.class_tag == CLASS_T
        assert state.special == 3
        assert state.picard_rank() == 21
        assert state.curve_count() == 24
        assert t_coordinates(state) == (-2, -2)
        assert state.side_square((1, "D13")) == 3
        assert state.side_square((3, "D31")) == -3
        _assert_valid(state)

    def test_round_trip_from_yp(self, yp):
        state = apply_type_II(yp, yp.gluing_of((1, "D12")))
        back = apply_type_II(state, available_type_II(state)[0])
        assert back.class_tag == CLASS_P
        _assert_valid(back)
        assert iso_class_key(back) == iso_class_key(yp)

    def test_round_trip_from_yt(self, yt):
        state = apply_type_II(yt, available_type_II(yt)[0])
        assert state.class_tag == CLASS_P
        assert state.side_square((1, "D12")) == -1
        assert state.side_square((1, "D13")) == -3
        assert state.side_square((3, "D31")) == 1
        _assert_valid(state)

        back = apply_type_II(state, state.gluing_of((1, "D12")))
        assert back.special == 3
        assert iso_class_key(back) == iso_class_key(yt)

    def test_unavailable_gluing(self, yp):
        flopped = apply_type_I(yp, FlopMove(1, "D12", "1:e1"))
        with pytest.raises(FlopError):
            apply_type_II(flopped, flopped.gluing_of((1, "D12")))


class TestFlopCommands:

    def test_available_flops(self, yp, yt):
        assert len(available_flops(yp)) == 9
        assert len(available_flops(yp, include_type_II=False)) == 6
        assert len(available_flops(yt)) == 5

    def test_commands_execute(self, yp):
        first = available_flops(yp)[0]
        assert isinstance(first, TypeIFlop)
        assert first.validate()
        assert first.label().startswith("I:")
        assert first.execute().curve_count() == 24

        last = available_flops(yp)[-1]
        assert isinstance(last, TypeIIFlop)
        assert last.execute().class_tag == CLASS_T

    def test_invalid_command(self, yp):
        command = TypeIFlop(yp, FlopMove(2, "D21", "2:y"))
        assert not command.validate()
        with pytest.raises(FlopError):
            command.execute()
