import pytest

from dnvflops.core.degeneration import FlopMove, apply_type_I, build_YT
from dnvflops.core.enumeration import (
    ALL_REGULAR, NONDEGENERATE, ONE_DEGENERATE, TWO_DEGENERATE, automorphism_permutations,
    bfs, canonical_triple, enumerate_regular_triples, involution, is_symmetric, iso_class_key,
    labelled_key, listed_regular_triples, reference_states, regular_stratum, regularity_pattern,
    shift, stratum_of, t_coordinates, transport_key, triple_equivalent, triple_of, triple_orbit
)
from dnvflops.core.explorer import EXPECTED_CLASSES
from dnvflops.utils.validation import ValidationError


class TestTriples:

    def test_shift_and_involution(self):
        assert shift((1, 2, 3)) == (3, 1, 2)
        assert involution((1, 2, 3)) == (-2, -1, -3)

    @pytest.mark.parametrize("t", [(0, 1, -1), (3, -2, 7), (1, 1, 1)])
    def test_group_relations(self, t):
        assert shift(shift(shift(t))) == t
        assert involution(involution(t)) == t
        # the involution conjugates the shift to its inverse
        assert involution(shift(involution(t))) == shift(shift(t))

    def test_orbit_size(self):
        assert len(triple_orbit((0, 1, 2))) == 6
        assert triple_orbit((0, 0, 0)) == {(0, 0, 0)}

    @pytest.mark.parametrize("a, b, expected", [
        ((0, 1, -1), (-1, 0, 1), True),
        ((3, 0, -3), (0, -3, 3), True),
        ((1, 2, -1), (1, 2, -2), False),
        ((1, 1, 1), (-1, -1, -1), True),
        ((-3, 0, 4), (-4, 0, 3), True),
        ((-8, -2, -1), (-2, -1, -8), True),
    ])
    def test_equivalence(self, a, b, expected):
        assert triple_equivalent(a, b) is expected
        assert (canonical_triple(a) == canonical_triple(b)) is expected

    def test_listed_counts(self):
        listed = listed_regular_triples()
        assert len(listed[NONDEGENERATE]) == 27
        assert len(listed[ONE_DEGENERATE]) == 103
        assert len(listed[TWO_DEGENERATE]) == 225

    def test_one_degenerate_lower_bound(self):
        # z runs down to x - 6
        listed = set(listed_regular_triples()[ONE_DEGENERATE])
        assert (-2, -1, -8) in listed
        assert (-1, -2, -8) not in listed
        assert (2, -2, -4) in listed
        assert (2, -2, -5) not in listed

    def test_listed_triples_are_distinct(self):
        for triples in listed_regular_triples().values():
            assert len(set(triples)) == len(triples)

    def test_quotient_counts(self):
        # (1,1,1) ~ (-1,-1,-1), (2,2,2) ~ (-2,-2,-2) and (x,0,z) ~ (-z,0,-x) are all listed
        classes = enumerate_regular_triples()
        assert len(classes[NONDEGENERATE]) == 25
        assert len(classes[ONE_DEGENERATE]) == 103
        assert len(classes[TWO_DEGENERATE]) == 219

    def test_strata_do_not_overlap(self):
        classes = enumerate_regular_triples()
        assert not classes[NONDEGENERATE] & classes[ONE_DEGENERATE]
        assert not classes[ONE_DEGENERATE] & classes[TWO_DEGENERATE]
        assert not classes[NONDEGENERATE] & classes[TWO_DEGENERATE]


class TestStates:

    def test_reference_triple(self, yp):
        assert triple_of(yp) == (0, 0, 0)
        assert stratum_of(yp) == ALL_REGULAR
        assert regular_stratum(yp) == NONDEGENERATE
        assert regularity_pattern(yp) == "NNN"

    def test_single_flop_shifts_triple(self, yp):
        state = apply_type_I(yp, FlopMove(1, "D12", "1:e1"))
        assert triple_of(state) == (1, 0, 0)
        assert regularity_pattern(state) == "NNN"

    def test_triples_need_class_p(self, yt):
        with pytest.raises(ValidationError):
            triple_of(yt)
        with pytest.raises(ValidationError):
            stratum_of(yt)

    def test_t_coordinates(self, yp, yt):
        assert t_coordinates(yt) == (0, 0)
        with pytest.raises(ValidationError):
            t_coordinates(yp)


class TestKeys:

    def test_isomorphic_placements_share_a_key(self):
        keys = {iso_class_key(build_YT(c)) for c in (1, 2, 3)}
        assert len(keys) == 1
        labelled = {labelled_key(build_YT(c)) for c in (1, 2, 3)}
        assert len(labelled) == 3

    def test_keys_separate_classes(self, yp, yt):
        assert iso_class_key(yp) != iso_class_key(yt)
        assert iso_class_key(yp).startswith(b"P:")
        assert iso_class_key(yt).startswith(b"T:")

    def test_rotated_flops_are_isomorphic(self, yp):
        keys = {iso_class_key(apply_type_I(yp, FlopMove(i, f"D{i}{i % 3 + 1}", f"{i}:e1")))
                for i in (1, 2, 3)}
        assert len(keys) == 1

    def test_flop_changes_the_key(self, yp):
        state = apply_type_I(yp, FlopMove(1, "D12", "1:e1"))
        assert iso_class_key(state) != iso_class_key(yp)
        assert transport_key(state) != transport_key(yp)

    def test_reference_automorphisms(self, yp, yt):
        assert len(automorphism_permutations(yp)) == 6
        assert is_symmetric(yp)
        assert (1, 2, 3) in automorphism_permutations(yt)
        assert (2, 1, 3) in automorphism_permutations(yt)
        assert is_symmetric(yt)


class TestSearch:

    def test_reference_states(self):
        assert [s.class_tag for s in reference_states("both")] == ["P", "T"]
        with pytest.raises(ValidationError):
            reference_states("Q")

    def test_depth_zero(self):
        classes = bfs("both", max_depth=0)
        assert len(classes) == 2

    def test_depth_one_from_yp(self, yp):
        classes = bfs("P", projective_only=False, max_depth=1)
        # the six flops out of Y_P are related by the symmetries of Y_P
        assert len(classes) == 2
        assert iso_class_key(yp) in classes

    @pytest.mark.slow
    def test_class_p_count(self, p_classes):
        assert len(p_classes) == EXPECTED_CLASSES["P"] == 450

    @pytest.mark.slow
    def test_class_t_count(self, t_classes):
        assert len(t_classes) == EXPECTED_CLASSES["T"] == 129

    @pytest.mark.slow
    def test_all_regular_triples_match_listed_ones(self, p_classes):
        found = {}
        for state in p_classes.values():
            triple = triple_of(state)
            if triple is not None:
                found.setdefault(regular_stratum(state), set()).add(canonical_triple(triple))
        assert found == enumerate_regular_triples()
