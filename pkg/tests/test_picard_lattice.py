import random

import pytest

from dnvflops.core.picard_lattice import DivisorClass, IntersectionLattice
from dnvflops.utils.validation import LatticeError


def test_plane_blow_up_appends_exceptional():
    plane = IntersectionLattice.projective_plane()
    line = plane.basis("l")
    result = plane.blow_up([(line, 1)], name="E1")

    assert result.lattice.rank == 2
    assert result.lattice.square(result.exceptional) == -1
    strict = result.transform(line)
    assert result.lattice.square(strict) == 0
    assert result.lattice.pairing(strict, result.exceptional) == 1


def test_blow_up_keeps_classes_off_the_point():
    plane = IntersectionLattice.projective_plane()
    line = plane.basis("l")
    result = plane.blow_up(name="E1")
    assert result.transform(line) == DivisorClass((1, 0))


def test_blow_down_inverts_blow_up():
    plane = IntersectionLattice.projective_plane()
    up = plane.blow_up(name="E1")
    down = up.lattice.blow_down(up.exceptional)

    assert down.lattice.rank == 1
    assert down.lattice.gram == ((1,),)
    assert down.push(up.exceptional).is_zero()


def test_blow_down_of_non_basis_class():
    # the line through two blown-up points is a (-1)-class with no unit basis entry of its own
    plane = IntersectionLattice.projective_plane()
    first = plane.blow_up(name="E1")
    second = first.lattice.blow_up(name="E2")
    lattice = second.lattice
    through_both = lattice.make({"l": 1, "E1": -1, "E2": -1})
    assert lattice.square(through_both) == -1

    down = lattice.blow_down(through_both)
    assert down.lattice.rank == 2
    assert down.lattice.is_unimodular()
    assert down.lattice.signature() == (1, 1)
    # pairings with classes orthogonal to the contracted curve are preserved
    e1_minus_e2 = lattice.make({"E1": 1, "E2": -1})
    assert lattice.pairing(e1_minus_e2, through_both) == 0
    pushed = down.push(e1_minus_e2)
    assert down.lattice.square(pushed) == lattice.square(e1_minus_e2)


def test_blow_down_rejects_wrong_square():
    quadric = IntersectionLattice.quadric()
    with pytest.raises(LatticeError):
        quadric.blow_down(quadric.basis("f1"))


def test_quadric_is_even_unimodular():
    quadric = IntersectionLattice.quadric()
    assert quadric.determinant() == -1
    assert quadric.signature() == (1, 1)
    assert quadric.square(quadric.make({"f1": 1, "f2": 1})) == 2


def test_dimension_mismatch():
    with pytest.raises(LatticeError):
        DivisorClass((1, 0)) + DivisorClass((1,))
    plane = IntersectionLattice.projective_plane()
    with pytest.raises(LatticeError):
        plane.pairing(DivisorClass((1, 0)), DivisorClass((1,)))


@pytest.mark.parametrize("gram, names", [
    (((1, 2), (3, 1)), ("a", "b")),
    (((1, 0), (0, 1)), ("a",)),
])
def test_invalid_gram(gram, names):
    with pytest.raises(LatticeError):
        IntersectionLattice(gram=gram, basis_names=names)


def test_unknown_basis_name():
    with pytest.raises(LatticeError):
        IntersectionLattice.projective_plane().basis("E1")


def _blown_up_plane(points):
    lattice = IntersectionLattice.projective_plane()
    for k in range(1, points + 1):
        lattice = lattice.blow_up(name=f"E{k}").lattice
    return lattice


def _random_class(rng, rank):
    return DivisorClass(tuple(rng.randint(-6, 6) for _ in range(rank)))


@pytest.mark.parametrize("seed", range(25))
@pytest.mark.parametrize("terms", [
    {"E3": 1},
    {"l": 1, "E1": -1, "E2": -1},
    {"l": 2, "E1": -1, "E2": -1, "E3": -1, "E4": -1, "E5": -1},
])
def test_push_pairing_identity(seed, terms):
    # push(a).push(b) = a.b + (a.e)(b.e) for the contracted class e
    rng = random.Random(seed)
    lattice = _blown_up_plane(6)
    e = lattice.make(terms)
    assert lattice.square(e) == -1
    down = lattice.blow_down(e)
    assert down.push(e).is_zero()
    for _ in range(4):
        a, b = _random_class(rng, lattice.rank), _random_class(rng, lattice.rank)
        expected = lattice.pairing(a, b) + lattice.pairing(a, e) * lattice.pairing(b, e)
        assert down.lattice.pairing(down.push(a), down.push(b)) == expected


@pytest.mark.parametrize("seed", range(25))
def test_pullback_preserves_pairings(seed):
    rng = random.Random(seed)
    lattice = _blown_up_plane(3)
    through = [(_random_class(rng, lattice.rank), rng.randint(0, 2)) for _ in range(2)]
    up = lattice.blow_up(through, name="F")
    pull = up.transform.linear
    for _ in range(4):
        a, b = _random_class(rng, lattice.rank), _random_class(rng, lattice.rank)
        assert up.lattice.pairing(pull(a), pull(b)) == lattice.pairing(a, b)
        assert up.lattice.pairing(pull(a), up.exceptional) == 0
        down = up.lattice.blow_down(up.exceptional)
        assert down.lattice.pairing(down.push(pull(a)), down.push(pull(b))) == lattice.pairing(a, b)
