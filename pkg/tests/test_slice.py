import random
from fractions import Fraction

import pytest

from symslice.exact import RatMatrix
from symslice.matspace import act, random_group_element
from symslice.nilpotent import regular_nilpotent
from symslice.pairs import Family, MembershipError, make_pair
from symslice.sl2 import complete_triple
from symslice.slice import (
    InvariantVector,
    NotFound,
    invariant_length,
    invariants,
    invariants_from_json,
    invariants_to_json,
    invert_on_slice,
    jacobian_rank_at,
    make_slice,
    slice_point,
)


def build(fam, p, q):
    pair = make_pair(fam, p, q)
    triple = complete_triple(pair, regular_nilpotent(pair))
    return pair, make_slice(pair, triple)


def test_gl11_slice_is_span_of_e():
    pair, slc = build(Family.GL, 1, 1)
    assert slc.dim == 1
    assert slc.slice_basis == (RatMatrix([[0, 1], [0, 0]]),)
    assert slice_point(slc, [Fraction(0)]) == slc.triple.f
    assert slice_point(slc, [Fraction(5)]) == RatMatrix([[0, 5], [1, 0]])


def test_slice_dimensions_match_rank():
    assert build(Family.SP, 2, 2)[1].dim == 1
    assert build(Family.ORTH, 3, 2)[1].dim == 2


def test_slice_point_is_affine():
    pair, slc = build(Family.GL, 3, 2)
    rng = random.Random(2)
    a = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(slc.dim)]
    b = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(slc.dim)]
    lhs = slice_point(slc, a) + slice_point(slc, b) - slc.triple.f
    assert lhs == slice_point(slc, [x + y for x, y in zip(a, b)])


def test_slice_point_injective():
    pair, slc = build(Family.ORTH, 3, 2)
    rng = random.Random(3)
    coord_set = set()
    points = set()
    for _ in range(10):
        coords = tuple(Fraction(rng.randint(-5, 5)) for _ in range(slc.dim))
        coord_set.add(coords)
        points.add(slice_point(slc, coords))
    assert len(points) == len(coord_set)


def test_invariants_examples():
    pair, slc = build(Family.GL, 1, 1)
    assert invariants(pair, RatMatrix.zeros(2, 2)).values == (0, 0)
    assert invariants(pair, RatMatrix([[0, 5], [1, 0]])).values == (-5, 0)
    with pytest.raises(MembershipError):
        invariants(pair, RatMatrix.identity(2))


def test_invariants_conjugation_invariance():
    rng = random.Random(5)
    pair, slc = build(Family.SP, 4, 2)
    for _ in range(5):
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(slc.dim)]
        x = slice_point(slc, coords)
        g = random_group_element(pair, seed=rng.randrange(2**63), height=3)
        assert invariants(pair, act(pair, g, x)) == invariants(pair, x)


def test_invariant_length_is_augmented_only_for_orth_square():
    assert invariant_length(make_pair(Family.GL, 2, 2)) == 4
    assert invariant_length(make_pair(Family.ORTH, 2, 1)) == 3
    assert invariant_length(make_pair(Family.ORTH, 2, 2)) == 5
    assert invariant_length(make_pair(Family.SP, 2, 2)) == 4


def test_invert_gl11():
    pair, slc = build(Family.GL, 1, 1)
    coords = invert_on_slice(slc, InvariantVector((Fraction(-5), Fraction(0))))
    assert coords == [Fraction(5)]


def test_invert_base_point_roundtrip():
    pair, slc = build(Family.ORTH, 3, 2)
    target = invariants(pair, slc.triple.f)
    assert invert_on_slice(slc, target) == [Fraction(0)] * slc.dim


def test_invert_random_roundtrips():
    rng = random.Random(8)
    for fam, p, q in [(Family.GL, 3, 2), (Family.ORTH, 3, 3), (Family.SP, 4, 4)]:
        pair, slc = build(fam, p, q)
        for _ in range(5):
            coords = [
                Fraction(rng.randint(-10, 10), rng.randint(1, 10))
                for _ in range(slc.dim)
            ]
            target = invariants(pair, slice_point(slc, coords))
            assert invert_on_slice(slc, target) == coords


def test_invert_unreachable_target_raises_not_found():
    pair, slc = build(Family.GL, 1, 1)
    # on this slice the trace coefficient is identically zero, so no point
    # has invariants (0, 1)
    with pytest.raises(NotFound):
        invert_on_slice(slc, InvariantVector((Fraction(0), Fraction(1))))


def test_jacobian_rank_gl11_everywhere():
    pair, slc = build(Family.GL, 1, 1)
    for c in (0, 3, -7):
        assert jacobian_rank_at(slc, [Fraction(c)]) == 1


def test_jacobian_rank_generic_points():
    rng = random.Random(13)
    for fam, p, q in [(Family.GL, 3, 2), (Family.ORTH, 2, 2), (Family.SP, 4, 2)]:
        pair, slc = build(fam, p, q)
        for _ in range(3):
            coords = [
                Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                for _ in range(slc.dim)
            ]
            assert jacobian_rank_at(slc, coords) == pair.rank_theta


def test_invariants_json_roundtrip():
    v = InvariantVector((Fraction(-5), Fraction(1, 3)))
    assert invariants_from_json(invariants_to_json(v)) == v
    with pytest.raises(ValueError):
        invariants_from_json('{"not": "a list"}')
    with pytest.raises(ValueError):
        invariants_from_json('["1/0"]')
