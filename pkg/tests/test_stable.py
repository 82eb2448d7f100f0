"""The formality splitting and the stable range.

Ground truth for the finite checks: two points in a convex body of
dimension d circle each other on a (d-1)-sphere, so
Conf(2, segment x C^p) has exactly two nonzero groups, in degrees 0
and 2p.  The splitting invariants (one homology degree per piece,
orthogonal multiplication) are checked structurally at n = 2 and 3.
"""

import pytest

from graphconf.complexes import (
    PresheafComplex,
    pointwise_homology,
    representable,
    shift,
)
from graphconf.errors import InputError, ResourceLimitError, SplittingError
from graphconf.graphs import complete_graph, empty_graph, enumerate_graphs
from graphconf.stable import (
    MAX_PLANE_POINTS,
    StablePresheafModel,
    cp_homology,
    formality_split,
    plane_model,
    stable_homology,
    stable_model,
)

K2 = complete_graph(2)


def test_plane_model_has_classical_pointwise_homology():
    # Distinct labeled points in the plane: the empty graph frees
    # everyone (contractible), one edge gives a circle, an n-point star
    # gives a product of circles, and the full triangle gives the
    # (1, 3, 2) of three pairwise-distinct points.
    expected2 = {(): (1,), ((1, 2),): (1, 1)}
    table2 = pointwise_homology(plane_model(2))
    for g in enumerate_graphs(2):
        betti = [s.betti for s in table2[g]]
        want = expected2[g.edges]
        assert tuple(betti[: len(want)]) == want
        assert all(b == 0 for b in betti[len(want):])
        assert all(s.torsion == () for s in table2[g])

    expected3 = {
        0: (1,),  # no constraints: contractible
        1: (1, 1),  # one pair distinct: a circle
        2: (1, 2, 1),  # two pairs: two independent circles
        3: (1, 3, 2),  # all distinct
    }
    table3 = pointwise_homology(plane_model(3))
    for g in enumerate_graphs(3):
        betti = [s.betti for s in table3[g]]
        want = expected3[g.edge_count]
        assert tuple(betti[: len(want)]) == want
        assert all(b == 0 for b in betti[len(want):])
        assert all(s.torsion == () for s in table3[g])


def test_plane_model_guards():
    with pytest.raises(InputError):
        plane_model(0)
    with pytest.raises(ResourceLimitError) as info:
        plane_model(MAX_PLANE_POINTS + 1)
    assert info.value.limit == MAX_PLANE_POINTS


@pytest.mark.parametrize("n", [2, 3])
def test_each_piece_carries_one_homology_degree(n):
    model = stable_model(n)
    assert model.n == n
    assert len(model.pieces) == n
    for i, piece in enumerate(model.pieces):
        degrees = set()
        for summaries in pointwise_homology(piece).values():
            degrees.update(s.degree for s in summaries if not s.is_zero)
        assert degrees == {i}
        # The stored piece is the shifted copy of its own down-shift.
        assert shift(model.f_model(i), i) == piece


@pytest.mark.parametrize("n", [2, 3])
def test_pieces_multiply_orthogonally(n):
    model = stable_model(n)
    for i in range(n):
        for j in range(n):
            assert model.orthogonality_check(i, j), (i, j)


def test_splitting_rejects_unsplittable_complexes():
    # One connected summand with homology in two degrees: no unit
    # entries, rank-one square matrix between equal labels.
    stuck = PresheafComplex(
        2,
        [(K2, K2), (K2, K2)],
        [{(0, 0): 2, (0, 1): 2, (1, 0): 2, (1, 1): 2}],
    )
    with pytest.raises(SplittingError) as info:
        formality_split(stuck)
    assert info.value.summand is not None

    # Homology concentrated beyond the n pieces.
    with pytest.raises(SplittingError):
        formality_split(representable(empty_graph(2), 2))

    # A missing degree.
    with pytest.raises(SplittingError) as info:
        formality_split(representable(K2))
    assert "degree" in str(info.value)


def test_model_constructor_checks_its_pieces():
    with pytest.raises(InputError):
        StablePresheafModel(2, (representable(K2),))
    with pytest.raises(InputError):
        StablePresheafModel(1, (representable(K2),))


# -- finite and stable values for two points on a segment -------------


@pytest.fixture(scope="module")
def segment2():
    from graphconf.covers import letter, star_model

    return star_model(letter("Z"), 2)


def test_two_points_in_a_slab_form_a_sphere(segment2):
    # Conf(2, segment x C^p) = two points in a convex (2p+1)-body.
    for p, top in ((1, 2), (2, 4)):
        for degree in range(top + 1):
            summary = cp_homology(segment2, p, degree)
            expected = 1 if degree in (0, top) else 0
            assert summary.degree == degree
            assert summary.betti == expected
            assert summary.torsion == ()


def test_cp_homology_rejects_bad_parameters(segment2):
    with pytest.raises(InputError):
        cp_homology(segment2, 0, 1)
    with pytest.raises(InputError):
        cp_homology(segment2, 2, -1)


def test_stable_values_for_the_segment(segment2):
    group, bound = stable_homology(segment2, 2, 0)
    assert (group.degree, group.betti, group.torsion) == (1, 1, ())
    assert bound == 2
    # The sphere has nothing off the poles: H_{2p+1} vanishes stably.
    group, _ = stable_homology(segment2, 2, 1)
    assert group.is_zero
    # Check the stable answer against honest finite computations past
    # the bound: H_{2p} Conf(2, segment x C^p) = Z for p = 3, 4.
    for p in (3, 4):
        finite = cp_homology(segment2, p, 2 * p)
        assert (finite.betti, finite.torsion) == (1, ())


def test_odd_slopes_vanish(segment2):
    for m in (1, 3, 5):
        for b in (0, 1, 2):
            group, bound = stable_homology(segment2, m, b)
            assert group.is_zero
            assert bound >= 1


def test_slopes_at_or_beyond_the_point_count_vanish(segment2):
    group, _ = stable_homology(segment2, 4, 0)
    assert group.is_zero
    group, _ = stable_homology(segment2, 6, 1)
    assert group.is_zero


def test_stable_homology_needs_the_recorded_top_degree():
    bare = representable(K2)
    assert bare.source_top_degree is None
    with pytest.raises(InputError) as info:
        stable_homology(bare, 2, 0)
    assert "star_model" in str(info.value)
    with pytest.raises(InputError):
        stable_homology(bare, -1, 0)
