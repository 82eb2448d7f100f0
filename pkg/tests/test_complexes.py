"""Labeled chain complexes and their tensor calculus.

The fixed points here are worked examples small enough to check by
hand: the two-points-on-a-segment model coming from the cover of the
square by the two open triangles and the whole square, its union-tensor
square (a model of two points in a solid square, homotopy equivalent to
a circle), and the Yoneda behaviour of representables.
"""

import pytest

from graphconf.complexes import (
    EvaluatedComplex,
    LabeledMatrix,
    PresheafComplex,
    boxtimes,
    direct_sum,
    empty_complex,
    evaluate,
    label_leq,
    label_str,
    label_union,
    odot,
    pointwise_homology,
    qis_test,
    representable,
    shift,
    validate,
)
from graphconf.errors import InputError
from graphconf.graphs import Graph, complete_graph, empty_graph, enumerate_graphs

from oracles import make_rng, random_complex, scramble

K2 = complete_graph(2)
E2 = empty_graph(2)


def segment_pair_model():
    """Two points on a segment, from the three-set cover of the square
    by {x < y}, the whole square, and {x > y}.  The nerve is a path on
    three vertices; only the outer vertices separate the two points.
    """
    return PresheafComplex(
        2,
        [(K2, E2, K2), (E2, E2)],
        [{(0, 0): -1, (0, 1): 1, (1, 1): -1, (1, 2): 1}],
    )


def pruned_segment_model():
    """What pruning the three-vertex model leaves: two sheets joined by
    one connecting cell that only exists when nothing is separated.
    """
    return PresheafComplex(2, [(K2, K2), (E2,)], [{(0, 0): -1, (0, 1): 1}])


# -- labels -----------------------------------------------------------


def test_label_order_and_union():
    g = Graph(3, [(1, 2)])
    h = Graph(3, [(1, 2), (2, 3)])
    assert label_leq(g, h) and not label_leq(h, g)
    assert label_leq((g, h), (h, h))
    assert not label_leq((h, g), (g, h))
    assert label_union((g, h)) == h
    assert label_union(g) == g
    assert label_str((g, h)) == "({12}, {12,23})"
    with pytest.raises(InputError):
        label_leq(g, (g, g))


def test_labeled_matrix_shapes_and_violations():
    m = LabeledMatrix.from_dense([E2], [K2, K2], [[-1, 1]])
    assert m.violations() == []
    assert m.triples() == [(0, 0, -1), (0, 1, 1)]
    bad = LabeledMatrix([K2], [E2], {(0, 0): 1})
    assert bad.violations() == [(0, 0)]
    with pytest.raises(InputError):
        LabeledMatrix([K2], [E2], {(0, 1): 1})
    with pytest.raises(InputError):
        LabeledMatrix([K2], [E2], [(0, 0, 1), (0, 0, 2)])


# -- representables and evaluation ------------------------------------


def test_representable_evaluation_is_yoneda():
    for n in (2, 3):
        for gamma in enumerate_graphs(n):
            rep = representable(gamma, degree=1)
            for g in enumerate_graphs(n):
                got = evaluate(rep, g).ranks[1]
                assert got == (1 if label_leq(g, gamma) else 0)


def test_evaluation_at_the_complete_graph_is_a_skyscraper():
    for gamma in enumerate_graphs(3):
        kept = evaluate(representable(gamma), complete_graph(3)).ranks[0]
        assert kept == (1 if gamma == complete_graph(3) else 0)


# -- the worked segment example ---------------------------------------


def test_segment_model_is_valid_and_has_the_right_homology():
    model = segment_pair_model()
    assert validate(model) == []
    assert model.ranks == (3, 2)
    # Both points free to move: the square, which is contractible.
    assert [s.betti for s in evaluate(model, E2).homology()] == [1, 0]
    # Distinct points: two open triangles.
    assert [s.betti for s in evaluate(model, K2).homology()] == [2, 0]


def test_segment_model_prunes_to_the_two_sheet_complex():
    from graphconf.pruning import prune

    reduced = prune(segment_pair_model())
    assert reduced.ranks == (2, 1)
    assert reduced.degrees[0] == (K2, K2)
    assert reduced.degrees[1] == (E2,)
    (matrix,) = reduced.differentials
    values = sorted(v for _, _, v in matrix.triples())
    assert values in ([-1, 1], [1, 1], [-1, -1])
    assert qis_test(reduced, pruned_segment_model())


def test_union_square_of_the_segment_model():
    square = odot(pruned_segment_model(), pruned_segment_model())
    assert square.ranks == (4, 4, 1)
    assert square.degrees[0] == (K2,) * 4
    assert square.degrees[1] == (K2,) * 4
    assert square.degrees[2] == (E2,)
    assert square.differentials[0].dense() == [
        [-1, 0, 1, 0],
        [0, -1, 0, 1],
        [-1, 1, 0, 0],
        [0, 0, -1, 1],
    ]
    assert square.differentials[1].dense() in (
        [[-1, 1, 1, -1]],
        [[1, -1, -1, 1]],
    )
    assert validate(square) == []
    # Two points in a solid square circle each other.
    betti = [s.betti for s in evaluate(square, K2).homology()]
    assert betti == [1, 1, 0]


def test_boxtimes_keeps_pair_labels_and_signs():
    square = boxtimes(pruned_segment_model(), pruned_segment_model())
    assert square.degrees[1] == ((E2, K2), (E2, K2), (K2, E2), (K2, E2))
    assert validate(square) == []
    assert odot(pruned_segment_model(), pruned_segment_model()).differentials[
        0
    ].entries == square.differentials[0].entries


# -- algebra of operations --------------------------------------------


def test_shift_commutes_with_the_union_product():
    # Shifting the right factor, or the left factor by an even amount,
    # commutes with the product on the nose.  An odd left shift flips
    # the parity in the sign rule d(x @ y) = dx @ y + (-1)^|x| x @ dy,
    # so the result agrees only up to changing the sign of basis
    # elements: same labels, same homology, not the same matrices.
    rng = make_rng(7)
    for _ in range(25):
        n = rng.choice((2, 3))
        a = random_complex(rng, n)
        b = random_complex(rng, n)
        product = odot(a, b)
        for da in (0, 1, 2):
            for db in (0, 1):
                lhs = odot(shift(a, da), shift(b, db))
                rhs = shift(product, da + db)
                if da % 2 == 0:
                    assert lhs == rhs
                else:
                    assert lhs.degrees == rhs.degrees
                    assert qis_test(lhs, rhs)


def test_direct_sum_and_shift_bookkeeping():
    g = Graph(2, [(1, 2)])
    assert direct_sum(representable(g), empty_complex(2)) == representable(g)
    assert shift(representable(g), 3).ranks == (0, 0, 0, 1)
    with pytest.raises(InputError):
        shift(representable(g), -1)
    with pytest.raises(InputError):
        direct_sum(representable(g), representable(complete_graph(3)))


def test_operations_preserve_validity_on_random_inputs():
    rng = make_rng(99)
    for _ in range(30):
        n = rng.choice((2, 3))
        a = scramble(random_complex(rng, n), rng)
        b = random_complex(rng, n)
        assert validate(a) == []
        assert validate(odot(a, b)) == []
        assert validate(boxtimes(a, b)) == []
        assert validate(direct_sum(a, b)) == []
        assert validate(shift(a, rng.randrange(0, 3))) == []


def test_union_product_is_commutative_and_associative_up_to_qis():
    rng = make_rng(2024)
    for _ in range(12):
        n = rng.choice((2, 3))
        a = random_complex(rng, n)
        b = random_complex(rng, n)
        c = random_complex(rng, n)
        assert qis_test(odot(a, b), odot(b, a))
        assert qis_test(odot(odot(a, b), c), odot(a, odot(b, c)))


def test_pointwise_homology_and_qis_basics():
    g = Graph(2, [(1, 2)])
    table = pointwise_homology(representable(g))
    assert set(table) == set(enumerate_graphs(2))
    assert table[g][0].betti == 1
    assert qis_test(representable(g), representable(g, 0))
    assert not qis_test(representable(g), representable(empty_graph(2)))
    assert not qis_test(representable(g), representable(g, 1))


def test_json_round_trip():
    for complex_ in (
        segment_pair_model(),
        pruned_segment_model(),
        odot(pruned_segment_model(), pruned_segment_model()),
        boxtimes(pruned_segment_model(), pruned_segment_model()),
        empty_complex(2),
    ):
        assert PresheafComplex.from_json(complex_.to_json()) == complex_


def test_constructor_enforces_shapes():
    with pytest.raises(InputError):
        PresheafComplex(2, [(K2,), (E2,)], [])
    with pytest.raises(InputError):
        PresheafComplex(2, [(complete_graph(3),)], [])
    with pytest.raises(InputError):
        EvaluatedComplex((2, 1), [])


def test_validate_reports_broken_complexes():
    violating = PresheafComplex(2, [(E2,), (K2,)], [{(0, 0): 1}])
    assert any("not contained" in line for line in validate(violating))
    unsquared = PresheafComplex(
        2,
        [(E2,), (E2,), (E2,)],
        [{(0, 0): 1}, {(0, 0): 1}],
    )
    assert any("nonzero" in line for line in validate(unsquared))
