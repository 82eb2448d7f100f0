"""Pruning: cancel unit pivots without changing homology anywhere.

The load-bearing property is that pruning is invisible to every
evaluation: for each graph g, the evaluated complexes before and after
have the same homology.  The randomized suite drives that over direct
sums of representables and cones, scrambled by legal changes of basis,
and over models that came from actual spaces.
"""

import pytest

from graphconf.complexes import (
    PresheafComplex,
    direct_sum,
    evaluate,
    odot,
    pointwise_homology,
    qis_test,
    representable,
    shift,
    validate,
)
from graphconf.errors import InputError
from graphconf.graphs import Graph, complete_graph, empty_graph, enumerate_graphs
from graphconf.pruning import prune, prune_parts, prune_smith, split_summands

from oracles import make_rng, random_complex, random_model_complex, scramble

K2 = complete_graph(2)
E2 = empty_graph(2)


def assert_same_pointwise_homology(a, b):
    left = pointwise_homology(a)
    right = pointwise_homology(b)
    for g in left:
        mine = [(s.degree, s.betti, s.torsion) for s in left[g] if not s.is_zero]
        theirs = [
            (s.degree, s.betti, s.torsion) for s in right[g] if not s.is_zero
        ]
        assert mine == theirs, "homology changed at %s" % g


def test_pruning_preserves_homology_on_random_complexes():
    rng = make_rng(123456)
    for trial in range(60):
        n = rng.choice((2, 3))
        complex_ = scramble(random_complex(rng, n), rng)
        if trial % 3 == 0:
            complex_ = odot(complex_, random_complex(rng, n))
        reduced = prune(complex_)
        assert validate(reduced) == []
        assert reduced.total_rank <= complex_.total_rank
        assert_same_pointwise_homology(complex_, reduced)


def test_pruning_preserves_homology_on_space_models():
    rng = make_rng(31337)
    for _ in range(10):
        n = rng.choice((2, 3))
        model = random_model_complex(rng, n)
        assert_same_pointwise_homology(model, prune(model))


def test_pruning_is_idempotent_and_monotone():
    rng = make_rng(5)
    for _ in range(20):
        complex_ = scramble(random_complex(rng, 2), rng)
        once = prune(complex_)
        twice = prune(once)
        assert twice == once


def test_pruning_leaves_minimal_complexes_alone():
    g = Graph(2, [(1, 2)])
    assert prune(representable(g)) == representable(g)
    # A non-unit connecting entry cannot be cancelled.
    doubled = PresheafComplex(2, [(K2,), (K2,)], [{(0, 0): 2}])
    assert prune(doubled) == doubled
    # A unit entry between different labels cannot be cancelled either:
    # the generators really carry different information.
    mixed = PresheafComplex(2, [(K2,), (E2,)], [{(0, 0): 1}])
    assert prune(mixed) == mixed


def test_prune_rejects_broken_input():
    violating = PresheafComplex(2, [(E2,), (K2,)], [{(0, 0): 1}])
    with pytest.raises(InputError):
        prune(violating)


def test_prune_parts_matches_prune():
    rng = make_rng(777)
    for _ in range(10):
        complex_ = scramble(random_complex(rng, 2), rng)
        labels = [list(basis) for basis in complex_.degrees]
        rows = []
        for mat in complex_.differentials:
            rowmap = {}
            for (r, c), v in mat.entries.items():
                rowmap.setdefault(r, {})[c] = v
            rows.append(rowmap)
        via_parts = prune_parts(complex_.n, labels, rows)
        assert qis_test(via_parts, prune(complex_))
        assert via_parts.total_rank == prune(complex_).total_rank


def test_smith_pruning_reaches_units_hidden_in_blocks():
    # No entry is +-1, but the block has determinant -1, so a unit
    # invariant factor hides inside.
    hidden = PresheafComplex(
        2,
        [(K2, K2), (K2, K2)],
        [{(0, 0): 2, (0, 1): 3, (1, 0): 3, (1, 1): 4}],
    )
    assert prune(hidden) == hidden
    reduced = prune_smith(hidden)
    assert reduced.total_rank == 0
    assert_same_pointwise_homology(hidden, reduced)
    # With gcd 2 everywhere nothing can be exposed.
    stuck = PresheafComplex(2, [(K2,), (K2,)], [{(0, 0): 2}])
    assert prune_smith(stuck) == stuck


def test_smith_pruning_preserves_homology_on_random_complexes():
    rng = make_rng(424242)
    for _ in range(25):
        n = rng.choice((2, 3))
        complex_ = scramble(random_complex(rng, n), rng)
        assert_same_pointwise_homology(complex_, prune_smith(complex_))


def test_split_summands_partitions_the_complex():
    g = Graph(2, [(1, 2)])
    both = direct_sum(representable(g), shift(representable(g), 2))
    parts = split_summands(both)
    assert [p.ranks for p in parts] == [(1, 0, 0), (0, 0, 1)]
    rng = make_rng(909)
    for _ in range(15):
        complex_ = scramble(random_complex(rng, 2), rng)
        parts = split_summands(complex_)
        assert sum(p.total_rank for p in parts) == complex_.total_rank
        total = parts[0]
        for p in parts[1:]:
            total = direct_sum(total, p)
        assert_same_pointwise_homology(complex_, total)


def test_pruned_models_keep_the_recorded_top_degree():
    from graphconf.covers import letter, star_model

    model = star_model(letter("Z"), 2, 1)
    assert model.source_top_degree == 2
    assert prune(model).source_top_degree == 2
