"""Integer Smith reduction and chain-complex homology.

The main check pits the production Smith routine against an
independent oracle that computes invariant factors as successive
quotients of gcds of k x k minors — a textbook characterization that
shares no code with the elimination in the package.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphconf.complexes import EvaluatedComplex
from graphconf.errors import InputError
from graphconf.homology import (
    HomologySummary,
    chain_homology,
    invariant_factors_sparse,
    rank_sparse,
    smith,
    xgcd,
)

from oracles import make_rng, minors_gcd_factors


def small_matrices():
    side = st.integers(1, 5)
    return st.tuples(side, side).flatmap(
        lambda shape: st.lists(
            st.lists(st.integers(-9, 9), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0],
            max_size=shape[0],
        )
    )


@settings(max_examples=200, deadline=None)
@given(small_matrices())
def test_smith_matches_the_minors_gcd_oracle(matrix):
    factors, rank = smith(matrix)
    assert factors == minors_gcd_factors(matrix)
    assert rank == len(factors)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


def test_smith_on_many_seeded_random_matrices():
    rng = make_rng(20260814)
    for _ in range(150):
        nrows = rng.randrange(1, 6)
        ncols = rng.randrange(1, 6)
        matrix = [
            [
                rng.randrange(-10, 11) if rng.random() < 0.7 else 0
                for _ in range(ncols)
            ]
            for _ in range(nrows)
        ]
        assert smith(matrix)[0] == minors_gcd_factors(matrix)


def test_sparse_interface_rejects_bad_entries():
    with pytest.raises(InputError):
        invariant_factors_sparse(2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(InputError):
        invariant_factors_sparse(2, 2, [(2, 0, 1)])
    assert rank_sparse(3, 3, [(0, 0, 2), (1, 1, 3)]) == 2


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_xgcd_certificate(a, b):
    g, x, y = xgcd(a, b)
    assert g == a * x + b * y
    assert g >= 0
    if a or b:
        assert a % g == 0 and b % g == 0


def test_circle_and_sphere_chain_homology():
    # A triangle boundary: three vertices, three edges.
    circle = EvaluatedComplex(
        (3, 3),
        [[(0, 0, -1), (0, 1, 1), (1, 1, -1), (1, 2, 1), (2, 0, -1), (2, 2, 1)]],
    )
    assert [(s.betti, s.torsion) for s in chain_homology(circle)] == [
        (1, ()),
        (1, ()),
    ]
    # Boundary of a tetrahedron: a 2-sphere.
    verts = list(range(4))
    edges = [(a, b) for a in verts for b in verts if a < b]
    tris = [(a, b, c) for a in verts for b in verts for c in verts if a < b < c]
    d0 = []
    for r, (a, b) in enumerate(edges):
        d0 += [(r, a, -1), (r, b, 1)]
    d1 = []
    for r, (a, b, c) in enumerate(tris):
        d1 += [
            (r, edges.index((b, c)), 1),
            (r, edges.index((a, c)), -1),
            (r, edges.index((a, b)), 1),
        ]
    sphere = EvaluatedComplex((4, 6, 4), [d0, d1])
    assert [(s.betti, s.torsion) for s in chain_homology(sphere)] == [
        (1, ()),
        (0, ()),
        (1, ()),
    ]


def test_torsion_is_reported():
    # Z --2--> Z has homology Z/2 in degree 0.
    doubled = EvaluatedComplex((1, 1), [[(0, 0, 2)]])
    summaries = chain_homology(doubled)
    assert summaries[0].betti == 0
    assert summaries[0].torsion == (2,)
    assert summaries[1].is_zero


def test_summary_rendering():
    assert HomologySummary(0, 3, (2,)).group_name() == "Z^3 + Z/2"
    assert HomologySummary(1, 1, ()).group_name() == "Z"
    assert HomologySummary(2, 0, ()).group_name() == "0"
    assert str(HomologySummary(4, 2, (2, 6))) == "H_4 = Z^2 + Z/2 + Z/6"
    assert HomologySummary(1, 2, (3,)).to_json() == {
        "degree": 1,
        "betti": 2,
        "torsion": [3],
    }
    with pytest.raises(InputError):
        HomologySummary(0, 1, (4, 6))
    with pytest.raises(InputError):
        HomologySummary(0, -1, ())
