"""Three points on products of circles, modulo the rotation action.

The module under test reduces the whole family to a 4x4 transfer
matrix over N[s].  The tests pin the ingredients (the nerve fixture is
really a torus, the building blocks really assemble to the circle
model), then cross-check the three independent computations of the
Betti numbers against each other: transfer iteration, closed formula,
and the honest tensor power.
"""

import pytest

from graphconf.complexes import (
    EvaluatedComplex,
    evaluate,
    odot,
    qis_test,
    validate,
)
from graphconf.errors import InputError, ResourceLimitError
from graphconf.graphs import complete_graph
from graphconf.pruning import prune
from graphconf.torus import (
    DIRECT_CHECK_MAX_RANK,
    BettiTable,
    BuildingBlockVector,
    ShiftPoly,
    building_blocks,
    circle_model,
    closed_formula_betti,
    direct_betti,
    hexagon_nerve,
    realize,
    torus_betti,
    transfer_step,
    verify_multiplication_table,
)

from oracles import simplicial_chain_complex


def test_shift_polynomial_arithmetic():
    s = ShiftPoly((0, 1))
    one = ShiftPoly.one()
    assert (s + one) * (s + one) == ShiftPoly((1, 2, 1))
    assert s * ShiftPoly.zero() == ShiftPoly.zero()
    assert ShiftPoly((1, 0, 0)) == one
    assert not ShiftPoly.zero()
    assert str(ShiftPoly((0, 2, 0, 1))) == "2s + s^3"
    with pytest.raises(InputError):
        ShiftPoly((1, -1))


def test_betti_table_bookkeeping():
    table = BettiTable({0: 1, 2: 5, 3: 0})
    assert table.as_tuple() == (1, 0, 5)
    assert table[7] == 0
    assert table.top_degree() == 2
    assert table.to_json() == {"0": 1, "1": 0, "2": 5}
    with pytest.raises(InputError):
        BettiTable({-1: 2})


def test_nerve_fixture_is_a_torus():
    nerve = hexagon_nerve()
    assert nerve.vertex_count == 13
    ranks, diffs = simplicial_chain_complex(nerve)
    chain = EvaluatedComplex(
        ranks, [sorted((r, c, v) for (r, c), v in d.items()) for d in diffs]
    )
    betti = [s.betti for s in chain.homology()]
    torsion = [s.torsion for s in chain.homology()]
    assert betti[:3] == [1, 2, 1]
    assert all(b == 0 for b in betti[3:])
    assert all(t == () for t in torsion)


def test_blocks_assemble_to_the_circle_model():
    a, b, c, d = building_blocks()
    for block in (a, b, c, d):
        assert validate(block) == []
    model = circle_model()
    assert model.ranks == (2, 3, 1)
    assert model == realize(BuildingBlockVector.from_ints(1, 1, 1, 0))
    # Two cyclic orders of three distinct points, each a free rotation.
    betti = [s.betti for s in evaluate(model, complete_graph(3)).homology()]
    assert betti == [2, 0, 0]


def test_multiplication_table_passes_everywhere():
    checks = verify_multiplication_table()
    assert len(checks) == 12
    for cell in checks:
        assert cell.passed, str(cell)
        assert str(cell).endswith("ok")


def test_transfer_step_matches_an_honest_multiplication():
    v = BuildingBlockVector.from_ints(0, 1, 0, 1)
    product = prune(odot(circle_model(), realize(v)))
    assert qis_test(product, realize(transfer_step(v)))


def test_transfer_agrees_with_the_closed_formula():
    for r in range(1, 7):
        assert torus_betti(r) == closed_formula_betti(r), "rank %d" % r
    assert torus_betti(1).as_tuple() == (2,)
    assert torus_betti(2).as_tuple() == (1, 4, 5)
    assert closed_formula_betti(4).top_degree() == 6


def test_direct_powers_agree_and_are_torsion_free():
    for r in range(1, DIRECT_CHECK_MAX_RANK + 1):
        table, torsion = direct_betti(r)
        assert table == torus_betti(r), "rank %d" % r
        assert torsion == []


def test_rank_guards():
    with pytest.raises(InputError):
        torus_betti(0)
    with pytest.raises(InputError):
        closed_formula_betti(0)
    with pytest.raises(ResourceLimitError) as info:
        direct_betti(DIRECT_CHECK_MAX_RANK + 1)
    assert info.value.limit == DIRECT_CHECK_MAX_RANK
