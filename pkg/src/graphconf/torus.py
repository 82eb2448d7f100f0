"""Three points on a torus, modulo rotation.

``Conf(3, T)/T`` for the circle T has a tiny labeled chain model M
(hardcoded below from a thirteen-set good cover of the quotient torus
whose nerve facets are kept as a fixture): it splits as A ⊕ B ⊕ C with

* A = the complete-graph representable in degree 0,
* B = three two-edge-labeled generators in degree 1 mapping by
  (1, 1, 1) onto one complete-graph generator in degree 0,
* C = the empty-graph representable in degree 2,

plus a fourth block D (three two-edge representables in degree 2) that
shows up when blocks are multiplied.  Products of tori obey
``Conf(3, T^{r+q})/T ≃`` (quotient model)^{⊙(r+q)} and the ⊙ products
of the four blocks land back in the same four blocks, shifted — so the
whole computation for the rank-r torus collapses to iterating a 4×4
matrix over N[s], where the dummy variable s means "shift by one".
Reading off degree-p multiplicities of A and B (the only blocks that
survive evaluation at the complete graph) gives the Betti numbers of
Conf(3, T^r)/T^r, which have a closed form in r.

>>> torus_betti(2).as_tuple()
(1, 4, 5)
>>> closed_formula_betti(3).as_tuple()
(1, 6, 15, 17, 9)
"""

from dataclasses import dataclass
from math import comb

from .errors import InputError, ResourceLimitError
from .graphs import Graph, complete_graph, empty_graph
from .complexes import (
    PresheafComplex,
    direct_sum,
    empty_complex,
    evaluate,
    odot,
    pointwise_homology,
    representable,
    shift,
)
from .pruning import prune

# Facets of the Čech nerve of the thirteen-set cover of the quotient
# torus, by the names of the opens.  The graph labels of the opens are
# not reconstructible from the names, so the model M below is stored
# explicitly; the nerve itself still knows the homotopy type (a torus).
HEXAGON_NERVE_FACETS = (
    "AEC", "BDF",
    "AHX", "AHS", "BHS", "BHY", "CHY", "CHT",
    "DHX", "DHU", "EHU", "EHZ", "FHT", "FHZ",
    "BFSZ", "AESZ", "BDUY", "CEUY", "ACTX", "DFTX",
)


def hexagon_nerve():
    """The nerve fixture as a simplicial complex (letters in sorted order)."""
    from .covers import SimplicialComplex

    names = sorted({ch for facet in HEXAGON_NERVE_FACETS for ch in facet})
    number = {ch: i + 1 for i, ch in enumerate(names)}
    return SimplicialComplex(
        len(names), [tuple(number[ch] for ch in facet) for facet in HEXAGON_NERVE_FACETS]
    )


class ShiftPoly:
    """A polynomial over the nonnegative integers in the shift variable.

    The coefficient of s^i counts copies shifted up by i degrees.

    >>> s = ShiftPoly((0, 1))
    >>> print((s + ShiftPoly.one()) * (s + ShiftPoly.one()))
    1 + 2s + s^2
    >>> ShiftPoly((1, 0, 0)).coefficients
    (1,)
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        for c in coeffs:
            if c < 0:
                raise InputError("shift polynomials have nonnegative coefficients")
        self.coefficients = tuple(coeffs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    def __bool__(self):
        return bool(self.coefficients)

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return ShiftPoly(
            tuple(x + y for x, y in zip(a, b)) + a[len(b):]
        )

    def __mul__(self, other):
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return ShiftPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ShiftPoly(out)

    def __eq__(self, other):
        if not isinstance(other, ShiftPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = "s" if i == 1 else "s^%d" % i
                parts.append(power if c == 1 else "%d%s" % (c, power))
        return " + ".join(parts)

    def __repr__(self):
        return "ShiftPoly(%r)" % (self.coefficients,)


@dataclass(frozen=True)
class BuildingBlockVector:
    """Multiplicities-with-shift of the four blocks A, B, C, D."""

    a: ShiftPoly
    b: ShiftPoly
    c: ShiftPoly
    d: ShiftPoly

    @classmethod
    def from_ints(cls, a=0, b=0, c=0, d=0):
        return cls(*(ShiftPoly((x,)) for x in (a, b, c, d)))


class BettiTable:
    """Free ranks by degree, finitely supported.

    >>> BettiTable({0: 1, 1: 4, 2: 5}).as_tuple()
    (1, 4, 5)
    """

    __slots__ = ("ranks",)

    def __init__(self, ranks):
        self.ranks = {int(p): int(v) for p, v in dict(ranks).items() if v}
        for p, v in self.ranks.items():
            if p < 0 or v < 0:
                raise InputError("Betti numbers live in nonnegative degrees")

    def __getitem__(self, p):
        return self.ranks.get(p, 0)

    def top_degree(self):
        return max(self.ranks, default=-1)

    def as_tuple(self):
        return tuple(self[p] for p in range(self.top_degree() + 1))

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.ranks == other.ranks

    def __repr__(self):
        return "BettiTable(%r)" % (self.ranks,)

    def to_json(self):
        return {str(p): self[p] for p in range(self.top_degree() + 1)}


def _two_edge_graphs():
    # In the fixed display order: {13,23}, {12,23}, {12,13}.
    return (
        Graph(3, [(1, 3), (2, 3)]),
        Graph(3, [(1, 2), (2, 3)]),
        Graph(3, [(1, 2), (1, 3)]),
    )


def building_blocks():
    """The four blocks A, B, C, D of the circle model and its products.

    >>> a, b, c, d = building_blocks()
    >>> a.ranks, b.ranks, c.ranks, d.ranks
    ((1,), (1, 3), (0, 0, 1), (0, 0, 3))
    """
    k3 = complete_graph(3)
    two_edge = _two_edge_graphs()
    a = representable(k3)
    b = PresheafComplex(
        3, [(k3,), two_edge], [{(0, 0): 1, (1, 0): 1, (2, 0): 1}]
    )
    c = representable(empty_graph(3), 2)
    d = PresheafComplex(3, [(), (), two_edge], [(), ()])
    return a, b, c, d


def circle_model():
    """M = A ⊕ B ⊕ C, the pruned model of three points on a circle
    modulo rotation.  Evaluated at the complete graph it has H_0 = Z²:
    the two cyclic orders of three points on a circle.
    """
    a, b, c, _ = building_blocks()
    return direct_sum(a, direct_sum(b, c))


def realize(vector):
    """The complex P(a, b, c, d): each block repeated and shifted as its
    polynomial dictates (coefficient of s^i = copies shifted by i).
    """
    out = empty_complex(3)
    for block, poly in zip(building_blocks(), (vector.a, vector.b, vector.c, vector.d)):
        for i, count in enumerate(poly.coefficients):
            for _ in range(count):
                out = direct_sum(out, shift(block, i))
    return out


def _poly(*coeffs):
    return ShiftPoly(coeffs)


# Multiplying the circle model into P(a,b,c,d) acts on the block
# multiplicities by this matrix over N[s] (rows give the new a,b,c,d).
TRANSFER_MATRIX = (
    (_poly(1, 2, 1), _poly(0, 2, 1), _poly(0, 0, 1), _poly(0, 0, 3, 3)),
    (_poly(), _poly(0, 0, 1), _poly(0, 0, 1), _poly()),
    (_poly(), _poly(), _poly(0, 0, 1), _poly()),
    (_poly(), _poly(1), _poly(), _poly(0, 1, 1)),
)


def transfer_step(vector):
    """One multiplication by the circle model, on block multiplicities.

    >>> v = transfer_step(BuildingBlockVector.from_ints(1, 1, 1, 0))
    >>> print(v.a, '|', v.b, '|', v.c, '|', v.d)
    1 + 4s + 3s^2 | 2s^2 | s^2 | 1
    """
    column = (vector.a, vector.b, vector.c, vector.d)
    return BuildingBlockVector(
        *(
            sum(
                (entry * coord for entry, coord in zip(row, column)),
                ShiftPoly.zero(),
            )
            for row in TRANSFER_MATRIX
        )
    )


def torus_betti(r):
    """Betti numbers of three points on the rank-r torus, mod rotation.

    Iterates the transfer matrix r-1 times from the circle model's
    multiplicities (1, 1, 1, 0); only the A and B blocks contribute to
    homology at the complete graph (one Z each, in their shift degree),
    so the answer is the coefficient list of a + b.

    >>> torus_betti(1).as_tuple()
    (2,)
    >>> torus_betti(3).as_tuple()
    (1, 6, 15, 17, 9)
    """
    if r < 1:
        raise InputError("torus rank must be at least 1, got %r" % (r,))
    v = BuildingBlockVector.from_ints(1, 1, 1, 0)
    for _ in range(r - 1):
        v = transfer_step(v)
    poly = v.a + v.b
    return BettiTable(dict(enumerate(poly.coefficients)))


def closed_formula_betti(r):
    """The closed form: β_{2r-2} = r(r+3)/2 on top, and below the top
    β_p = C(2r, p) - 3·C(r, p - r), with C(·, negative) = 0.

    >>> closed_formula_betti(1).as_tuple()
    (2,)
    >>> closed_formula_betti(2).as_tuple()
    (1, 4, 5)
    """
    if r < 1:
        raise InputError("torus rank must be at least 1, got %r" % (r,))
    ranks = {2 * r - 2: r * (r + 3) // 2}
    for p in range(2 * r - 2):
        low = comb(r, p - r) if p >= r else 0
        ranks[p] = comb(2 * r, p) - 3 * low
    return BettiTable(ranks)


DIRECT_CHECK_MAX_RANK = 3


def direct_betti(r):
    """Betti numbers of the rank-r torus computed the slow honest way:
    actually take the r-fold ⊙ power of the circle model (pruning after
    each factor), evaluate at the complete graph, and run homology.
    Returns (BettiTable, torsion) where torsion collects all nonfree
    parts found (these groups are torsion-free, so anything collected
    is a bug).
    """
    if r < 1:
        raise InputError("torus rank must be at least 1, got %r" % (r,))
    if r > DIRECT_CHECK_MAX_RANK:
        raise ResourceLimitError(
            "the direct ⊙-power check is capped at rank %d (asked for %d)"
            % (DIRECT_CHECK_MAX_RANK, r),
            requested=r,
            limit=DIRECT_CHECK_MAX_RANK,
        )
    m = circle_model()
    power = m
    for _ in range(r - 1):
        power = prune(odot(power, m))
    summaries = evaluate(power, complete_graph(3)).homology()
    ranks = {s.degree: s.betti for s in summaries}
    torsion = [(s.degree, s.torsion) for s in summaries if s.torsion]
    return BettiTable(ranks), torsion


@dataclass(frozen=True)
class TableCheck:
    """Outcome of one cell of the ⊙ multiplication table."""

    left: str
    right: str
    expected: str
    passed: bool
    mismatches: tuple

    def __str__(self):
        status = "ok" if self.passed else "MISMATCH"
        out = "%s ⊙ %s = %s: %s" % (self.left, self.right, self.expected, status)
        for line in self.mismatches:
            out += "\n    " + line
        return out


# The twelve table cells: (row block, column block, expected mix).
_TABLE = (
    ("A", "A", "A", BuildingBlockVector(_poly(1), _poly(), _poly(), _poly())),
    ("A", "B", "A[1]^2", BuildingBlockVector(_poly(0, 2), _poly(), _poly(), _poly())),
    ("A", "C", "A[2]", BuildingBlockVector(_poly(0, 0, 1), _poly(), _poly(), _poly())),
    ("A", "D", "A[2]^3", BuildingBlockVector(_poly(0, 0, 3), _poly(), _poly(), _poly())),
    ("B", "A", "A[1]^2", BuildingBlockVector(_poly(0, 2), _poly(), _poly(), _poly())),
    ("B", "B", "D + A[2]", BuildingBlockVector(_poly(0, 0, 1), _poly(), _poly(), _poly(1))),
    ("B", "C", "B[2]", BuildingBlockVector(_poly(), _poly(0, 0, 1), _poly(), _poly())),
    ("B", "D", "D[1] + A[3]^3", BuildingBlockVector(_poly(0, 0, 0, 3), _poly(), _poly(), _poly(0, 1))),
    ("C", "A", "A[2]", BuildingBlockVector(_poly(0, 0, 1), _poly(), _poly(), _poly())),
    ("C", "B", "B[2]", BuildingBlockVector(_poly(), _poly(0, 0, 1), _poly(), _poly())),
    ("C", "C", "C[2]", BuildingBlockVector(_poly(), _poly(), _poly(0, 0, 1), _poly())),
    ("C", "D", "D[2]", BuildingBlockVector(_poly(), _poly(), _poly(), _poly(0, 0, 1))),
)


def _pointwise_mismatches(got, want):
    """Human-readable differences in homology at each graph/degree."""
    left = pointwise_homology(got)
    right = pointwise_homology(want)
    lines = []
    for g in left:
        by_degree = {}
        for s in left[g]:
            if not s.is_zero:
                by_degree.setdefault(s.degree, [None, None])[0] = s
        for s in right[g]:
            if not s.is_zero:
                by_degree.setdefault(s.degree, [None, None])[1] = s
        for degree in sorted(by_degree):
            mine, theirs = by_degree[degree]
            if (
                mine is None
                or theirs is None
                or (mine.betti, mine.torsion) != (theirs.betti, theirs.torsion)
            ):
                lines.append(
                    "at %s degree %d: got %s, expected %s"
                    % (
                        g,
                        degree,
                        "0" if mine is None else mine.group_name(),
                        "0" if theirs is None else theirs.group_name(),
                    )
                )
    return tuple(lines)


def verify_multiplication_table():
    """Check all twelve ⊙ products of blocks against the stated answers.

    Each cell computes prune(odot(row block, column block)) and compares
    pointwise homology with the expected block combination; the report
    lists per-cell results, with per-graph detail on any mismatch.
    """
    blocks = dict(zip("ABCD", building_blocks()))
    report = []
    for left, right, description, expect_vector in _TABLE:
        got = prune(odot(blocks[left], blocks[right]))
        want = realize(expect_vector)
        mismatches = _pointwise_mismatches(got, want)
        report.append(
            TableCheck(left, right, description, not mismatches, mismatches)
        )
    return report


if __name__ == "__main__":
    import doctest

    doctest.testmod()
