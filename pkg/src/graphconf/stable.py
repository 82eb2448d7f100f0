"""Stable homology of configurations in a product with big flat factors.

As p grows, the homology of Conf(n, X × ℂ^p) settles into a pattern:
H_{mp+b} no longer depends on p.  The mechanism is that the chain
diagram of Conf(−, ℂ) over 𝒢(n) is *formal*: its pruned model splits
as a direct sum of pieces P_0, ..., P_{n-1}, where P_i carries all of
the degree-i homology (pointwise, at every graph) and nothing else.
Each P_i is a chain model of the homology presheaf F_i, shifted up i
degrees.  The pieces multiply like orthogonal idempotents under the
union-tensor:

    F_i ⊙ F_j  ≃  F_i[i]   if i = j,        (and 0 otherwise)

so ⊙-ing a model of ℂ^p against a model M of Conf(−, X) spreads out
into shifted copies of M ⊙ F_i, one per piece, with shifts growing
linearly in p.  In the window mp+b that growth freezes: for p past an
explicit bound only the i = m/2 piece can contribute, and the stable
group is the homology of a single product M ⊙ F_{m/2}, independent of
p.  Odd m gets nothing at all.

The module computes: a pruned model of Conf(−, ℂ) on up to three
points (``plane_model``), its splitting into pieces
(``formality_split``), the orthogonality relations
(``StablePresheafModel.orthogonality_check``), exact homology of
Conf(n, X × ℂ^p) at finite p (``cp_homology``), and the stable group
with its stabilization bound (``stable_homology``).

>>> model = formality_split(plane_model(2))
>>> [piece.ranks for piece in model.pieces]
[(1, 0, 0, 0, 0), (0, 1, 1, 0, 0)]
>>> model.orthogonality_check(0, 1)
True
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, floor

from .errors import InputError, ResourceLimitError, SplittingError
from .graphs import complete_graph
from .complexes import (
    PresheafComplex,
    direct_sum,
    empty_complex,
    evaluate,
    odot,
    pointwise_homology,
    qis_test,
    shift,
)
from .covers import DEFAULT_SUBDIVISIONS, letter, star_model
from .homology import HomologySummary
from .pruning import prune, split_summands

# Beyond three points the plane model's splitting (and everything
# downstream) is out of computational reach for this engine.
MAX_PLANE_POINTS = 3


def _down_shift(complex_, k):
    """Drop k empty bottom degrees, inverting shift(−, k).

    The pieces of the formality splitting store F_i[i]; the relations
    and the stable formula want F_i itself, so the shift has to come
    back off.  Only defined when nothing lives below degree k.
    """
    if k == 0:
        return complex_
    if any(complex_.ranks[d] for d in range(min(k, len(complex_.degrees)))):
        raise InputError(
            "cannot shift down by %d: generators live below degree %d" % (k, k)
        )
    return PresheafComplex(
        complex_.n, complex_.degrees[k:], complex_.differentials[k:]
    )


@lru_cache(maxsize=None)
def plane_model(n):
    """A pruned presheaf model of Conf(−, ℂ) on n ≤ 3 points.

    The plane is replaced by a compact square — configuration diagrams
    only see the homotopy type — and the square is the product of two
    intervals, so its model is the interval model ⊙-ed with itself.
    Building the square's triangulated n-fold power directly gives the
    same pointwise homology (checked at n = 2, where that build is
    affordable) but needs hundreds of millions of simplices at n = 3;
    the product route is exact and takes milliseconds.

    >>> [s.betti for s in evaluate(plane_model(2), complete_graph(2)).homology()]
    [1, 1, 0, 0, 0]
    >>> plane_model(3).ranks
    (1, 3, 5, 3, 1, 0, 0)
    """
    if n < 1:
        raise InputError("need at least one point, got n=%r" % (n,))
    if n > MAX_PLANE_POINTS:
        raise ResourceLimitError(
            "plane models stop at n=%d points (requested n=%d)"
            % (MAX_PLANE_POINTS, n),
            requested=n,
            limit=MAX_PLANE_POINTS,
        )
    interval = star_model(letter("Z"), n, DEFAULT_SUBDIVISIONS)
    return prune(odot(interval, interval))


def _homology_degrees(complex_):
    """The set of degrees where some evaluation has nonzero homology."""
    degrees = set()
    for summaries in pointwise_homology(complex_).values():
        degrees.update(s.degree for s in summaries if not s.is_zero)
    return degrees


@dataclass(frozen=True)
class StablePresheafModel:
    """The formality splitting of a plane model: pieces P_0 … P_{n-1}.

    Piece i is a chain model of F_i[i]: its pointwise homology sits in
    degree i alone, where it equals the degree-i homology of Conf(−, ℂ).
    """

    n: int
    pieces: tuple

    def __post_init__(self):
        if len(self.pieces) != self.n:
            raise InputError(
                "expected %d pieces, got %d" % (self.n, len(self.pieces))
            )
        for piece in self.pieces:
            if piece.n != self.n:
                raise InputError("piece on wrong vertex set")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def f_model(self, i):
        """Piece i shifted back down: a model of the presheaf F_i itself."""
        return _down_shift(self.pieces[i], i)

    def orthogonality_check(self, i, j):
        """Do F_i and F_j multiply as expected under ⊙?

        True when prune(F_i ⊙ F_j) has the pointwise homology of
        F_i[i] for i = j and of the zero complex otherwise.

        >>> model = formality_split(plane_model(2))
        >>> [model.orthogonality_check(i, j) for i in (0, 1) for j in (0, 1)]
        [True, True, True, True]
        """
        got = prune(odot(self.f_model(i), self.f_model(j)))
        if i == j:
            expected = shift(self.f_model(i), i)
        else:
            expected = empty_complex(self.n)
        return qis_test(got, expected)


def formality_split(complex_):
    """Split a plane model into its one-degree-of-homology pieces.

    Decomposes prune(complex_) into the summands its differentials
    connect, classifies each summand by the single degree where its
    pointwise homology is nonzero, and groups summands with the same
    degree into one piece.  The input should be plane_model(n): for a
    general complex there is no reason for the summands to be
    homologically concentrated, and any summand with homology in two
    degrees (or none at all, or a degree ≥ n) aborts the split.

    >>> model = formality_split(plane_model(3))
    >>> [piece.ranks for piece in model.pieces]
    [(1, 0, 0, 0, 0, 0, 0), (0, 3, 3, 0, 0, 0, 0), (0, 0, 2, 3, 1, 0, 0)]
    """
    n = complex_.n
    grouped = {}
    for summand in split_summands(prune(complex_)):
        degrees = _homology_degrees(summand)
        if len(degrees) != 1:
            raise SplittingError(
                "summand has pointwise homology in degrees %s, not one"
                % (sorted(degrees),),
                summand=summand,
            )
        (d,) = degrees
        if d >= n:
            raise SplittingError(
                "summand concentrated in degree %d, beyond the %d pieces"
                % (d, n),
                summand=summand,
            )
        grouped[d] = (
            summand if d not in grouped else direct_sum(grouped[d], summand)
        )
    missing = [i for i in range(n) if i not in grouped]
    if missing:
        raise SplittingError(
            "no summand realizes homological degree %s" % (missing,),
            summand=None,
        )
    return StablePresheafModel(n, tuple(grouped[i] for i in range(n)))


@lru_cache(maxsize=None)
def stable_model(n):
    """The cached splitting formality_split(plane_model(n))."""
    return formality_split(plane_model(n))


def _summary_at(summaries, degree):
    for s in summaries:
        if s.degree == degree:
            return s
    return HomologySummary(degree, 0, ())


def cp_homology(model, p, degree):
    """One homology group of Conf(n, X × ℂ^p), exactly, at finite p.

    ``model`` is a presheaf model of Conf(−, X) over 𝒢(n) (n ≤ 3).
    A model of Conf(−, X × ℂ^p) is assembled as the direct sum over i
    of M ⊙ F_i[(2p−1)i]; since piece i already carries a shift by i,
    the extra shift applied here is (2p−2)i.  The requested degree is
    then read off the evaluation at K_n.

    Two points on an interval crossed with one plane factor live in a
    three-dimensional slab, so their configuration space is a 2-sphere:

    >>> m = star_model(letter("Z"), 2, 2)
    >>> [str(cp_homology(m, 1, d)) for d in (1, 2)]
    ['H_1 = 0', 'H_2 = Z']
    """
    if p < 1:
        raise InputError("need p >= 1, got p=%r" % (p,))
    if degree < 0:
        raise InputError("negative homology degree %r" % (degree,))
    pieces = stable_model(model.n).pieces
    total = None
    for i, piece in enumerate(pieces):
        term = prune(odot(model, shift(piece, (2 * p - 2) * i)))
        total = term if total is None else direct_sum(total, term)
    summaries = evaluate(total, complete_graph(model.n)).homology()
    return _summary_at(summaries, degree)


def stable_homology(model, m, b):
    """The eventual H_{mp+b} of Conf(n, X × ℂ^p), with its bound.

    Returns (group, bound): the group that H_{mp+b} equals for every
    p > bound, and the smallest such bound the stabilization estimate
    certifies.  For odd m the stable group is zero.  For even m only
    the piece i = m/2 survives the window, and the group is
    H_{m/2+b}((M ⊙ F_{m/2}) at K_n) — computed here after shifting the
    piece back down; no piece exists for m/2 ≥ n, so those groups are
    zero too.

    The bound is the least p with 2p > max{b + m/2 + 1,
    C(n,2) + n·d − b − m/2 − 1}, where d is the chain degree of the
    triangulated product the model came from (recorded by star_model
    before pruning).

    >>> m = star_model(letter("Z"), 2, 2)
    >>> group, bound = stable_homology(m, 2, 0)
    >>> print(group); bound
    H_1 = Z
    2
    """
    if m < 0:
        raise InputError("negative stable slope m=%r" % (m,))
    n = model.n
    d = model.source_top_degree
    if d is None:
        raise InputError(
            "the model does not record the top degree of the complex it "
            "was pruned from; build it with star_model"
        )
    half = Fraction(m, 2)
    threshold = max(b + half + 1, comb(n, 2) + n * d - b - half - 1)
    bound = max(1, floor(threshold / 2) + 1)
    target = m // 2 + b
    if m % 2 or m // 2 >= n or target < 0:
        return HomologySummary(max(target, 0), 0, ()), bound
    piece = stable_model(n).f_model(m // 2)
    product = prune(odot(model, piece))
    summaries = evaluate(product, complete_graph(n)).homology()
    return _summary_at(summaries, target), bound


if __name__ == "__main__":
    import doctest

    doctest.testmod()
