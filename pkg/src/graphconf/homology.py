"""Exact integer linear algebra: Smith normal form and chain homology.

Everything here is over Z with arbitrary-precision integers, so results
are exact.  The two entry points are

* ``smith(M)`` — the invariant factors d1 | d2 | ... | dr of an integer
  matrix, plus its rank r, and
* ``chain_homology(C)`` — Betti numbers and torsion of a chain complex
  of free Z-modules, degree by degree.

The matrix convention throughout the package is rows-as-domain: the
matrix of a map f: A -> B has one row per basis element of A and one
column per basis element of B, and composition A -> B -> C is the
ordinary product (matrix of A->B) @ (matrix of B->C).

Smith normal form runs in two phases.  Most matrices that show up here
are sparse with many ±1 entries (boundary matrices of simplicial
complexes), so a sparse elimination pass pivots on ±1 entries first,
choosing pivots by Markowitz cost (row fill × column fill) to keep
fill-in down; every such pivot contributes an invariant factor 1.
Whatever remains has no unit entries and is typically tiny; it is
densified and finished off by the classical algorithm (repeatedly
position the entry of least absolute value, clear its row and column by
Euclidean steps, then fix up divisibility).

>>> smith([[2, 0], [0, 3]])
((1, 6), 2)
>>> smith([[0, 0], [0, 0]])
((), 0)
"""

import heapq
from dataclasses import dataclass

from .errors import InputError

# Matrices are passed around sparsely as tuples (nrows, ncols, entries)
# where entries is a sequence of (row, col, value) with value != 0.


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> xgcd(0, -5)
    (5, 0, -1)
    """
    # Invariants maintained: old_r == a*old_x + b*old_y, r == a*x + b*y.
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith(matrix):
    """Invariant factors and rank of an integer matrix.

    ``matrix`` is a list of rows (lists of ints).  Returns a pair
    ``(factors, rank)`` where factors is a tuple of positive integers
    with each dividing the next, and rank = len(factors).

    >>> smith([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    ((1, 1, 1), 3)
    >>> smith([[2, 4], [4, 8]])
    ((2,), 1)
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    entries = [
        (r, c, v)
        for r, row in enumerate(matrix)
        for c, v in enumerate(row)
        if v
    ]
    factors = invariant_factors_sparse(nrows, ncols, entries)
    return factors, len(factors)


def invariant_factors_sparse(nrows, ncols, entries):
    """Invariant factors of a matrix given as (row, col, value) triples.

    The workhorse behind :func:`smith`; accepts the sparse form directly
    so boundary matrices never need densifying up front.
    """
    rows = {}
    col_rows = {}
    for r, c, v in entries:
        if not v:
            continue
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise InputError(
                "entry (%d, %d) outside a %d x %d matrix" % (r, c, nrows, ncols)
            )
        row = rows.setdefault(r, {})
        if c in row:
            raise InputError("duplicate entry at (%d, %d)" % (r, c))
        row[c] = v
        col_rows.setdefault(c, set()).add(r)

    unit_count = _eliminate_unit_pivots(rows, col_rows)

    # Densify the leftover block (no ±1 entries remain in it).
    leftover = sorted(
        (r, c, v) for r, row in rows.items() for c, v in row.items()
    )
    if not leftover:
        return (1,) * unit_count
    live_rows = sorted({r for r, _, _ in leftover})
    live_cols = sorted({c for _, c, _ in leftover})
    rmap = {r: i for i, r in enumerate(live_rows)}
    cmap = {c: j for j, c in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for r, c, v in leftover:
        dense[rmap[r]][cmap[c]] = v
    tail = _dense_invariant_factors(dense)
    return (1,) * unit_count + tail


def _eliminate_unit_pivots(rows, col_rows):
    """Pivot away every ±1 entry via Schur complements; returns the count.

    ``rows`` maps row index -> {col: value} and ``col_rows`` maps column
    index -> set of row indices with a nonzero entry there.  Both are
    consumed destructively; what remains on return has no ±1 entries.

    Pivoting on a unit u at (r, c) replaces every other entry by
    M[r', c'] - M[r', c] * u * M[r, c'] (note 1/u == u for u = ±1) and
    then deletes row r and column c; the invariant factors of the
    original matrix are 1 followed by those of the remainder.
    """
    heap = []
    for r, row in rows.items():
        for c, v in row.items():
            if v in (1, -1):
                heapq.heappush(heap, (len(row) * len(col_rows[c]), r, c))
    count = 0
    while heap:
        cost, r, c = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        unit = row.get(c)
        if unit not in (1, -1):
            continue
        true_cost = len(row) * len(col_rows[c])
        if true_cost > cost:
            # Stale cheap estimate; requeue at the real cost so a
            # genuinely sparser pivot gets its turn first.
            heapq.heappush(heap, (true_cost, r, c))
            continue
        # Detach the pivot row and column from the indices.
        del rows[r]
        del row[c]
        for c2 in row:
            col_rows[c2].discard(r)
        other_rows = col_rows.pop(c)
        other_rows.discard(r)
        # Schur complement update on the surviving block.
        for r2 in other_rows:
            row2 = rows[r2]
            factor = row2.pop(c) * unit
            for c2, v in row.items():
                new = row2.get(c2, 0) - factor * v
                if new:
                    if c2 not in row2:
                        col_rows[c2].add(r2)
                    row2[c2] = new
                    if new in (1, -1):
                        heapq.heappush(
                            heap, (len(row2) * len(col_rows[c2]), r2, c2)
                        )
                elif c2 in row2:
                    del row2[c2]
                    col_rows[c2].discard(r2)
            if not row2:
                del rows[r2]
        count += 1
    return count


def _dense_invariant_factors(m):
    """Classical Smith reduction of a dense matrix (destroys ``m``)."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    factors = []
    for t in range(min(nrows, ncols)):
        if not _position_least_pivot(m, t):
            break
        while True:
            _clear_cross(m, t)
            if not _absorb_nondivisible_row(m, t):
                break
        pivot = m[t][t]
        if pivot < 0:
            m[t][t] = pivot = -pivot
        factors.append(pivot)
    return tuple(factors)


def _position_least_pivot(m, t):
    """Swap a nonzero entry of least |value| in m[t:, t:] into (t, t)."""
    best = None
    for i in range(t, len(m)):
        mi = m[i]
        for j in range(t, len(mi)):
            v = mi[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    break
        if best is not None and best[0] == 1:
            break
    if best is None:
        return False
    _, i, j = best
    if i != t:
        m[t], m[i] = m[i], m[t]
    if j != t:
        for row in m:
            row[t], row[j] = row[j], row[t]
    return True


def _clear_cross(m, t):
    """Euclidean elimination making (t, t) the only nonzero in row/col t.

    Each pass reduces every entry of column t below the pivot modulo the
    pivot; a nonzero remainder is strictly smaller in absolute value, so
    swapping it into the pivot slot and restarting terminates.  Same for
    row t with column operations.
    """
    nrows, ncols = len(m), len(m[0])
    while True:
        pivot = m[t][t]
        restarted = False
        for i in range(t + 1, nrows):
            if m[i][t]:
                q = m[i][t] // pivot
                if q:
                    mi, mt = m[i], m[t]
                    for j in range(t, ncols):
                        mi[j] -= q * mt[j]
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    restarted = True
                    break
        if restarted:
            continue
        for j in range(t + 1, ncols):
            if m[t][j]:
                q = m[t][j] // pivot
                if q:
                    for i in range(t, nrows):
                        m[i][j] -= q * m[i][t]
                if m[t][j]:
                    for i in range(t, nrows):
                        m[i][t], m[i][j] = m[i][j], m[i][t]
                    restarted = True
                    break
        if not restarted:
            return


def _absorb_nondivisible_row(m, t):
    """If some entry below/right of (t, t) is not divisible by the pivot,
    add its row into row t (forcing the next clearing pass to shrink the
    pivot to a proper divisor).  Returns True when it did so.
    """
    pivot = m[t][t]
    for i in range(t + 1, len(m)):
        mi = m[i]
        for j in range(t + 1, len(mi)):
            if mi[j] % pivot:
                mt = m[t]
                for k in range(t, len(mt)):
                    mt[k] += mi[k]
                return True
    return False


def rank_sparse(nrows, ncols, entries):
    """Rank over Q of a sparse integer matrix (exact)."""
    return len(invariant_factors_sparse(nrows, ncols, entries))


@dataclass(frozen=True)
class HomologySummary:
    """Homology of one degree: free rank plus cyclic torsion factors.

    ``torsion`` lists the invariant factors bigger than 1 in divisibility
    order, so e.g. H = Z^2 + Z/2 + Z/6 is (betti=2, torsion=(2, 6)).

    >>> print(HomologySummary(0, 2, (2, 6)))
    H_0 = Z^2 + Z/2 + Z/6
    >>> print(HomologySummary(3, 0, ()))
    H_3 = 0
    """

    degree: int
    betti: int
    torsion: tuple

    def __post_init__(self):
        if self.betti < 0:
            raise InputError("negative free rank in degree %d" % self.degree)
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InputError(
                    "torsion factors %r not in divisibility order"
                    % (self.torsion,)
                )

    @property
    def is_zero(self):
        return self.betti == 0 and not self.torsion

    def group_name(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append("Z^%d" % self.betti)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return "H_%d = %s" % (self.degree, self.group_name())

    def to_json(self):
        return {
            "degree": self.degree,
            "betti": self.betti,
            "torsion": list(self.torsion),
        }


def compose_entries(shape_a, entries_a, shape_b, entries_b):
    """Sparse product A @ B given as triple lists; returns triples.

    A is shape_a = (p, q), B is shape_b = (q, s); with rows-as-domain
    this is the matrix of the composite map.
    """
    p, q = shape_a
    q2, s = shape_b
    if q != q2:
        raise InputError("shapes %r and %r do not compose" % (shape_a, shape_b))
    b_rows = {}
    for r, c, v in entries_b:
        b_rows.setdefault(r, []).append((c, v))
    acc = {}
    for r, k, v in entries_a:
        for c, w in b_rows.get(k, ()):
            key = (r, c)
            acc[key] = acc.get(key, 0) + v * w
    return [(r, c, v) for (r, c), v in acc.items() if v]


def chain_homology(complex_):
    """Homology of an integer chain complex, one summary per degree.

    ``complex_`` needs two attributes: ``ranks`` (rank of the free
    module in each degree, degree 0 first) and ``differentials``, where
    ``differentials[d]`` is the list of (row, col, value) triples of the
    boundary map from degree d+1 to degree d (rows-as-domain, so it has
    ranks[d+1] rows and ranks[d] columns).

    In degree d the free rank is

        betti_d = ranks[d] - rank(out of degree d) - rank(into degree d)

    and the torsion subgroup is the product of Z/f over the invariant
    factors f > 1 of the incoming boundary map.

    Raises InputError unless consecutive boundary maps compose to zero.
    """
    ranks = list(complex_.ranks)
    diffs = [list(d) for d in complex_.differentials]
    top = len(ranks) - 1
    if len(diffs) != max(top, 0):
        raise InputError(
            "%d degrees need %d differentials, got %d"
            % (len(ranks), max(top, 0), len(diffs))
        )
    for d in range(top - 1):
        square = compose_entries(
            (ranks[d + 2], ranks[d + 1]),
            diffs[d + 1],
            (ranks[d + 1], ranks[d]),
            diffs[d],
        )
        if square:
            raise InputError(
                "boundary maps into degree %d do not square to zero" % d
            )
    factor_lists = [
        invariant_factors_sparse(ranks[d + 1], ranks[d], diffs[d])
        for d in range(top)
    ]
    summaries = []
    for d in range(top + 1):
        rank_in = len(factor_lists[d]) if d < top else 0
        rank_out = len(factor_lists[d - 1]) if d > 0 else 0
        betti = ranks[d] - rank_in - rank_out
        torsion = tuple(f for f in factor_lists[d]) if d < top else ()
        torsion = tuple(f for f in torsion if f > 1)
        summaries.append(HomologySummary(d, betti, torsion))
    return summaries


if __name__ == "__main__":
    import doctest

    doctest.testmod()
