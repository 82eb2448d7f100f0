"""Reduction of labeled chain complexes by cancelling acyclic pieces.

If a differential has an entry ±1 whose row label *equals* its column
label, the two generators span a two-term summand that contributes
nothing to homology at any graph, and they can be cancelled.  Clearing
the pivot's row and column first needs only label-legal elementary
operations:

* row r' += λ·row r is a change of basis in the domain and is allowed
  exactly when label(r') ⊆ label(r) — automatic here, since a nonzero
  entry in the pivot column forces label(r') ⊆ label(pivot column) =
  label(pivot row);
* col c' += μ·col c is a change of basis in the codomain, allowed when
  label(c) ⊆ label(c') — automatic for entries in the pivot row.

Each basis change must be mirrored on the neighbouring differential
(a column operation there for a domain change, a row operation for a
codomain change) to keep d∘d = 0.  For a pivot elimination the mirror
operations land entirely on the row/column that is about to be deleted,
so in practice the neighbours only ever see deletions; the surviving
block of the pivot's own matrix picks up the Schur-complement update
M[r', c'] -= M[r', c] · ε · M[r, c'] with ε = ±1 the pivot.

Pivots are taken in a fixed deterministic order — differentials from
the lowest degree up, and within one differential by (row, column)
position in the ambient basis, rescanning after every elimination — so
a given input always reduces to the same output.  A cancellation in one
differential can only create new unit pivots in that same differential
(its neighbours only lose lines), which is why a per-differential heap
of candidate positions reproduces the rescan order without the rescan.

``prune_smith`` goes further: a block whose row and column labels all
equal a single Γ admits every elementary operation, so whenever the gcd
of such a block is 1 a ±1 entry can be manufactured by Euclidean steps
(this time with honest mirrored operations) and cancelled as usual.

>>> from .graphs import Graph, empty_graph, complete_graph
>>> from .complexes import PresheafComplex
>>> e, k = empty_graph(2), complete_graph(2)
>>> interval = PresheafComplex(
...     2, [(k, e, k), (e, e)],
...     [{(0, 0): -1, (0, 1): 1, (1, 1): -1, (1, 2): 1}])
>>> small = prune(interval)
>>> small.ranks
(2, 1)
>>> small.differentials[0].dense()
[[-1, 1]]
"""

import heapq
from math import gcd

from .errors import InputError
from .complexes import PresheafComplex, label_leq, validate


def _validated(complex_):
    problems = validate(complex_)
    if problems:
        raise InputError(
            "refusing to prune an ill-formed complex: %s" % "; ".join(problems[:3])
        )
    return complex_


class _Workspace:
    """Mutable sparse copy of a complex, indexed for row/column surgery.

    Per differential d: ``rows[d][r]`` is the sparse row {col: value}
    and ``cols[d][c]`` the set of rows with a nonzero entry in column c.
    Generators keep their original indices throughout; ``alive[k]``
    tracks which degree-k generators still exist.  Deletions preserve
    relative order, so original indices double as a stable scan order.
    """

    def __init__(self, complex_):
        self.n = complex_.n
        self.labels = [basis for basis in complex_.degrees]
        self.alive = [set(range(len(b))) for b in self.labels]
        self.rows = []
        self.cols = []
        for mat in complex_.differentials:
            rowmap, colmap = {}, {}
            for (r, c), v in mat.entries.items():
                rowmap.setdefault(r, {})[c] = v
                colmap.setdefault(c, set()).add(r)
            self.rows.append(rowmap)
            self.cols.append(colmap)

    @classmethod
    def adopt(cls, n, labels, rows):
        """Wrap pre-indexed sparse rows without copying them.

        ``rows[d]`` must map row index -> {col index: value} for the
        d-th differential and ownership passes to the workspace (the
        caller must not keep using the dicts).  No validation happens
        here; the construction feeding this is correct by design and
        revalidating would double the peak memory for the largest
        models, which is exactly what this path exists to avoid.
        """
        ws = cls.__new__(cls)
        ws.n = n
        ws.labels = labels
        ws.alive = [set(range(len(b))) for b in labels]
        ws.rows = rows
        ws.cols = []
        for rowmap in rows:
            colmap = {}
            for r, row in rowmap.items():
                for c in row:
                    colmap.setdefault(c, set()).add(r)
            ws.cols.append(colmap)
        return ws

    # -- raw line operations (no mirroring, no legality checks) --------

    def _row_add(self, d, dst, src, coef):
        rows_d, cols_d = self.rows[d], self.cols[d]
        srow = rows_d.get(src)
        if not srow or not coef:
            return
        drow = rows_d.setdefault(dst, {})
        for c, v in srow.items():
            new = drow.get(c, 0) + coef * v
            if new:
                if c not in drow:
                    cols_d.setdefault(c, set()).add(dst)
                drow[c] = new
            elif c in drow:
                del drow[c]
                cols_d[c].discard(dst)

    def _col_add(self, d, dst, src, coef):
        rows_d, cols_d = self.rows[d], self.cols[d]
        scol = cols_d.get(src)
        if not scol or not coef:
            return
        for r in list(scol):
            row = rows_d[r]
            new = row.get(dst, 0) + coef * row[src]
            if new:
                if dst not in row:
                    cols_d.setdefault(dst, set()).add(r)
                row[dst] = new
            elif dst in row:
                del row[dst]
                cols_d[dst].discard(r)

    # -- legal basis changes, mirrored on the neighbour -----------------

    def basis_row_op(self, d, dst, src, coef):
        """row dst += coef·row src on differential d (domain basis change)."""
        assert label_leq(self.labels[d + 1][dst], self.labels[d + 1][src])
        self._row_add(d, dst, src, coef)
        if d + 1 < len(self.rows):
            self._col_add(d + 1, src, dst, -coef)

    def basis_col_op(self, d, dst, src, coef):
        """col dst += coef·col src on differential d (codomain basis change)."""
        assert label_leq(self.labels[d][src], self.labels[d][dst])
        self._col_add(d, dst, src, coef)
        if d >= 1:
            self._row_add(d - 1, src, dst, -coef)

    # -- pivot cancellation ---------------------------------------------

    def eliminate(self, d, r, c, heap):
        """Cancel the unit pivot at (r, c) of differential d.

        Equal labels and pivot value ±1 are the caller's responsibility.
        New unit candidates created by the Schur update are pushed onto
        ``heap`` (they can only appear in this same differential).
        """
        rows_d, cols_d = self.rows[d], self.cols[d]
        pivot_row = rows_d.pop(r)
        eps = pivot_row.pop(c)
        for c2 in pivot_row:
            cols_d[c2].discard(r)
        pivot_col = cols_d.pop(c)
        pivot_col.discard(r)
        row_labels, col_labels = self.labels[d + 1], self.labels[d]
        for r2 in pivot_col:
            row2 = rows_d[r2]
            factor = row2.pop(c) * eps
            for c2, v in pivot_row.items():
                new = row2.get(c2, 0) - factor * v
                if new:
                    if c2 not in row2:
                        cols_d.setdefault(c2, set()).add(r2)
                    row2[c2] = new
                    if new in (1, -1) and row_labels[r2] == col_labels[c2]:
                        heapq.heappush(heap, (r2, c2))
                elif c2 in row2:
                    del row2[c2]
                    cols_d[c2].discard(r2)
            if not row2:
                del rows_d[r2]
        # Drop the two generators; the mirrored operations on the
        # neighbouring differentials only ever touch these lines.
        self.alive[d + 1].discard(r)
        if d + 1 < len(self.rows):
            for r2 in self.cols[d + 1].pop(r, ()):
                del self.rows[d + 1][r2][r]
        self.alive[d].discard(c)
        if d >= 1:
            for c2 in self.rows[d - 1].pop(c, {}):
                self.cols[d - 1][c2].discard(c)

    def unit_prune(self):
        """Cancel unit pivots to a fixpoint, lowest degree first.

        Within a differential, candidates come off a heap of (row, col)
        positions, i.e. in ambient basis order; stale positions (line
        deleted, value changed, no longer ±1) are skipped on pop.  Once
        a differential is drained it can never produce new candidates,
        so a single ascending pass is the full rescan-after-every-
        elimination order.
        """
        for d in range(len(self.rows)):
            row_labels, col_labels = self.labels[d + 1], self.labels[d]
            heap = [
                (r, c)
                for r, row in self.rows[d].items()
                for c, v in row.items()
                if v in (1, -1) and row_labels[r] == col_labels[c]
            ]
            heapq.heapify(heap)
            while heap:
                r, c = heapq.heappop(heap)
                row = self.rows[d].get(r)
                if row is None:
                    continue
                v = row.get(c)
                if v not in (1, -1):
                    continue
                self.eliminate(d, r, c, heap)

    # -- label-homogeneous Smith blocks ----------------------------------

    def _block_entries(self, d, block_rows, block_cols):
        rows_d = self.rows[d]
        for r in block_rows:
            row = rows_d.get(r)
            if row:
                for c, v in row.items():
                    if c in block_cols:
                        yield r, c, v

    def expose_unit(self):
        """Manufacture one ±1 in some label-homogeneous block, if possible.

        Returns True when a block with unit gcd was found and reduced
        until a ±1 entry appeared (a later unit_prune pass will cancel
        it).  All operations stay inside the block's rows and columns,
        whose labels are all equal, so everything is legal; mirrored
        operations keep the neighbours consistent.
        """
        for d in range(len(self.rows)):
            by_label_rows = {}
            for r in self.alive[d + 1]:
                by_label_rows.setdefault(self.labels[d + 1][r], set()).add(r)
            by_label_cols = {}
            for c in self.alive[d]:
                by_label_cols.setdefault(self.labels[d][c], set()).add(c)
            for label, block_rows in sorted(
                by_label_rows.items(), key=lambda kv: str(kv[0])
            ):
                block_cols = by_label_cols.get(label)
                if not block_cols:
                    continue
                if self._reduce_block(d, block_rows, block_cols):
                    return True
        return False

    def _reduce_block(self, d, block_rows, block_cols):
        g = 0
        for _, _, v in self._block_entries(d, block_rows, block_cols):
            g = gcd(g, v)
            if g == 1:
                break
        if g != 1:
            return False
        rows_d = self.rows[d]
        while True:
            r, c, v = min(
                self._block_entries(d, block_rows, block_cols),
                key=lambda t: (abs(t[2]), t[0], t[1]),
            )
            if abs(v) == 1:
                return True
            progressed = False
            for r2 in sorted(self.cols[d].get(c, ())):
                if r2 == r or r2 not in block_rows:
                    continue
                q = rows_d[r2][c] // v
                self.basis_row_op(d, r2, r, -q)
                if rows_d.get(r2, {}).get(c):
                    progressed = True  # nonzero remainder < |v|
                    break
            if progressed:
                continue
            for c2 in sorted(rows_d.get(r, {})):
                if c2 == c or c2 not in block_cols:
                    continue
                q = rows_d[r][c2] // v
                self.basis_col_op(d, c2, c, -q)
                if rows_d.get(r, {}).get(c2):
                    progressed = True
                    break
            if progressed:
                continue
            # The pivot cross is clear; gcd 1 guarantees an entry not
            # divisible by v elsewhere in the block.  Pull its row onto
            # row r so the next pass leaves a smaller remainder.
            for r2, c2, w in self._block_entries(d, block_rows, block_cols):
                if w % v:
                    self.basis_row_op(d, r, r2, 1)
                    break
            else:
                return False  # unreachable when the gcd bookkeeping holds

    # -- back to an immutable complex ------------------------------------

    def rebuild(self, source_top_degree=None):
        orders = [sorted(a) for a in self.alive]
        maps = [{old: new for new, old in enumerate(order)} for order in orders]
        degrees = [
            tuple(self.labels[k][i] for i in order)
            for k, order in enumerate(orders)
        ]
        diffs = []
        for d in range(len(self.rows)):
            rmap, cmap = maps[d + 1], maps[d]
            diffs.append(
                {
                    (rmap[r], cmap[c]): v
                    for r, row in self.rows[d].items()
                    for c, v in row.items()
                }
            )
        return PresheafComplex(
            self.n, degrees, diffs, source_top_degree=source_top_degree
        )


def prune(complex_):
    """Cancel all unit pivots with equal row/column labels.

    The output has the same homology at every graph, never more
    generators, and no differential entry of absolute value 1 between
    equal labels.  Pruning a pruned complex returns it unchanged.

    >>> from .graphs import Graph
    >>> from .complexes import representable
    >>> g = Graph(2, [(1, 2)])
    >>> prune(representable(g)) == representable(g)
    True
    """
    ws = _Workspace(_validated(complex_))
    ws.unit_prune()
    return ws.rebuild(source_top_degree=complex_.source_top_degree)


def prune_parts(n, labels, rows, source_top_degree=None):
    """Unit-prune a complex handed over as raw indexed parts.

    Same result as building a :class:`PresheafComplex` from the parts
    and calling :func:`prune`, but the rows are adopted in place, so
    only one copy of the sparse matrices ever exists.  The star models
    of large product triangulations (millions of simplices) fit in
    memory through this entry point and not otherwise.
    """
    ws = _Workspace.adopt(n, labels, rows)
    ws.unit_prune()
    return ws.rebuild(source_top_degree=source_top_degree)


def prune_smith(complex_):
    """Prune, then also cancel units hidden inside label-homogeneous blocks.

    A block of a differential whose row and column labels all equal one
    Γ has 1 as a Smith invariant factor exactly when the gcd of its
    entries is 1; Euclidean row/column operations inside the block then
    expose a ±1, which unit-pruning removes.  Repeats to a fixpoint, so
    afterwards every label-homogeneous block has gcd > 1 (or is empty).
    """
    ws = _Workspace(_validated(complex_))
    ws.unit_prune()
    while ws.expose_unit():
        ws.unit_prune()
    return ws.rebuild(source_top_degree=complex_.source_top_degree)


def split_summands(complex_):
    """Decompose into the direct summands the differentials connect.

    Two generators interact when some differential has a nonzero entry
    between them; the connected components of that relation are
    independent subcomplexes whose direct sum is the input (up to the
    simultaneous permutation that groups components together).  Each
    returned complex spans the same degree range as the input.

    >>> from .graphs import Graph
    >>> from .complexes import direct_sum, representable
    >>> g = Graph(2, [(1, 2)])
    >>> both = direct_sum(representable(g), representable(g, 1))
    >>> [c.ranks for c in split_summands(both)]
    [(1, 0), (0, 1)]
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for k, basis in enumerate(complex_.degrees):
        for i in range(len(basis)):
            parent[(k, i)] = (k, i)
    for d, mat in enumerate(complex_.differentials):
        for (r, c) in mat.entries:
            join((d + 1, r), (d, c))

    groups = {}
    for node in parent:
        groups.setdefault(find(node), set()).add(node)

    out = []
    for root in sorted(groups):
        members = groups[root]
        orders = [
            sorted(i for (k, i) in members if k == deg)
            for deg in range(len(complex_.degrees))
        ]
        maps = [{old: new for new, old in enumerate(order)} for order in orders]
        degrees = [
            tuple(complex_.degrees[k][i] for i in order)
            for k, order in enumerate(orders)
        ]
        diffs = []
        for d, mat in enumerate(complex_.differentials):
            rmap, cmap = maps[d + 1], maps[d]
            diffs.append(
                {
                    (rmap[r], cmap[c]): v
                    for (r, c), v in mat.entries.items()
                    if r in rmap and c in cmap
                }
            )
        out.append(PresheafComplex(complex_.n, degrees, diffs))
    return out


if __name__ == "__main__":
    import doctest

    doctest.testmod()
