"""Chain complexes of free modules labeled by graphs on {1..n}.

A generator labeled by a graph Γ stands for the free presheaf (-, Γ) on
the poset of graphs, i.e. the functor that is Z on subgraphs of Γ and 0
elsewhere.  A map (-, Γ) -> (-, Γ') exists only when Γ ⊆ Γ', which
forces structural zeros in every matrix: entry (r, c) may be nonzero
only if the label of row r is a subgraph of the label of column c.

The central type is :class:`PresheafComplex`: a nonnegatively graded
chain complex whose degree-d piece is the free presheaf on an ordered
list of graph labels, with homological grading, so ``differentials[d]``
maps degree d+1 to degree d.  Matrices use rows-as-domain: the matrix
of f: A -> B has a row per generator of A, and "f then g" is the plain
matrix product f·g.

Evaluating at a graph g is exact and easy: keep exactly the generators
whose label contains g, restrict the matrices, and you have an honest
chain complex of free abelian groups (:class:`EvaluatedComplex`) ready
for integer homology.  Evaluating at the complete graph recovers the
chain complex of the configuration space itself.

Two monoidal products matter.  ``boxtimes`` is the usual tensor product
of complexes, except generators stay labeled — by *pairs* of graphs.
``odot`` composes ``boxtimes`` with the relabeling (Γ', Γ'') ↦ Γ' ∪ Γ'';
because unions preserve containment this keeps all forced zeros, and it
computes the derived product of models built from fewer points.

>>> a = representable(Graph(2, [(1, 2)]))
>>> b = shift(a, 1)
>>> b.ranks
(0, 1)
>>> evaluate(a, empty_graph(2)).ranks
(1,)
"""

from .errors import InputError
from .graphs import (
    Graph,
    empty_graph,
    enumerate_graphs,
    is_subgraph,
    union,
    DEFAULT_ENUMERATION_LIMIT,
)
from .homology import chain_homology, compose_entries


# ---------------------------------------------------------------------------
# Labels: a label is a Graph or (for boxtimes outputs) a tuple of labels.


def label_n(label):
    """Vertex count a label lives on (pairs must be homogeneous)."""
    if isinstance(label, Graph):
        return label.n
    if isinstance(label, tuple) and label:
        ns = {label_n(part) for part in label}
        if len(ns) == 1:
            return ns.pop()
    raise InputError("not a graph label: %r" % (label,))


def label_leq(a, b):
    """Containment of labels; componentwise on pair labels.

    This is the order that decides which matrix entries may be nonzero.
    """
    if isinstance(a, Graph) and isinstance(b, Graph):
        return is_subgraph(a, b)
    if isinstance(a, tuple) and isinstance(b, tuple) and len(a) == len(b):
        return all(label_leq(x, y) for x, y in zip(a, b))
    raise InputError("labels %r and %r are not comparable" % (a, b))


def label_union(label):
    """Flatten a pair label to a single graph by union of its parts."""
    if isinstance(label, Graph):
        return label
    parts = [label_union(part) for part in label]
    out = parts[0]
    for part in parts[1:]:
        out = union(out, part)
    return out


def label_str(label):
    if isinstance(label, Graph):
        return str(label)
    return "(" + ", ".join(label_str(part) for part in label) + ")"


# ---------------------------------------------------------------------------


class LabeledMatrix:
    """An integer matrix whose rows and columns carry graph labels.

    Entries live in a sparse map (row, col) -> nonzero int.  The
    constructor checks shapes but deliberately not the forced-zero rule,
    so that diagnostics (:func:`validate`) can point at violations in
    data read from outside.

    >>> m = LabeledMatrix.from_dense(
    ...     [empty_graph(2)],
    ...     [Graph(2, [(1, 2)]), Graph(2, [(1, 2)])],
    ...     [[-1, 1]])
    >>> m.dense()
    [[-1, 1]]
    >>> m.violations()
    []
    """

    __slots__ = ("row_labels", "col_labels", "entries")

    def __init__(self, row_labels, col_labels, entries=()):
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        items = entries.items() if isinstance(entries, dict) else (
            ((r, c), v) for r, c, v in entries
        )
        clean = {}
        for (r, c), v in items:
            if not (0 <= r < len(self.row_labels)):
                raise InputError("row %d outside %d rows" % (r, len(self.row_labels)))
            if not (0 <= c < len(self.col_labels)):
                raise InputError("col %d outside %d cols" % (c, len(self.col_labels)))
            if (r, c) in clean:
                raise InputError("duplicate entry at (%d, %d)" % (r, c))
            if v:
                clean[(r, c)] = int(v)
        self.entries = clean

    @classmethod
    def from_dense(cls, row_labels, col_labels, rows):
        entries = {
            (r, c): v
            for r, row in enumerate(rows)
            for c, v in enumerate(row)
            if v
        }
        if len(rows) != len(row_labels):
            raise InputError("need one row per row label")
        if rows and len(rows[0]) != len(col_labels):
            raise InputError("need one column per column label")
        return cls(row_labels, col_labels, entries)

    @property
    def nrows(self):
        return len(self.row_labels)

    @property
    def ncols(self):
        return len(self.col_labels)

    def triples(self):
        """Entries as a sorted list of (row, col, value)."""
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def violations(self):
        """Coordinates (r, c) of entries breaking the forced-zero rule."""
        return sorted(
            (r, c)
            for (r, c) in self.entries
            if not label_leq(self.row_labels[r], self.col_labels[c])
        )

    def compose(self, other):
        """Matrix of "self then other" (rows-as-domain product self·other)."""
        if self.col_labels != other.row_labels:
            raise InputError("composition needs matching middle labels")
        entries = compose_entries(
            (self.nrows, self.ncols),
            self.triples(),
            (other.nrows, other.ncols),
            other.triples(),
        )
        return LabeledMatrix(self.row_labels, other.col_labels, entries)

    def relabel(self, fn):
        return LabeledMatrix(
            [fn(l) for l in self.row_labels],
            [fn(l) for l in self.col_labels],
            dict(self.entries),
        )

    def __eq__(self, other):
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.row_labels, self.col_labels, frozenset(self.entries.items())))

    def __repr__(self):
        return "<LabeledMatrix %dx%d, %d nonzero>" % (
            self.nrows,
            self.ncols,
            len(self.entries),
        )


class PresheafComplex:
    """A chain complex of free graph-labeled modules.

    ``degrees[d]`` is the ordered tuple of generator labels in degree d
    and ``differentials[d]`` the labeled matrix of the boundary map from
    degree d+1 to degree d (so it has ``len(degrees[d+1])`` rows).

    The constructor enforces shapes; the algebraic laws — forced zeros
    and d∘d = 0 — are checked by :func:`validate`, which reports rather
    than raises, so ill-formed data can be inspected.

    ``source_top_degree`` is optional bookkeeping: models built from a
    simplicial complex record the top degree the unreduced chains had,
    which later feeds stable-range bounds.  Operations that lose track
    of it leave it None.
    """

    __slots__ = ("n", "degrees", "differentials", "source_top_degree")

    def __init__(self, n, degrees, differentials, source_top_degree=None):
        self.n = int(n)
        self.degrees = tuple(tuple(basis) for basis in degrees)
        for basis in self.degrees:
            for label in basis:
                if label_n(label) != self.n:
                    raise InputError(
                        "label %s is not on %d vertices" % (label_str(label), n)
                    )
        expected = max(len(self.degrees) - 1, 0)
        diffs = list(differentials)
        if len(diffs) != expected:
            raise InputError(
                "%d degrees need %d differentials, got %d"
                % (len(self.degrees), expected, len(diffs))
            )
        built = []
        for d, mat in enumerate(diffs):
            rows, cols = self.degrees[d + 1], self.degrees[d]
            if isinstance(mat, LabeledMatrix):
                if mat.row_labels != rows or mat.col_labels != cols:
                    raise InputError(
                        "differential %d does not match the degree bases" % d
                    )
                built.append(mat)
            else:
                built.append(LabeledMatrix(rows, cols, mat))
        self.differentials = tuple(built)
        self.source_top_degree = source_top_degree

    @property
    def top_degree(self):
        return len(self.degrees) - 1

    @property
    def ranks(self):
        return tuple(len(basis) for basis in self.degrees)

    @property
    def total_rank(self):
        return sum(self.ranks)

    def __eq__(self, other):
        if not isinstance(other, PresheafComplex):
            return NotImplemented
        return (
            self.n == other.n
            and self.degrees == other.degrees
            and self.differentials == other.differentials
        )

    def __hash__(self):
        return hash((self.n, self.degrees, self.differentials))

    def __repr__(self):
        return "PresheafComplex(n=%d, ranks=%r)" % (self.n, list(self.ranks))

    def to_json(self):
        def encode(label):
            if isinstance(label, Graph):
                return label.to_json()
            return [encode(part) for part in label]

        return {
            "n": self.n,
            "degrees": [[encode(l) for l in basis] for basis in self.degrees],
            "differentials": [
                {"rows": d + 1, "cols": d, "entries": [list(t) for t in m.triples()]}
                for d, m in enumerate(self.differentials)
            ],
        }

    @classmethod
    def from_json(cls, data):
        def decode(item):
            if isinstance(item, dict):
                return Graph.from_json(item)
            if isinstance(item, list):
                return tuple(decode(part) for part in item)
            raise InputError("bad label encoding: %r" % (item,))

        try:
            n = data["n"]
            degrees = [[decode(l) for l in basis] for basis in data["degrees"]]
            raw = data["differentials"]
        except (TypeError, KeyError) as exc:
            raise InputError(
                "complex JSON needs keys 'n', 'degrees', 'differentials'"
            ) from exc
        diffs = [None] * max(len(degrees) - 1, 0)
        for item in raw:
            d = item.get("cols")
            if d is None or not (0 <= d < len(diffs)) or diffs[d] is not None:
                raise InputError("bad differential block: %r" % (item,))
            diffs[d] = [(r, c, v) for r, c, v in item["entries"]]
        return cls(n, degrees, [d if d is not None else () for d in diffs])


class EvaluatedComplex:
    """A plain chain complex of free abelian groups (no labels left).

    ``ranks[d]`` is the rank in degree d; ``differentials[d]`` the
    sparse (row, col, value) triples of the map from degree d+1 to
    degree d, rows-as-domain as everywhere else.
    """

    __slots__ = ("ranks", "differentials")

    def __init__(self, ranks, differentials):
        self.ranks = tuple(int(r) for r in ranks)
        self.differentials = tuple(
            tuple(sorted((r, c, v) for r, c, v in diff)) for diff in differentials
        )
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise InputError("differential count does not match degree count")

    def dense(self, d):
        """Differential d as a dense ranks[d+1] × ranks[d] matrix."""
        out = [[0] * self.ranks[d] for _ in range(self.ranks[d + 1])]
        for r, c, v in self.differentials[d]:
            out[r][c] = v
        return out

    def homology(self):
        return chain_homology(self)

    def __eq__(self, other):
        if not isinstance(other, EvaluatedComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.differentials == other.differentials

    def __repr__(self):
        return "EvaluatedComplex(ranks=%r)" % (list(self.ranks),)


# ---------------------------------------------------------------------------
# Constructors


def empty_complex(n):
    """The zero complex on n vertices (no generators in any degree)."""
    return PresheafComplex(n, (), ())


def representable(graph, degree=0):
    """The free presheaf (-, Γ) placed in a single degree.

    >>> representable(Graph(2, [(1, 2)]), 2).ranks
    (0, 0, 1)
    """
    degrees = [()] * degree + [(graph,)]
    return PresheafComplex(graph.n, degrees, [()] * degree)


# ---------------------------------------------------------------------------
# Operations


def validate(complex_):
    """All algebraic violations in a complex, as human-readable strings.

    Checks every forced zero and every composite of consecutive
    differentials; an empty list means the complex is well formed.

    >>> good = representable(Graph(2, [(1, 2)]))
    >>> validate(good)
    []
    """
    problems = []
    for d, mat in enumerate(complex_.differentials):
        for r, c in mat.violations():
            problems.append(
                "differential %d entry (%d, %d): label %s is not contained in %s"
                % (d, r, c, label_str(mat.row_labels[r]), label_str(mat.col_labels[c]))
            )
    for d in range(len(complex_.differentials) - 1):
        square = complex_.differentials[d + 1].compose(complex_.differentials[d])
        for r, c, v in square.triples():
            problems.append(
                "d|d composite from degree %d to degree %d is nonzero at (%d, %d): %d"
                % (d + 2, d, r, c, v)
            )
    return problems


def shift(complex_, k):
    """Shift up by k: degree d of the input becomes degree d + k.

    >>> g = Graph(2, [(1, 2)])
    >>> shift(representable(g), 2) == representable(g, 2)
    True
    >>> shift(shift(representable(g), 1), 1) == representable(g, 2)
    True
    """
    if k < 0:
        raise InputError("shift amount must be nonnegative, got %r" % (k,))
    if k == 0 or not complex_.degrees:
        return PresheafComplex(
            complex_.n,
            complex_.degrees,
            complex_.differentials,
            source_top_degree=complex_.source_top_degree,
        )
    degrees = ((),) * k + complex_.degrees
    diffs = [()] * k + list(complex_.differentials)
    return PresheafComplex(complex_.n, degrees, diffs)


def direct_sum(a, b):
    """Degreewise concatenation with block-diagonal differentials.

    >>> g = Graph(2, [(1, 2)])
    >>> direct_sum(representable(g), empty_complex(2)) == representable(g)
    True
    >>> direct_sum(representable(g), representable(g, 1)).ranks
    (1, 1)
    """
    if a.n != b.n:
        raise InputError("summands live on different vertex sets")
    size = max(len(a.degrees), len(b.degrees))

    def basis(c, d):
        return c.degrees[d] if d < len(c.degrees) else ()

    degrees = [basis(a, d) + basis(b, d) for d in range(size)]
    diffs = []
    for d in range(size - 1):
        entries = {}
        if d < len(a.differentials):
            entries.update(a.differentials[d].entries)
        row_off, col_off = len(basis(a, d + 1)), len(basis(a, d))
        if d < len(b.differentials):
            for (r, c), v in b.differentials[d].entries.items():
                entries[(r + row_off, c + col_off)] = v
        diffs.append(entries)
    return PresheafComplex(a.n, degrees, diffs)


def boxtimes(a, b):
    """Tensor product of complexes, with pair labels (Γ', Γ'').

    Degree k collects the blocks C_i ⊗ D_j with i + j = k, listed with i
    decreasing, each block in row-major order (first factor outer).  The
    differential is d(x ⊗ y) = dx ⊗ y + (−1)^{deg x} x ⊗ dy.

    >>> g = Graph(2, [(1, 2)])
    >>> t = boxtimes(representable(g, 1), representable(g, 1))
    >>> t.ranks
    (0, 0, 1)
    >>> t.degrees[2]
    ((Graph(2, [(1, 2)]), Graph(2, [(1, 2)])),)
    """
    if a.n != b.n:
        raise InputError("factors live on different vertex sets")
    ta, tb = a.top_degree, b.top_degree
    if ta < 0 or tb < 0:
        return empty_complex(a.n)
    blocks = {}
    degrees = []
    for k in range(ta + tb + 1):
        basis = []
        for i in range(min(k, ta), max(0, k - tb) - 1, -1):
            j = k - i
            blocks[(i, j)] = len(basis)
            basis.extend((x, y) for x in a.degrees[i] for y in b.degrees[j])
        degrees.append(tuple(basis))

    def index(i, j, ai, bj):
        # Position of generator (a.degrees[i][ai], b.degrees[j][bj]) in
        # its degree: block offset plus row-major offset inside the block.
        return blocks[(i, j)] + ai * len(b.degrees[j]) + bj

    diffs = []
    for k in range(ta + tb):
        entries = {}
        # Source degree k+1, target degree k.
        for i in range(min(k + 1, ta), max(0, k + 1 - tb) - 1, -1):
            j = k + 1 - i
            sign = -1 if i % 2 else 1
            for ai in range(len(a.degrees[i])):
                for bj in range(len(b.degrees[j])):
                    src = index(i, j, ai, bj)
                    if i > 0:
                        for (r, c), v in a.differentials[i - 1].entries.items():
                            if r == ai:
                                entries[(src, index(i - 1, j, c, bj))] = v
                    if j > 0:
                        for (r, c), v in b.differentials[j - 1].entries.items():
                            if r == bj:
                                entries[(src, index(i, j - 1, ai, c))] = sign * v
        diffs.append(entries)
    return PresheafComplex(a.n, degrees, diffs)


def odot(a, b):
    """The derived union product: boxtimes, then labels merged by union.

    The matrices are exactly those of :func:`boxtimes`; only the labels
    change, and containment of pairs implies containment of unions, so
    every forced zero survives.

    >>> g = Graph(2, [(1, 2)])
    >>> odot(representable(g), representable(empty_graph(2))).degrees[0]
    (Graph(2, [(1, 2)]),)
    """
    product = boxtimes(a, b)
    degrees = [
        tuple(label_union(label) for label in basis) for basis in product.degrees
    ]
    diffs = [
        LabeledMatrix(degrees[d + 1], degrees[d], dict(m.entries))
        for d, m in enumerate(product.differentials)
    ]
    return PresheafComplex(product.n, degrees, diffs)


def evaluate(complex_, g):
    """The complex of abelian groups obtained by evaluating at a graph.

    A generator labeled Γ contributes a Z exactly when g ⊆ Γ.  Matrix
    entries between surviving generators are kept as they are.  This is
    exact: a nonzero entry needs row label ⊆ column label, so if the row
    survives (g ⊆ row label) the column survives too; dropped rows never
    feed surviving columns through surviving intermediates, hence
    restriction commutes with matrix products and d∘d = 0 is inherited.

    >>> g2 = Graph(2, [(1, 2)])
    >>> evaluate(representable(g2), g2).ranks
    (1,)
    >>> evaluate(representable(g2), empty_graph(2)).ranks
    (1,)
    >>> evaluate(representable(empty_graph(2)), g2).ranks
    (0,)
    """
    if g.n != complex_.n:
        raise InputError("graph and complex live on different vertex sets")
    kept = []
    for basis in complex_.degrees:
        keep = []
        for i, label in enumerate(basis):
            if not isinstance(label, Graph):
                raise InputError(
                    "evaluation needs single-graph labels; merge pair labels first"
                )
            if is_subgraph(g, label):
                keep.append(i)
        kept.append({old: new for new, old in enumerate(keep)})
    ranks = [len(m) for m in kept]
    diffs = []
    for d, mat in enumerate(complex_.differentials):
        rows, cols = kept[d + 1], kept[d]
        diffs.append(
            [
                (rows[r], cols[c], v)
                for (r, c), v in mat.entries.items()
                if r in rows and c in cols
            ]
        )
    return EvaluatedComplex(ranks, diffs)


def pointwise_homology(complex_, limit=DEFAULT_ENUMERATION_LIMIT):
    """Homology of the evaluation at every graph on {1..n}.

    Returns a dict Graph -> list of HomologySummary.  Guarded by the
    same enumeration limit as :func:`graphconf.graphs.enumerate_graphs`.
    """
    return {
        g: chain_homology(evaluate(complex_, g))
        for g in enumerate_graphs(complex_.n, limit)
    }


def _reduced(summaries):
    """(degree, betti, torsion) for the nonzero part only."""
    return [
        (s.degree, s.betti, s.torsion) for s in summaries if not s.is_zero
    ]


def qis_test(a, b, limit=DEFAULT_ENUMERATION_LIMIT):
    """Necessary condition for quasi-isomorphism: equal homology at
    every graph (free ranks and torsion, degree by degree).

    This certifies agreement of the invariants the package computes; it
    does not build a zig-zag of maps.

    >>> g = Graph(2, [(1, 2)])
    >>> qis_test(representable(g), representable(g))
    True
    >>> qis_test(representable(g), representable(empty_graph(2)))
    False
    """
    if a.n != b.n:
        raise InputError("cannot compare complexes on different vertex sets")
    pa = pointwise_homology(a, limit)
    pb = pointwise_homology(b, limit)
    return all(_reduced(pa[g]) == _reduced(pb[g]) for g in pa)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
