"""Labeled chain models of configuration spaces, from simplicial input.

Given a finite simplicial complex X and n points, triangulate X^n by
the staircase (shuffle) triangulation of products of simplices, after
barycentrically subdividing X a couple of times so that vertex stars
are small.  The open stars of the product's vertices form a good cover
whose nerve is the triangulated product itself, and a vertex tuple
w = (w_1, ..., w_n) knows which coincidences its star avoids: point i
and point j are *separated* at w exactly when w_i and w_j span no
common simplex of the subdivided X.  Recording, for every simplex, the
graph of separations shared by all its vertices turns the simplicial
chain complex of X^n into a chain complex of labeled free presheaves —
a cofibrant model whose evaluation at a graph Γ is (for enough
subdivision) a chain model of the configuration space Conf(Γ, X).

Simplices of the staircase triangulation of a product are the chains
w^0 < w^1 < ... < w^p in the componentwise partial order on vertex
tuples whose coordinate projections each span a simplex of the factor.
They are enumerated here by *carrier*: fixing the exact simplex σ_i
spanned in each coordinate, the chains realizing that carrier are the
monotone lattice paths through the grid Π {0..dim σ_i} from the bottom
corner to the top corner that advance any nonempty set of coordinates
by one step at a time.  Every chain arises from exactly one carrier and
one path, so nothing is ever deduplicated.

>>> letters()["Z"].facets
((1, 2),)
>>> subdivide(letters()["Z"]).facets   # an edge becomes a 2-path
((1, 3), (2, 3))
>>> staircase_product([letters()["Z"], letters()["Z"]]).facets
((1, 2, 4), (1, 3, 4))
"""

from functools import lru_cache
from itertools import combinations, product

from .errors import InputError, ResourceLimitError
from .graphs import Graph
from .complexes import PresheafComplex
from .pruning import prune_parts

# A staircase product has one simplex per carrier/path pair; counting
# them first (a cheap DP) guards against accidentally gigantic builds.
DEFAULT_SIMPLEX_LIMIT = 2_000_000

DEFAULT_SUBDIVISIONS = 2


class SimplicialComplex:
    """A finite simplicial complex on vertices 1..vertex_count.

    Stored by its facets; the complex is their downward closure.  The
    constructor sorts, deduplicates, and drops faces that lie inside a
    bigger facet, so equal complexes compare equal.

    >>> triangle = SimplicialComplex(3, [(1, 2), (2, 3), (1, 3)])
    >>> triangle.dim
    1
    >>> triangle.faces()
    ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3))
    """

    __slots__ = ("vertex_count", "facets", "_faces")

    def __init__(self, vertex_count, facets):
        if vertex_count < 1:
            raise InputError("vertex count must be positive")
        self.vertex_count = int(vertex_count)
        cleaned = set()
        for facet in facets:
            vs = tuple(sorted(set(facet)))
            if not vs:
                raise InputError("facets must be nonempty")
            if vs[0] < 1 or vs[-1] > self.vertex_count:
                raise InputError(
                    "facet %r is not within 1..%d" % (facet, self.vertex_count)
                )
            cleaned.add(vs)
        self.facets = tuple(
            sorted(
                f
                for f in cleaned
                if not any(
                    len(g) > len(f) and set(f) < set(g) for g in cleaned
                )
            )
        )
        if not self.facets:
            raise InputError("a complex needs at least one facet")
        self._faces = None

    @property
    def dim(self):
        return max(len(f) for f in self.facets) - 1

    def faces(self):
        """All faces, ordered by dimension then lexicographically."""
        if self._faces is None:
            seen = set()
            for facet in self.facets:
                for k in range(1, len(facet) + 1):
                    seen.update(combinations(facet, k))
            self._faces = tuple(sorted(seen, key=lambda f: (len(f), f)))
        return self._faces

    def f_vector(self):
        """Face counts by dimension, starting with vertices.

        >>> SimplicialComplex(3, [(1, 2), (2, 3), (1, 3)]).f_vector()
        (3, 3)
        """
        counts = {}
        for f in self.faces():
            counts[len(f) - 1] = counts.get(len(f) - 1, 0) + 1
        return tuple(counts.get(d, 0) for d in range(self.dim + 1))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.vertex_count, self.facets))

    def __repr__(self):
        return "SimplicialComplex(%d, %r)" % (self.vertex_count, list(self.facets))

    def to_json(self):
        return {
            "vertex_count": self.vertex_count,
            "facets": [list(f) for f in self.facets],
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls(data["vertex_count"], [tuple(f) for f in data["facets"]])
        except (TypeError, KeyError) as exc:
            raise InputError(
                "complex JSON needs keys 'vertex_count' and 'facets'"
            ) from exc


def letters():
    """The four sans-serif letters used as example spaces, by name.

    Z is a segment, Y the cone on three points (a 3-star), X a 4-star,
    and O a circle (triangle boundary).  Vertex 1 is the center of the
    stars.
    """
    return {
        "X": SimplicialComplex(5, [(1, 2), (1, 3), (1, 4), (1, 5)]),
        "Y": SimplicialComplex(4, [(1, 2), (1, 3), (1, 4)]),
        "Z": SimplicialComplex(2, [(1, 2)]),
        "O": SimplicialComplex(3, [(1, 2), (2, 3), (1, 3)]),
    }


def letter(name):
    """Look up one letter; unknown names are an input error."""
    table = letters()
    if name not in table:
        raise InputError(
            "unknown letter %r (have %s)" % (name, ", ".join(sorted(table)))
        )
    return table[name]


def subdivide(complex_):
    """Barycentric subdivision.

    New vertices are the faces of the input, numbered in (dimension,
    lex) order; new facets are the maximal chains of faces, which all
    run from a vertex up to a facet adding one vertex at a time.

    >>> subdivide(letters()["O"]).f_vector()   # a hexagon
    (6, 6)
    """
    faces = complex_.faces()
    number = {f: i + 1 for i, f in enumerate(faces)}
    facets = []

    def chains(prefix, current):
        if len(current) == 1:
            facets.append(tuple(sorted(prefix)))
            return
        for drop in current:
            smaller = tuple(v for v in current if v != drop)
            chains(prefix + [number[smaller]], smaller)

    for facet in complex_.facets:
        chains([number[facet]], facet)
    return SimplicialComplex(len(faces), facets)


def subdivide_times(complex_, times):
    for _ in range(times):
        complex_ = subdivide(complex_)
    return complex_


@lru_cache(maxsize=None)
def _path_count(residual):
    """Number of monotone paths left in a grid with the given residual
    steps per coordinate (any nonempty set of coordinates may advance
    by one per step).  Symmetric, so callers pass a sorted tuple.
    """
    movable = [i for i, r in enumerate(residual) if r]
    if not movable:
        return 1
    total = 0
    for k in range(1, len(movable) + 1):
        for subset in combinations(movable, k):
            nxt = list(residual)
            for i in subset:
                nxt[i] -= 1
            total += _path_count(tuple(sorted(nxt)))
    return total


def _chain_paths(dims):
    """All monotone bottom-to-top paths in the grid Π {0..dims[i]}.

    Each step advances a nonempty subset of coordinates by exactly one,
    so along a path every coordinate passes through every value: the
    path's carrier is the whole grid.
    """
    n = len(dims)
    path = [(0,) * n]

    def walk(pos):
        movable = [i for i in range(n) if pos[i] < dims[i]]
        if not movable:
            yield tuple(path)
            return
        for k in range(1, len(movable) + 1):
            for subset in combinations(movable, k):
                nxt = tuple(
                    pos[i] + (1 if i in subset else 0) for i in range(n)
                )
                path.append(nxt)
                yield from walk(nxt)
                path.pop()

    yield from walk(path[0])


def _shuffle_paths(dims):
    """Monotone paths advancing exactly one coordinate per step — the
    top-dimensional simplices of the staircase triangulation.
    """
    n = len(dims)
    path = [(0,) * n]

    def walk(pos):
        movable = [i for i in range(n) if pos[i] < dims[i]]
        if not movable:
            yield tuple(path)
            return
        for i in movable:
            nxt = tuple(pos[j] + (1 if j == i else 0) for j in range(n))
            path.append(nxt)
            yield from walk(nxt)
            path.pop()

    yield from walk(path[0])


def staircase_product(factors):
    """The staircase triangulation of a product of simplicial complexes.

    Vertices are tuples of factor vertices in lexicographic order;
    facets are the shuffle paths through one facet from each factor.

    >>> square = staircase_product([letters()["Z"], letters()["Z"]])
    >>> square.vertex_count, square.f_vector()
    (4, (4, 5, 2))
    """
    factors = list(factors)
    if not factors:
        raise InputError("a product needs at least one factor")
    counts = [x.vertex_count for x in factors]
    strides = [1] * len(factors)
    for i in range(len(factors) - 2, -1, -1):
        strides[i] = strides[i + 1] * counts[i + 1]

    def rank(tup):
        return 1 + sum((v - 1) * s for v, s in zip(tup, strides))

    total_vertices = 1
    for c in counts:
        total_vertices *= c
    facets = []
    for facet_tuple in product(*[x.facets for x in factors]):
        dims = tuple(len(f) - 1 for f in facet_tuple)
        for path in _shuffle_paths(dims):
            facets.append(
                tuple(
                    rank(tuple(facet_tuple[i][g[i]] for i in range(len(factors))))
                    for g in path
                )
            )
    return SimplicialComplex(total_vertices, facets)


def product_simplex_count(factor, n):
    """How many simplices the staircase triangulation of factor^n has."""
    hist = {}
    for f in factor.faces():
        hist[len(f) - 1] = hist.get(len(f) - 1, 0) + 1
    total = 0
    for dims in product(sorted(hist), repeat=n):
        ways = 1
        for d in dims:
            ways *= hist[d]
        total += ways * _path_count(tuple(sorted(dims)))
    return total


def star_model(
    complex_,
    n,
    subdivisions=DEFAULT_SUBDIVISIONS,
    *,
    max_simplices=DEFAULT_SIMPLEX_LIMIT,
    prune_output=True,
):
    """A labeled chain model of configurations of n points in a complex.

    Subdivides ``subdivisions`` times, triangulates the n-fold product
    by staircases, labels every vertex tuple w with the graph whose
    edge i~j records that w_i and w_j span no common simplex, labels
    every simplex with the intersection of its vertex labels, and reads
    off the simplicial chain complex with labels carried along (the
    boundary of an ordered simplex uses the usual (-1)^position signs).
    Labels only grow when passing to faces, so the forced-zero rule
    holds and the result is a valid presheaf complex; by default it is
    pruned before being returned.

    Evaluating the (unpruned) model at a graph Γ gives exactly the
    simplicial chain complex of the full subcomplex of the triangulated
    product on the Γ-separated vertex tuples.

    The unpruned top degree (n times the dimension) is recorded on the
    result as ``source_top_degree``; stable-range bounds need it later.

    >>> model = star_model(letters()["Z"], 2, subdivisions=1)
    >>> from .graphs import complete_graph
    >>> from .complexes import evaluate
    >>> [s.betti for s in evaluate(model, complete_graph(2)).homology()]
    [2, 0, 0]
    """
    if n < 1:
        raise InputError("need at least one point, got n=%r" % (n,))
    if subdivisions < 0:
        raise InputError("subdivision count must be nonnegative")
    space = subdivide_times(complex_, subdivisions)
    total = product_simplex_count(space, n)
    if total > max_simplices:
        raise ResourceLimitError(
            "the product triangulation has %d simplices (cap %d); raise the "
            "guard to proceed" % (total, max_simplices),
            requested=total,
            limit=max_simplices,
        )
    faces = space.faces()
    face_set = set(faces)
    nverts = space.vertex_count
    strides = [nverts ** (n - 1 - i) for i in range(n)]

    def rank(tup):
        return sum((v - 1) * s for v, s in zip(tup, strides))

    # Separation of two points of the subdivided complex: their closed
    # stars are disjoint iff the pair spans no simplex.
    def separated(u, v):
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) not in face_set

    pair_slots = list(combinations(range(n), 2))
    label_cache = {}

    def vertex_label(key, tup):
        mask = label_cache.get(key)
        if mask is None:
            mask = 0
            for bit, (i, j) in enumerate(pair_slots):
                if separated(tup[i], tup[j]):
                    mask |= 1 << bit
            label_cache[key] = mask
        return mask

    by_degree = {}
    for face_tuple in product(faces, repeat=n):
        dims = tuple(len(f) - 1 for f in face_tuple)
        for path in _chain_paths(dims):
            verts = []
            mask = -1
            for g in path:
                tup = tuple(face_tuple[i][g[i]] for i in range(n))
                key = rank(tup)
                verts.append(key)
                mask &= vertex_label(key, tup)
            by_degree.setdefault(len(path) - 1, []).append(
                (tuple(verts), mask)
            )

    top = max(by_degree)
    graph_of = {}  # intern: at most 2^C(n,2) distinct labels
    levels = []
    labels = []
    for d in range(top + 1):
        simplices = sorted(by_degree.pop(d, ()))
        levels.append([s for s, _ in simplices])
        labels.append(
            [
                graph_of.setdefault(mask, Graph.from_mask(n, mask))
                for _, mask in simplices
            ]
        )
    # Boundary matrices in row-indexed form, one level at a time so the
    # vertex tuples of a level can be released as soon as no face lookup
    # needs them (the full product runs to millions of simplices).
    rows = []
    index = {s: i for i, s in enumerate(levels[0])}
    for d in range(top):
        rowmap = {}
        for r, simplex in enumerate(levels[d + 1]):
            row = {}
            for position in range(len(simplex)):
                face = simplex[:position] + simplex[position + 1 :]
                row[index[face]] = -1 if position % 2 else 1
            rowmap[r] = row
        rows.append(rowmap)
        index = {s: i for i, s in enumerate(levels[d + 1])}
        levels[d] = None
    del index, levels
    if prune_output:
        return prune_parts(n, labels, rows, source_top_degree=top)
    diffs = [
        {(r, c): v for r, row in rowmap.items() for c, v in row.items()}
        for rowmap in rows
    ]
    return PresheafComplex(
        n,
        [tuple(level) for level in labels],
        diffs,
        source_top_degree=top,
    )


def direct_product_model(
    x,
    y,
    n,
    subdivisions=DEFAULT_SUBDIVISIONS,
    *,
    max_simplices=DEFAULT_SIMPLEX_LIMIT,
    prune_output=True,
):
    """A model of configurations in X × Y built without the ⊙ product:
    triangulate X × Y once by staircases, then model that 2-complex
    directly.  Serves as an independent cross-check of ⊙.
    """
    return star_model(
        staircase_product([x, y]),
        n,
        subdivisions,
        max_simplices=max_simplices,
        prune_output=prune_output,
    )


if __name__ == "__main__":
    import doctest

    doctest.testmod()
