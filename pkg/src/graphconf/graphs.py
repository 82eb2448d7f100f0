"""The poset of graphs on a fixed vertex set {1, ..., n}.

A graph here is just a set of undirected edges on the vertices 1..n,
with no loops and no multiplicities.  Graphs are ordered by edge
inclusion; the complete graph sits on top and the edgeless graph at the
bottom.  Union is the join and intersection is the meet, so the poset
is a finite lattice.

Graphs are stored as bitmasks over the C(n,2) possible edges, listed in
lexicographic order:

    (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n)

so that all set operations are single integer operations.  Instances
are immutable and hashable; they are used as row/column labels on the
matrices of labeled chain complexes, where containment of labels
decides which entries are even allowed to be nonzero.

>>> g = Graph(3, [(1, 2), (1, 3)])
>>> h = Graph(3, [(2, 3)])
>>> union(g, h) == complete_graph(3)
True
>>> intersect(g, h) == empty_graph(3)
True
>>> is_subgraph(h, g)
False
"""

from itertools import combinations

from .errors import InputError, ResourceLimitError

# Enumerating all graphs on n vertices means walking 2^C(n,2) bitmasks;
# past n = 5 (2^10 = 1024 graphs) that is rarely what anyone wants.
DEFAULT_ENUMERATION_LIMIT = 5


def edge_slots(n):
    """All possible edges on {1..n} as (i, j) pairs with i < j, lex order.

    >>> edge_slots(3)
    ((1, 2), (1, 3), (2, 3))
    """
    return tuple(combinations(range(1, n + 1), 2))


class Graph:
    """An immutable graph on the vertex set {1..n}.

    >>> Graph(3, [(2, 1), (1, 3)]).edges
    ((1, 2), (1, 3))
    >>> Graph(3, [(1, 1)])
    Traceback (most recent call last):
        ...
    graphconf.errors.InputError: edge (1, 1) is a loop
    """

    __slots__ = ("n", "mask")

    def __init__(self, n, edges=()):
        if n < 1:
            raise InputError("vertex count must be at least 1, got %r" % (n,))
        object.__setattr__(self, "n", int(n))
        slots = {pair: k for k, pair in enumerate(edge_slots(n))}
        mask = 0
        for edge in edges:
            i, j = edge
            if i == j:
                raise InputError("edge (%r, %r) is a loop" % (i, j))
            if i > j:
                i, j = j, i
            if (i, j) not in slots:
                raise InputError(
                    "edge (%r, %r) is not between vertices 1..%d" % (i, j, n)
                )
            mask |= 1 << slots[(i, j)]
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, n, mask):
        """Rebuild a graph from its edge bitmask (inverse of .mask)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "mask", mask)
        return obj

    @property
    def edges(self):
        """The edges as a lex-sorted tuple of (i, j) pairs with i < j."""
        slots = edge_slots(self.n)
        mask = self.mask
        return tuple(slots[k] for k in range(len(slots)) if (mask >> k) & 1)

    @property
    def edge_count(self):
        return self.mask.bit_count()

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash((self.n, self.mask))

    def __repr__(self):
        return "Graph(%d, %r)" % (self.n, list(self.edges))

    def __str__(self):
        """Compact form used in tables and diagnostics.

        >>> str(Graph(3, [(1, 2), (1, 3)]))
        '{12,13}'
        >>> str(empty_graph(3))
        '{}'
        """
        if self.n <= 9:
            body = ",".join("%d%d" % e for e in self.edges)
        else:
            body = ",".join("%d-%d" % e for e in self.edges)
        return "{%s}" % body

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        try:
            n = data["n"]
            edges = data["edges"]
        except (TypeError, KeyError) as exc:
            raise InputError("graph JSON needs keys 'n' and 'edges'") from exc
        return cls(n, [tuple(e) for e in edges])


def union(g, h):
    """Join in the graph poset: the graph with the edges of both.

    >>> union(Graph(2, [(1, 2)]), Graph(2)) == Graph(2, [(1, 2)])
    True
    """
    _check_same_n(g, h)
    return Graph.from_mask(g.n, g.mask | h.mask)


def intersect(g, h):
    """Meet in the graph poset: the graph with the common edges."""
    _check_same_n(g, h)
    return Graph.from_mask(g.n, g.mask & h.mask)


def is_subgraph(g, h):
    """True when every edge of g is an edge of h (g ⊆ h in the poset).

    >>> is_subgraph(empty_graph(3), complete_graph(3))
    True
    >>> is_subgraph(complete_graph(3), empty_graph(3))
    False
    """
    _check_same_n(g, h)
    return g.mask & ~h.mask == 0


def complete_graph(n):
    """The top of the poset: all C(n,2) edges present."""
    return Graph.from_mask(n, (1 << (n * (n - 1) // 2)) - 1)


def empty_graph(n):
    """The bottom of the poset: no edges."""
    return Graph.from_mask(n, 0)


def enumerate_graphs(n, limit=DEFAULT_ENUMERATION_LIMIT):
    """All graphs on {1..n} in increasing bitmask order.

    The first graph is always the edgeless one and the last the complete
    graph.  The walk visits 2^C(n,2) graphs, so it is guarded: raise the
    ``limit`` argument explicitly if you really want n > 5.

    >>> [str(g) for g in enumerate_graphs(2)]
    ['{}', '{12}']
    >>> len(enumerate_graphs(3))
    8
    """
    if n > limit:
        raise ResourceLimitError(
            "enumerating all 2^C(%d,2) graphs exceeds the guard (limit n <= %d)"
            % (n, limit),
            requested=n,
            limit=limit,
        )
    count = 1 << (n * (n - 1) // 2)
    return tuple(Graph.from_mask(n, mask) for mask in range(count))


def _check_same_n(g, h):
    if g.n != h.n:
        raise InputError(
            "graphs live on different vertex sets (n=%d vs n=%d)" % (g.n, h.n)
        )
