"""Command-line interface: build models, transform them, print reports.

The subcommands mirror the library's pipeline.  A model of the
configurations of n points in a simplicial complex is built once and
shipped around as JSON; tensoring two models and evaluating at the
complete graph turns them into an integer homology table.

    graphconf model --letter Y --n 3 > y.json
    graphconf model --letter Z --n 3 > z.json
    graphconf tensor y.json z.json --prune > yz.json
    graphconf homology yz.json --at K

    graphconf letters-table                # the nine-product table
    graphconf torus --rank 3 --direct      # points on a torus, two ways
    graphconf stable --letter Y --n 3 --m 2 --b 1
    graphconf cp --letter Y --n 3 --p 3 --degree 7
    graphconf oracle                       # internal cross-checks

Everything exits 0 on success and nonzero with a one-line JSON error
object on stderr otherwise (2 = bad input, 3 = resource guard,
4 = failed splitting, 1 = internal check failed).
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError, SplittingError
from .graphs import Graph, complete_graph, empty_graph
from .complexes import EvaluatedComplex, PresheafComplex, evaluate, odot
from .covers import (
    DEFAULT_SIMPLEX_LIMIT,
    DEFAULT_SUBDIVISIONS,
    SimplicialComplex,
    letter,
    letters,
    star_model,
)
from .pruning import prune, prune_smith
from .stable import cp_homology, stable_homology, stable_model
from .torus import (
    DIRECT_CHECK_MAX_RANK,
    closed_formula_betti,
    direct_betti,
    torus_betti,
    verify_multiplication_table,
)

#: Row order of the letters table: products of the four star letters.
LETTER_PAIRS = (
    ("X", "Y"),
    ("X", "Z"),
    ("X", "O"),
    ("Y", "Y"),
    ("Y", "Z"),
    ("Y", "O"),
    ("Z", "Z"),
    ("Z", "O"),
    ("O", "O"),
)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one product-of-spaces homology run needs.

    ``left`` and ``right`` are letter names (X, Y, Z, O) or paths to
    simplicial-complex JSON files.  ``max_degree`` truncates the
    report; the truncation happens after evaluation (tensoring mixes
    degrees, so cutting earlier would be unsound).
    """

    n: int
    left: str
    right: str
    subdivisions: int = DEFAULT_SUBDIVISIONS
    max_degree: int = None
    output_format: str = "table"
    max_simplices: int = DEFAULT_SIMPLEX_LIMIT

    def __post_init__(self):
        if self.n < 1:
            raise InputError("need at least one point, got n=%r" % (self.n,))
        if self.subdivisions < 0:
            raise InputError("subdivision count must be nonnegative")
        if self.output_format not in ("table", "json"):
            raise InputError(
                "unknown output format %r (use table or json)"
                % (self.output_format,)
            )


def _resolve_space(name_or_path):
    """A letter name, or a path to SimplicialComplex JSON."""
    if name_or_path in letters():
        return letter(name_or_path)
    try:
        with open(name_or_path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(
            "%r is not a letter (X, Y, Z, O) and cannot be read as a "
            "file: %s" % (name_or_path, exc)
        )
    except ValueError as exc:
        raise InputError("cannot parse %s as JSON: %s" % (name_or_path, exc))
    return SimplicialComplex.from_json(data)


def _truncated(evaluated, max_degree):
    """Degrees ≤ max_degree+1 of an evaluated complex.

    Keeping one spare degree preserves the boundaries arriving into
    degree max_degree, so the homology report is exact up to the cut.
    """
    if max_degree is None:
        return evaluated
    if max_degree < 0:
        raise InputError("negative truncation degree %r" % (max_degree,))
    keep = max_degree + 2
    return EvaluatedComplex(
        evaluated.ranks[:keep], evaluated.differentials[: keep - 1]
    )


def run_pipeline(cfg):
    """Homology of Conf(n, X × Y) through the product pipeline.

    Builds pruned star models of both factors, tensors them, prunes
    the product, evaluates at the complete graph, and reads off the
    homology (truncated to cfg.max_degree if set).

    >>> [s.betti for s in run_pipeline(PipelineConfig(2, "Z", "Z"))]
    [1, 1, 0, 0, 0]
    """
    left = star_model(
        _resolve_space(cfg.left),
        cfg.n,
        cfg.subdivisions,
        max_simplices=cfg.max_simplices,
    )
    right = star_model(
        _resolve_space(cfg.right),
        cfg.n,
        cfg.subdivisions,
        max_simplices=cfg.max_simplices,
    )
    product = prune(odot(left, right))
    evaluated = _truncated(
        evaluate(product, complete_graph(cfg.n)), cfg.max_degree
    )
    summaries = evaluated.homology()
    if cfg.max_degree is not None:
        summaries = summaries[: cfg.max_degree + 1]
    return summaries


def letters_table(subdivisions=DEFAULT_SUBDIVISIONS):
    """All nine letter-product rows of Conf(3, A × B).

    Returns a list of (left, right, summaries) triples in display
    order.  Each letter's model is built once and reused.
    """
    models = {}
    for name in "XYZO":
        models[name] = star_model(letter(name), 3, subdivisions)
    rows = []
    for a, b in LETTER_PAIRS:
        product = prune(odot(models[a], models[b]))
        summaries = evaluate(product, complete_graph(3)).homology()
        rows.append((a, b, summaries))
    return rows


# -- rendering --------------------------------------------------------


def _parse_graph(text, n):
    """Graphs on the command line: 'K', 'empty', or edges like '12,13'."""
    body = text.strip().strip("{}").strip().lower()
    if body in ("k", "complete", "kn"):
        return complete_graph(n)
    if body in ("", "empty"):
        return empty_graph(n)
    edges = []
    for part in body.split(","):
        word = part.strip()
        if len(word) != 2 or not word.isdigit():
            raise InputError(
                "cannot read %r as an edge; write two vertex digits, "
                "e.g. '12,13'" % (part,)
            )
        edges.append((int(word[0]), int(word[1])))
    return Graph(n, edges)


def _trimmed(summaries):
    """Drop zero groups above the last nonzero degree."""
    last = -1
    for s in summaries:
        if not s.is_zero:
            last = s.degree
    return summaries[: last + 1]


def _emit(text_lines, payload, fmt, out=None):
    out = sys.stdout if out is None else out
    if fmt == "json":
        print(json.dumps(payload), file=out)
    else:
        for line in text_lines:
            print(line, file=out)


def _write_complex(complex_, path):
    text = json.dumps(complex_.to_json())
    if path is None:
        print(text)
    else:
        with open(path, "w") as handle:
            handle.write(text + "\n")


def _load_complex(path):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as handle:
                data = json.load(handle)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    except ValueError as exc:
        raise InputError("cannot parse %s as JSON: %s" % (path, exc))
    return PresheafComplex.from_json(data)


def _save_betti_chart(path, title, values):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(4.2, 3.0))
    ax.bar(range(len(values)), values, color="#39618f")
    ax.set_xticks(range(len(values)))
    ax.set_xlabel("degree")
    ax.set_ylabel("free rank")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


# -- subcommands ------------------------------------------------------


def cmd_model(args):
    space = letter(args.letter) if args.letter else _resolve_space(args.complex)
    model = star_model(
        space,
        args.n,
        args.subdivide,
        max_simplices=args.guard_simplices,
        prune_output=not args.no_prune,
    )
    _write_complex(model, args.output)


def cmd_prune(args):
    complex_ = _load_complex(args.input)
    reduced = prune_smith(complex_) if args.smith else prune(complex_)
    _write_complex(reduced, args.output)


def cmd_tensor(args):
    left = _load_complex(args.left)
    right = _load_complex(args.right)
    product = odot(left, right)
    if args.prune:
        product = prune(product)
    _write_complex(product, args.output)


def cmd_homology(args):
    complex_ = _load_complex(args.input)
    graph = _parse_graph(args.at, complex_.n)
    evaluated = _truncated(evaluate(complex_, graph), args.max_degree)
    summaries = evaluated.homology()
    if args.max_degree is not None:
        summaries = summaries[: args.max_degree + 1]
    payload = {
        "graph": graph.to_json(),
        "homology": [s.to_json() for s in summaries],
    }
    _emit(["at %s" % graph] + [str(s) for s in summaries], payload, args.format)


def cmd_letters_table(args):
    rows = letters_table(args.subdivide)
    width = max(len(_trimmed(s)) for _, _, s in rows)
    header = "pair\t" + "\t".join("H_%d" % d for d in range(width))
    lines = [header]
    payload = []
    for a, b, summaries in rows:
        cells = [s.group_name() for s in _trimmed(summaries)]
        cells += ["0"] * (width - len(cells))
        lines.append("%s x %s\t%s" % (a, b, "\t".join(cells)))
        payload.append(
            {
                "left": a,
                "right": b,
                "homology": [s.to_json() for s in _trimmed(summaries)],
            }
        )
        if args.figures:
            _save_betti_chart(
                "%s/letters_%s%s.png" % (args.figures, a, b),
                "Conf(3, %s x %s)" % (a, b),
                [s.betti for s in _trimmed(summaries)],
            )
    _emit(lines, payload, args.format)


def cmd_torus(args):
    table = torus_betti(args.rank)
    formula = closed_formula_betti(args.rank)
    payload = {
        "rank": args.rank,
        "betti": table.to_json(),
        "matches_closed_formula": table == formula,
    }
    lines = [
        "degree\trank",
    ]
    lines += [
        "%d\t%d" % (d, table[d]) for d in range(table.top_degree() + 1)
    ]
    lines.append("closed formula: %s" % ("ok" if table == formula else "MISMATCH"))
    ok = table == formula
    if args.direct:
        direct, torsion = direct_betti(args.rank)
        agrees = direct == table and not torsion
        payload["direct"] = direct.to_json()
        payload["direct_torsion"] = [list(t) for t in torsion]
        payload["direct_matches"] = agrees
        lines.append("direct tensor power: %s" % ("ok" if agrees else "MISMATCH"))
        ok = ok and agrees
    if args.figures:
        _save_betti_chart(
            "%s/torus_rank%d.png" % (args.figures, args.rank),
            "3 points, %d-fold torus model" % args.rank,
            [table[d] for d in range(table.top_degree() + 1)],
        )
    _emit(lines, payload, args.format)
    return 0 if ok else 1


def cmd_stable(args):
    model = star_model(letter(args.letter), args.n, args.subdivide)
    group, bound = stable_homology(model, args.m, args.b)
    payload = {
        "letter": args.letter,
        "n": args.n,
        "m": args.m,
        "b": args.b,
        "group": group.to_json(),
        "stable_for_p_beyond": bound,
    }
    lines = [
        "H_{%dp+%d} Conf(%d, %s x C^p) = %s for all p > %d"
        % (args.m, args.b, args.n, args.letter, group.group_name(), bound)
    ]
    _emit(lines, payload, args.format)


def cmd_cp(args):
    model = star_model(letter(args.letter), args.n, args.subdivide)
    group = cp_homology(model, args.p, args.degree)
    payload = {
        "letter": args.letter,
        "n": args.n,
        "p": args.p,
        "group": group.to_json(),
    }
    lines = [
        "H_%d Conf(%d, %s x C^%d) = %s"
        % (args.degree, args.n, args.letter, args.p, group.group_name())
    ]
    _emit(lines, payload, args.format)


def cmd_oracle(args):
    checks = []
    for cell in verify_multiplication_table():
        checks.append(
            (
                "table %s*%s = %s" % (cell.left, cell.right, cell.expected),
                cell.passed,
                "; ".join(cell.mismatches[:3]),
            )
        )
    for r in range(1, 7):
        checks.append(
            (
                "transfer = closed formula at rank %d" % r,
                torus_betti(r) == closed_formula_betti(r),
                "",
            )
        )
    for r in range(1, DIRECT_CHECK_MAX_RANK + 1):
        direct, torsion = direct_betti(r)
        checks.append(
            (
                "direct power = transfer at rank %d, torsion-free" % r,
                direct == torus_betti(r) and not torsion,
                "",
            )
        )
    for n in (2, 3):
        model = stable_model(n)
        for i in range(n):
            for j in range(n):
                checks.append(
                    (
                        "orthogonality (%d,%d) at n=%d" % (i, j, n),
                        model.orthogonality_check(i, j),
                        "",
                    )
                )
    failed = [c for c in checks if not c[1]]
    lines = [
        "%s %s%s" % ("ok" if passed else "FAIL", name, ": " + d if d and not passed else "")
        for name, passed, d in checks
    ]
    lines.append("%d checks, %d failed" % (len(checks), len(failed)))
    payload = {
        "checks": [
            {"name": name, "passed": passed} for name, passed, _ in checks
        ],
        "failed": len(failed),
    }
    _emit(lines, payload, args.format)
    return 1 if failed else 0


# -- wiring -----------------------------------------------------------


def _add_format(parser):
    parser.add_argument(
        "--format",
        choices=("table", "json"),
        default="table",
        help="plain tab-separated text or one JSON document",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphconf",
        description="homology of configuration spaces of points in products",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="build a star-cover presheaf model")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--letter", choices=tuple("XYZO"))
    group.add_argument("--complex", help="path to simplicial-complex JSON")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--subdivide", type=int, default=DEFAULT_SUBDIVISIONS)
    p.add_argument("--guard-simplices", type=int, default=DEFAULT_SIMPLEX_LIMIT)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_model)

    p = sub.add_parser("prune", help="cancel unit pivots of a model")
    p.add_argument("input", help="complex JSON path, or - for stdin")
    p.add_argument("--smith", action="store_true",
                   help="also hunt units inside label-homogeneous blocks")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_prune)

    p = sub.add_parser("tensor", help="union-tensor of two models")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--prune", action="store_true")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser("homology", help="homology of an evaluation")
    p.add_argument("input", help="complex JSON path, or - for stdin")
    p.add_argument("--at", default="K",
                   help="graph: K, empty, or edges like '12,13'")
    p.add_argument("--max-degree", type=int, default=None)
    _add_format(p)
    p.set_defaults(handler=cmd_homology)

    p = sub.add_parser("letters-table",
                       help="the nine-row letter-product homology table")
    p.add_argument("--subdivide", type=int, default=DEFAULT_SUBDIVISIONS)
    p.add_argument("--figures", help="directory for PNG bar charts")
    _add_format(p)
    p.set_defaults(handler=cmd_letters_table)

    p = sub.add_parser("torus", help="three points on r tori")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--direct", action="store_true",
                   help="cross-check by the direct tensor power (rank <= %d)"
                   % DIRECT_CHECK_MAX_RANK)
    p.add_argument("--figures", help="directory for PNG bar charts")
    _add_format(p)
    p.set_defaults(handler=cmd_torus)

    p = sub.add_parser("stable", help="the eventual H_{mp+b}")
    p.add_argument("--letter", choices=tuple("XYZO"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--subdivide", type=int, default=DEFAULT_SUBDIVISIONS)
    _add_format(p)
    p.set_defaults(handler=cmd_stable)

    p = sub.add_parser("cp", help="one group of Conf(n, letter x C^p)")
    p.add_argument("--letter", choices=tuple("XYZO"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--subdivide", type=int, default=DEFAULT_SUBDIVISIONS)
    _add_format(p)
    p.set_defaults(handler=cmd_cp)

    p = sub.add_parser("oracle", help="run the internal cross-checks")
    _add_format(p)
    p.set_defaults(handler=cmd_oracle)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args) or 0
    except InputError as exc:
        return _fail("input", exc, 2)
    except ResourceLimitError as exc:
        return _fail(
            "resource", exc, 3, requested=exc.requested, limit=exc.limit
        )
    except SplittingError as exc:
        return _fail("splitting", exc, 4)


def _fail(kind, exc, code, **extra):
    payload = {"kind": kind, "message": str(exc)}
    payload.update(extra)
    print(json.dumps({"error": payload}), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
