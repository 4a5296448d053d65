"""Command line front end and the bit-exact interchange formats.

Exit codes: 0 success (for `check`: full isomorphism), 1 checked and
negative, 2 bad parameters, 3 I/O failure, 4 parse error, 5 search budget
exhausted.

GRASSMAP format (UTF-8, LF endings):

    GRASSMAP 1
    SOURCE PG <n> <q>
    TARGET PG <n'> <q'> [DUAL]
    MAP
    <src-line-id> <tgt-line-id>     one row per source line, ids ascending
    END

Ids refer to the canonical orders documented in `projspace`.  The DUAL
token marks maps whose images are meant as lines of the target's dual
space.
"""

import argparse
import dataclasses
import sys

from .errors import (
    BudgetExceeded,
    DimensionTooSmall,
    FormatError,
    IncompatibleSpaces,
    TooLarge,
    UnsupportedDimension,
    UnsupportedOrder,
)
from .grassmann import (
    DEFAULT_NODE_BUDGET,
    automorphism_group,
    build_grassmann,
    export_graph,
)
from .maps import (
    LineMap,
    classify_point_map,
    preserves_intersections,
    preserves_skewness,
    reconstruct_point_map,
)
from .projspace import (
    build_space,
    gaussian_binomial,
    pencil,
    planes,
    planes_through_point,
    star,
)
from .theorems import (
    InstanceGenerator,
    InstanceKind,
    chow_crosscheck,
    generate_instance,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3_preconditions,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARAMS = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_BUDGET = 5

MAX_CHECK_LINES = 2000


@dataclasses.dataclass(frozen=True)
class GrassmapFile:
    source_n: int
    source_q: int
    target_n: int
    target_q: int
    dual: bool
    pairs: tuple


def serialize_grassmap(lm: LineMap) -> str:
    dual = " DUAL" if lm.dual else ""
    head = [
        "GRASSMAP 1",
        f"SOURCE PG {lm.source.n} {lm.source.q}",
        f"TARGET PG {lm.target.n} {lm.target.q}{dual}",
        "MAP",
    ]
    rows = [f"{src} {lm.image[src]}" for src in range(len(lm.source.lines))]
    return "\n".join(head + rows + ["END"]) + "\n"


def _parse_space_header(row, lineno, label):
    parts = row.split(" ")
    if len(parts) < 4 or parts[0] != label or parts[1] != "PG":
        raise FormatError(lineno, f"expected '{label} PG <n> <q>', got {row!r}")
    try:
        n = int(parts[2])
        q = int(parts[3])
    except ValueError:
        raise FormatError(lineno, f"non-integer parameters in {row!r}") from None
    return n, q, parts


def parse_grassmap(text: str) -> GrassmapFile:
    """Strict parse of the GRASSMAP format; FormatError carries the
    1-based line number of the first deviation."""
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    if len(rows) < 5:
        raise FormatError(max(1, len(rows)), "truncated file")
    if rows[0] != "GRASSMAP 1":
        raise FormatError(1, f"expected 'GRASSMAP 1', got {rows[0]!r}")
    sn, sq, sparts = _parse_space_header(rows[1], 2, "SOURCE")
    if len(sparts) != 4:
        raise FormatError(2, "unexpected tokens after SOURCE parameters")
    tn, tq, tparts = _parse_space_header(rows[2], 3, "TARGET")
    if len(tparts) == 5 and tparts[4] == "DUAL":
        dual = True
    elif len(tparts) == 4:
        dual = False
    else:
        raise FormatError(3, "unexpected tokens after TARGET parameters")
    if rows[3] != "MAP":
        raise FormatError(4, f"expected 'MAP', got {rows[3]!r}")
    if rows[-1] != "END":
        raise FormatError(len(rows), "missing END line")
    pairs = []
    for lineno, row in enumerate(rows[4:-1], start=5):
        parts = row.split(" ")
        if len(parts) != 2:
            raise FormatError(lineno, f"expected '<src> <tgt>', got {row!r}")
        try:
            src = int(parts[0])
            tgt = int(parts[1])
        except ValueError:
            raise FormatError(lineno, f"non-integer pair {row!r}") from None
        if src != len(pairs):
            raise FormatError(
                lineno, f"source ids must ascend from 0, got {src}"
            )
        if tgt < 0:
            raise FormatError(lineno, f"negative target id in {row!r}")
        pairs.append((src, tgt))
    return GrassmapFile(sn, sq, tn, tq, dual, tuple(pairs))


def line_map_from_grassmap(gf: GrassmapFile) -> LineMap:
    """Materialize a parsed file against real spaces.

    Row-count or id-range mismatches against the declared headers are
    parse-level failures; unsupported space parameters raise the usual
    construction errors.
    """
    if gf.dual and gf.target_n != 3:
        raise FormatError(3, "DUAL requires a 3-dimensional target")
    source = build_space(gf.source_n, gf.source_q)
    target = build_space(gf.target_n, gf.target_q)
    expected = len(source.lines)
    if len(gf.pairs) != expected:
        raise FormatError(
            5 + min(len(gf.pairs), expected),
            f"expected {expected} map rows, found {len(gf.pairs)}",
        )
    limit = len(target.lines)
    for src, tgt in gf.pairs:
        if tgt >= limit:
            raise FormatError(
                5 + src, f"target id {tgt} out of range ({limit} lines)"
            )
    return LineMap(
        source=source,
        target=target,
        image={src: tgt for src, tgt in gf.pairs},
        dual=gf.dual,
    )


def cmd_stats(args) -> int:
    sp = build_space(args.n, args.q)
    sets = sp.line_point_sets
    first = sets[0]
    degree = sum(1 for b in range(1, len(sets)) if first & sets[b])
    plane_id = planes_through_point(sp, 0)[0]
    pencil_size = len(pencil(sp, 0, planes(sp)[plane_id]))
    print(f"points {len(sp.points)}")
    print(f"lines {len(sp.lines)}")
    print(f"star {len(star(sp, 0))}")
    print(f"pencil {pencil_size}")
    print(f"degree {degree}")
    return EXIT_OK


def cmd_graph(args) -> int:
    sp = build_space(args.n, args.q)
    text = export_graph(build_grassmann(sp))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_aut(args) -> int:
    sp = build_space(args.n, args.q)
    report = automorphism_group(build_grassmann(sp), node_budget=args.budget)
    print(report.group_order)
    return EXIT_OK


def cmd_gen(args) -> int:
    sp = build_space(args.n, args.q)
    gen = InstanceGenerator(seed=args.seed, kind=InstanceKind(args.kind))
    text = serialize_grassmap(generate_instance(gen, sp, sp))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    with open(args.input, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    gf = parse_grassmap(text)
    for n, q in ((gf.source_n, gf.source_q), (gf.target_n, gf.target_q)):
        if n >= 2 and q >= 2 and gaussian_binomial(n + 1, 2, q) > MAX_CHECK_LINES:
            raise TooLarge(
                f"PG({n},{q}) exceeds the {MAX_CHECK_LINES}-line checking limit"
            )
    lm = line_map_from_grassmap(gf)
    bijective = lm.is_bijective()
    intersections = preserves_intersections(lm)
    skew_preserved = preserves_skewness(lm)
    print(f"BIJECTIVE {'yes' if bijective else 'no'}")
    print(f"PRESERVES-INTERSECTIONS {'yes' if intersections else 'no'}")
    print(f"PRESERVES-SKEW {'yes' if skew_preserved else 'no'}")
    if not (bijective and intersections):
        print("KAPPA - -")
        return EXIT_NEGATIVE
    report = reconstruct_point_map(lm)
    if report.kappa is None:
        print(f"KAPPA {report.status.value} -")
        return EXIT_NEGATIVE
    kind = classify_point_map(report.kappa)
    print(f"KAPPA {report.status.value} {kind.value}")
    return EXIT_OK if skew_preserved else EXIT_NEGATIVE


def _verify_population(args, sp) -> int:
    kinds = [InstanceKind.COLLINEATION]
    if sp.n == 3:
        kinds.append(InstanceKind.DUALITY)
    merged = {}
    order = []
    theorem_id = None
    for block, kind in enumerate(kinds):
        for i in range(args.samples):
            seed = args.seed + block * args.samples + i
            gen = InstanceGenerator(seed=seed, kind=kind)
            lm = generate_instance(gen, sp, sp)
            if args.suite == "thm1":
                report = verify_theorem1(lm)
            else:
                report = verify_theorem2(lm)
            theorem_id = report.theorem
            for c in report.clauses:
                if c.clause not in merged:
                    merged[c.clause] = (True, "")
                    order.append(c.clause)
                ok, _ = merged[c.clause]
                if ok and not c.passed:
                    witness = f"kind={kind.value} seed={seed} {c.witness}".strip()
                    merged[c.clause] = (False, witness)
    all_ok = True
    for name in order:
        ok, witness = merged[name]
        all_ok = all_ok and ok
        tail = f" {witness}" if witness else ""
        print(f"{theorem_id}.{name} {'PASS' if ok else 'FAIL'}{tail}")
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    sp = build_space(args.n, args.q)
    if args.suite == "thm3":
        report = verify_theorem3_preconditions(sp, sp)
        print(report.render())
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    if args.suite == "chow":
        report = chow_crosscheck(sp, node_budget=args.budget)
        for c in report.clauses:
            if c.clause in ("graph_order", "group_order"):
                print(f"{c.clause} {c.witness}")
        print(report.render())
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    return _verify_population(args, sp)


def _add_space_args(parser):
    parser.add_argument("-n", type=int, required=True, help="projective dimension")
    parser.add_argument("-q", type=int, required=True, help="field order")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasspace",
        description="finite projective spaces, Grassmann line graphs, and "
        "verification of the line-map isomorphism theorems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="recomputed structure counts")
    _add_space_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("graph", help="export the Grassmann graph")
    _add_space_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("aut", help="exact Grassmann-graph automorphism order")
    _add_space_args(p)
    p.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help="search node budget",
    )
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("gen", help="generate a seeded line-map instance")
    _add_space_args(p)
    p.add_argument(
        "--kind",
        required=True,
        choices=[k.value for k in InstanceKind],
        help="instance family",
    )
    p.add_argument("--seed", type=int, default=0, help="64-bit instance seed")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="classify a GRASSMAP file")
    p.add_argument("input", help="path of the GRASSMAP file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a theorem verification suite")
    p.add_argument(
        "--suite", required=True, choices=["thm1", "thm2", "thm3", "chow"]
    )
    _add_space_args(p)
    p.add_argument(
        "--samples",
        type=int,
        default=100,
        help="instances per kind (collineation seeds start at --seed, "
        "duality seeds at --seed + samples)",
    )
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help="search node budget (chow suite)",
    )
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARAMS
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        UnsupportedOrder,
        DimensionTooSmall,
        UnsupportedDimension,
        IncompatibleSpaces,
        TooLarge,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
