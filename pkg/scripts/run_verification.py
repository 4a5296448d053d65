#!/usr/bin/env python3
"""Full verification battery at configurable scale.

Runs every check the package ships: structure counts against the closed
form, quotient isomorphism, the theorem suites over seeded instance
populations, the independent group-order cross-check, the perturbed
population, and the field-pair rigidity table.  Exit status 0 means every
section passed.
"""

import argparse
import dataclasses
import pathlib
import sys
import time

_src = str(pathlib.Path(__file__).resolve().parent.parent / "src")
if _src not in sys.path:
    sys.path.insert(0, _src)

from grasspace.field import SUPPORTED_ORDERS, field_make, monomorphisms_all_surjective
from grasspace.projspace import (
    build_space,
    gaussian_binomial,
    incidence_isomorphic,
    native_structure,
    quotient,
    verify_projective_axioms,
)
from grasspace.theorems import (
    InstanceGenerator,
    InstanceKind,
    chow_crosscheck,
    generate_instance,
    one_way_shadow,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3_preconditions,
)


@dataclasses.dataclass(frozen=True)
class Config:
    samples_q2: int = 100
    samples_q3: int = 50
    shadow: int = 10_000
    seed: int = 0


def section(title):
    print(f"== {title}")


def check(label, ok):
    print(f"   {label}: {'PASS' if ok else 'FAIL'}")
    return ok


def run_counts():
    section("structure counts")
    ok = True
    for n, q in ((2, 2), (2, 3), (3, 2), (3, 3), (4, 2)):
        sp = build_space(n, q)
        good = (
            sp.point_count() == gaussian_binomial(n + 1, 1, q)
            and sp.line_count() == gaussian_binomial(n + 1, 2, q)
        )
        ok &= check(f"PG({n},{q}) {sp.point_count()} points {sp.line_count()} lines", good)
    return ok


def run_quotients():
    section("quotient spaces of PG(3,2)")
    sp = build_space(3, 2)
    reference = native_structure(build_space(2, 2))
    ok = True
    for q_point in range(sp.point_count()):
        inc = quotient(sp, q_point)
        good = (
            verify_projective_axioms(inc).passed
            and incidence_isomorphic(inc, reference) is not None
        )
        ok &= good
    return check("all 15 quotients projective and isomorphic to PG(2,2)", ok)


def run_theorem_population(cfg):
    ok = True
    for (n, q), count in (((3, 2), cfg.samples_q2), ((3, 3), cfg.samples_q3)):
        section(f"theorem suites on PG({n},{q}), {count} instances per kind")
        sp = build_space(n, q)
        for kind in (InstanceKind.COLLINEATION, InstanceKind.DUALITY):
            good1 = good2 = True
            for i in range(count):
                gen = InstanceGenerator(seed=cfg.seed + i, kind=kind)
                lm = generate_instance(gen, sp, sp)
                good1 &= verify_theorem1(lm).passed
                good2 &= verify_theorem2(lm).passed
            ok &= check(f"theorem 1, {kind.value} instances", good1)
            ok &= check(f"theorem 2, {kind.value} instances", good2)
    return ok


def run_crosscheck():
    section("independent group-order cross-check")
    report = chow_crosscheck(build_space(3, 2))
    for clause in report.clauses:
        tail = f" ({clause.witness})" if clause.witness else ""
        print(f"   {clause.clause}{tail}: {'PASS' if clause.passed else 'FAIL'}")
    return report.passed


def run_shadow(cfg):
    section(f"perturbed population, {cfg.shadow} instances")
    report = one_way_shadow(build_space(3, 2), cfg.shadow, base_seed=cfg.seed)
    print(
        f"   rejected {report.rejected}, isomorphisms {report.isomorphisms}, "
        f"counterexamples {len(report.counterexamples)}"
    )
    return check("no counterexample to one-way preservation", report.passed)


def run_field_rigidity():
    section("field monomorphism rigidity (orders <= 9)")
    ok = True
    for q1 in (q for q in SUPPORTED_ORDERS if q <= 9):
        row = []
        for q2 in (q for q in SUPPORTED_ORDERS if q <= 9):
            value = monomorphisms_all_surjective(
                field_make(q1).spec, field_make(q2).spec
            )
            row.append("surj" if value else "embed")
        print(f"   GF({q1}): {' '.join(f'{v:>5}' for v in row)}")
    sp32 = build_space(3, 2)
    ok &= check("preconditions on PG(3,2) self-pair", verify_theorem3_preconditions(sp32, sp32).passed)
    return ok


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples-q2", type=int, default=100)
    parser.add_argument("--samples-q3", type=int, default=50)
    parser.add_argument("--shadow", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    cfg = Config(
        samples_q2=args.samples_q2,
        samples_q3=args.samples_q3,
        shadow=args.shadow,
        seed=args.seed,
    )
    started = time.perf_counter()
    ok = run_counts()
    ok &= run_quotients()
    ok &= run_theorem_population(cfg)
    ok &= run_crosscheck()
    ok &= run_shadow(cfg)
    ok &= run_field_rigidity()
    print(f"== {'ALL SECTIONS PASS' if ok else 'FAILURES PRESENT'} "
          f"({time.perf_counter() - started:.1f}s)")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
