"""Command-line interface: minkowski, curve, cover, sweep, galois, verify.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 not-tabulated
(the input is valid but outside the reduction tables' valuation ranges).
All data output is deterministic for fixed flags; the only non-data line is
a version header, suppressible with --plain.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .arith import lcm_all, parse_rational, valuation
from .cover import CoverReport, enumerate_cover, locate
from .curves import WeierstrassCurve, compute_invariants, family_curve
from .errors import (
    InvalidInputError,
    NotTabulatedError,
    SemistabError,
    SingularCurveError,
    SizeLimitError,
)
from .galois import (
    FiniteCover,
    Subgroup,
    enumerate_subgroups,
    format_cycles,
    galois_closure,
    isomorphic,
    parse_cycles,
)
from .minkowski import (
    MinkowskiReport,
    gl_cardinality,
    minkowski_bound,
    to_scientific,
)
from .monodromy import (
    MonodromyGroup,
    bad_primes,
    phi_family_at_2,
    phi_family_at_3,
    phi_general_curve,
    semistability_degree,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NOT_TABULATED = 3


def _header(args) -> None:
    if not args.plain:
        print(f"# semistab {__version__}")


# ---------------------------------------------------------------------------
# serialization


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def degree_report_data(s: Fraction) -> tuple[dict, int]:
    """JSON payload for the family member y^2 = x^3 + s, with exit code.

    Primes outside the tabulated ranges get an explicit not-tabulated
    marker; the degree is present only when every bad prime resolves.
    """
    curve = family_curve(s)
    delta = compute_invariants(curve).delta
    monodromy = []
    orders: list[int] = []
    tabulated = True
    for p in bad_primes(s):
        try:
            if p == 2:
                group, provenance = phi_family_at_2(s), "family-table-2"
            elif p == 3:
                group, provenance = phi_family_at_3(s), "family-table-3"
            else:
                result = phi_general_curve(curve, p)
                group, provenance = result.group, result.provenance
            monodromy.append(
                {
                    "p": p,
                    "group": group.label,
                    "order": group.order,
                    "provenance": provenance,
                }
            )
            orders.append(group.order)
        except NotTabulatedError as exc:
            tabulated = False
            monodromy.append(
                {"p": p, "group": None, "order": None, "provenance": str(exc)}
            )
    data = {
        "s": rational_str(s),
        "delta": rational_str(delta),
        "bad_primes": bad_primes(s),
        "monodromy": monodromy,
        "degree": lcm_all(orders) if tabulated else None,
        "divides_minkowski": (24 % lcm_all(orders) == 0) if tabulated else None,
    }
    return data, EXIT_OK if tabulated else EXIT_NOT_TABULATED


def general_report_data(curve: WeierstrassCurve) -> tuple[dict, int]:
    """Per-prime report for an arbitrary curve, family mode when applicable."""
    if curve.is_family_form():
        return degree_report_data(curve.a6)
    delta = compute_invariants(curve).delta
    if delta.denominator != 1:
        raise InvalidInputError("general mode requires an integral model")
    from .arith import factorize

    monodromy = []
    orders: list[int] = []
    tabulated = True
    primes = sorted(factorize(delta.numerator))
    for p in primes:
        try:
            result = phi_general_curve(curve, p)
            if result.group is MonodromyGroup.C1:
                continue
            monodromy.append(
                {
                    "p": p,
                    "group": result.group.label,
                    "order": result.group.order,
                    "provenance": result.provenance,
                }
            )
            orders.append(result.group.order)
        except NotTabulatedError as exc:
            tabulated = False
            monodromy.append(
                {"p": p, "group": None, "order": None, "provenance": str(exc)}
            )
    data = {
        "s": None,
        "delta": rational_str(delta),
        "bad_primes": [m["p"] for m in monodromy],
        "monodromy": monodromy,
        "degree": lcm_all(orders) if tabulated else None,
        "divides_minkowski": None,
    }
    return data, EXIT_OK if tabulated else EXIT_NOT_TABULATED


def cover_report_data(report: CoverReport) -> dict:
    return {
        "p": report.p,
        "valuation_range": list(report.valuation_range),
        "balls": [
            {
                "p": b.p,
                "valuation": b.stratum,
                "center": b.center,
                "modulus": f"{b.p}^{b.modulus_exponent}",
                "group": b.group.label,
                "order": b.group.order,
            }
            for b in report.balls
        ],
        "classes": [
            {"group": g.label, "order": g.order, "count": c}
            for g, c in report.classes()
        ],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_minkowski(args) -> int:
    if args.g < 1:
        raise InvalidInputError("--g must be >= 1")
    reports = [MinkowskiReport.build(g, args.gl_mod) for g in range(1, args.g + 1)]
    if args.format == "json":
        payload = [
            {
                "g": r.g,
                "bound": str(r.bound),
                "bound_approx": to_scientific(r.bound),
                "exponents": {str(p): e for p, e in r.exponents.items()},
                f"gl_mod_{args.gl_mod}": str(r.gl12_card),
                f"gl_mod_{args.gl_mod}_approx": to_scientific(r.gl12_card),
            }
            for r in reports
        ]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _header(args)
        print("g\tM(2g)\tCardGL(2g)")
        for r in reports:
            print(f"{r.g}\t{r.bound}\t{r.gl12_card}")
    return EXIT_OK


def cmd_curve(args) -> int:
    if args.s is not None:
        s = parse_rational(args.s)
        data, code = degree_report_data(s)
    else:
        coeffs = [parse_rational(tok) for tok in args.a.split(",")]
        if len(coeffs) != 5:
            raise InvalidInputError("--a expects a1,a2,a3,a4,a6")
        data, code = general_report_data(WeierstrassCurve(*coeffs))
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        _header(args)
        print(f"s = {data['s']}  delta = {data['delta']}")
        for m in data["monodromy"]:
            group = m["group"] if m["group"] else f"not tabulated ({m['provenance']})"
            print(f"  p = {m['p']}: {group}")
        degree = data["degree"] if data["degree"] is not None else "undetermined"
        print(f"degree d(E) = {degree}")
    return code


def cmd_cover(args) -> int:
    report = enumerate_cover(args.p, (args.min_val, args.max_val))
    if args.format == "json":
        print(json.dumps(cover_report_data(report), sort_keys=True))
    else:
        _header(args)
        print("p\tvaluation\tcenter\tmodulus\tgroup\torder")
        for b in report.balls:
            print(
                f"{b.p}\t{b.stratum}\t{b.center}\t{b.p}^{b.modulus_exponent}"
                f"\t{b.group.label}\t{b.group.order}"
            )
    return EXIT_OK


def sweep_record(s: int, covers: dict[int, CoverReport]) -> dict:
    record: dict = {"s": str(s)}
    if s == 0:
        record.update(degree=None, locals=[], ball_ids=None, note="singular")
        return record
    ball_ids = {}
    for p, report in covers.items():
        lo, hi = report.valuation_range
        v = valuation(s, p)
        ball_ids[str(p)] = (
            locate(s, report).label() if lo <= v <= hi else None
        )
    data, code = degree_report_data(Fraction(s))
    record.update(
        degree=data["degree"],
        locals=data["monodromy"],
        ball_ids=ball_ids,
    )
    if code == EXIT_NOT_TABULATED:
        record["note"] = "not-tabulated"
    return record


def cmd_sweep(args) -> int:
    covers = {2: enumerate_cover(2, (0, 2)), 3: enumerate_cover(3, (0, 4))}
    values = list(range(args.start, args.stop + 1, args.step))
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            records = list(pool.map(lambda s: sweep_record(s, covers), values))
    else:
        records = [sweep_record(s, covers) for s in values]
    records.sort(key=lambda r: int(r["s"]))
    try:
        with open(args.out, "w") as fh:
            for record in records:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    degree_counts: dict[str, int] = {}
    for record in records:
        key = str(record["degree"]) if record["degree"] else "not-tabulated"
        degree_counts[key] = degree_counts.get(key, 0) + 1
    all_divide = all(
        24 % record["degree"] == 0
        for record in records
        if record["degree"] is not None
    )
    summary = {
        "records": len(records),
        "degree_counts": dict(sorted(degree_counts.items())),
        "all_degrees_divide_24": all_divide,
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def cmd_galois(args) -> int:
    gens = [
        parse_cycles(part, args.degree)
        for part in args.gens.split(";")
        if part.strip()
    ]
    cover = FiniteCover(degree=args.degree, generators=tuple(gens))
    closure = galois_closure(cover)
    deck = closure.deck_group
    subs = enumerate_subgroups(deck)
    reps: list[Subgroup] = []
    counts: list[int] = []
    for sub in subs:
        for i, rep in enumerate(reps):
            if isomorphic(sub, rep):
                counts[i] += 1
                break
        else:
            reps.append(sub)
            counts.append(1)
    classes = [
        {"order": rep.order, "subgroups": count}
        for rep, count in zip(reps, counts)
    ]
    checked = None
    if args.check_all:
        from .galois import classify_point

        for sub in subs:
            classify_point(closure, sub, reps)
        checked = len(subs)
    data = {
        "degree": args.degree,
        "generators": [format_cycles(g) for g in cover.generators],
        "orbit_size": len(closure.orbit),
        "deck_group_order": deck.order,
        "subgroup_count": len(subs),
        "classes": classes,
    }
    if checked is not None:
        data["classified_subgroups"] = checked
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        _header(args)
        print(f"degree {data['degree']}  generators {' '.join(data['generators'])}")
        print(f"orbit size {data['orbit_size']}  deck group order {data['deck_group_order']}")
        print(f"subgroups {data['subgroup_count']} in {len(classes)} isomorphism classes")
        for cls in classes:
            print(f"  order {cls['order']}: {cls['subgroups']} subgroup(s)")
        if checked is not None:
            print(f"classified {checked} subgroups; both routes agree")
    return EXIT_OK


def _verify_checks() -> list[tuple[str, bool]]:
    checks: list[tuple[str, bool]] = []

    def add(label: str, fn) -> None:
        try:
            checks.append((label, bool(fn())))
        except SemistabError:
            checks.append((label, False))

    add(
        "bound table g=1..4 is 24, 5760, 2903040, 1393459200",
        lambda: [minkowski_bound(g) for g in (1, 2, 3, 4)]
        == [24, 5760, 2903040, 1393459200],
    )
    add("gl cardinality: GL_2(Z/12) has 4608 elements", lambda: gl_cardinality(2, 12) == 4608)
    add(
        "gl cardinality mod 12 rounds to 3.2e16, 1.2e38, 1.9e68",
        lambda: [to_scientific(gl_cardinality(n, 12)) for n in (4, 6, 8)]
        == ["3.2e+16", "1.2e+38", "1.9e+68"],
    )
    add(
        "family invariants at s=1: c4=0, delta=-432, j=0",
        lambda: (
            lambda inv: inv.c4 == 0 and inv.delta == -432 and inv.j == 0
        )(compute_invariants(family_curve(1))),
    )
    add(
        "monodromy at 3: C4 for s=1,8,10,17,216; Dic3 for s=2,9,81,54",
        lambda: all(
            phi_family_at_3(s) is MonodromyGroup.C4 for s in (1, 8, 10, 17, 216)
        )
        and all(
            phi_family_at_3(s) is MonodromyGroup.DIC3 for s in (2, 9, 81, 54)
        ),
    )
    add(
        "monodromy at 2: C3/C6/C2/SL2(F3) cases",
        lambda: all(phi_family_at_2(s) is MonodromyGroup.C3 for s in (1, 5, 12))
        and all(phi_family_at_2(s) is MonodromyGroup.C6 for s in (3, 7))
        and all(phi_family_at_2(s) is MonodromyGroup.C2 for s in (2, 6))
        and all(phi_family_at_2(s) is MonodromyGroup.SL2F3 for s in (4, 20)),
    )
    add(
        "curve s=4 has maximal monodromy at 2 and 3, degree 24",
        lambda: (
            lambda report: report.degree == 24
            and report.local_at(2).group is MonodromyGroup.SL2F3
            and report.local_at(3).group is MonodromyGroup.DIC3
        )(semistability_degree(4)),
    )
    add(
        "3-adic cover lists the four C4 balls 1+9, 8+9, 27+3^5, 216+3^5",
        lambda: {
            (b.center, b.modulus_exponent)
            for b in enumerate_cover(3, (0, 4)).balls
            if b.group is MonodromyGroup.C4
        }
        >= {(1, 2), (8, 2), (27, 5), (216, 5)},
    )
    return checks


def cmd_verify(args) -> int:
    _header(args)
    ok = True
    for label, passed in _verify_checks():
        print(f"{'PASS' if passed else 'FAIL'}  {label}")
        ok = ok and passed
    print("verification OK" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semistab",
        description=(
            "Finite monodromy groups and semi-stability degrees of "
            "y^2 = x^3 + s, Minkowski bounds, p-adic monodromy covers, and "
            "Galois closures of finite covers"
        ),
    )
    parser.add_argument(
        "--plain", action="store_true", help="suppress the version header line"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mink = sub.add_parser("minkowski", help="Minkowski bound table")
    p_mink.add_argument("--g", type=int, required=True, help="max dimension g")
    p_mink.add_argument("--gl-mod", type=int, default=12, dest="gl_mod")
    p_mink.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_mink.set_defaults(func=cmd_minkowski)

    p_curve = sub.add_parser("curve", help="monodromy and degree of one curve")
    group = p_curve.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", help="family parameter (integer or num/den)")
    group.add_argument("--a", help="a1,a2,a3,a4,a6 of a Weierstrass equation")
    p_curve.add_argument("--json", action="store_true")
    p_curve.set_defaults(func=cmd_curve)

    p_cover = sub.add_parser("cover", help="p-adic ball decomposition")
    p_cover.add_argument("--p", type=int, required=True)
    p_cover.add_argument("--min-val", type=int, required=True, dest="min_val")
    p_cover.add_argument("--max-val", type=int, required=True, dest="max_val")
    p_cover.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_cover.set_defaults(func=cmd_cover)

    p_sweep = sub.add_parser("sweep", help="batch-evaluate integer parameters")
    p_sweep.add_argument("--from", type=int, required=True, dest="start")
    p_sweep.add_argument("--to", type=int, required=True, dest="stop")
    p_sweep.add_argument("--step", type=int, default=1)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.set_defaults(func=cmd_sweep)

    p_galois = sub.add_parser("galois", help="Galois closure of a finite cover")
    p_galois.add_argument("--degree", type=int, required=True)
    p_galois.add_argument(
        "--gens", required=True, help="generators in cycle notation, ';'-separated"
    )
    p_galois.add_argument("--check-all", action="store_true", dest="check_all")
    p_galois.add_argument("--json", action="store_true")
    p_galois.set_defaults(func=cmd_galois)

    p_verify = sub.add_parser("verify", help="run the pinned regression checks")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotTabulatedError as exc:
        print(f"not tabulated: {exc}", file=sys.stderr)
        return EXIT_NOT_TABULATED
    except (InvalidInputError, SingularCurveError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
