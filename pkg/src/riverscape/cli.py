"""Batch command-line surface: build, amenability, paradoxicalize, check.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 budget exhausted or matching inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .groups import (DEFAULT_VERTEX_BUDGET, BudgetExceededError, FreeGroup,
                     GroupSpec, IntegerGroup, ball)
from .labels import separation_index
from .landscapes import (AnchorSet, FractalLandscape, RiverLandscape,
                         TernaryLandscape, components_leq, verify_axioms)
from .paradox import paradoxicalize_sequence
from .patterns import LocalSetSpec, center_height_local_set
from .snapshots import bundle_pipeline, dump_json, load_json, snapshot_landscape
from .witness import defect, defect_bound

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3

MIN_RIVER_RADIUS = 2


class InputError(ValueError):
    pass


def parse_group(text: str) -> GroupSpec:
    t = text.strip().lower()
    if t in ("z", "int", "integers"):
        return IntegerGroup()
    if t.startswith("f") and t[1:].isdigit():
        return FreeGroup(int(t[1:]))
    if t.startswith("free:") and t[5:].isdigit():
        return FreeGroup(int(t[5:]))
    raise InputError(f"unknown group {text!r}; use z, f2, or free:<rank>")


def make_landscape(name: str, spec: GroupSpec, radius: int):
    name = name.strip().lower()
    if name == "river":
        if spec.kind != "free" or spec.rank < 2:
            raise InputError("the river landscape needs a free group f2+")
        if radius < MIN_RIVER_RADIUS:
            raise InputError(
                f"radius {radius} too small for the river landscape; "
                f"minimal radius is {MIN_RIVER_RADIUS}"
            )
        return RiverLandscape(spec)
    if name == "ternary":
        if spec.kind != "integers":
            raise InputError("the ternary landscape lives on z")
        return TernaryLandscape(spec)
    if name == "fractal":
        # default anchors at distances 3 * 10^i that fit the window
        anchors = []
        i = 0
        while 3 * 10**i <= radius:
            if spec.kind == "integers":
                anchors.append(3 * 10**i)
            else:
                anchors.append((1,) * (3 * 10**i))
            i += 1
        if not anchors:
            raise InputError(
                "radius too small for the fractal landscape; "
                "minimal radius is 3"
            )
        return FractalLandscape(spec, AnchorSet(spec, tuple(anchors)))
    raise InputError(f"unknown landscape {name!r}")


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_build(args) -> int:
    spec = parse_group(args.group)
    z = make_landscape(args.landscape, spec, args.radius)
    window = ball(spec, args.radius, budget=args.budget_vertices)
    prefix_len = args.label_prefix or separation_index(spec, 2)
    report = verify_axioms(z, window)
    out = _outdir(args)
    dump_json(snapshot_landscape(z, window, prefix_len),
              out / "snapshot.json")
    print(f"window: {len(window)} vertices at radius {window.radius}")
    print(f"axioms: {'pass' if report.passed else 'FAIL'}")
    for key, table in (("M", report.constants.M), ("N", report.constants.N),
                       ("S", report.constants.S)):
        row = ", ".join(f"{key}[{k}]={v}" for k, v in sorted(table.items()))
        print(f"  {row}" if row else f"  {key}: (empty)")
    if args.landscape == "ternary":
        for n in (1, 2):
            comp = components_leq(z, window, n)
            print(f"  Q[{n}]={comp.max_interior_size}")
    for v in report.violations:
        print(f"  violation: {v}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_amenability(args) -> int:
    spec = parse_group(args.group)
    z = make_landscape("river", spec, args.radius)
    window = ball(spec, args.radius, budget=args.budget_vertices)
    if args.m_values:
        m_values = sorted({int(x) for x in args.m_values.split(",") if x})
    else:
        m_values = list(range(1, args.m_max + 1))
    out = _outdir(args)
    rows = []
    violated = 0
    for w in window.vertices:
        if spec.length(w) > window.radius - 1:
            continue
        for sigma in spec.letters():
            for m in m_values:
                d = defect(z, w, sigma, m)
                bound = defect_bound(z, w, m)
                rows.append((w, sigma, m, d, bound))
                if d > bound:
                    violated += 1
    with open(out / "defects.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "generator", "m", "defect", "bound"])
        for w, sigma, m, d, bound in rows:
            writer.writerow(
                [" ".join(map(str, w)), sigma, m, str(d), str(bound)]
            )
    print(f"defect rows: {len(rows)}; bound violations: {violated}")
    return EXIT_OK if violated == 0 else EXIT_VERIFY_FAIL


def cmd_paradoxicalize(args) -> int:
    spec = parse_group(args.group)
    z = make_landscape(args.landscape, spec, args.radius)
    window = ball(spec, args.radius, budget=args.budget_vertices)
    targets = []
    if args.targets:
        payload = load_json(args.targets)
        if not isinstance(payload, list):
            raise InputError("targets file must hold a JSON list")
        targets.extend(LocalSetSpec.from_dict(t) for t in payload)
    if args.target_heights:
        for item in args.target_heights.split(";"):
            heights = frozenset(int(x) for x in item.split(",") if x)

            def make(heights=heights):
                return lambda rule, win: center_height_local_set(
                    rule, win, 1, heights, prefix_len=1
                )

            targets.append(make())
    if not targets:
        raise InputError("no targets given (--targets or --target-heights)")
    result = paradoxicalize_sequence(z, targets, window,
                                     k_ceiling=args.k_ceiling)
    out = _outdir(args)
    bundle = bundle_pipeline(result, window)
    dump_json(bundle, out / "certificates.json")
    dump_json(bundle["finalSnapshot"], out / "final_snapshot.json")
    for i, report in enumerate(result.reports):
        print(f"certificate {i}: {'pass' if report.passed else 'FAIL'}")
    if result.halted:
        print(f"halted: {result.halted}")
        return EXIT_INCONCLUSIVE
    if not all(r.passed for r in result.reports) or \
            not result.matrix_all_pass():
        return EXIT_VERIFY_FAIL
    print(f"matrix: {len(result.matrix)}x{len(result.matrix)} all-pass")
    return EXIT_OK


def cmd_check(args) -> int:
    from .checking import check_certificate_dict

    snapshot = load_json(args.snapshot)
    payload = load_json(args.certificate)
    certs = payload.get("certificates", [payload]) \
        if isinstance(payload, dict) else payload
    all_pass = True
    for i, cert_obj in enumerate(certs):
        report = check_certificate_dict(snapshot, cert_obj)
        status = "pass" if report.passed else "FAIL"
        print(f"certificate {i}: {status}")
        for clause in report.clauses:
            if not clause.passed:
                print(f"  clause {clause.name}: {clause.witness}")
        all_pass &= report.passed
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riverscape",
        description="Window-scale landscape construction and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", default="f2")
        p.add_argument("--radius", type=int, required=True)
        p.add_argument("--out", default=".")
        p.add_argument("--budget-vertices", type=int,
                       default=DEFAULT_VERTEX_BUDGET)

    p = sub.add_parser("build", help="build a landscape snapshot")
    common(p)
    p.add_argument("--landscape", default="river")
    p.add_argument("--label-prefix", type=int, default=0)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("amenability", help="defect table for the river")
    common(p)
    p.add_argument("--m-max", type=int, default=0)
    p.add_argument("--m-values", default="")
    p.set_defaults(func=cmd_amenability)

    p = sub.add_parser("paradoxicalize", help="run the doubling pipeline")
    common(p)
    p.add_argument("--landscape", default="river")
    p.add_argument("--targets", default="")
    p.add_argument("--target-heights", default="",
                   help="semicolon-separated height lists, e.g. '1;2'")
    p.add_argument("--k-ceiling", type=int, default=8)
    p.set_defaults(func=cmd_paradoxicalize)

    p = sub.add_parser("check", help="re-verify a certificate bundle")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (InputError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
