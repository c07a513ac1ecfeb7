"""Command-line surface.

Every subcommand writes deterministic output for identical inputs; run
reports carry timings and go to their own file.  Exit codes: 0 success,
1 checkpoint failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from . import interchange
from .cones import Cone, LinearInequality, enumerate_facets, is_facet
from .constrained import constrained_facets
from .pipeline import (
    CheckpointError,
    bancal_mode,
    generalize_i3322,
    n_symmetric_terms,
)
from .relabeling import canonical_form, dedup
from .scenarios import (
    BellInequality,
    Scenario,
    ZeroReduction,
    classical_bound,
    enumerate_vertices,
    reduce_inequality,
    saturating_vertices,
)


def _scenario(text: str) -> Scenario:
    try:
        parties, settings = (int(x) for x in text.split(","))
        return Scenario(parties, settings)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected N,I — {exc}") from None


def _assignment(text: str) -> tuple[int, ...]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if token in ("+", "+1", "1"):
            out.append(1)
        elif token in ("-", "-1"):
            out.append(-1)
        else:
            raise argparse.ArgumentTypeError(f"bad assignment entry {token!r}")
    return tuple(out)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        interchange._atomic_write(out, text)


def _load_inequalities(path: str) -> list[BellInequality]:
    return [interchange.record_to_inequality(r) for r in interchange.load_inequality_lines(path)]


def cmd_vertices(args) -> int:
    s = args.scenario
    cone = Cone(s.vector_length, enumerate_vertices(s))
    text = interchange._dumps(
        {"ambient_dim": cone.ambient_dim, "rays": [list(r) for r in cone.rays]}
    ) + "\n"
    _emit(text, args.out)
    return 0


def cmd_facets(args) -> int:
    if (args.scenario is None) == (args.cone_file is None):
        print("exactly one of --scenario and --cone-file is required", file=sys.stderr)
        return 2
    if args.scenario is not None:
        s = args.scenario
        cone = Cone(s.vector_length, enumerate_vertices(s))
        records = [
            interchange.inequality_record(BellInequality(s, f.normal))
            for f in enumerate_facets(cone)
        ]
    else:
        cone = interchange.load_cone(args.cone_file)
        records = [{"normal": list(f.normal)} for f in enumerate_facets(cone)]
    _emit(interchange.format_inequality_lines(records), args.out)
    return 0


def cmd_constrained_facets(args) -> int:
    cone = interchange.load_cone(args.cone_file)
    cs = interchange.load_constraints(args.constraints_file)
    records = [{"normal": list(f.normal)} for f in constrained_facets(cone, cs)]
    _emit(interchange.format_inequality_lines(records), args.out)
    return 0


def cmd_i3322_generalize(args) -> int:
    try:
        entries, reports = generalize_i3322(strict=args.strict, jobs=args.jobs)
    except CheckpointError as exc:
        print(f"checkpoint failure: {exc}", file=sys.stderr)
        return 1
    records = []
    for i, e in enumerate(entries):
        provenance = {
            "id": i,
            "xi": list(e.first_xi),
            "candidate": e.first_candidate,
            "reduces_to_target": e.reduces,
        }
        records.append(interchange.inequality_record(e.inequality, provenance))
    _emit(interchange.format_inequality_lines(records), args.out)
    if args.run_reports:
        interchange.dump_run_reports([r.as_dict() for r in reports], args.run_reports)
    print(f"classes: {len(entries)}", file=sys.stderr)
    return 0


def cmd_bancal(args) -> int:
    try:
        entries, report = bancal_mode(strict=args.strict)
    except CheckpointError as exc:
        print(f"checkpoint failure: {exc}", file=sys.stderr)
        return 1
    records = [
        interchange.inequality_record(e.inequality, {"id": i})
        for i, e in enumerate(entries)
    ]
    _emit(interchange.format_inequality_lines(records), args.out)
    if args.run_reports:
        interchange.dump_run_reports([report.as_dict()], args.run_reports)
    print(f"classes: {len(entries)}", file=sys.stderr)
    return 0


def cmd_check_facet(args) -> int:
    s = args.scenario
    cone = Cone(s.vector_length, enumerate_vertices(s))
    lines = []
    for b in _load_inequalities(args.ineq_file):
        if b.scenario != s:
            print("record scenario does not match --scenario", file=sys.stderr)
            return 2
        report = is_facet(cone, LinearInequality(b.coeffs))
        lines.append(
            f"facet: {str(report.is_facet).lower()}, "
            f"saturating vertices: {report.n_saturating}, "
            f"saturation rank: {report.saturation_rank}"
            + ("" if report.is_facet else f", failed: {report.failure}")
        )
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def cmd_classical_bound(args) -> int:
    lines = []
    for b in _load_inequalities(args.ineq_file):
        value, argmin = classical_bound(b)
        lines.append(f"classical bound: {value}, minimizing vertices: {len(argmin)}")
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def cmd_reduce(args) -> int:
    records = []
    for b in _load_inequalities(args.ineq_file):
        try:
            red = reduce_inequality(b, args.assign)
        except ZeroReduction:
            records.append({"zero_reduction": True})
            continue
        records.append(interchange.inequality_record(red))
    _emit(interchange.format_inequality_lines(records), args.out)
    return 0


def cmd_canon(args) -> int:
    records = [
        interchange.inequality_record(canonical_form(b))
        for b in _load_inequalities(args.infile)
    ]
    _emit(interchange.format_inequality_lines(records), args.out)
    return 0


def cmd_dedup(args) -> int:
    reps = dedup(_load_inequalities(args.infile))
    records = [interchange.inequality_record(b) for b in reps]
    _emit(interchange.format_inequality_lines(records), args.out)
    return 0


def cmd_report(args) -> int:
    reports = interchange.load_run_reports(args.run_reports)
    lines = []
    for r in reports:
        xi = ",".join("+" if x > 0 else "-" for x in r.get("xi", [])) or "(none)"
        lines.append(
            f"run xi={xi}: G {r['g_shape'][0]}x{r['g_shape'][1]} rank {r['g_rank']}, "
            f"kernel dim {r['kernel_dim']}, projected rays {r['projected_ray_count']} "
            f"({r['merged_ray_count']} merged, {r['dropped_zero_rays']} zero), "
            f"candidates {r['candidate_count']}, facets kept {r['facet_count']}, "
            f"excluded {r['zero_reduction_count']}"
        )
        total = sum(r.get("timings", {}).values())
        lines.append(f"  time: {total:.1f}s " + " ".join(
            f"{k}={v:.1f}s" for k, v in r.get("timings", {}).items()
        ))
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellcone",
        description="Exact facet enumeration of local polytopes under linear constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vertices", help="deterministic behaviours of a scenario as a cone file")
    p.add_argument("--scenario", type=_scenario, required=True, metavar="N,I")
    p.add_argument("--out")
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("facets", help="complete facet enumeration")
    p.add_argument("--scenario", type=_scenario, metavar="N,I")
    p.add_argument("--cone-file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("constrained-facets", help="facets satisfying G b = 0")
    p.add_argument("--cone-file", required=True)
    p.add_argument("--constraints-file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_constrained_facets)

    p = sub.add_parser("i3322-generalize", help="classify the tripartite generalizations")
    p.add_argument("--out")
    p.add_argument("--run-reports")
    p.add_argument("--strict", action="store_true", default=True)
    p.add_argument("--no-strict", dest="strict", action="store_false")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_i3322_generalize)

    p = sub.add_parser("bancal", help="symmetric full-correlation facet classes")
    p.add_argument("--out")
    p.add_argument("--run-reports")
    p.add_argument("--strict", action="store_true", default=False)
    p.set_defaults(func=cmd_bancal)

    p = sub.add_parser("check-facet", help="facet test with saturation report")
    p.add_argument("--scenario", type=_scenario, required=True, metavar="N,I")
    p.add_argument("--ineq-file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_facet)

    p = sub.add_parser("classical-bound", help="exact minimum over deterministic behaviours")
    p.add_argument("--ineq-file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classical_bound)

    p = sub.add_parser("reduce", help="contract the third party with an assignment")
    p.add_argument("--ineq-file", required=True)
    p.add_argument("--assign", type=_assignment, required=True, metavar="+,-,+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("canon", help="canonical forms under relabeling")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("dedup", help="one representative per relabeling class")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("report", help="summarize run reports")
    p.add_argument("--run-reports", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
