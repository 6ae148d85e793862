"""Command-line front end.

Subcommands: ``cover``, ``branch``, ``divisor``, ``bundle``, ``equiv``,
``audit``, ``selftest``.  Exit codes: 0 success, 1 failed property,
2 malformed input document, 3 semantic invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio, selftest
from .audit import BUILTIN_CASES, builtin_case, run_audit
from .bundles import pullback_data_bundle
from .curves import CurveTag, OrbifoldCurve, riemann_hurwitz_genus
from .divisors import class_of, h0
from .equivariant import (
    h0_invariants,
    invariant_pushforward,
    pushforward_structure,
)
from .errors import SchemaError
from .monodromy import (
    group_order,
    is_connected,
    is_galois,
    is_genuinely_ramified,
    max_etale_subcover,
    ramification_profile_of,
)


def _flatten(prefix: str, value, lines: list[str]) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), sub, lines)
    elif isinstance(value, bool):
        lines.append(f"{prefix}: {'true' if value else 'false'}")
    elif isinstance(value, list):
        lines.append(f"{prefix}: {json.dumps(value)}")
    else:
        lines.append(f"{prefix}: {value}")


def _emit(report: dict, as_json: bool) -> None:
    rendered = jsonio.jsonify(report)
    if as_json:
        print(json.dumps(rendered, indent=2, sort_keys=False))
    else:
        lines: list[str] = []
        _flatten("", rendered, lines)
        print("\n".join(lines))


def cmd_cover(args) -> int:
    datum = jsonio.monodromy_from_json(jsonio.load_document(args.path))
    if not is_connected(datum):
        raise ValueError("monodromy datum is disconnected")
    profile = ramification_profile_of(datum)
    etale_degree, _ = max_etale_subcover(datum)
    report = {
        "connected": True,
        "degree": datum.degree,
        "group_order": group_order(datum),
        "galois": is_galois(datum),
        "profile": jsonio.profile_to_json(profile),
        "rh_genus": riemann_hurwitz_genus(profile),
        "genuinely_ramified": is_genuinely_ramified(datum),
        "max_etale_degree": etale_degree,
        "residual_degree": datum.degree // etale_degree,
    }
    _emit(report, args.json)
    return 0


def cmd_branch(args) -> int:
    from .curves import branch_data_of_cover, pullback_branch_data

    profile = jsonio.profile_from_json(jsonio.load_document(args.cover))
    data = jsonio.branch_data_from_json(
        jsonio.load_document(args.branch), profile.target
    )
    report = {
        "pullback": jsonio.branch_data_to_json(
            pullback_branch_data(profile, data)
        ),
        "cover_branch_data": jsonio.branch_data_to_json(
            branch_data_of_cover(profile)
        ),
    }
    _emit(report, args.json)
    return 0


def cmd_divisor(args) -> int:
    branch_doc = jsonio.load_document(args.branch)
    name = branch_doc.get("curve", "X")
    if not isinstance(name, str):
        raise SchemaError("'curve' must be a string")
    curve = CurveTag(name, args.genus, args.char)
    data = jsonio.branch_data_from_json(branch_doc, curve)
    ambient = OrbifoldCurve(curve, data)
    divisor = jsonio.divisor_from_json(jsonio.load_document(args.path), ambient)
    report: dict = {
        "degree": divisor.degree(),
    }
    if curve.genus == 0:
        line = class_of(divisor)
        coarse, weights = line.floor_view()
        report["class"] = jsonio.line_class_to_json(line)
        report["coarse_degree"] = coarse
        report["weights"] = {p.label: w for p, w in sorted(
            weights.items(), key=lambda item: item[0].label
        )}
        report["h0"] = h0(line)
    _emit(report, args.json)
    return 0


def _bundle_report(bundle) -> dict:
    report = {
        "rank": bundle.rank(),
        "degree": bundle.degree(),
        "slope": bundle.slope(),
        "determinant": jsonio.line_class_to_json(bundle.determinant()),
        "hn": [
            {"slope": stratum.slope, "summands": list(stratum.indices)}
            for stratum in bundle.hn().strata
        ],
        "mu_max": bundle.mu_max(),
        "semistable": bundle.is_semistable(),
        "polystable": bundle.is_polystable(),
        "stable": bundle.is_stable(),
    }
    return report


def cmd_bundle(args) -> int:
    doc = jsonio.load_document(args.path)
    if args.cover:
        profile = jsonio.profile_from_json(jsonio.load_document(args.cover))
        if profile.target.genus != 0:
            raise ValueError("bundle reports need a genus-0 target")
        target_doc = (
            jsonio.load_document(args.target_branch)
            if args.target_branch
            else {"orders": {}}
        )
        data = jsonio.branch_data_from_json(target_doc, profile.target)
        ambient = OrbifoldCurve(profile.target, data)
    else:
        ambient = jsonio.infer_class_ambient(doc, args.char)
    bundle = jsonio.bundle_from_json(doc, ambient)
    report = {"bundle": _bundle_report(bundle)}
    if args.cover:
        pulled = pullback_data_bundle(bundle, profile)
        report["pullback"] = _bundle_report(pulled)
        expected = profile.degree * bundle.slope()
        if pulled.slope() != expected:
            raise ValueError(
                f"pullback slope {pulled.slope()} violates the degree "
                f"relation (expected {expected})"
            )
        report["slope_relation"] = (
            f"{pulled.slope()} = {profile.degree} * {bundle.slope()}"
        )
    _emit(report, args.json)
    return 0


def cmd_equiv(args) -> int:
    bundle = jsonio.eq_line_from_json(
        jsonio.load_document(args.path), args.char
    )
    pushed = invariant_pushforward(bundle)
    report = {
        "m": bundle.spec.m,
        "degree": bundle.degree(),
        "character": bundle.character,
        "invariant_sections": h0_invariants(bundle),
        "pushforward_class": jsonio.line_class_to_json(pushed),
        "pushforward_structure": [
            jsonio.line_class_to_json(piece)
            for piece in pushforward_structure(bundle.spec)
        ],
    }
    _emit(report, args.json)
    return 0


def cmd_audit(args) -> int:
    if args.case in BUILTIN_CASES:
        case = builtin_case(args.case)
    else:
        case = jsonio.audit_case_from_json(jsonio.load_document(args.case))
    report = run_audit(case)
    _emit(jsonio.audit_report_to_json(report), args.json)
    return 0


def cmd_selftest(args) -> int:
    summary = selftest.run_all(seed=args.seed, scale=args.scale)
    _emit(summary, args.json)
    return 0 if summary["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbicalc",
        description=(
            "Exact calculator for tame orbifold curves: cover reports, "
            "branch-data calculus, stacky degrees and slopes, the cyclic "
            "equivariant correspondence, and a statement audit."
        ),
    )
    parser.add_argument("--json", action="store_true", help="machine output")
    parser.add_argument("--seed", type=int, default=0, help="selftest seed")
    parser.add_argument(
        "--scale",
        type=int,
        default=100,
        help="selftest size as a percentage of the baseline case counts",
    )
    parser.add_argument(
        "--char", type=int, default=0, help="ambient characteristic"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="report on a monodromy datum")
    p.add_argument("path")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("branch", help="pull back branch data along a cover")
    p.add_argument("cover")
    p.add_argument("branch")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("divisor", help="degrees and class of a divisor")
    p.add_argument("path")
    p.add_argument("--branch", required=True, help="branch data document")
    p.add_argument("--genus", type=int, default=0)
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("bundle", help="slopes, filtration and stability")
    p.add_argument("path")
    p.add_argument("--cover", help="profile document for pullback")
    p.add_argument("--target-branch", help="branch data on the cover target")
    p.set_defaults(func=cmd_bundle)

    p = sub.add_parser("equiv", help="equivariant line bundle report")
    p.add_argument("path")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("audit", help="run a statement audit case")
    p.add_argument(
        "case",
        help=(
            "builtin case id ("
            + ", ".join(sorted(BUILTIN_CASES))
            + ") or a JSON case file"
        ),
    )
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("selftest", help="run every property suite")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
