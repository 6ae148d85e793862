"""JSON document schemas for the command line.

All numbers are exact: integers stay integers, non-integral rationals
are rendered as ``"p/q"`` strings.  Parse problems raise ``SchemaError``
(exit 2); values that parse but violate a domain invariant raise
``ValueError`` from the constructors (exit 3).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .audit import AuditCase, AuditReport
from .bundles import OrbBundle
from .curves import (
    CurveTag,
    OrbifoldCurve,
    RamificationProfile,
    TameBranchData,
)
from .divisors import OrbDivisor, OrbLineClass
from .equivariant import CyclicCoverSpec, EqLineBundle
from .errors import SchemaError
from .monodromy import MonodromyDatum, Perm, parse_perm


def load_document(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"top-level JSON object expected in {path}")
    return doc


def _expect(doc: dict, key: str, kind: type, where: str) -> Any:
    if key not in doc:
        raise SchemaError(f"missing key {key!r} in {where}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"key {key!r} in {where} must be {kind.__name__}")
    if not isinstance(value, kind):
        raise SchemaError(f"key {key!r} in {where} must be {kind.__name__}")
    return value


def _expect_int(doc: dict, key: str, where: str, default=None) -> int:
    if key not in doc and default is not None:
        return default
    return _expect(doc, key, int, where)


def fraction_from_json(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"number expected in {where}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {value!r} in {where}") from exc
    raise SchemaError(f"number or 'p/q' string expected in {where}")


def fraction_to_json(value: Fraction) -> int | str:
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def jsonify(value: Any) -> Any:
    """Render report values: exact rationals, dataclass-free containers."""
    if isinstance(value, Fraction):
        return fraction_to_json(value)
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    return value


# -- monodromy -------------------------------------------------------------

def monodromy_from_json(doc: dict, where: str = "monodromy") -> MonodromyDatum:
    genus = _expect_int(doc, "base_genus", where)
    degree = _expect_int(doc, "degree", where)
    characteristic = _expect_int(doc, "characteristic", where, default=0)
    raw_handles = doc.get("handles", [])
    if not isinstance(raw_handles, list):
        raise SchemaError(f"'handles' must be a list in {where}")
    handles = []
    for i, pair in enumerate(raw_handles):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(
                f"handle {i} must be a [alpha, beta] pair in {where}"
            )
        handles.append(tuple(_perm_from_json(p, degree, where) for p in pair))
    raw_cycles = doc.get("branch_cycles", {})
    if not isinstance(raw_cycles, dict):
        raise SchemaError(f"'branch_cycles' must be an object in {where}")
    cycles = tuple(
        (label, _perm_from_json(value, degree, where))
        for label, value in raw_cycles.items()
    )
    return MonodromyDatum(
        base_genus=genus,
        degree=degree,
        characteristic=characteristic,
        handles=tuple(handles),
        branch_cycles=cycles,
    )


def _perm_from_json(value: Any, degree: int, where: str) -> Perm:
    if isinstance(value, str):
        text = value
    elif isinstance(value, list) and all(isinstance(v, str) for v in value):
        text = "".join(value)
    else:
        raise SchemaError(
            f"permutation must be a cycle string or list of them in {where}"
        )
    try:
        return parse_perm(text, degree)
    except ValueError as exc:
        raise SchemaError(f"bad permutation {value!r} in {where}: {exc}") from exc


def monodromy_to_json(datum: MonodromyDatum) -> dict:
    return {
        "base_genus": datum.base_genus,
        "degree": datum.degree,
        "characteristic": datum.characteristic,
        "handles": [[str(a), str(b)] for a, b in datum.handles],
        "branch_cycles": {
            label: str(sigma) for label, sigma in datum.branch_cycles
        },
    }


# -- profiles and branch data ----------------------------------------------

def profile_from_json(doc: dict, where: str = "profile") -> RamificationProfile:
    source_genus = _expect_int(doc, "source_genus", where)
    target_genus = _expect_int(doc, "target_genus", where)
    characteristic = _expect_int(doc, "characteristic", where, default=0)
    degree = _expect_int(doc, "degree", where)
    galois = doc.get("galois", False)
    if not isinstance(galois, bool):
        raise SchemaError(f"'galois' must be a boolean in {where}")
    raw_fibers = doc.get("fibers", {})
    if not isinstance(raw_fibers, dict):
        raise SchemaError(f"'fibers' must be an object in {where}")
    target = CurveTag(doc.get("target_name", "X"), target_genus, characteristic)
    source = CurveTag(doc.get("source_name", "Y"), source_genus, characteristic)
    fibers = {}
    for label, partition in raw_fibers.items():
        if not isinstance(partition, list) or not all(
            isinstance(e, int) and not isinstance(e, bool) for e in partition
        ):
            raise SchemaError(
                f"fiber over {label!r} must be a list of integers in {where}"
            )
        fibers[target.point(label)] = tuple(partition)
    return RamificationProfile(source, target, degree, fibers, galois)


def profile_to_json(profile: RamificationProfile) -> dict:
    return {
        "source_genus": profile.source.genus,
        "target_genus": profile.target.genus,
        "characteristic": profile.target.characteristic,
        "degree": profile.degree,
        "galois": profile.galois,
        "fibers": {
            point.label: list(partition)
            for point, partition in sorted(
                profile.fibers.items(), key=lambda item: item[0].label
            )
        },
    }


def branch_data_from_json(
    doc: dict, curve: CurveTag, where: str = "branch data"
) -> TameBranchData:
    name = doc.get("curve", curve.name)
    if not isinstance(name, str):
        raise SchemaError(f"'curve' must be a string in {where}")
    if name != curve.name:
        raise ValueError(
            f"branch data is for curve {name!r}, expected {curve.name!r}"
        )
    raw = doc.get("orders", {})
    if not isinstance(raw, dict):
        raise SchemaError(f"'orders' must be an object in {where}")
    orders = {}
    for label, order in raw.items():
        if not isinstance(order, int) or isinstance(order, bool):
            raise SchemaError(f"order at {label!r} must be an integer in {where}")
        orders[curve.point(label)] = order
    return TameBranchData(curve, orders)


def branch_data_to_json(data: TameBranchData) -> dict:
    return {
        "curve": data.curve.name,
        "orders": {p.label: n for p, n in sorted(
            data.orders.items(), key=lambda item: item[0].label
        )},
    }


# -- divisors, classes, bundles ---------------------------------------------

def divisor_from_json(
    doc: dict, ambient: OrbifoldCurve, where: str = "divisor"
) -> OrbDivisor:
    raw = _expect(doc, "coefficients", dict, where)
    coefficients = {}
    for label, coeff in raw.items():
        if not isinstance(coeff, int) or isinstance(coeff, bool):
            raise SchemaError(
                f"coefficient at {label!r} must be an integer in {where}"
            )
        coefficients[ambient.curve.point(label)] = coeff
    return OrbDivisor(ambient, coefficients)


def divisor_to_json(divisor: OrbDivisor) -> dict:
    return {
        "coefficients": {
            p.label: c
            for p, c in sorted(
                divisor.coefficients.items(), key=lambda item: item[0].label
            )
        }
    }


def line_class_from_json(
    doc: dict, ambient: OrbifoldCurve, where: str = "class"
) -> OrbLineClass:
    raw = doc.get("residues", {})
    if not isinstance(raw, dict):
        raise SchemaError(f"'residues' must be an object in {where}")
    residues = {}
    for label, pair in raw.items():
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise SchemaError(
                f"residue at {label!r} must be a [residue, order] pair in {where}"
            )
        residue, order = pair
        point = ambient.curve.point(label)
        if ambient.order_at(point) != order:
            raise ValueError(
                f"residue at {label!r} declares order {order}, ambient has "
                f"{ambient.order_at(point)}"
            )
        residues[point] = residue
    if "degree" not in doc:
        raise SchemaError(f"missing key 'degree' in {where}")
    degree = fraction_from_json(doc["degree"], where)
    return OrbLineClass(ambient, residues, degree)


def line_class_to_json(line_class: OrbLineClass) -> dict:
    return {
        "residues": {
            p.label: [r, line_class.ambient.order_at(p)]
            for p, r in sorted(
                line_class.residues.items(), key=lambda item: item[0].label
            )
        },
        "degree": fraction_to_json(line_class.total_degree),
    }


def bundle_from_json(
    doc: dict, ambient: OrbifoldCurve, where: str = "bundle"
) -> OrbBundle:
    raw = _expect(doc, "summands", list, where)
    summands = tuple(
        line_class_from_json(item, ambient, f"{where} summand {i}")
        for i, item in enumerate(raw)
    )
    return OrbBundle(ambient, summands)


def bundle_to_json(bundle: OrbBundle) -> dict:
    return {"summands": [line_class_to_json(s) for s in bundle.summands]}


def infer_class_ambient(doc: dict, characteristic: int, name: str = "X") -> OrbifoldCurve:
    """Ambient orbifold implied by the residues of class documents."""
    curve = CurveTag(name, 0, characteristic)
    orders: dict = {}
    summands = doc["summands"] if "summands" in doc else [doc]
    if not isinstance(summands, list):
        raise SchemaError("'summands' must be a list")
    for item in summands:
        if not isinstance(item, dict):
            raise SchemaError("class document must be an object")
        raw = item.get("residues", {})
        if not isinstance(raw, dict):
            raise SchemaError("'residues' must be an object")
        for label, pair in raw.items():
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(
                    isinstance(v, int) and not isinstance(v, bool) for v in pair
                )
            ):
                raise SchemaError(f"residue at {label!r} must be [residue, order]")
            point = curve.point(label)
            if orders.setdefault(point, pair[1]) != pair[1]:
                raise ValueError(f"conflicting orders declared at {label!r}")
    return OrbifoldCurve(curve, TameBranchData(curve, orders))


# -- equivariant -------------------------------------------------------------

def eq_line_from_json(
    doc: dict, characteristic: int = 0, where: str = "equivariant bundle"
) -> EqLineBundle:
    m = _expect_int(doc, "m", where)
    spec = CyclicCoverSpec(m, characteristic)
    a = _expect_int(doc, "a", where, default=0)
    b = _expect_int(doc, "b", where, default=0)
    character = _expect_int(doc, "character", where, default=0)
    raw = doc.get("orbits", {})
    if not isinstance(raw, dict):
        raise SchemaError(f"'orbits' must be an object in {where}")
    orbits = {}
    for label, coeff in raw.items():
        if not isinstance(coeff, int) or isinstance(coeff, bool):
            raise SchemaError(
                f"orbit coefficient at {label!r} must be an integer in {where}"
            )
        orbits[spec.target_curve.point(label)] = coeff
    return EqLineBundle(spec, a, b, orbits, character)


def eq_line_to_json(bundle: EqLineBundle) -> dict:
    return {
        "m": bundle.spec.m,
        "a": bundle.a,
        "b": bundle.b,
        "orbits": {
            p.label: c
            for p, c in sorted(
                bundle.orbit_coeffs.items(), key=lambda item: item[0].label
            )
        },
        "character": bundle.character,
    }


# -- audit --------------------------------------------------------------------

def audit_case_from_json(doc: dict, where: str = "audit case") -> AuditCase:
    case_id = _expect(doc, "id", str, where)
    m = _expect_int(doc, "m", where)
    characteristic = _expect_int(doc, "characteristic", where, default=0)

    def int_map(key: str) -> dict:
        raw = doc.get(key, {})
        if not isinstance(raw, dict):
            raise SchemaError(f"{key!r} must be an object in {where}")
        for label, value in raw.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(
                    f"{key!r} entry at {label!r} must be an integer in {where}"
                )
        return dict(raw)

    return AuditCase(
        case_id,
        m,
        characteristic,
        orders=int_map("orders"),
        left=int_map("left"),
        right=int_map("right"),
    )


def audit_report_to_json(report: AuditReport) -> dict:
    return {
        "case": report.case_id,
        "hypotheses": jsonify(report.hypotheses),
        "quantities": jsonify(report.quantities),
        "statuses": dict(report.statuses),
    }
