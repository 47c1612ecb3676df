"""Command line surface: `rk weyl|bset|irr|packet|eci|examples`.

Every command emits a versioned JSON report (stdout by default, or
--out FILE; the directory can be redirected with RK_OUT_DIR).  The exit
code is 0 only when every internal assertion of the requested
computation passed.  Reports are deterministic up to the timestamp
field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Dict, Optional

from . import presets
from .files import (
    resolve_disconnected,
    resolve_endoscopy,
    resolve_group,
    resolve_parameter,
)
from .kottwitz import WallRejection, basic_plus_lift, classify, \
    encode, kappa_push, newton
from .weyl import double_coset_reps, geometric_lemma_index, transporter_set

SCHEMA = "rk.report.v1"


def _emit(report: Dict, out: Optional[str]) -> None:
    report = {"schema": SCHEMA,
              "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
              **report}
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        directory = os.environ.get("RK_OUT_DIR")
        path = os.path.join(directory, out) if directory else out
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_subset(text: str):
    text = (text or "").strip()
    if text in ("", "-"):
        return frozenset()
    if text.upper() == "G":
        return None  # caller substitutes the full subset
    return frozenset(int(x) for x in text.replace(";", ",").split(","))


def _parse_ints(text: str):
    text = (text or "").strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _word(group, m):
    return list(group.relative.word(m))


def cmd_weyl(args) -> Dict:
    group = resolve_group(args.group)
    levi1 = _parse_subset(args.levi1)
    levi2 = _parse_subset(args.levi2 if args.levi2 is not None else args.levi1)
    full = group.full_subset()
    levi1 = full if levi1 is None else levi1
    levi2 = full if levi2 is None else levi2
    if args.kind == "transporter":
        elems = [{"word": _word(group, m), "matrix": [list(r) for r in m]}
                 for m in transporter_set(group, levi1, levi2)]
    elif args.kind == "double-coset":
        elems = [{"word": _word(group, m), "matrix": [list(r) for r in m]}
                 for m in double_coset_reps(group, levi1, levi2)]
    elif args.kind == "geometric":
        elems = [{"word": _word(group, m), "matrix": [list(r) for r in m],
                  "intersection_left_roots": list(left),
                  "intersection_right_roots": list(right)}
                 for m, left, right in geometric_lemma_index(group, levi1, levi2)]
    else:
        raise ValueError("unknown kind %r" % args.kind)
    return {"command": "weyl", "group": group.name, "kind": args.kind,
            "levi1": sorted(levi1), "levi2": sorted(levi2),
            "count": len(elems), "elements": elems}


def cmd_bset(args) -> Dict:
    group = resolve_group(args.group)
    if args.b:
        with open(args.b, "r", encoding="utf-8") as fh:
            from .kottwitz import decode
            b = decode(group, json.load(fh))
    else:
        levi = _parse_subset(args.levi)
        levi = group.full_subset() if levi is None else levi
        ctx = group.levi_context(levi)
        if args.kappa_ambient:
            kappa = ctx.dual_center_characters.element_from_ambient(
                _parse_ints(args.kappa_ambient))
        else:
            parts = (args.kappa or "").split(";")
            free = _parse_ints(parts[0])
            torsion = _parse_ints(parts[1]) if len(parts) > 1 else ()
            kappa = ctx.dual_center_characters.element(free, torsion)
        b = basic_plus_lift(group, levi, kappa)
    nu = newton(group, b)
    stratum = classify(group, b)
    pushed = kappa_push(group, b)
    return {"command": "bset", "group": group.name,
            "element": encode(group, b),
            "newton": [str(x) for x in nu],
            "stratum_levi": sorted(stratum),
            "basic": b.is_basic(group),
            "kappa_push": {"free": list(pushed.free),
                           "torsion": list(pushed.torsion)}}


def cmd_irr(args) -> Dict:
    from .disconnected import classify_irr
    holder = resolve_disconnected(args.group)
    pairs = classify_irr(holder, args.height)
    out = []
    for p in pairs:
        out.append({"weight": list(p.weight),
                    "module_dim": p.module.dim,
                    "module_label": [str(x) for x in p.module.label()[1]]})
    return {"command": "irr", "group": holder.name, "height": args.height,
            "count": len(pairs), "classes": out}


def _member_report(param, member) -> Dict:
    return {
        "b": encode(param.group, member.b),
        "levi": sorted(member.levi),
        "witness_word": list(member.witness_word),
        "w_class_word": list(param.group.relative.word(member.w_class)),
        "weight": list(member.rho_weight),
        "levi_weight": list(member.levi_weight),
        "module": [str(x) for x in member.rho_module_label[1]],
        "module_dim": member.rho_module_label[0],
    }


def cmd_packet(args) -> Dict:
    from .disconnected import HighestWeightPair
    from .finite_reps import simple_modules
    from .packets import (_component_stabilizer, build_packet_member,
                          enumerate_fiber, enumerate_rhos, round_trip_check)
    param = resolve_parameter(args.param)
    report: Dict = {"command": "packet", "group": param.group.name,
                    "param": param.label}
    if args.rho:
        parts = args.rho.split(":")
        weight = _parse_ints(parts[0])
        pick = int(parts[1]) if len(parts) > 1 else 0
        mods = simple_modules(_component_stabilizer(param, weight))
        member = build_packet_member(
            param, HighestWeightPair(weight, mods[pick]))
        report["member"] = _member_report(param, member)
        if args.fiber:
            fiber = enumerate_fiber(param, member.b)
            report["fiber"] = [_member_report(param, m) for m in fiber]
    elif args.enumerate:
        rows = []
        for rho in enumerate_rhos(param, args.height):
            member = build_packet_member(param, rho)
            rows.append(_member_report(param, member))
        report["members"] = rows
        report["round_trip"] = round_trip_check(param, args.height)
        if not report["round_trip"]["pass"]:
            raise AssertionError("round trip failed: %r" % report["round_trip"])
    else:
        raise ValueError("packet needs --rho or --enumerate")
    return report


def cmd_eci(args) -> Dict:
    from .disconnected import HighestWeightPair
    from .finite_reps import simple_modules
    from .endoscopy import eci_both_sides, indexing_bijection_check
    from .packets import _component_stabilizer, build_packet_member
    param = resolve_parameter(args.param)
    endo = resolve_endoscopy(args.endo)
    if args.b:
        with open(args.b, "r", encoding="utf-8") as fh:
            from .kottwitz import decode
            b = decode(param.group, json.load(fh))
    else:
        rho_text = args.rho or "1,0"
        parts = rho_text.split(":")
        weight = _parse_ints(parts[0])
        pick = int(parts[1]) if len(parts) > 1 else 0
        mods = simple_modules(_component_stabilizer(param, weight))
        b = build_packet_member(
            param, HighestWeightPair(weight, mods[pick])).b
    result = eci_both_sides(param, b, endo)
    indexing = indexing_bijection_check(param, b.levi, endo)
    if not result["equal"]:
        raise AssertionError("endoscopic character identity failed")
    if not indexing["pass"]:
        raise AssertionError("indexing bijection failed")
    return {
        "command": "eci", "group": param.group.name, "param": param.label,
        "endo": endo.label, "b": encode(param.group, b),
        "pass": result["equal"] and indexing["pass"],
        "lhs": result["lhs"].describe(),
        "rhs": result["rhs"].describe(),
        "discarded_nonregular": result["discarded_nonregular"].describe(),
        "embedded": result["embedded"],
        "indexing": indexing,
        "sign_token": result["sign_token"],
        "delta_twist": result["delta_twist"],
    }


def cmd_examples(args) -> Dict:
    rows = {
        "groups": list(presets.GROUP_NAMES),
        "parameters": list(presets.PARAM_NAMES),
        "endoscopy": list(presets.ENDO_NAMES),
        "disconnected": list(presets.DISCONNECTED_NAMES),
    }
    return {"command": "examples", "presets": rows}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rk",
        description="exact root-datum, Kottwitz-set and packet combinatorics")
    sub = ap.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weyl", help="relative Weyl coset tables")
    w.add_argument("--group", required=True)
    w.add_argument("--levi1", default="")
    w.add_argument("--levi2", default=None)
    w.add_argument("--kind", default="double-coset",
                   choices=["transporter", "double-coset", "geometric"])

    b = sub.add_parser("bset", help="Kottwitz-set invariants of an element")
    b.add_argument("--group", required=True)
    b.add_argument("--levi", default="")
    b.add_argument("--kappa", default="")
    b.add_argument("--kappa-ambient", default="")
    b.add_argument("--b", default="", help="path to a JSON element file")

    i = sub.add_parser("irr", help="classify irreducibles of a disconnected "
                                   "group up to a height bound")
    i.add_argument("--group", required=True)
    i.add_argument("--height", type=int, default=1)

    p = sub.add_parser("packet", help="packet members and fibers")
    p.add_argument("--group", default="")
    p.add_argument("--param", required=True)
    p.add_argument("--rho", default="")
    p.add_argument("--fiber", action="store_true")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--height", type=int, default=2)

    e = sub.add_parser("eci", help="two-sided regular character identity")
    e.add_argument("--group", default="")
    e.add_argument("--param", required=True)
    e.add_argument("--endo", required=True)
    e.add_argument("--rho", default="")
    e.add_argument("--b", default="")

    x = sub.add_parser("examples", help="list shipped presets")

    for s in (w, b, i, p, e, x):
        s.add_argument("--out", default="")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "weyl": cmd_weyl,
        "bset": cmd_bset,
        "irr": cmd_irr,
        "packet": cmd_packet,
        "eci": cmd_eci,
        "examples": cmd_examples,
    }
    try:
        report = handlers[args.command](args)
    except (WallRejection,) as exc:
        _emit({"command": args.command, "error": "rejection",
               "detail": str(exc),
               "facet": {"zero_walls": sorted(exc.zero_walls),
                         "negative_walls": sorted(exc.negative_walls)}},
              args.out or None)
        return 2
    except Exception as exc:  # deliberate: any failed assertion is exit != 0
        print("error: %s" % exc, file=sys.stderr)
        return 1
    _emit(report, args.out or None)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
