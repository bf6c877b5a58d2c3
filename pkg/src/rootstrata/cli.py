"""Command-line front end: ``rootstrata <command> [options]``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Sequence

from . import __version__
from .errors import ParseError, RootStrataError
from .oracle import DEFAULT_BUDGET, OracleConfig, oracle_elliptic, oracle_trig
from .root_datum import (RootDatum, bad_primes, build_datum,
                         build_general_linear)
from .strata import (DEFAULT_COUNT_BUDGET, EllipticPoint, TorusPoint,
                     class_geq, component_group_order, count_central_points,
                     full_report, point_stabilizer, regularity_class,
                     sigma_of_point)
from .subsystems import (CaseTag, ClosedSubset, as_closed, enumerate_case,
                         enumerate_elliptic, enumerate_rational,
                         enumerate_trigonometric)
from .weyl import DEFAULT_MAX_ORDER, WeylGroup, generate_weyl

SCHEMA_VERSION = 1
ENV_MAX_WEYL = "ROOTSTRATA_MAX_WEYL_ORDER"
ENV_BUDGET = "ROOTSTRATA_ORACLE_BUDGET"


class UsageError(RootStrataError):
    code = "USAGE"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def load_datum(type_str: str, isogeny: str) -> RootDatum:
    m = re.fullmatch(r"GL(\d+)", type_str.strip())
    if m:
        return build_general_linear(int(m.group(1)))
    return build_datum(type_str, isogeny)


def _weyl(args, d: RootDatum) -> WeylGroup:
    cap = args.max_weyl_order
    if cap is None:
        cap = _env_int(ENV_MAX_WEYL, DEFAULT_MAX_ORDER)
    return generate_weyl(d, cap)


def _budget(args, default: int) -> int:
    if args.budget is not None:
        return args.budget
    return _env_int(ENV_BUDGET, default)


def parse_subset(d: RootDatum, text: str) -> ClosedSubset:
    """Semicolon-separated coefficient vectors; negatives are added."""
    idx = set()
    text = text.strip()
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        try:
            vec = tuple(int(x) for x in chunk.split(","))
        except ValueError:
            raise ParseError(f"bad coefficient vector {chunk!r}") from None
        if vec not in d.coefficient_index:
            raise ParseError(f"{list(vec)} is not a root")
        i = d.coefficient_index[vec]
        idx.update((i, d.negation[i]))
    return as_closed(d, idx)


def _families(d: RootDatum, w: WeylGroup, elliptic=None) -> dict:
    if elliptic is None:
        elliptic = enumerate_elliptic(d, w)
    return {
        CaseTag.RATIONAL.value: {c.indices for c in enumerate_rational(d, w)},
        CaseTag.TRIGONOMETRIC.value: {
            c.indices for c in enumerate_trigonometric(d, w)},
        CaseTag.ELLIPTIC.value: {c.indices for c in elliptic},
    }


def _datum_header(args, d: RootDatum) -> dict:
    return {"type": d.name, "isogeny": d.isogeny}


def _document(kind: str, args, d: RootDatum, body: dict) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "tool_version": __version__,
           "kind": kind, "datum": _datum_header(args, d)}
    doc.update(body)
    return doc


def hasse_edges(w: WeylGroup, classes: Sequence[ClosedSubset]
                ) -> list[list[int]]:
    """Covering pairs (i, j): class i is refined-above class j."""
    n = len(classes)
    geq = [[i != j and class_geq(w, classes[i], classes[j]) for j in range(n)]
           for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if geq[i][j] and not any(geq[i][k] and geq[k][j]
                                     for k in range(n)):
                edges.append([i, j])
    return edges


# commands -------------------------------------------------------------------

def cmd_datum(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    w = _weyl(args, d)
    body = {"root_datum": d.to_dict(), "weyl_order": w.order}
    lines = [f"{d.name} ({d.isogeny}), rank {d.rank}, "
             f"{d.n_roots} roots, |W| = {w.order}"]
    lines.append("cartan matrix: " + str([list(r) for r in d.cartan]))
    lines.append("simple roots:  " + "; ".join(
        ",".join(map(str, d.roots[i])) for i in d.simple_indices))
    return _document("datum", args, d, body), "\n".join(lines)


def _record_row(k: int, rep) -> str:
    inv = ",".join(map(str, rep.center.invariant_factors)) or "-"
    return (f"{k:>3}  {rep.cartan_label:<14} {rep.decorated_label:<28} "
            f"{rep.center.free_rank:>4} {inv:>8} {rep.relative_order:>5} "
            f"{'yes' if rep.is_levi else 'no':>4} "
            f"{'yes' if rep.is_isolated else 'no':>8}")


_HEADER = (f"{'id':>3}  {'type':<14} {'lengths':<28} {'free':>4} {'torsion':>8} "
           f"{'W_rel':>5} {'levi':>4} {'isolated':>8}")


def cmd_enumerate(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    w = _weyl(args, d)
    case = CaseTag(args.case)
    elliptic = enumerate_elliptic(d, w)
    classes = elliptic if case is CaseTag.ELLIPTIC else enumerate_case(d, w,
                                                                       case)
    fams = _families(d, w, elliptic)
    reports = [full_report(d, w, c, fams) for c in classes]
    if args.isolated_only:
        keep = [k for k, r in enumerate(reports) if r.is_isolated]
        classes = [classes[k] for k in keep]
        reports = [reports[k] for k in keep]
    edges = hasse_edges(w, classes)
    body = {
        "case": case.value,
        "ordering_key": "number of roots, then sorted canonical root indices",
        "records": [dict(id=k, **r.to_dict()) for k, r in enumerate(reports)],
        "order_edges": edges,
    }
    lines = [f"{d.name} ({d.isogeny}) {case.value}: {len(reports)} classes",
             _HEADER]
    lines += [_record_row(k, r) for k, r in enumerate(reports)]
    if edges:
        lines.append("covering relations: " +
                     " ".join(f"{i}>{j}" for i, j in edges))
    return _document("classification", args, d, body), "\n".join(lines)


def cmd_report(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    w = _weyl(args, d)
    s = parse_subset(d, args.subset or "")
    rep = full_report(d, w, s, _families(d, w))
    body = {"report": rep.to_dict()}
    r = rep
    lines = [
        f"type:               {r.cartan_label} [{r.decorated_label}]",
        f"positive roots:     " + "; ".join(
            ",".join(map(str, v)) for v in r.positive_roots),
        f"center:             free rank {r.center.free_rank}, torsion "
        f"{list(r.center.invariant_factors)}",
        f"pi1:                {list(r.pi1)}",
        f"|W_Sigma|:          {r.w_sigma_order}",
        f"|N_W(Sigma)|:       {r.normalizer_order}",
        f"relative order:     {r.relative_order}",
        f"relative abelian:   {r.relative_is_abelian} "
        f"{list(r.relative_abelian_invariants or ())}",
        f"component perms:    {r.component_permutation_image}",
        f"levi / isolated:    {r.is_levi} / {r.is_isolated}",
        f"cases:              {', '.join(r.case_tags) or '-'}",
    ]
    return _document("report", args, d, body), "\n".join(lines)


def _parse_point(args, d: RootDatum):
    if args.x1 is None:
        raise UsageError("--x1 is required")
    x1 = TorusPoint.parse(args.x1)
    if args.x2 is None:
        return x1
    return EllipticPoint(x1, TorusPoint.parse(args.x2))


def cmd_point(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    w = _weyl(args, d)
    p = _parse_point(args, d)
    sp = sigma_of_point(d, p)
    rep = full_report(d, w, sp)
    stab = point_stabilizer(w, p)
    comp = component_group_order(d, w, p)
    body = {
        "point": str(p),
        "sigma": [list(v) for v in sp.coefficient_vectors()],
        "cartan_label": rep.cartan_label,
        "stabilizer_order": len(stab),
        "w_sigma_order": rep.w_sigma_order,
        "component_group_order": comp,
    }
    if args.subset is not None:
        sh = parse_subset(d, args.subset)
        body["regularity"] = regularity_class(d, w, sh, p)
    lines = [
        f"point:                 {p}",
        " ".join(["Sigma_p:              ", rep.cartan_label]
                 + ["; ".join(",".join(map(str, v)) for v in body["sigma"])]
                 ).rstrip(),
        f"|Stab_W(p)|:           {len(stab)}",
        f"|W_Sigma_p|:           {rep.w_sigma_order}",
        f"component group order: {comp}",
    ]
    if "regularity" in body:
        lines.append(f"regularity:            {body['regularity']}")
    return _document("point", args, d, body), "\n".join(lines)


def cmd_goodprimes(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    bad = sorted(bad_primes(d))
    body = {"bad_primes": bad}
    text = "bad primes: " + (", ".join(map(str, bad)) or "none")
    return _document("goodprimes", args, d, body), text


def cmd_count(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    if args.modulus is None:
        raise UsageError("--modulus is required")
    s = parse_subset(d, args.subset or "")
    res = count_central_points(d, None, s, args.modulus,
                               _budget(args, DEFAULT_COUNT_BUDGET))
    body = {"subset": [list(v) for v in s.coefficient_vectors()],
            **res.to_dict()}
    text = (f"N = {res.modulus}: central {res.central_count}, "
            f"regular {res.regular_central_count}")
    return _document("count", args, d, body), text


def cmd_oracle_check(args) -> tuple[dict, str]:
    d = load_datum(args.type, args.isogeny)
    w = _weyl(args, d)
    case = CaseTag(args.case)
    cfg = OracleConfig(max_denominator=args.denominator or 12,
                       budget=_budget(args, DEFAULT_BUDGET))
    if case is CaseTag.RATIONAL:
        raise UsageError("oracle-check supports trigonometric and elliptic")
    if case is CaseTag.TRIGONOMETRIC:
        got, ref = enumerate_trigonometric(d, w), oracle_trig(d, cfg)
    else:
        got, ref = enumerate_elliptic(d, w), oracle_elliptic(d, cfg)
    a = [list(c.indices) for c in got]
    b = [list(c.indices) for c in ref]
    status = "MATCH" if a == b else "MISMATCH"
    body = {"case": case.value, "denominator": cfg.max_denominator,
            "status": status, "enumerated": len(a), "oracle": len(b)}
    text = f"{status} ({len(a)} enumerated, {len(b)} from oracle)"
    return _document("oracle-check", args, d, body), text


COMMANDS = {
    "datum": cmd_datum,
    "enumerate": cmd_enumerate,
    "report": cmd_report,
    "point": cmd_point,
    "goodprimes": cmd_goodprimes,
    "count": cmd_count,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootstrata",
        description="Closed root subsystems and strata of reductive groups.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", required=True,
                       help="Cartan type such as G2 or A1+B2, or GLn")
        p.add_argument("--isogeny", default="sc",
                       choices=["sc", "adjoint", "simply_connected", "ad"])
        p.add_argument("--json", action="store_true",
                       help="emit the structured document")
        p.add_argument("--max-weyl-order", type=int, default=None)
        if name in ("enumerate", "oracle-check"):
            p.add_argument("--case", default="elliptic",
                           choices=[c.value for c in CaseTag])
        if name == "enumerate":
            p.add_argument("--isolated-only", action="store_true")
        if name in ("report", "count", "point"):
            p.add_argument("--subset", default=None,
                           help='coefficient vectors, e.g. "0,1;1,1"')
        if name == "point":
            p.add_argument("--x1", default=None)
            p.add_argument("--x2", default=None)
        if name == "count":
            p.add_argument("--modulus", type=int, default=None)
        if name == "oracle-check":
            p.add_argument("--denominator", type=int, default=None)
        if name in ("count", "oracle-check"):
            p.add_argument("--budget", type=int, default=None)
    return parser


def render(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text = COMMANDS[args.command](args)
    except RootStrataError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    out = render(doc) if args.json else text + "\n"
    sys.stdout.buffer.write(out.encode("utf-8"))
    sys.stdout.flush()
    if doc.get("status") == "MISMATCH":
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
