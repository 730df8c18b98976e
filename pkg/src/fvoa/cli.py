"""Command-line front end: ``fvoa verify``, ``fvoa describe`` and per-module tools.

Exit codes: 0 when everything checked passes, 1 when a check fails, 2 for
usage errors (bad arguments, unknown names).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import checks, codes, lattices, liealg, modspace, quadspace


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, default=str))


def _record(id_: str, anchor: str, computed, expected) -> dict:
    computed, expected = checks._jsonable(computed), checks._jsonable(expected)
    status = "pass" if computed == expected else "fail"
    return checks.CheckRecord(id_, anchor, status, computed, expected).to_dict()


# ---------------------------------------------------------------------------
# verify / describe


def cmd_verify(args) -> int:
    recs = checks.run_checks(args.filter)
    if not recs:
        raise UsageError(f"no check id starts with {args.filter!r}")
    rep = checks.report(recs)
    text = checks.dumps(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for r in recs:
        print(f"{r.status.upper():4s} {r.id}", file=sys.stderr)
    return 0 if rep["failed"] == 0 else 1


def _describe_code(c: codes.BinaryCode) -> list[str]:
    p = c.predicates()
    lines = [
        f"code {c.name or '-'}",
        f"  length {c.length}, dim {c.dim}",
        f"  even {p.is_even}, doubly even {p.is_doubly_even}, triply even {p.is_triply_even}",
        f"  contains all-one {p.contains_allone}, self-orthogonal {p.is_self_orthogonal}",
    ]
    if c.dim <= codes.ENUM_LIMIT:
        we = " ".join(f"{w}:{n}" for w, n in sorted(c.weight_enumerator().items()))
        lines.append(f"  weight enumerator {we}")
    if p.is_triply_even and p.contains_allone and c.length % 16 == 0:
        u = codes.uniqueness_criterion(c)
        lines.append(f"  product code dim {u.dim_star}, 1 + C(d,2) = {u.formula_value}, criterion {u.satisfied}")
    return lines


def _describe_space(name: str, s: quadspace.TSSubspace) -> list[str]:
    prof = quadspace.invariant_profile(s)
    return [
        f"space {name}",
        f"  dim {s.dim}, maximal {s.is_maximal}",
        f"  condition (2) {quadspace.cond2_check(s).holds}",
        f"  axis dims {list(quadspace.coordinate_intersections(s))}",
        f"  profile: axes {list(prof.axis_dims)}, parity {prof.parity}, epsilon {prof.epsilon}",
    ]


def cmd_describe(args) -> int:
    name = args.name
    try:
        print("\n".join(_describe_code(codes.catalog(name))))
        return 0
    except KeyError:
        pass
    try:
        print("\n".join(_describe_space(name, quadspace.named_space(name))))
        return 0
    except KeyError:
        pass
    if name in lattices.NIEMEIER_NAMES:
        r = lattices.niemeier(name).verify()
        print(f"lattice N({name})")
        for k, v in r.items():
            print(f"  {k} {v}")
        return 0
    if name.startswith("V["):
        c = modspace.UntwistedClass.parse(name)
        dims = [modspace.class_weight_dim(c, w) for w in modspace.WEIGHTS]
        print(f"class {c}\n  q {c.q}\n  weight dims (0, 1/2, 1) {dims}")
        return 0
    try:
        t = liealg.parse_type(name)
    except ValueError:
        raise UsageError(
            f"unknown name {name!r}. Codes: {', '.join(codes.CATALOG_NAMES)}. "
            "Spaces: S(m,k1,k2,+/-), S(m,k1,k2), Flag, "
            + ", ".join(quadspace.NAMED_TRANSFORMS)
            + f". Lattices: {', '.join(lattices.NIEMEIER_NAMES)}. Classes: V[x1,...,x8]+/-. Lie types: e.g. C8F4^2."
        ) from None
    print(f"Lie type {t}\n  dim {t.dim}, rank {t.rank}, roots {t.roots}")
    return 0


# ---------------------------------------------------------------------------
# module subcommands


def cmd_code(args) -> int:
    c = codes.catalog(args.name)
    if args.action == "show":
        print(c.to_text())
    elif args.action == "enum":
        _emit(c.weight_enumerator())
    elif args.action == "predicates":
        _emit(asdict(c.predicates()))
    elif args.action == "qd":
        _emit({"dim_qd": codes.qd_dimension(c), "expected": 1 + c.dim * (c.dim - 1) // 2})
    elif args.action == "uniqueness":
        _emit(asdict(codes.uniqueness_criterion(c)))
    return 0


def cmd_qspace(args) -> int:
    if args.action == "list":
        for p in quadspace.admissible_parameters(args.m):
            tag = f",{'+' if p[2] == 'plus' else '-'}" if len(p) == 3 else ""
            print(f"S({args.m},{p[0]},{p[1]}{tag})")
        return 0
    if not args.name:
        raise UsageError("qspace needs a space name")
    s = quadspace.named_space(args.name)
    if args.action == "show":
        print(s.to_text())
    elif args.action == "profile":
        p = quadspace.invariant_profile(s)
        _emit({"cond2": p.cond2, "axis_dims": p.axis_dims, "parity": p.parity, "epsilon": p.epsilon})
    elif args.action == "cond2":
        r = quadspace.cond2_check(s, symmetric=args.symmetric)
        _emit({"holds": r.holds, "witness": r.witness, "order": r.order})
    return 0


def cmd_lattice(args) -> int:
    if args.action == "verify":
        if args.name not in lattices.NIEMEIER_NAMES:
            raise UsageError(f"unknown lattice {args.name!r}; known: {', '.join(lattices.NIEMEIER_NAMES)}")
        r = lattices.niemeier(args.name).verify()
        expected = {"A15D9": 408, "A7A7D5D5": 216}[args.name]
        rec = _record(f"lattice.{args.name}", "even unimodular glue and weight-one dimension",
                      [r["ok"], r["weight1_dim"]], [True, expected])
    elif args.action == "weyl-d5":
        r = lattices.weyl_conjugacy_d5()
        rec = _record("lattice.weyl_d5", "s + 4 beta conjugate to s mod 2L(D5)",
                      [r.group_order, r.all_conjugate, r.minus_conjugate], [1920, True, True])
    else:
        r = lattices.disc_action_check()
        rec = _record("lattice.disc_action", "g(u) = 3u - v, g(v) = v, (kg)^2 labels",
                      [r.ok, r.identity_pairs], [True, r.identity_pairs])
    _emit(rec)
    return 0 if rec["status"] == "pass" else 1


def cmd_lie(args) -> int:
    if args.action == "dim":
        if not args.type:
            raise UsageError("lie dim needs a type string")
        print(liealg.dim_of(args.type))
        return 0
    rows = [_record(c.id, c.anchor, c.computed, c.expected) for c in liealg.paper_dim_checks()]
    cnt = liealg.count_56()
    rows.append(_record("lie.count56", "39 + 10 + 4 + 3 = 56", cnt.total, 56))
    _emit(rows)
    return 0 if all(r["status"] == "pass" for r in rows) else 1


def cmd_modspace(args) -> int:
    if args.action == "dims":
        if not args.label:
            raise UsageError("modspace dims needs a class label like V[1,0,0,0,0,0,0,0]+")
        c = modspace.UntwistedClass.parse(args.label)
        _emit({"class": str(c), "q": c.q, "dims": {str(w): modspace.class_weight_dim(c, w) for w in modspace.WEIGHTS}})
        return 0
    reps = [modspace.appendix_a1_check(), modspace.appendix_a2_check()]
    _emit([asdict(r) | {"ok": r.ok} for r in reps])
    return 0 if all(r.ok for r in reps) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fvoa", description="Finite checks for framed VOA classification data.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run registered checks and write a JSON report")
    p.add_argument("--filter", default=None, help="check-id prefix")
    p.add_argument("--out", default=None, help="report file (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("describe", help="summarise a catalog object")
    p.add_argument("name")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("code", help="binary code tools")
    p.add_argument("action", choices=["show", "enum", "predicates", "qd", "uniqueness"])
    p.add_argument("name")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("qspace", help="totally singular subspace tools")
    p.add_argument("action", choices=["list", "show", "profile", "cond2"])
    p.add_argument("name", nargs="?")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--symmetric", action="store_true")
    p.set_defaults(func=cmd_qspace)

    p = sub.add_parser("lattice", help="Niemeier glue and Weyl group checks")
    p.add_argument("action", choices=["verify", "weyl-d5", "disc-action"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("lie", help="Lie type dimensions")
    p.add_argument("action", choices=["dim", "checks"])
    p.add_argument("type", nargs="?")
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("modspace", help="module classes of the sqrt(2)E8 fixed-point algebra")
    p.add_argument("action", choices=["dims", "appendix"])
    p.add_argument("label", nargs="?")
    p.set_defaults(func=cmd_modspace)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"fvoa: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
