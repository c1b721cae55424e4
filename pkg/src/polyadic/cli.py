"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
input (unreadable or malformed files, unknown names, budget refusals).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import kernels
from .catalog import build_catalog
from .errors import (
    BadShape,
    BudgetExceeded,
    ConditionViolated,
    InvalidParams,
    ParseError,
    PolyadicError,
    UnknownClass,
    UnknownSuite,
)
from .groups import group_from_table, parse_class
from .io import dumps, kind_of, load, load_json, parse_polyadic_raw, system_to_json
from .polyadic import PolyadicGroup, check_dornte, derive_theta, find_nary_identity, skew, verify_polyadic
from .profinite import build_tower, inverse_limit
from .report import Report
from .suites import SUITES, SYSTEM_SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _verify_group(obj) -> Report:
    rep = Report("verify")
    try:
        G = group_from_table(np.asarray(obj["table"], dtype=np.int64), name=obj.get("name", ""))
        rep.check("group_axioms", True, order=G.order)
    except BadShape as exc:
        raise InputError(str(exc)) from exc
    except PolyadicError as exc:
        rep.check("group_axioms", False, getattr(exc, "witness", None), error=type(exc).__name__,
                  message=str(exc))
    return rep


def cmd_verify(path) -> Report:
    obj = load_json(path)
    kind = kind_of(obj)
    if kind == "group":
        return _verify_group(obj)
    if kind != "polyadic":
        raise ParseError(f"verify expects a group or polyadic group file, got {kind}")
    form, n, data, name = parse_polyadic_raw(obj, Path(path).parent)
    rep = Report("verify", info={"arity": n, "form": form})
    if form == "table":
        try:
            verdict = verify_polyadic(data, n)
        except BadShape as exc:
            raise InputError(str(exc)) from exc
        rep.check("polyadic_axioms", verdict.ok, verdict.witness, axiom=verdict.axiom, method=verdict.method)
        if not verdict:
            return rep
        P = PolyadicGroup(n, data.shape[0], data, None, name)
    else:
        G, theta, b = data
        try:
            P = derive_theta(G, theta, b, n, name=name)
            rep.check("hg_conditions", True)
        except ConditionViolated as exc:
            rep.check("hg_conditions", False, exc.witness, condition=exc.condition, message=str(exc))
            return rep
        except PolyadicError as exc:
            raise InputError(str(exc)) from exc
    rep.info["order"] = P.size
    sk = skew(P).map
    rep.check("skew_elements", all(P.f(*([x] * (n - 1)), int(sk[x])) == x for x in range(P.size)),
              skew=sk.tolist())
    d = check_dornte(P)
    rep.check("dornte_identities", d.ok, d.witness)
    ident = find_nary_identity(P)
    rep.info["nary_identity"] = ident
    rep.info["reducible"] = ident is not None
    return rep


def cmd_catalog(arity: int, max_order: int) -> tuple[dict, bool]:
    cat = build_catalog(arity, max_order)
    ok = all(v["agree"] for v in (cat.cross_validation or {}).values())
    return cat.to_dict(), ok


def _load_inputs(paths, want: str) -> list:
    out = []
    for p in paths:
        kind, obj = load(p)
        if want == "system" and kind != "system":
            raise ParseError(f"{p}: this suite needs an inverse system file")
        if want == "polyadic" and kind != "polyadic":
            raise ParseError(f"{p}: this suite needs a polyadic group file")
        out.append(obj)
    return out


def cmd_suite(name: str, inputs, cls, arity: int, max_order) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if cls is not None:
        parse_class(cls)
    objs = _load_inputs(inputs or [], "system" if name in SYSTEM_SUITES else "polyadic")
    return run_suite(name, objs or None, cls=cls, arity=arity, max_order=max_order)


def cmd_tower(kind: str, p: int, depth: int, sign: int, b: int, arity: int) -> dict:
    S = build_tower(kind, p=p, depth=depth, theta_sign=sign, b=b, n=arity)
    L = inverse_limit(S)
    return {"system": system_to_json(S), "valid": True, "threads": L.size}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyadic", description="Finite polyadic group toolkit.")
    ap.add_argument("--pretty", action="store_true", help="indent JSON output")
    ap.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the axioms of a group or polyadic group file")
    v.add_argument("file")

    c = sub.add_parser("catalog", help="polyadic groups of small order up to isomorphism")
    c.add_argument("--arity", type=int, required=True)
    c.add_argument("--max-order", type=int, required=True)
    c.add_argument("--out", help="also write the catalog to this file")

    s = sub.add_parser("suite", help="run a named check suite")
    s.add_argument("name", help=", ".join(SUITES))
    s.add_argument("--input", action="append", default=[], help="input file (repeatable)")
    s.add_argument("--class", dest="cls", help="group class, e.g. abelian, 2-group, solvable")
    s.add_argument("--arity", type=int, default=3, help="arity of the default inputs")
    s.add_argument("--max-order", type=int, help="catalog bound for the default inputs")

    t = sub.add_parser("tower", help="build and validate a tower of finite stages")
    t.add_argument("--kind", default="cyclic_pk", choices=["cyclic_pk"])
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--depth", type=int, required=True)
    t.add_argument("--sign", type=int, default=1, choices=[1, -1])
    t.add_argument("--b", type=int, default=0)
    t.add_argument("--arity", type=int, default=3)
    t.add_argument("--out", help="also write the system to this file")
    return ap


def _emit(payload: dict, pretty: bool, out_path: str | None = None):
    text = dumps(payload, pretty)
    if out_path:
        Path(out_path).write_text(text + "\n")
    sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    payload: dict = {"command": args.command}
    try:
        if args.command == "verify":
            payload["inputs"] = [args.file]
            rep = cmd_verify(args.file)
            payload.update(rep.to_dict())
            ok = rep.passed
            for c in rep.failures():
                print(f"{c['name']} fails: {c.get('axiom') or c.get('condition') or ''} witness {c.get('witness')}",
                      file=sys.stderr)
            out = None
        elif args.command == "catalog":
            payload["inputs"] = {"arity": args.arity, "max_order": args.max_order}
            cat, ok = cmd_catalog(args.arity, args.max_order)
            payload["passed"] = ok
            payload["catalog"] = cat
            out = args.out
        elif args.command == "suite":
            payload["inputs"] = {"suite": args.name, "files": args.input, "class": args.cls,
                                 "arity": args.arity, "max_order": args.max_order}
            res = cmd_suite(args.name, args.input, args.cls, args.arity, args.max_order)
            payload.update(res)
            ok = res["passed"]
            out = None
        else:
            payload["inputs"] = {"kind": args.kind, "p": args.p, "depth": args.depth, "sign": args.sign,
                                 "b": args.b, "arity": args.arity}
            res = cmd_tower(args.kind, args.p, args.depth, args.sign, args.b, args.arity)
            payload["passed"] = True
            payload.update(res)
            ok = True
            out = args.out
            if out:
                Path(out).write_text(dumps(res["system"], args.pretty) + "\n")
                out = None
    except (ParseError, InputError, UnknownSuite, UnknownClass, InvalidParams, BudgetExceeded) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        payload["timing_seconds"] = round(time.perf_counter() - start, 4)
        payload["backend"] = kernels.BACKEND
    _emit(payload, args.pretty, out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
