"""JSON file formats.

group:      {"order": m, "table": [[...], ...], "name": optional}
polyadic:   {"arity": n, "table": nested arrays}
            {"arity": n, "hg": {"group": ref-or-inline, "theta": [...], "b": k}}
hom:        {"source": ref, "target": ref, "map": [...]}
congruence: {"partition": [[...], ...], "polyadic": optional ref}
system:     {"poset": [[lower, upper], ...], "stages": [ref, ...],
             "maps": [{"from": i, "to": j, "map": [...]}, ...]}

A reference is either an inline object or a path relative to the file
that contains it.  Group references may also name a built-in group.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .groups import FiniteGroup, group_from_table
from .library import group_by_name
from .polyadic import PolyadicGroup, derive_theta
from .profinite import DirectedPoset, InverseSystem
from .report import plain


def load_json(path) -> dict:
    path = Path(path)
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(plain(obj), indent=2, sort_keys=True)
    return json.dumps(plain(obj), sort_keys=True, separators=(",", ":"))


def kind_of(obj) -> str:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    if "kind" in obj:
        return obj["kind"]
    if "stages" in obj:
        return "system"
    if "partition" in obj:
        return "congruence"
    if "source" in obj and "map" in obj:
        return "hom"
    if "arity" in obj:
        return "polyadic"
    if "order" in obj and "table" in obj:
        return "group"
    raise ParseError("cannot tell what kind of object this file describes")


def _deref(ref, base: Path):
    if isinstance(ref, str):
        p = base / ref
        if p.exists():
            return load_json(p), p.parent
        return ref, base
    return ref, base


def _int_array(value, what: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} must be an integer array") from exc
    if arr.dtype == object:
        raise ParseError(f"{what} is ragged")
    return arr


def parse_group(obj, base: Path = Path(".")) -> FiniteGroup:
    obj, base = _deref(obj, base)
    if isinstance(obj, str):
        try:
            return group_by_name(obj)
        except KeyError as exc:
            raise ParseError(f"unknown group reference {obj!r}") from exc
    if not isinstance(obj, dict) or "table" not in obj:
        raise ParseError("group needs a table")
    table = _int_array(obj["table"], "group table")
    if table.ndim != 2 or ("order" in obj and table.shape[0] != obj["order"]):
        raise ParseError("group table shape does not match its order")
    return group_from_table(table, name=obj.get("name", ""))


def parse_polyadic_raw(obj, base: Path = Path(".")):
    """Unvalidated contents: ("table", arity, cube, name) or
    ("hg", arity, (G, theta, b), name)."""
    obj, base = _deref(obj, base)
    if not isinstance(obj, dict) or "arity" not in obj:
        raise ParseError("polyadic group needs an arity")
    n = obj["arity"]
    if not isinstance(n, int) or n < 2:
        raise ParseError("arity must be an integer >= 2")
    name = obj.get("name", "")
    if "table" in obj:
        cube = _int_array(obj["table"], "operation table")
        return "table", n, cube, name
    if "hg" in obj:
        hg = obj["hg"]
        if not isinstance(hg, dict) or "group" not in hg:
            raise ParseError("hg needs a group")
        G = parse_group(hg["group"], base)
        theta = _int_array(hg.get("theta", list(range(G.order))), "theta")
        b = hg.get("b", G.identity)
        if not isinstance(b, int):
            raise ParseError("b must be an element index")
        return "hg", n, (G, theta, b), name
    raise ParseError("polyadic group needs a table or an hg triple")


def parse_polyadic(obj, base: Path = Path(".")) -> PolyadicGroup:
    kind, n, data, name = parse_polyadic_raw(obj, base)
    if kind == "table":
        return PolyadicGroup.from_table(data, n, name=name)
    G, theta, b = data
    return derive_theta(G, theta, b, n, name=name)


def parse_system(obj, base: Path = Path(".")) -> InverseSystem:
    obj, base = _deref(obj, base)
    try:
        stages = [parse_polyadic(s, base) for s in obj["stages"]]
        pairs = [tuple(p) for p in obj.get("poset", [])]
        maps = {(int(m["from"]), int(m["to"])): _int_array(m["map"], "map") for m in obj.get("maps", [])}
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed system: {exc}") from exc
    return InverseSystem.build(DirectedPoset.from_pairs(len(stages), pairs), stages, maps)


def load(path):
    """Parse any supported file into (kind, object)."""
    path = Path(path)
    obj = load_json(path)
    kind = kind_of(obj)
    base = path.parent
    if kind == "group":
        return kind, parse_group(obj, base)
    if kind == "polyadic":
        return kind, parse_polyadic(obj, base)
    if kind == "system":
        return kind, parse_system(obj, base)
    if kind == "hom":
        src, tgt = parse_polyadic(obj["source"], base), parse_polyadic(obj["target"], base)
        return kind, (src, tgt, _int_array(obj["map"], "map"))
    if kind == "congruence":
        P = parse_polyadic(obj["polyadic"], base) if "polyadic" in obj else None
        return kind, (P, [list(map(int, b)) for b in obj["partition"]])
    raise ParseError(f"unsupported kind {kind!r}")


# -- writers ------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> dict:
    d = {"order": G.order, "table": G.table.tolist()}
    if G.name:
        d["name"] = G.name
    return d


def polyadic_to_json(P: PolyadicGroup, form: str = "auto") -> dict:
    d = {"arity": P.arity}
    if P.name:
        d["name"] = P.name
    if P.hg is not None and form in ("auto", "hg"):
        d["hg"] = {"group": group_to_json(P.hg.base), "theta": P.hg.theta.map.tolist(), "b": P.hg.b}
    else:
        d["table"] = P.table.tolist()
    return d


def system_to_json(S: InverseSystem) -> dict:
    pairs = [[j, i] for i, j in S.poset.comparable_pairs() if i != j]
    maps = [{"from": i, "to": j, "map": m.tolist()} for (i, j), m in sorted(S.maps.items()) if i != j]
    return {"kind": "system", "poset": pairs, "stages": [polyadic_to_json(P) for P in S.stages],
            "maps": maps}
