"""Named check suites run by the command line and the acceptance tests.

Each suite takes its inputs (polyadic groups or inverse systems) and
returns a dict with per-input reports; ``passed`` is the conjunction.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import kernels
from .catalog import build_catalog
from .congruence import congruence_as_subgroup, enumerate_congruences, lambda_check, psi_embedding, quotient
from .errors import PolyadicError, UnknownSuite
from .groups import Automorphism, cyclic_group, direct_product
from .polyadic import PolyadicGroup, derive, derive_theta
from .profinite import (
    DirectedPoset,
    InverseSystem,
    cyclic_pk,
    der_limit_commute,
    inverse_limit,
    limit_retract,
    pro_x_check,
    poln_closure_suite,
    reconstruct_from_quotients,
    y_set_report,
)
from .report import Report
from .structure import (
    PolyadicHom,
    enumerate_homs,
    extensions_agreeing,
    hg_decompose,
    hg_reconstruct,
    post_cover,
    universal_extend,
)

MAX_THREADS_CHECKED = 16


def _error_check(rep: Report, name: str, exc: PolyadicError):
    sub = getattr(exc, "report", None)
    rep.check(name, False, getattr(exc, "witness", None), error=type(exc).__name__, message=str(exc),
              failed_steps=[c["name"] for c in sub.failures()] if sub is not None else None)


# -- standard inputs ------------------------------------------------------------

def v_system(n: int = 3) -> InverseSystem:
    """Two copies of (Z4, x - y + z) over (Z2, x + y + z) by reduction."""
    Z2, Z4 = cyclic_group(2), cyclic_group(4)
    neg = [0, 3, 2, 1]
    if (n - 1) % 2:
        neg = [0, 1, 2, 3]
    stages = [derive_theta(Z2, [0, 1], 0, n, name="Z2"),
              derive_theta(Z4, neg, 0, n, name="Z4"),
              derive_theta(Z4, neg, 0, n, name="Z4")]
    red = np.arange(4) % 2
    return InverseSystem.build(DirectedPoset.from_pairs(3, [(0, 1), (0, 2)]), stages,
                               {(1, 0): red, (2, 0): red})


def reconstruct_defaults(n: int = 3) -> list[PolyadicGroup]:
    Z2, Z8 = cyclic_group(2), cyclic_group(8)
    V4 = direct_product([Z2, Z2])
    out = [derive(Z2, n, name="der(Z2)")]
    if (n - 1) % 2 == 0:
        out.append(derive_theta(Z8, (-np.arange(8)) % 8, 0, n, name="Z8 x-y+z"))
        out.append(derive_theta(V4, Automorphism.of(V4, [0, 2, 1, 3]), 0, n, name="V4 swap"))
    return out


def tower_defaults(n: int = 3) -> list[InverseSystem]:
    sign = -1 if (n - 1) % 2 == 0 else 1
    return [cyclic_pk(2, 3, sign, 0, n), v_system(n)]


# -- per-object suites -----------------------------------------------------------

def hg_roundtrip(P: PolyadicGroup) -> Report:
    rep = Report("hg_roundtrip", info={"name": P.name, "order": P.size})
    for v in range(P.size):
        try:
            D = hg_decompose(P, v)
            rep.check(f"basepoint_{v}", hg_reconstruct(D).same_operation(P), b=D.b)
        except PolyadicError as exc:
            _error_check(rep, f"basepoint_{v}", exc)
    return rep


def _universal_targets(P: PolyadicGroup, cover) -> list[PolyadicGroup]:
    n = P.arity
    targets = [derive(cover.cover, n, name="der(cover)")]
    for k in (2, 3):
        if k ** P.size <= kernels.budget(10**4):
            targets.append(derive(cyclic_group(k), n, name=f"der(Z{k})"))
    return targets


def post_cover_suite(P: PolyadicGroup) -> Report:
    rep = Report("post_cover", info={"name": P.name, "order": P.size})
    try:
        pc = post_cover(P)
    except PolyadicError as exc:
        _error_check(rep, "construction", exc)
        return rep
    for k, ok in pc.checks.items():
        rep.check(k, ok)
    rep.info["cover_order"] = pc.cover.order
    betas = [PolyadicHom.of(P, _universal_targets(P, pc)[0], pc.embedding)]
    for Q in _universal_targets(P, pc)[1:]:
        for row in kernels.enumerate_hom_maps(P.flat, Q.flat, P.size, Q.size, P.arity):
            betas.append(PolyadicHom(P, Q, row.copy()))
    unique = True
    witness = None
    for beta in betas:
        try:
            h = universal_extend(pc, beta)
        except PolyadicError as exc:
            unique, witness = False, {"beta": beta.map.tolist(), "error": type(exc).__name__}
            break
        exts = extensions_agreeing(pc, beta)
        if len(exts) != 1 or not exts[0].same_map(h):
            unique, witness = False, {"beta": beta.map.tolist(), "extensions": len(exts)}
            break
    rep.check("universal_property_unique_extension", unique, witness, maps_checked=len(betas))
    return rep


def hom_equivalence(P: PolyadicGroup, Q: PolyadicGroup) -> Report:
    rep = Report("hom_equivalence", info={"source": P.name, "target": Q.name})
    E = enumerate_homs(P, Q)
    rep.info.update(E.to_dict())
    rep.check("brute_force_equals_factorization_I_a", E.equal)
    return rep


def congruence_suite(P: PolyadicGroup) -> Report:
    rep = Report("congruence_quotient", info={"name": P.name, "order": P.size})
    congs = enumerate_congruences(P)
    rep.info["congruences"] = len(congs)
    for k, C in enumerate(congs):
        tag = f"R{k}"
        try:
            Qp = quotient(P, C)
            rep.check(f"{tag}.quotient_is_polyadic", True, blocks=C.blocks)
        except PolyadicError as exc:
            _error_check(rep, f"{tag}.quotient_is_polyadic", exc)
            continue
        rep.check(f"{tag}.projection_surjective", len(set(Qp.projection.map.tolist())) == Qp.quotient.size)
        try:
            _, sub = congruence_as_subgroup(P, C)
            rep.check(f"{tag}.R_subgroup_of_GxG", True, normal=sub.info["normal_in_GxG"])
        except PolyadicError as exc:
            _error_check(rep, f"{tag}.R_subgroup_of_GxG", exc)
        lam_ok, lam_bad = True, None
        for a in range(P.size):
            lr = lambda_check(P, C, a)
            if not lr.passed:
                lam_ok, lam_bad = False, {"basepoint": a, "failed": [c["name"] for c in lr.failures()]}
                break
        rep.check(f"{tag}.lambda_epimorphism_kernel_iso", lam_ok, lam_bad)
        try:
            psi_embedding(P, C)
            rep.check(f"{tag}.psi_embedding", True)
        except PolyadicError as exc:
            _error_check(rep, f"{tag}.psi_embedding", exc)
            sub = getattr(exc, "report", None)
            if sub is not None:
                rep.checks[-1]["steps"] = sub.checks
    return rep


def limit_suite(S: InverseSystem) -> Report:
    rep = Report("limit", info={"stages": S.size})
    try:
        L = inverse_limit(S)
    except PolyadicError as exc:
        _error_check(rep, "limit_nonempty", exc)
        return rep
    rep.check("limit_nonempty", L.size > 0, threads=L.size)
    rep.extend(y_set_report(S, L), "y_sets.")
    for t in L.threads[:MAX_THREADS_CHECKED]:
        r = limit_retract(S, t, L)
        rep.check(f"retract_at_{t.tolist()}", r.passed, None,
                  failed=[c["name"] for c in r.failures()] or None)
    return rep


def der_commute_suite(S: InverseSystem) -> Report:
    try:
        return der_limit_commute(S)
    except PolyadicError as exc:
        rep = Report("der_limit_commute")
        _error_check(rep, "compatible", exc)
        return rep


# -- dispatch -------------------------------------------------------------------

DEFAULT_MAX_ORDER = {"hg-roundtrip": 4, "post-cover": 4, "hom-equivalence": 2,
                     "congruence-quotient": 4, "poln-closure": 4}
SYSTEM_SUITES = {"limit-retract", "der-commute", "pro-x"}
SUITES = ("hg-roundtrip", "post-cover", "hom-equivalence", "congruence-quotient", "limit-retract",
          "der-commute", "reconstruct", "pro-x", "poln-closure")


def _collect(name: str, reports: Sequence[Report], **info) -> dict:
    return {"suite": name, "passed": all(r.passed for r in reports), "info": info,
            "reports": [r.to_dict() for r in reports]}


def run_suite(name: str, inputs: Sequence | None = None, cls: str | None = None,
              arity: int = 3, max_order: int | None = None) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name in SYSTEM_SUITES:
        systems = list(inputs) if inputs else tower_defaults(arity)
        if name == "limit-retract":
            return _collect(name, [limit_suite(S) for S in systems])
        if name == "der-commute":
            return _collect(name, [der_commute_suite(S) for S in systems])
        X = cls or "abelian"
        systems = list(inputs) if inputs else tower_defaults(arity)[:1]
        return _collect(name, [pro_x_check(S, X) for S in systems], **{"class": X})
    if name == "reconstruct":
        groups = list(inputs) if inputs else reconstruct_defaults(arity)
        return _collect(name, [reconstruct_from_quotients(P) for P in groups])
    if inputs:
        groups = list(inputs)
        source = "inputs"
    else:
        m = max_order or DEFAULT_MAX_ORDER[name]
        groups = [e.polyadic for e in build_catalog(arity, m, cross_validate=False)]
        source = f"catalog(arity={arity}, max_order={m})"
    runners: dict[str, Callable] = {
        "hg-roundtrip": hg_roundtrip,
        "post-cover": post_cover_suite,
        "congruence-quotient": congruence_suite,
    }
    if name in runners:
        return _collect(name, [runners[name](P) for P in groups], source=source)
    if name == "hom-equivalence":
        reps = [hom_equivalence(P, Q) for P in groups for Q in groups]
        mismatch = [(r.info["source"], r.info["target"]) for r in reps if not r.info["I_a_inverse_matches_brute_force"]]
        return _collect(name, reps, source=source, pairs=len(reps),
                        sign_convention={"I_a": "x -> a x a^-1", "I_a_inverse": "x -> a^-1 x a",
                                         "I_a_agrees_everywhere": all(r.info["I_a_matches_brute_force"] for r in reps),
                                         "I_a_inverse_disagreements": len(mismatch),
                                         "first_I_a_inverse_disagreement": mismatch[0] if mismatch else None})
    X = cls or "abelian"
    return _collect(name, [poln_closure_suite(X, groups)], source=source, **{"class": X})
