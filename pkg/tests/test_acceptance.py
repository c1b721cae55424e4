"""One test per acceptance criterion, each under its runtime limit."""

import itertools
import time

import numpy as np

import oracles
from polyadic.catalog import build_catalog, hg_parameters
from polyadic.library import small_groups
from polyadic.polyadic import check_dornte, derive_theta, verify_polyadic
from polyadic.profinite import cyclic_pk, derived_chain, pro_x_check
from polyadic.groups import cyclic_group
from polyadic.library import symmetric_group
from polyadic.suites import (
    congruence_suite,
    der_commute_suite,
    hg_roundtrip,
    limit_suite,
    post_cover_suite,
    reconstruct_defaults,
    run_suite,
    v_system,
)
from polyadic.profinite import reconstruct_from_quotients


def _failures(reports):
    return [(r.info.get("name") or r.name, c["name"]) for r in reports for c in r.failures()]


def test_criterion_01_axiom_verifier(acceptance):
    start = time.perf_counter()
    rng = np.random.default_rng(20240601)
    accepted = rejected = constructions = 0
    wrong = []
    for G in small_groups(6):
        for theta, b in hg_parameters(G, 3):
            P = derive_theta(G, theta, b, 3)
            constructions += 1
            accepted += bool(verify_polyadic(P.table))
            if not 2 <= G.order <= 4:
                continue
            for _ in range(100):
                t = P.table.copy()
                cell = tuple(rng.integers(0, G.order, size=3))
                t[cell] = (t[cell] + rng.integers(1, G.order)) % G.order
                v = verify_polyadic(t)
                if not v and v.axiom == "unique_solvability":
                    rejected += 1
                else:
                    wrong.append(cell)
    elapsed = time.perf_counter() - start
    ok = accepted == constructions and not wrong
    assert acceptance(1, "axiom verifier accepts constructions, rejects mutations", ok, elapsed, 10,
                      f"{accepted}/{constructions} accepted, {rejected} mutations rejected by the Latin-cube check")


def test_criterion_02_catalog_cross_validation(acceptance):
    start = time.perf_counter()
    cat = build_catalog(3, 2)
    elapsed = time.perf_counter() - start
    xv = cat.cross_validation["2"]
    # independent count: canonical forms of every valid 2-element table
    forms = set()
    for values in itertools.product(range(2), repeat=8):
        f = lambda *xs, v=values: v[xs[0] * 4 + xs[1] * 2 + xs[2]]
        if oracles.is_polyadic(f, 2, 3):
            forms.add(oracles.canonical_form(f, 2, 3))
    ok = xv["agree"] and xv["brute_force"] == xv["hg"] == len(cat) == len(forms) == 2
    assert acceptance(2, "brute force and HG catalogs agree on carrier 2", ok, elapsed, 1,
                      f"{xv['brute_force']} brute-force classes, {xv['hg']} HG classes")


def test_criterion_03_dornte(acceptance):
    cat = build_catalog(3, 6, cross_validate=False)
    start = time.perf_counter()
    bad = [e.polyadic.name for e in cat if not check_dornte(e.polyadic)]
    elapsed = time.perf_counter() - start
    assert acceptance(3, "Dornte identities on catalog(3, 6)", not bad, elapsed, 5,
                      f"{len(cat)} entries, failures {bad}")


def test_criterion_04_hg_roundtrip(acceptance):
    cats = [build_catalog(3, 6, cross_validate=False), build_catalog(4, 4, cross_validate=False)]
    start = time.perf_counter()
    reports = [hg_roundtrip(e.polyadic) for cat in cats for e in cat]
    elapsed = time.perf_counter() - start
    bad = _failures(reports)
    checks = sum(len(r.checks) for r in reports)
    assert acceptance(4, "decompose then reconstruct at every basepoint", not bad, elapsed, 5,
                      f"{checks} (entry, basepoint) pairs, failures {bad[:3]}")


def test_criterion_05_post_cover(acceptance):
    cats = [build_catalog(3, 4, cross_validate=False), build_catalog(4, 4, cross_validate=False)]
    start = time.perf_counter()
    reports = [post_cover_suite(e.polyadic) for cat in cats for e in cat]
    elapsed = time.perf_counter() - start
    bad = _failures(reports)
    sizes_ok = all(r.info["cover_order"] == (P.arity - 1) * P.size
                   for r, P in zip(reports, [e.polyadic for cat in cats for e in cat]))
    assert acceptance(5, "Post cover properties and unique extensions", not bad and sizes_ok, elapsed, 30,
                      f"{len(reports)} entries, failures {bad[:3]}")


def test_criterion_06_hom_equivalence(acceptance):
    start = time.perf_counter()
    res = run_suite("hom-equivalence", arity=3, max_order=4)
    elapsed = time.perf_counter() - start
    sign = res["info"]["sign_convention"]
    print("sign convention:", sign)
    ok = res["passed"] and sign["I_a_agrees_everywhere"] and res["info"]["pairs"] == 121
    assert acceptance(6, "brute-force hom sets equal R(a) phi sets", ok, elapsed, 60,
                      f"{res['info']['pairs']} ordered pairs; I(a^-1) form disagrees on "
                      f"{sign['I_a_inverse_disagreements']}")


def test_criterion_07_congruences(acceptance):
    cat = build_catalog(3, 6, cross_validate=False)
    start = time.perf_counter()
    reports = [congruence_suite(e.polyadic) for e in cat]
    elapsed = time.perf_counter() - start
    bad = _failures(reports)
    for r in reports:
        for c in r.failures():
            print("counterexample:", r.info["name"], c["name"], c.get("message"), c.get("steps"))
    assert acceptance(7, "R <= GxG, lambda epimorphism, psi embedding for every congruence", not bad,
                      elapsed, 60, f"{sum(r.info['congruences'] for r in reports)} congruences, failures {bad}")


def test_criterion_08_limits(acceptance):
    systems = [cyclic_pk(2, 3, -1, 0, 3), v_system(3)]
    start = time.perf_counter()
    reports = [limit_suite(S) for S in systems]
    der = [der_commute_suite(systems[0])]
    elapsed = time.perf_counter() - start
    retracts = [sum(c["name"].startswith("retract_at_") and c["passed"] for c in r.checks) for r in reports]
    bad = _failures(reports + der)
    ok = not bad and min(retracts) >= 3
    assert acceptance(8, "thread limits, Y-sets, limit retracts, der commutes", ok, elapsed, 10,
                      f"retract isomorphisms per system {retracts}, failures {bad}")


def test_criterion_09_reconstruction(acceptance):
    inputs = [P for P in reconstruct_defaults(3) if P.name in ("Z8 x-y+z", "V4 swap")]
    start = time.perf_counter()
    reports = [reconstruct_from_quotients(P) for P in inputs]
    elapsed = time.perf_counter() - start
    bad = _failures(reports)
    ok = len(inputs) == 2 and not bad
    assert acceptance(9, "reconstruction from theta-invariant quotients with cofinality", ok, elapsed, 10,
                      f"failures {bad}")


def test_criterion_10_pro_x(acceptance):
    start = time.perf_counter()
    tower = cyclic_pk(2, 3, -1, 0, 3)
    forward = [pro_x_check(tower, X) for X in ("abelian", "2-group")]
    S3, Z2 = symmetric_group(3), cyclic_group(2)
    sign = [0 if S3.element_orders[x] != 2 else 1 for x in range(6)]
    mixed = pro_x_check(derived_chain([Z2, S3], [sign], 3), "abelian")
    elapsed = time.perf_counter() - start
    counter = mixed.failures()[0]["witness"] if not mixed.passed else None
    print("counterexample congruence:", counter)
    ok = all(r.passed for r in forward) and counter is not None
    assert acceptance(10, "pro-X forward direction and S3 counterexample", ok, elapsed, 10,
                      f"counterexample {counter}")
