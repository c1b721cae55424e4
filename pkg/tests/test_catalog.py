import pytest

import oracles
from polyadic.catalog import brute_force_classes, build_catalog, hg_parameters
from polyadic.errors import BudgetExceeded, InvalidParams
from polyadic.library import small_groups
from polyadic.polyadic import derive_theta


def test_catalog_order_two():
    cat = build_catalog(3, 2)
    assert len(cat) == 2
    assert [(e.group, e.b, e.reducible) for e in cat] == [("Z2", 0, True), ("Z2", 1, False)]
    assert cat.cross_validation == {"2": {"brute_force": 2, "hg": 2, "agree": True}}


def test_brute_force_oracle_agrees():
    reps = brute_force_classes(3, 2)
    assert len(reps) == 2
    # independent: scan all 256 tables with the loop oracle and canonicalise
    import itertools
    forms = set()
    for values in itertools.product(range(2), repeat=8):
        f = lambda *xs, v=values: v[xs[0] * 4 + xs[1] * 2 + xs[2]]
        if oracles.is_polyadic(f, 2, 3):
            forms.add(oracles.canonical_form(f, 2, 3))
    assert len(forms) == 2


def test_catalog_order_four_contains_alternating_sum():
    cat = build_catalog(3, 4)
    hits = [e for e in cat if e.group == "Z4" and e.theta == (0, 3, 2, 1) and e.b == 0]
    assert len(hits) == 1 and not hits[0].reducible


@pytest.mark.parametrize("n,max_order,count", [(3, 4, 11), (3, 6, 18), (4, 4, 6)])
def test_catalog_counts_match_canonical_forms(n, max_order, count):
    cat = build_catalog(n, max_order, cross_validate=False)
    assert len(cat) == count
    forms = set()
    for G in small_groups(max_order, 2):
        for theta, b in hg_parameters(G, n):
            P = derive_theta(G, theta, b, n)
            forms.add((P.size, oracles.canonical_form(P.f, P.size, n)))
    assert len(forms) == count


def test_catalog_entries_pairwise_distinct():
    cat = build_catalog(3, 4, cross_validate=False)
    for i, a in enumerate(cat.entries):
        for b in cat.entries[i + 1:]:
            if a.order == b.order:
                assert not oracles.isomorphic(a.polyadic.f, b.polyadic.f, a.order, 3)


def test_reducible_flags_match_identity_oracle():
    for e in build_catalog(3, 6, cross_validate=False):
        ident = oracles.nary_identity(e.polyadic.f, e.order, 3)
        assert e.reducible == (ident is not None)


def test_catalog_order_eight_count():
    # regression value computed by the catalog itself (too big for the
    # permutation oracle)
    assert len(build_catalog(3, 8, cross_validate=False)) == 48


def test_catalog_limits(monkeypatch):
    with pytest.raises(InvalidParams):
        build_catalog(2, 2)
    with pytest.raises(BudgetExceeded):
        build_catalog(3, 9)
    with pytest.raises(BudgetExceeded):
        brute_force_classes(3, 3)
