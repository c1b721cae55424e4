"""Randomised invariants over Hosszu-Gluskin constructions."""

import itertools

import numpy as np
from hypothesis import given, strategies as st

import oracles
from polyadic.congruence import enumerate_congruences, is_congruence, quotient
from polyadic.groups import automorphisms
from polyadic.library import small_groups
from polyadic.polyadic import check_dornte, derive_theta, skew, solve, verify_polyadic
from polyadic.catalog import hg_parameters
from polyadic.structure import hg_decompose, hg_reconstruct, retract_at, retracts_isomorphic

GROUPS = small_groups(6, 2)


@st.composite
def hg_groups(draw, arities=(3, 4, 5)):
    G = draw(st.sampled_from(GROUPS))
    n = draw(st.sampled_from(arities))
    params = list(hg_parameters(G, n))
    theta, b = draw(st.sampled_from(params))
    return derive_theta(G, theta, b, n)


@given(hg_groups())
def test_constructions_satisfy_axioms(P):
    assert verify_polyadic(P.table)
    assert check_dornte(P)


@given(hg_groups(), st.data())
def test_solve_inverts_f(P, data):
    i = data.draw(st.integers(1, P.arity))
    known = data.draw(st.lists(st.integers(0, P.size - 1), min_size=P.arity - 1, max_size=P.arity - 1))
    rhs = data.draw(st.integers(0, P.size - 1))
    x = solve(P, i, known, rhs)
    args = list(known)
    args.insert(i - 1, x)
    assert P.f(*args) == rhs


@given(hg_groups(), st.data())
def test_decomposition_roundtrip(P, data):
    v = data.draw(st.integers(0, P.size - 1))
    D = hg_decompose(P, v)
    assert hg_reconstruct(D).same_operation(P)
    assert D.retract.group.identity == skew(P)(v)


@given(hg_groups(), st.data())
def test_retracts_isomorphic(P, data):
    a, c = data.draw(st.integers(0, P.size - 1)), data.draw(st.integers(0, P.size - 1))
    assert retracts_isomorphic(P, a, c) is not None


@given(hg_groups(arities=(3,)), st.data())
def test_random_mutation_rejected(P, data):
    t = P.table.copy()
    cell = tuple(data.draw(st.integers(0, P.size - 1)) for _ in range(3))
    t[cell] = (t[cell] + data.draw(st.integers(1, P.size - 1))) % P.size
    v = verify_polyadic(t)
    assert not v and v.axiom == "unique_solvability"


@given(hg_groups(arities=(3,)))
def test_congruences_closed_under_meet(P):
    if P.size > 6:
        return
    congs = enumerate_congruences(P)
    assert len(congs) >= 2
    for A, B in itertools.combinations(congs, 2):
        assert is_congruence(P, A.meet(B))
    for C in congs:
        Q = quotient(P, C)
        assert verify_polyadic(Q.quotient.table)
