import itertools

import pytest

import oracles
from polyadic.congruence import (
    Congruence,
    congruence_as_subgroup,
    congruence_closure,
    enumerate_congruences,
    is_congruence,
    lambda_check,
    psi_embedding,
    quotient,
)
from polyadic.errors import BudgetExceeded, IllDefined, NotACongruence
from polyadic.groups import cyclic_group
from polyadic.library import symmetric_group
from polyadic.polyadic import derive, derive_theta, find_polyadic_isomorphism


def test_is_congruence_examples(z4_alt):
    assert is_congruence(z4_alt, [[0, 2], [1, 3]])
    v = is_congruence(z4_alt, [[0, 1], [2, 3]])
    assert not v
    x, y = v.witness
    lab = [0, 0, 1, 1]
    assert [lab[a] for a in x] == [lab[a] for a in y]
    assert lab[z4_alt.f(*x)] != lab[z4_alt.f(*y)]
    assert is_congruence(z4_alt, [[0, 1, 2, 3]])


def test_partition_must_cover(z4_alt):
    with pytest.raises(ValueError):
        Congruence.from_partition(z4_alt, [[0, 1], [2]])
    with pytest.raises(ValueError):
        Congruence.from_partition(z4_alt, [[0, 1], [1, 2, 3]])


def test_enumeration_examples(der3_z2, z4_alt):
    assert [C.blocks for C in enumerate_congruences(der3_z2)] == [[[0], [1]], [[0, 1]]]
    blocks = [C.blocks for C in enumerate_congruences(z4_alt)]
    assert blocks == [[[0], [1], [2], [3]], [[0, 2], [1, 3]], [[0, 1, 2, 3]]]


@pytest.mark.parametrize("make", [
    lambda: derive_theta(cyclic_group(4), [0, 3, 2, 1], 0, 3),
    lambda: derive(symmetric_group(3), 3),
    lambda: derive(cyclic_group(6), 3),
    lambda: derive_theta(cyclic_group(5), [0, 4, 3, 2, 1], 0, 3),
])
def test_enumeration_matches_partition_oracle(make):
    P = make()
    ref = oracles.congruences(P.f, P.size, P.arity)
    for method in ("scan", "closure"):
        got = sorted(C.blocks for C in enumerate_congruences(P, method))
        assert got == ref


def test_enumeration_budget(monkeypatch, der3_s3):
    monkeypatch.setenv("POLYADIC_BUDGET", "4")
    with pytest.raises(BudgetExceeded):
        enumerate_congruences(der3_s3)


def test_closure_is_least(z4_alt):
    C = congruence_closure(z4_alt, [(0, 1)])
    assert C.num_blocks == 1
    C = congruence_closure(z4_alt, [(1, 3)])
    assert C.blocks == [[0, 2], [1, 3]]


def test_meets_are_congruences():
    P = derive(cyclic_group(6), 3)
    congs = enumerate_congruences(P)
    keys = {C.key() for C in congs}
    for A, B in itertools.combinations(congs, 2):
        M = A.meet(B)
        assert is_congruence(P, M) and M.key() in keys


def test_quotient_examples(z4_alt, der3_z2):
    Q = quotient(z4_alt, [[0, 2], [1, 3]])
    assert Q.quotient.size == 2
    assert find_polyadic_isomorphism(Q.quotient, der3_z2) is not None
    assert quotient(z4_alt, Congruence.equality(z4_alt)).quotient.same_operation(z4_alt)
    assert quotient(z4_alt, Congruence.full(z4_alt)).quotient.size == 1
    with pytest.raises(NotACongruence):
        quotient(z4_alt, [[0, 1], [2, 3]])


def test_lambda_examples(z4_alt):
    r = lambda_check(z4_alt, [[0, 2], [1, 3]], 0)
    assert r.passed and r.info["kernel"] == [0, 2]
    r = lambda_check(z4_alt, Congruence.equality(z4_alt), 0)
    assert r.passed and r.info["kernel"] == [0]
    r = lambda_check(z4_alt, Congruence.full(z4_alt), 0)
    assert r.passed and r.info["kernel"] == [0, 1, 2, 3]


def test_congruence_as_subgroup(z4_alt):
    pairs, rep = congruence_as_subgroup(z4_alt, [[0, 2], [1, 3]])
    assert len(pairs) == 8 and rep.passed
    pairs, _ = congruence_as_subgroup(z4_alt, Congruence.equality(z4_alt))
    assert pairs == (0, 5, 10, 15)
    pairs, _ = congruence_as_subgroup(z4_alt, Congruence.full(z4_alt))
    assert len(pairs) == 16


def test_psi_examples(z4_alt):
    e = psi_embedding(z4_alt, [[0, 2], [1, 3]])
    assert e.report.info["quotient_order"] == 2 and e.target.size == 2
    e = psi_embedding(z4_alt, Congruence.equality(z4_alt))
    assert e.report.info["quotient_order"] == 4 and sorted(e.map.tolist()) == [0, 1, 2, 3]
    e = psi_embedding(z4_alt, Congruence.full(z4_alt))
    assert e.target.size == 1


def test_psi_needs_normal_pair_subgroup(der3_s3):
    """The diagonal of S3 x S3 is a subgroup but not a normal one, so the
    coset space carries no group structure."""
    pairs, rep = congruence_as_subgroup(der3_s3, Congruence.equality(der3_s3))
    assert rep.passed and rep.info["normal_in_GxG"] is False
    with pytest.raises(IllDefined) as exc:
        psi_embedding(der3_s3, Congruence.equality(der3_s3))
    failed = exc.value.report.failures()
    assert [c["name"] for c in failed] == ["R_normal_in_GxG"]
