import itertools

import numpy as np
import pytest

import oracles
from polyadic.errors import ConstructionFailed, NotAHom, PreconditionViolated
from polyadic.groups import Automorphism, cyclic_group, find_isomorphism, is_cyclic
from polyadic.library import symmetric_group
from polyadic.polyadic import derive, derive_b, derive_theta, skew
from polyadic.structure import (
    PolyadicHom,
    enumerate_homs,
    extensions_agreeing,
    hg_decompose,
    hg_reconstruct,
    hom_decompose,
    hom_verify,
    post_cover,
    retract_at,
    retract_inverse_formula,
    retracts_isomorphic,
    universal_extend,
)


def test_retract_identity_is_skew(z4_alt, der3_s3):
    for P in (z4_alt, der3_s3):
        for a in range(P.size):
            R = retract_at(P, a)
            assert R.group.identity == skew(P)(a)
            assert (retract_inverse_formula(P, a) == R.group.inverse).all()


def test_retracts_all_isomorphic(z4_alt):
    for a in range(4):
        assert retracts_isomorphic(z4_alt, 0, a) is not None
    assert is_cyclic(retract_at(z4_alt, 1).group)


def test_hg_decompose_values(z4_alt, der3_z2_b1):
    D = hg_decompose(z4_alt, 0)
    assert D.theta.map.tolist() == [0, 3, 2, 1] and D.b == 0
    D = hg_decompose(z4_alt, 1)
    assert D.theta.map.tolist() == [2, 1, 0, 3] and D.b == 1
    assert D.retract.group.identity == 1
    D = hg_decompose(der3_z2_b1, 0)
    assert D.theta.is_identity() and D.b == 0 and D.retract.group.identity == 1
    assert hg_reconstruct(D).same_operation(der3_z2_b1)


def test_hg_roundtrip_every_basepoint(der3_s3):
    S3 = symmetric_group(3)
    c = next(x for x in range(6) if S3.element_orders[x] == 3)
    P = derive_theta(S3, Automorphism.inner(S3, c), S3.mul(c, c), 3)
    for Q in (der3_s3, P, derive(cyclic_group(5), 4)):
        for v in range(Q.size):
            assert hg_reconstruct(hg_decompose(Q, v)).same_operation(Q)


def test_post_cover_orders(z4_alt, der3_z2, der3_s3):
    assert post_cover(z4_alt).cover.order == 8
    assert post_cover(derive(cyclic_group(2), 2)).cover.order == 2
    assert post_cover(derive(symmetric_group(3), 4)).cover.order == 18
    pc = post_cover(z4_alt)
    assert all(pc.checks.values()) and len(pc.checks) == 6


def test_post_cover_kernel_and_quotient(z4_alt):
    pc = post_cover(z4_alt)
    K = pc.kernel.members
    assert len(K) == 4
    ret = retract_at(z4_alt, 0).group
    from polyadic.groups import subgroup_as_group, quotient_group
    assert find_isomorphism(subgroup_as_group(pc.cover, K), ret) is not None
    Q, _ = quotient_group(pc.cover, K)
    assert Q.order == 2
    # the operation is the product in the cover
    e = pc.embedding
    for xs in itertools.product(range(4), repeat=3):
        assert pc.cover.prod(*(int(e[x]) for x in xs)) == e[z4_alt.f(*xs)]


def test_universal_extension_unique(z4_alt, der3_z2):
    pc = post_cover(z4_alt)
    beta = PolyadicHom.of(z4_alt, der3_z2, [0, 1, 0, 1])
    h = universal_extend(pc, beta)
    assert (h.map[pc.embedding] == beta.map).all()
    exts = extensions_agreeing(pc, beta)
    assert len(exts) == 1 and exts[0].same_map(h)


def test_universal_extension_needs_derived_target(z4_alt):
    pc = post_cover(z4_alt)
    beta = PolyadicHom.of(z4_alt, z4_alt, np.arange(4))
    with pytest.raises(PreconditionViolated):
        universal_extend(pc, beta)


def test_hom_verify_and_errors(z4_alt, der3_z2):
    assert hom_verify([0, 1, 0, 1], z4_alt, der3_z2)
    assert not hom_verify([0, 1, 1, 1], z4_alt, der3_z2)
    with pytest.raises(NotAHom):
        PolyadicHom.of(z4_alt, der3_z2, [0, 1, 1, 1])


def test_enumerate_homs_matches_oracle(z4_alt, der3_z2, der3_z2_b1):
    pairs = [(der3_z2, der3_z2), (z4_alt, der3_z2), (der3_z2_b1, z4_alt), (z4_alt, z4_alt)]
    for P, Q in pairs:
        E = enumerate_homs(P, Q)
        assert E.equal
        assert list(E.brute_force) == oracles.hom_maps(P.f, Q.f, P.size, Q.size, 3)
    E = enumerate_homs(der3_z2, der3_z2)
    assert E.brute_force == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_hom_decompose_factorization(z4_alt, der3_z2):
    psi = PolyadicHom.of(z4_alt, der3_z2, [1, 0, 1, 0])
    d = hom_decompose(psi)
    fac = d.factorization
    H = der3_z2.hg.base
    assert fac.a == 1
    assert (H.table[fac.phi.map, fac.a] == psi.map).all()
    assert fac.power_condition and fac.inner_a


def _s3_variants():
    S3 = symmetric_group(3)
    out = [derive(S3, 3)]
    for c in range(6):
        out.append(derive_theta(S3, Automorphism.inner(S3, c), S3.mul(c, c), 3))
    return out


def test_sign_convention_on_s3():
    """The x -> a x a^-1 form reproduces the brute-force hom set on every
    pair; the x -> a^-1 x a form fails on some pair."""
    Vs = _s3_variants()
    inv_failures = 0
    for P in Vs[:3]:
        for Q in Vs:
            E = enumerate_homs(P, Q)
            assert E.equal
            inv_failures += not E.equal_inv
    assert inv_failures > 0
