"""Retracts, Hosszu-Gluskin decompositions, the Post cover and the
factorization of polyadic homomorphisms as psi = R(a) phi."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    ExtensionNotFound,
    NotAHom,
    NotFound,
    PreconditionViolated,
)
from .groups import (
    Automorphism,
    FiniteGroup,
    GroupHom,
    NormalSubgroup,
    _frozen,
    extend_hom,
    find_isomorphism,
    group_from_table,
    homomorphisms,
    is_cyclic,
    quotient_group,
    subgroup_as_group,
)
from .polyadic import (
    PolyadicGroup,
    Verdict,
    _check_hg,
    derive_theta,
    retract_table,
    skew,
)


# -- retracts -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Retract:
    parent: PolyadicGroup
    basepoint: int
    group: FiniteGroup


def retract_inverse_formula(P: PolyadicGroup, a: int) -> np.ndarray:
    """Inverse in ret_a as f(skew a, x, ..., x, skew x, skew a) (n >= 3)."""
    n = P.arity
    sk = skew(P).map
    abar = int(sk[a])
    xs = np.arange(P.size)
    args = [np.full(P.size, abar)] + [xs] * (n - 3) + [sk[xs], np.full(P.size, abar)]
    return P.table[tuple(args)]


def retract_at(P: PolyadicGroup, a: int) -> Retract:
    G = group_from_table(retract_table(P, a), name=f"ret_{a}")
    abar = int(skew(P).map[a])
    if G.identity != abar:
        raise ConstructionFailed(f"retract identity {G.identity} differs from skew({a}) = {abar}")
    if P.arity >= 3:
        formula = retract_inverse_formula(P, a)
        if not (formula == G.inverse).all():
            x = int(np.flatnonzero(formula != G.inverse)[0])
            raise ConstructionFailed(f"inverse formula disagrees with the table at x={x}")
    return Retract(P, a, G)


def retracts_isomorphic(P: PolyadicGroup, a: int, a2: int) -> GroupHom:
    R1, R2 = retract_at(P, a).group, retract_at(P, a2).group
    if a == a2:
        return GroupHom(R1, R2, _frozen(np.arange(P.size)))
    iso = find_isomorphism(R1, R2)
    if iso is None:
        raise NotFound(f"no isomorphism ret_{a} -> ret_{a2}")
    return iso


# -- Hosszu-Gluskin -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HGDecomposition:
    retract: Retract
    theta: Automorphism
    b: int

    @property
    def arity(self) -> int:
        return self.retract.parent.arity


def hg_decompose(P: PolyadicGroup, v: int) -> HGDecomposition:
    """Decomposition over ret_v with theta(x) = f(skew v, x, v, ..., v)
    and b = f(skew v, ..., skew v); verified before it is returned."""
    n = P.arity
    R = retract_at(P, v)
    G = R.group
    if n == 2:
        theta, b = Automorphism.identity(G), G.identity
    else:
        vbar = G.identity
        T = P.table
        theta = Automorphism.of(G, T[(vbar, slice(None)) + (v,) * (n - 2)])
        b = int(T[(vbar,) * n])
    _check_hg(G, theta, b, n)
    D = HGDecomposition(R, theta, b)
    if not hg_reconstruct(D).same_operation(P):
        raise ConstructionFailed(f"reconstruction at basepoint {v} does not reproduce f")
    return D


def hg_reconstruct(D: HGDecomposition) -> PolyadicGroup:
    return derive_theta(D.retract.group, D.theta, D.b, D.arity)


# -- Post cover ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PostCover:
    parent: PolyadicGroup
    cover: FiniteGroup
    embedding: np.ndarray
    kernel: NormalSubgroup
    checks: dict = field(default_factory=dict)


def _cover_table(G: FiniteGroup, theta: Automorphism, b: int, n: int) -> np.ndarray:
    """Pairs (g, k) ~ g t^k, k in 0..n-2, where t g t^-1 = theta(g) and
    t^(n-1) = b.  Index of (g, k) is k * m + g."""
    m, N = G.order, n - 1
    powers = np.stack([theta.power(k) for k in range(N)])
    table = np.zeros((N * m, N * m), dtype=np.int64)
    for k in range(N):
        for l in range(N):
            prod = G.table[np.arange(m)[:, None], powers[k][None, :]]
            if k + l >= N:
                prod = G.table[prod, b]
            table[k * m:(k + 1) * m, l * m:(l + 1) * m] = ((k + l) % N) * m + prod
    return table


def post_cover(P: PolyadicGroup) -> PostCover:
    n, m = P.arity, P.size
    hg = P.hg_triple
    G = hg.base
    cover = group_from_table(_cover_table(G, hg.theta, hg.b, n), name=f"cover({P.name or '?'})")
    if n >= 3:
        emb = m + np.arange(m)
    else:
        emb = G.table[np.arange(m), hg.b]
    K = NormalSubgroup.of(cover, range(m))
    checks = post_cover_checks(P, cover, emb, K)
    if not all(checks.values()):
        bad = [k for k, ok in checks.items() if not ok]
        raise ConstructionFailed(f"Post cover properties fail: {bad}")
    return PostCover(P, cover, _frozen(emb), K, checks)


def post_cover_checks(P: PolyadicGroup, cover: FiniteGroup, emb, K: NormalSubgroup) -> dict:
    """The five defining properties, each as a separate boolean."""
    n, m = P.arity, P.size
    emb = np.asarray(emb)
    image = set(emb.tolist())
    out = {}
    coset = set(cover.table[emb[0], list(K.members)].tolist())
    out["coset_of_normal_subgroup"] = (len(image) == m and image == coset
                                       and cover.is_normal_subset(K.members))
    ret = retract_at(P, 0).group
    out["kernel_isomorphic_to_retract"] = find_isomorphism(subgroup_as_group(cover, K.members), ret) is not None
    Q, _ = quotient_group(cover, K)
    out["quotient_cyclic_of_order_n_minus_1"] = Q.order == n - 1 and is_cyclic(Q)
    prod = emb.reshape((m,) + (1,) * (n - 1))
    for k in range(1, n):
        shape = (1,) * k + (m,) + (1,) * (n - 1 - k)
        prod = cover.table[prod, emb.reshape(shape)]
    out["operation_is_cover_product"] = bool((prod == emb[P.table]).all())
    out["generated_by_image"] = len(cover.subgroup(image)) == cover.order
    out["order_is_(n-1)m"] = cover.order == (n - 1) * m
    return out


def universal_extend(cover: PostCover, beta: PolyadicHom) -> GroupHom:
    """The homomorphism h: G* -> H with h restricted to G equal to beta,
    for beta a polyadic hom into a derived polyadic group der^n(H)."""
    Q = beta.target
    if Q.hg is None or not Q.hg.theta.is_identity() or Q.hg.b != Q.hg.base.identity:
        raise PreconditionViolated("target of beta must be der^n(H)")
    H = Q.hg.base
    gens = cover.embedding.tolist()
    phi = extend_hom(cover.cover, H, gens, beta.map)
    if phi is None:
        raise ExtensionNotFound("beta does not extend to a homomorphism of the cover")
    return GroupHom(cover.cover, H, _frozen(phi))


def extensions_agreeing(cover: PostCover, beta: PolyadicHom) -> list[GroupHom]:
    """Every homomorphism G* -> H whose restriction to G is beta (brute
    force over all homomorphisms, for the uniqueness check)."""
    H = beta.target.hg.base
    emb = cover.embedding
    return [h for h in homomorphisms(cover.cover, H) if (h.map[emb] == beta.map).all()]


# -- polyadic homomorphisms ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomFactorization:
    a: int
    phi: GroupHom
    power_condition: bool        # h(a, ..., a) = phi(b) * a
    inner_a: bool                # phi theta = I_a eta phi,      I_a(x) = a x a^-1
    inner_a_inverse: bool        # phi theta = I(a^-1) eta phi,  x -> a^-1 x a

    def to_dict(self):
        return {"a": self.a, "phi": self.phi.map.tolist(), "power_condition": self.power_condition,
                "inner_a": self.inner_a, "inner_a_inverse": self.inner_a_inverse}


@dataclass(frozen=True, eq=False)
class PolyadicHom:
    source: PolyadicGroup
    target: PolyadicGroup
    map: np.ndarray
    factorization: HomFactorization | None = None

    @classmethod
    def of(cls, source: PolyadicGroup, target: PolyadicGroup, fmap) -> PolyadicHom:
        v = hom_verify(fmap, source, target)
        if not v:
            raise NotAHom(f"not a polyadic homomorphism: fails at {v.witness}", v.witness)
        return cls(source, target, _frozen(fmap))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def compose(self, inner: PolyadicHom) -> PolyadicHom:
        """self after inner."""
        return PolyadicHom(inner.source, self.target, _frozen(self.map[inner.map]))


def hom_verify(fmap, P: PolyadicGroup, Q: PolyadicGroup) -> Verdict:
    f = np.asarray(fmap, dtype=np.int64)
    if P.arity != Q.arity or f.shape != (P.size,) or f.min() < 0 or f.max() >= Q.size:
        return Verdict(False, "shape", None)
    w = kernels.hom_violation(P.flat, Q.flat, f, P.size, Q.size, P.arity)
    if w is not None:
        return Verdict(False, "homomorphism", w)
    return Verdict(True)


def _conditions(P: PolyadicGroup, Q: PolyadicGroup, a: int, phi: np.ndarray):
    src, tgt = P.hg_triple, Q.hg_triple
    H = tgt.base
    ainv = H.inv(a)
    power = Q.f(*([a] * Q.arity)) == H.mul(int(phi[src.b]), a)
    lhs = phi[src.theta.map]
    eta_phi = tgt.theta.map[phi]
    with_a = H.table[H.table[a, eta_phi], ainv]
    with_ainv = H.table[H.table[ainv, eta_phi], a]
    return bool(power), bool((lhs == with_a).all()), bool((lhs == with_ainv).all())


def hom_decompose(psi: PolyadicHom) -> PolyadicHom:
    """Attach the factorization psi = R(a) phi over the designated triples
    (a = psi(1), phi(x) = psi(x) a^-1) and record which published form of
    the compatibility condition holds."""
    P, Q = psi.source, psi.target
    v = hom_verify(psi.map, P, Q)
    if not v:
        raise NotAHom(f"not a polyadic homomorphism: fails at {v.witness}", v.witness)
    G, H = P.hg_triple.base, Q.hg_triple.base
    a = int(psi.map[G.identity])
    phi_map = H.table[psi.map, H.inv(a)]
    phi = GroupHom.of(G, H, phi_map)
    if not (H.table[phi.map, a] == psi.map).all():
        raise ConstructionFailed("psi != R(a) phi")
    fac = HomFactorization(a, phi, *_conditions(P, Q, a, phi.map))
    return PolyadicHom(P, Q, psi.map, fac)


@dataclass(frozen=True)
class HomEnumeration:
    brute_force: tuple          # (A) every map filtered by hom_verify
    by_factorization: tuple     # (B) R(a) phi with the I_a form
    by_factorization_inv: tuple  # (B') R(a) phi with the I(a^-1) form

    @property
    def equal(self) -> bool:
        return self.brute_force == self.by_factorization

    @property
    def equal_inv(self) -> bool:
        return self.brute_force == self.by_factorization_inv

    def homs(self, P, Q) -> list[PolyadicHom]:
        return [PolyadicHom(P, Q, _frozen(m)) for m in self.brute_force]

    def to_dict(self):
        return {"count_brute_force": len(self.brute_force),
                "count_I_a": len(self.by_factorization),
                "count_I_a_inverse": len(self.by_factorization_inv),
                "I_a_matches_brute_force": self.equal,
                "I_a_inverse_matches_brute_force": self.equal_inv}


HOM_SIZE_LIMIT = 8


def enumerate_homs(P: PolyadicGroup, Q: PolyadicGroup) -> HomEnumeration:
    """(A) all |Q|^|P| maps filtered exhaustively, against (B) all pairs
    (a, phi) satisfying the factorization conditions, mapped to R(a) phi."""
    limit = kernels.budget(HOM_SIZE_LIMIT ** HOM_SIZE_LIMIT)
    if Q.size ** P.size > limit:
        raise BudgetExceeded(f"{Q.size}^{P.size} maps exceed the enumeration budget")
    if P.arity != Q.arity:
        return HomEnumeration((), (), ())
    brute = kernels.enumerate_hom_maps(P.flat, Q.flat, P.size, Q.size, P.arity)
    A = tuple(sorted(tuple(int(v) for v in row) for row in brute))
    G, H = P.hg_triple.base, Q.hg_triple.base
    B, B_inv = [], []
    for phi in homomorphisms(G, H):
        for a in range(H.order):
            power, with_a, with_ainv = _conditions(P, Q, a, phi.map)
            image = tuple(int(v) for v in H.table[phi.map, a])
            if power and with_a:
                B.append(image)
            if power and with_ainv:
                B_inv.append(image)
    return HomEnumeration(A, tuple(sorted(B)), tuple(sorted(B_inv)))
