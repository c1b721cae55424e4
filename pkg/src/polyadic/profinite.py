"""Finite inverse systems of polyadic groups and their thread limits.

Indices of a system are 0..k-1 ordered by a finite partial order; a map
``maps[(i, j)]`` exists for every j <= i and sends stage i to stage j.
Threads are sorted lexicographically (index 0 most significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .congruence import Congruence, canonical_labels, enumerate_congruences, quotient
from .errors import (
    BudgetExceeded,
    ConditionViolated,
    EmptyLimit,
    IncompatibleSystem,
    InvalidParams,
    InvalidThread,
    NotAHom,
    PreconditionViolated,
    PolyadicError,
)
from .groups import (
    Automorphism,
    FiniteGroup,
    GroupHom,
    NormalSubgroup,
    _frozen,
    class_predicate,
    cyclic_group,
    enumerate_normal_subgroups,
    find_isomorphism,
    group_from_table,
    parse_class,
    quotient_group,
)
from .polyadic import (
    TABLE_LIMIT,
    PolyadicGroup,
    Verdict,
    derive,
    derive_theta,
    enumerate_subs,
    polyadic_product,
    sub_polyadic,
)
from .report import Report
from .structure import hom_verify, retract_at

PRODUCT_LIMIT = 10**6


# -- posets -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectedPoset:
    """``relation[j, i]`` is True when j <= i."""

    size: int
    relation: np.ndarray

    @classmethod
    def from_pairs(cls, size: int, pairs: Sequence[Sequence[int]]) -> DirectedPoset:
        """Reflexive-transitive closure of the given [lower, upper] pairs."""
        R = np.eye(size, dtype=bool)
        for lo, hi in pairs:
            R[lo, hi] = True
        for k in range(size):
            R |= R[:, k:k + 1] & R[k:k + 1, :]
        return cls(size, _frozen(R).astype(bool))

    @classmethod
    def chain(cls, size: int) -> DirectedPoset:
        return cls.from_pairs(size, [(k, k + 1) for k in range(size - 1)])

    def leq(self, j: int, i: int) -> bool:
        return bool(self.relation[j, i])

    def below(self, i: int) -> list[int]:
        return np.flatnonzero(self.relation[:, i]).tolist()

    def above(self, j: int) -> list[int]:
        return np.flatnonzero(self.relation[j, :]).tolist()

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All (i, j) with j <= i, i major."""
        return [(i, j) for i in range(self.size) for j in self.below(i)]

    def order_violation(self):
        R = self.relation
        for i in range(self.size):
            if not R[i, i]:
                return ("reflexive", i)
        for i, j in itertools.combinations(range(self.size), 2):
            if R[i, j] and R[j, i]:
                return ("antisymmetric", i, j)
        for i, j, k in itertools.product(range(self.size), repeat=3):
            if R[i, j] and R[j, k] and not R[i, k]:
                return ("transitive", i, j, k)
        return None

    def directed_violation(self):
        for i, j in itertools.combinations(range(self.size), 2):
            if not (self.relation[i] & self.relation[j]).any():
                return ("directed", i, j)
        return None

    def greatest(self) -> int | None:
        for i in range(self.size):
            if self.relation[:, i].all():
                return i
        return None

    def top_first(self) -> list[int]:
        """Indices sorted so that every index precedes everything below it."""
        return sorted(range(self.size), key=lambda i: (-int(self.relation[:, i].sum()), i))


# -- systems ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InverseSystem:
    poset: DirectedPoset
    stages: tuple
    maps: dict

    @classmethod
    def build(cls, poset: DirectedPoset, stages: Sequence[PolyadicGroup], maps: dict) -> InverseSystem:
        """Fill in identities and composites of the given maps."""
        full = {(int(i), int(j)): _frozen(m) for (i, j), m in maps.items()}
        for i in range(poset.size):
            full.setdefault((i, i), _frozen(np.arange(stages[i].size)))
        changed = True
        while changed:
            changed = False
            for (i, j) in list(full):
                for (j2, k) in list(full):
                    if j2 == j and (i, k) not in full:
                        full[(i, k)] = _frozen(full[(j, k)][full[(i, j)]])
                        changed = True
        return cls(poset, tuple(stages), full)

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def arity(self) -> int:
        return self.stages[0].arity

    def map(self, i: int, j: int) -> np.ndarray:
        return self.maps[(i, j)]

    def sizes(self) -> list[int]:
        return [S.size for S in self.stages]


def validate_system(S: InverseSystem, require_directed: bool = True) -> Verdict:
    v = S.poset.order_violation()
    if v:
        return Verdict(False, "partial_order", v)
    if require_directed:
        v = S.poset.directed_violation()
        if v:
            return Verdict(False, "directed", v)
    if any(P.arity != S.arity for P in S.stages):
        return Verdict(False, "arity", None)
    for i, j in S.poset.comparable_pairs():
        if (i, j) not in S.maps:
            return Verdict(False, "missing_map", (i, j))
    for (i, j) in S.maps:
        if not S.poset.leq(j, i):
            return Verdict(False, "map_outside_order", (i, j))
    for i in range(S.size):
        bad = np.flatnonzero(S.maps[(i, i)] != np.arange(S.stages[i].size))
        if bad.size:
            return Verdict(False, "identity", (i, i, int(bad[0])))
    for i, j in S.poset.comparable_pairs():
        hv = hom_verify(S.maps[(i, j)], S.stages[i], S.stages[j])
        if not hv:
            return Verdict(False, "homomorphism", (i, j, hv.witness))
    for i in range(S.size):
        for j in S.poset.below(i):
            for k in S.poset.below(j):
                lhs = S.maps[(j, k)][S.maps[(i, j)]]
                bad = np.flatnonzero(lhs != S.maps[(i, k)])
                if bad.size:
                    return Verdict(False, "composition", (i, j, k, int(bad[0])))
    return Verdict(True)


# -- limits -------------------------------------------------------------------

def _check_product_budget(S: InverseSystem):
    total = int(np.prod([float(s) for s in S.sizes()]))
    if total > kernels.budget(PRODUCT_LIMIT):
        raise BudgetExceeded(f"product of stage sizes {total} exceeds the budget")


def enumerate_threads(S: InverseSystem) -> np.ndarray:
    """Depth-first over indices, top-most first, fixing every coordinate
    already forced by an assigned index above it."""
    _check_product_budget(S)
    order = S.poset.top_first()
    k = S.size
    out = []
    x = [-1] * k

    def consistent(i):
        for j in range(k):
            if x[j] < 0 or j == i:
                continue
            if S.poset.leq(j, i) and S.maps[(i, j)][x[i]] != x[j]:
                return False
            if S.poset.leq(i, j) and S.maps[(j, i)][x[j]] != x[i]:
                return False
        return True

    def rec(depth):
        if depth == k:
            out.append(tuple(x))
            return
        i = order[depth]
        forced = [int(S.maps[(s, i)][x[s]]) for s in S.poset.above(i) if s != i and x[s] >= 0]
        cands = [forced[0]] if forced else range(S.stages[i].size)
        for c in cands:
            x[i] = c
            if consistent(i):
                rec(depth + 1)
        x[i] = -1

    rec(0)
    out.sort()
    return np.array(out, dtype=np.int64).reshape(len(out), k)


@dataclass(frozen=True, eq=False)
class ThreadLimit:
    system: InverseSystem
    threads: np.ndarray
    polyadic: PolyadicGroup

    @property
    def size(self) -> int:
        return len(self.threads)

    def index_of(self, thread) -> int:
        t = tuple(int(v) for v in thread)
        idx = self._lookup.get(t)
        if idx is None:
            raise InvalidThread(f"{list(t)} is not a thread")
        return idx

    @property
    def _lookup(self) -> dict:
        d = self.__dict__.get("_lookup_cache")
        if d is None:
            d = {tuple(r): k for k, r in enumerate(self.threads.tolist())}
            object.__setattr__(self, "_lookup_cache", d)
        return d

    def projection(self, i: int) -> np.ndarray:
        return self.threads[:, i].copy()


def _codes(threads: np.ndarray, sizes: Sequence[int]) -> np.ndarray:
    code = np.zeros(threads.shape[:-1], dtype=np.int64)
    for k, s in enumerate(sizes):
        code = code * s + threads[..., k]
    return code


def _componentwise_table(threads: np.ndarray, tables: Sequence[np.ndarray], sizes, n: int) -> np.ndarray:
    """Operation table on threads; raises if the thread set is not closed."""
    T = len(threads)
    if T ** n > TABLE_LIMIT:
        raise BudgetExceeded(f"{T}^{n} cells exceed the table limit")
    code = np.zeros((T,) * n, dtype=np.int64)
    for k, (tab, s) in enumerate(zip(tables, sizes)):
        col = threads[:, k]
        code = code * s + tab[np.ix_(*([col] * n))]
    keys = _codes(threads, sizes)
    pos = np.searchsorted(keys, code)
    pos = np.minimum(pos, T - 1)
    if (keys[pos] != code).any():
        bad = np.argwhere(keys[pos] != code)[0]
        raise PolyadicError(f"thread set not closed under the operation at {bad.tolist()}")
    return pos


def inverse_limit(S: InverseSystem) -> ThreadLimit:
    threads = enumerate_threads(S)
    if len(threads) == 0:
        raise EmptyLimit("the system has no threads")
    table = _componentwise_table(threads, [P.table for P in S.stages], S.sizes(), S.arity)
    P = PolyadicGroup.from_table(table, S.arity, name="lim")
    return ThreadLimit(S, threads, P)


def _all_sequences(S: InverseSystem) -> np.ndarray:
    _check_product_budget(S)
    grids = np.indices(S.sizes()).reshape(S.size, -1).T
    return grids


def y_set(S: InverseSystem, i: int, seqs: np.ndarray | None = None) -> np.ndarray:
    """Sequences x with phi_jk(x_j) = x_k whenever k <= j <= i."""
    if seqs is None:
        seqs = _all_sequences(S)
    mask = np.ones(len(seqs), dtype=bool)
    for j in S.poset.below(i):
        for k in S.poset.below(j):
            mask &= S.maps[(j, k)][seqs[:, j]] == seqs[:, k]
    return seqs[mask]


def y_sets(S: InverseSystem, i: int) -> np.ndarray:
    Y = y_set(S, i)
    if len(Y) == 0:
        raise EmptyLimit(f"Y_{i} is empty")
    return Y


def y_set_report(S: InverseSystem, L: ThreadLimit | None = None) -> Report:
    """Nonemptiness (with the explicit witness sequence), monotonicity and
    the intersection identity for all Y_i."""
    L = L or inverse_limit(S)
    seqs = _all_sequences(S)
    sizes = S.sizes()
    rep = Report("y_sets")
    Ys = {}
    for i in range(S.size):
        Y = y_set(S, i, seqs)
        Ys[i] = set(_codes(Y, sizes).tolist())
        wit = np.zeros(S.size, dtype=np.int64)
        for j in S.poset.below(i):
            wit[j] = S.maps[(i, j)][0]
        rep.check(f"Y_{i}_nonempty", len(Y) > 0, size=len(Y))
        rep.check(f"Y_{i}_contains_pushed_sequence", int(_codes(wit, sizes)) in Ys[i], wit.tolist())
    for i in range(S.size):
        for s in S.poset.above(i):
            if s != i:
                rep.check(f"Y_{s}_subset_Y_{i}", Ys[s] <= Ys[i])
    inter = set.intersection(*Ys.values())
    rep.check("intersection_equals_threads", inter == set(_codes(L.threads, sizes).tolist()),
              size=len(inter))
    return rep


# -- retracts and der of the limit -----------------------------------------------

def _group_limit(threads, groups: Sequence[FiniteGroup], sizes) -> FiniteGroup:
    table = _componentwise_table(threads, [G.table for G in groups], sizes, 2)
    return group_from_table(table, name="lim")


def limit_retract(S: InverseSystem, v, L: ThreadLimit | None = None) -> Report:
    L = L or inverse_limit(S)
    vi = L.index_of(v)
    v = L.threads[vi]
    rep = Report("limit_retract", info={"thread": v.tolist()})
    rets = [retract_at(S.stages[i], int(v[i])).group for i in range(S.size)]
    ok = True
    for i, j in S.poset.comparable_pairs():
        w = None
        try:
            GroupHom.of(rets[i], rets[j], S.maps[(i, j)])
        except NotAHom as exc:
            ok, w = False, (i, j, exc.witness)
            break
    rep.check("stage_maps_are_retract_homs", ok, w)
    lim_group = _group_limit(L.threads, rets, S.sizes())
    ret_v = retract_at(L.polyadic, vi).group
    same = bool((lim_group.table == ret_v.table).all())
    rep.check("limit_of_retracts_equals_retract_of_limit", same)
    if not same:
        rep.check("isomorphism_found", find_isomorphism(lim_group, ret_v) is not None)
    top = S.poset.greatest()
    if top is not None:
        proj = GroupHom(ret_v, rets[top], _frozen(L.projection(top)))
        ok = True
        try:
            GroupHom.of(ret_v, rets[top], proj.map)
        except NotAHom:
            ok = False
        rep.check("projection_to_top_is_isomorphism", ok and proj.is_isomorphism())
    rep.info["retract_order"] = ret_v.order
    return rep


def der_limit_commute(S: InverseSystem, L: ThreadLimit | None = None) -> Report:
    """Polyadic limit versus der of the group limit with componentwise
    theta and b."""
    if any(P.hg is None for P in S.stages):
        raise IncompatibleSystem("every stage needs a Hosszu-Gluskin triple")
    hgs = [P.hg for P in S.stages]
    for i, j in S.poset.comparable_pairs():
        phi = S.maps[(i, j)]
        try:
            GroupHom.of(hgs[i].base, hgs[j].base, phi)
        except NotAHom as exc:
            raise IncompatibleSystem(f"map {i}->{j} is not a group homomorphism at {exc.witness}")
        if not (phi[hgs[i].theta.map] == hgs[j].theta.map[phi]).all():
            raise IncompatibleSystem(f"map {i}->{j} does not commute with theta")
        if phi[hgs[i].b] != hgs[j].b:
            raise IncompatibleSystem(f"map {i}->{j} does not send b to b")
    L = L or inverse_limit(S)
    rep = Report("der_limit_commute", info={"threads": L.size})
    G = _group_limit(L.threads, [h.base for h in hgs], S.sizes())
    th = np.stack([hgs[i].theta.map[L.threads[:, i]] for i in range(S.size)], axis=1)
    theta_hat = np.array([L.index_of(t) for t in th])
    b_hat = L.index_of([h.b for h in hgs])
    try:
        D = derive_theta(G, theta_hat, b_hat, S.arity, name="der(lim)")
    except ConditionViolated as exc:
        rep.check("theta_hat_b_hat_conditions", False, exc.witness, condition=exc.condition)
        return rep
    rep.check("theta_hat_b_hat_conditions", True)
    diff = np.argwhere(D.table != L.polyadic.table)
    rep.check("elementwise_equal", diff.size == 0, diff[0].tolist() if diff.size else None)
    return rep


# -- theta-invariant cores and reconstruction ------------------------------------

def _inner_power_element(G: FiniteGroup, power: np.ndarray) -> int | None:
    for b in range(G.order):
        if all(G.conj(b, x) == power[x] for x in range(G.order)):
            return b
    return None


def theta_core(G: FiniteGroup, theta: Automorphism, L, n: int) -> NormalSubgroup:
    """K = intersection of theta^i(L), i = 0..n-1."""
    members = L.members if isinstance(L, NormalSubgroup) else tuple(sorted(set(L)))
    if not (G.is_subgroup(members) and G.is_normal_subset(members)):
        raise PreconditionViolated(f"{list(members)} is not a normal subgroup")
    if _inner_power_element(G, theta.power(n - 1)) is None:
        raise PreconditionViolated(f"theta^{n - 1} is not inner")
    K = set(members)
    for i in range(1, n):
        K &= set(theta.power(i)[list(members)].tolist())
    K = tuple(sorted(K))
    if not (G.is_subgroup(K) and G.is_normal_subset(K)):
        raise PreconditionViolated("core is not normal")
    if not set(theta.map[list(K)].tolist()) <= set(K) or not set(K) <= set(members):
        raise PreconditionViolated("core is not theta-invariant inside L")
    return NormalSubgroup(G, K)


def reconstruct_from_quotients(P: PolyadicGroup) -> Report:
    hg = P.hg_triple
    G, theta, b, n = hg.base, hg.theta, hg.b, P.arity
    normals = enumerate_normal_subgroups(G)
    inv = [N for N in normals if set(theta.map[list(N.members)].tolist()) == set(N.members)]
    rep = Report("reconstruct", info={"normal_subgroups": len(normals), "theta_invariant": len(inv)})
    stages, projs = [], []
    for N in inv:
        Q, proj = quotient_group(G, N)
        theta_K = np.zeros(Q.order, dtype=np.int64)
        theta_K[proj.map] = proj.map[theta.map]
        stages.append(derive_theta(Q, theta_K, int(proj.map[b]), n, name=f"der(G/K{N.order})"))
        projs.append(proj.map)
    sets = [set(N.members) for N in inv]
    pairs = [(j, i) for i in range(len(inv)) for j in range(len(inv)) if i != j and sets[i] <= sets[j]]
    poset = DirectedPoset.from_pairs(len(inv), pairs)
    maps = {}
    for j, i in pairs:
        m = np.zeros(stages[i].size, dtype=np.int64)
        m[projs[i]] = projs[j]
        maps[(i, j)] = m
    S = InverseSystem.build(poset, stages, maps)
    v = validate_system(S)
    rep.check("quotient_system_valid", bool(v), v.witness)
    if not v:
        return rep
    L = inverse_limit(S)
    rep.info["threads"] = L.size
    emb = np.array([L.index_of([int(p[x]) for p in projs]) for x in range(G.order)])
    rep.check("limit_bijective_with_P", len(set(emb.tolist())) == L.size == P.size)
    hv = hom_verify(emb, P, L.polyadic)
    rep.check("limit_isomorphic_to_P", bool(hv), hv.witness)
    cof = []
    for N in normals:
        K = theta_core(G, theta, N, n)
        cof.append(set(K.members) in sets and set(K.members) <= set(N.members))
        if not cof[-1]:
            rep.check("cofinality", False, list(N.members))
            break
    else:
        rep.check("cofinality", True, checked=len(cof))
    return rep


# -- Pol_n(X) -------------------------------------------------------------------

def poln_membership(X, P: PolyadicGroup) -> bool:
    cls = parse_class(X) if isinstance(X, str) else X
    return class_predicate(cls, retract_at(P, 0).group)


def poln_closure_suite(X, samples: Sequence[PolyadicGroup], product_limit: int = 64) -> Report:
    cls = parse_class(X) if isinstance(X, str) else X
    rep = Report("poln_closure", info={"class": cls.name, "samples": len(samples)})
    members = [P for P in samples if poln_membership(cls, P)]
    rep.info["members"] = len(members)
    for k, P in enumerate(members):
        bad = None
        for carrier in enumerate_subs(P):
            sub, _ = sub_polyadic(P, carrier)
            if not poln_membership(cls, sub):
                bad = list(carrier)
                break
        rep.check(f"subs[{k}]", bad is None, bad)
        bad = None
        for C in enumerate_congruences(P):
            if not poln_membership(cls, quotient(P, C).quotient):
                bad = C.blocks
                break
        rep.check(f"quotients[{k}]", bad is None, bad)
    for a, c in itertools.combinations_with_replacement(range(len(members)), 2):
        A, B = members[a], members[c]
        if A.arity != B.arity or A.size * B.size > product_limit:
            continue
        rep.check(f"product[{a},{c}]", poln_membership(cls, polyadic_product([A, B])))
    return rep


def stage_kernel(L: ThreadLimit, i: int) -> Congruence:
    return Congruence(L.polyadic, _frozen(canonical_labels(L.threads[:, i])))


def _quotient_system(P: PolyadicGroup, congs: Sequence[Congruence]) -> tuple[InverseSystem, np.ndarray]:
    """System of quotients P/R ordered by reverse refinement, and the map
    from P to its thread set."""
    stages = [quotient(P, C).quotient for C in congs]
    pairs, maps = [], {}
    for i, Ci in enumerate(congs):
        for j, Cj in enumerate(congs):
            if i != j and Ci.refines(Cj):
                pairs.append((j, i))
                m = np.zeros(Ci.num_blocks, dtype=np.int64)
                m[Ci.labels] = Cj.labels
                maps[(i, j)] = m
    S = InverseSystem.build(DirectedPoset.from_pairs(len(congs), pairs), stages, maps)
    return S, np.stack([C.labels for C in congs], axis=1)


def pro_x_check(S: InverseSystem, X) -> Report:
    cls = parse_class(X) if isinstance(X, str) else X
    L = inverse_limit(S)
    rep = Report("pro_x", info={"class": cls.name, "threads": L.size,
                                "open_congruences": "stage kernels x ~ y iff x_i = y_i"})
    stages_in = [poln_membership(cls, P) for P in S.stages]
    rep.info["stages_in_class"] = stages_in
    bad = None
    for i in range(S.size):
        C = stage_kernel(L, i)
        if not poln_membership(cls, quotient(L.polyadic, C).quotient):
            bad = {"stage": i, "blocks": C.blocks}
            break
    rep.check("forward_stage_kernel_quotients_in_class", bad is None, bad)
    if L.size <= kernels.budget(8):
        congs = enumerate_congruences(L.polyadic)
    else:
        congs = _meet_closure([stage_kernel(L, i) for i in range(S.size)])
    quots_in = all(poln_membership(cls, quotient(L.polyadic, C).quotient) for C in congs)
    rep.info["all_congruence_quotients_in_class"] = quots_in
    if quots_in:
        Q, labels = _quotient_system(L.polyadic, congs)
        v = validate_system(Q)
        ok = bool(v)
        if ok:
            QL = inverse_limit(Q)
            emb = np.array([QL.index_of(row) for row in labels])
            ok = len(set(emb.tolist())) == QL.size == L.size and bool(hom_verify(emb, L.polyadic, QL.polyadic))
        rep.check("converse_limit_of_class_quotients", ok, None, quotients=len(congs))
    return rep


def _meet_closure(congs: Sequence[Congruence]) -> list[Congruence]:
    found = {C.key(): C for C in congs}
    queue = list(found.values())
    while queue:
        C = queue.pop()
        for D in list(found.values()):
            M = C.meet(D)
            if M.key() not in found:
                found[M.key()] = M
                queue.append(M)
    return sorted(found.values(), key=lambda C: (-C.num_blocks, C.key()))


# -- towers -------------------------------------------------------------------

def cyclic_pk(p: int, depth: int, theta_sign: int = 1, b: int = 0, n: int = 3) -> InverseSystem:
    """Stages der_{theta,b}(Z/p^k) for k = 1..depth at indices 0..depth-1,
    with theta = multiplication by the sign and reduction maps."""
    if p < 2 or depth < 1 or theta_sign not in (1, -1) or n < 2:
        raise InvalidParams(f"bad tower parameters p={p} depth={depth} sign={theta_sign} n={n}")
    stages = []
    for k in range(1, depth + 1):
        m = p ** k
        G = cyclic_group(m)
        theta = (theta_sign * np.arange(m)) % m
        try:
            stages.append(derive_theta(G, theta, b % m, n, name=f"Z{m}"))
        except ConditionViolated as exc:
            raise InvalidParams(f"stage Z/{m}: {exc}") from exc
    maps = {(i + 1, i): np.arange(p ** (i + 2)) % p ** (i + 1) for i in range(depth - 1)}
    S = InverseSystem.build(DirectedPoset.chain(depth), stages, maps)
    v = validate_system(S)
    if not v:
        raise InvalidParams(f"tower is not a valid system: {v.axiom} at {v.witness}")
    return S


def derived_chain(groups: Sequence[FiniteGroup], homs: Sequence, n: int) -> InverseSystem:
    """Stages der^n(groups[k]); ``homs[k]`` maps groups[k+1] onto groups[k]."""
    if len(homs) != len(groups) - 1:
        raise InvalidParams("need one map between consecutive groups")
    stages = [derive(G, n, name=G.name) for G in groups]
    maps = {}
    for k, h in enumerate(homs):
        m = h.map if isinstance(h, GroupHom) else np.asarray(h, dtype=np.int64)
        maps[(k + 1, k)] = m
    S = InverseSystem.build(DirectedPoset.chain(len(groups)), stages, maps)
    v = validate_system(S)
    if not v:
        raise InvalidParams(f"chain is not a valid system: {v.axiom} at {v.witness}")
    return S


def build_tower(kind: str, **params) -> InverseSystem:
    if kind == "cyclic_pk":
        return cyclic_pk(**params)
    if kind == "derived_chain":
        return derived_chain(**params)
    raise InvalidParams(f"unknown tower kind {kind!r}")
