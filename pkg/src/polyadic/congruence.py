"""Congruences of polyadic groups and their quotients.

A congruence is stored as a canonical block-label array: blocks are
numbered in order of their least element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    ConditionViolated,
    IllDefined,
    NotACongruence,
    NotAHom,
    NotASubgroup,
    NotInjective,
)
from .groups import (
    GroupHom,
    _frozen,
    direct_product,
    quotient_group,
)
from .polyadic import PolyadicGroup, Verdict, derive_theta
from .report import Report
from .structure import PolyadicHom, hom_verify, retract_at


def canonical_labels(labels) -> np.ndarray:
    labels = np.asarray(labels)
    out = np.full(labels.shape, -1, dtype=np.int64)
    seen: dict = {}
    for i, v in enumerate(labels.tolist()):
        out[i] = seen.setdefault(v, len(seen))
    return out


@dataclass(frozen=True, eq=False)
class Congruence:
    parent: PolyadicGroup
    labels: np.ndarray

    @classmethod
    def from_partition(cls, P: PolyadicGroup, blocks: Sequence[Sequence[int]]) -> Congruence:
        labels = np.full(P.size, -1, dtype=np.int64)
        for k, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < P.size or labels[x] >= 0:
                    raise ValueError(f"partition repeats or leaves the carrier at {x}")
                labels[x] = k
        if (labels < 0).any():
            raise ValueError("partition does not cover the carrier")
        return cls(P, _frozen(canonical_labels(labels)))

    @classmethod
    def equality(cls, P: PolyadicGroup) -> Congruence:
        return cls(P, _frozen(np.arange(P.size)))

    @classmethod
    def full(cls, P: PolyadicGroup) -> Congruence:
        return cls(P, _frozen(np.zeros(P.size)))

    @property
    def num_blocks(self) -> int:
        return int(self.labels.max()) + 1

    @property
    def blocks(self) -> list[list[int]]:
        return [np.flatnonzero(self.labels == k).tolist() for k in range(self.num_blocks)]

    @property
    def representatives(self) -> np.ndarray:
        return np.array([b[0] for b in self.blocks], dtype=np.int64)

    def key(self) -> tuple:
        return tuple(self.labels.tolist())

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def meet(self, other: Congruence) -> Congruence:
        pairs = self.labels * (other.labels.max() + 1) + other.labels
        return Congruence(self.parent, _frozen(canonical_labels(pairs)))

    def refines(self, other: Congruence) -> bool:
        """Every block of self lies inside a block of other."""
        return all(len(set(other.labels[b].tolist())) == 1 for b in self.blocks)

    def __repr__(self):
        return f"Congruence({self.blocks})"


def _labels_of(P, partition) -> np.ndarray:
    if isinstance(partition, Congruence):
        return partition.labels
    arr = np.asarray(partition, dtype=object)
    if arr.ndim == 1 and len(arr) == P.size and all(isinstance(v, (int, np.integer)) for v in arr):
        return canonical_labels(np.asarray(partition, dtype=np.int64))
    return Congruence.from_partition(P, partition).labels


def is_congruence(P: PolyadicGroup, partition) -> Verdict:
    """Exhaustive compatibility: every n-tuple lands in the same block as
    the tuple of its block representatives.  The witness is the first
    offending tuple with its representative tuple."""
    lab = _labels_of(P, partition)
    m, n, T = P.size, P.arity, P.table
    reps = np.array([int(np.flatnonzero(lab == k)[0]) for k in range(int(lab.max()) + 1)])
    coords = np.indices((m,) * n)
    rep_coords = tuple(reps[lab[c]] for c in coords)
    bad = np.argwhere(lab[T] != lab[T[rep_coords]])
    if bad.size:
        x = tuple(int(v) for v in bad[0])
        y = tuple(int(reps[lab[v]]) for v in x)
        return Verdict(False, "compatibility", (x, y))
    return Verdict(True)


def congruence_closure(P: PolyadicGroup, pairs=(), labels=None) -> Congruence:
    """Least congruence containing the given pairs (and the given
    partition): substitute related elements one coordinate at a time until
    nothing new is merged."""
    m, n, T = P.size, P.arity, P.table
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    if labels is not None:
        first = {}
        for x, k in enumerate(np.asarray(labels).tolist()):
            union(first.setdefault(k, x), x)
    for x, y in pairs:
        union(int(x), int(y))
    changed = True
    while changed:
        changed = False
        roots = np.array([find(x) for x in range(m)])
        for axis in range(n):
            for x in range(m):
                r = int(roots[x])
                if r == x:
                    continue
                A = np.take(T, x, axis=axis).reshape(-1)
                B = np.take(T, r, axis=axis).reshape(-1)
                diff = roots[A] != roots[B]
                for a, c in zip(A[diff].tolist(), B[diff].tolist()):
                    if union(a, c):
                        changed = True
                if changed:
                    roots = np.array([find(z) for z in range(m)])
    return Congruence(P, _frozen(canonical_labels([find(x) for x in range(m)])))


def _set_partitions(m: int):
    """Restricted growth strings of length m."""
    def rec(prefix, top):
        if len(prefix) == m:
            yield list(prefix)
            return
        for k in range(top + 2):
            yield from rec(prefix + [k], max(top, k))
    yield from rec([0], 0)


CONGRUENCE_SIZE_LIMIT = 8


def enumerate_congruences(P: PolyadicGroup, method: str = "auto") -> list[Congruence]:
    """All congruences, finest first (by block count, then labels).

    ``scan`` filters every set partition; ``closure`` builds principal
    congruences and closes under joins.  ``auto`` scans up to 5 elements.
    """
    m = P.size
    if m > kernels.budget(CONGRUENCE_SIZE_LIMIT):
        raise BudgetExceeded(f"carrier of size {m} exceeds the congruence budget")
    if method == "auto":
        method = "scan" if m <= 5 else "closure"
    if method == "scan":
        found = {tuple(canonical_labels(p).tolist()) for p in _set_partitions(m) if is_congruence(P, p)}
    elif method == "closure":
        principal = {}
        for a, b in itertools.combinations(range(m), 2):
            C = congruence_closure(P, [(a, b)])
            principal.setdefault(C.key(), C)
        found = {Congruence.equality(P).key()} | set(principal)
        queue = list(found)
        while queue:
            key = queue.pop()
            for pk in principal:
                J = congruence_closure(P, labels=np.maximum(0, np.array(key)), pairs=_pairs_of(pk)).key()
                if J not in found:
                    found.add(J)
                    queue.append(J)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = [Congruence(P, _frozen(k)) for k in found]
    out.sort(key=lambda C: (-C.num_blocks, C.key()))
    return out


def _pairs_of(key):
    first = {}
    pairs = []
    for x, k in enumerate(key):
        if k in first:
            pairs.append((first[k], x))
        else:
            first[k] = x
    return pairs


# -- quotients ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientPolyadic:
    parent: PolyadicGroup
    congruence: Congruence
    quotient: PolyadicGroup
    projection: PolyadicHom


def quotient(P: PolyadicGroup, R) -> QuotientPolyadic:
    C = R if isinstance(R, Congruence) else Congruence(P, _frozen(_labels_of(P, R)))
    v = is_congruence(P, C)
    if not v:
        raise NotACongruence(f"partition is not compatible at {v.witness}", v.witness)
    reps = C.representatives
    k = C.num_blocks
    table = C.labels[P.table[np.ix_(*([reps] * P.arity))]]
    Q = PolyadicGroup.from_table(table.reshape((k,) * P.arity), P.arity, name=f"{P.name or 'P'}/R{k}")
    proj = PolyadicHom.of(P, Q, C.labels)
    return QuotientPolyadic(P, C, Q, proj)


def lambda_check(P: PolyadicGroup, R, a: int) -> Report:
    """lambda(x) = [x] from ret_a(P) onto ret_[a](P/R): epimorphism with
    ret_a / ker(lambda) isomorphic to ret_[a](P/R)."""
    Qp = quotient(P, R)
    lab = Qp.congruence.labels
    rep = Report("lambda", info={"basepoint": a, "blocks": Qp.congruence.blocks})
    G = retract_at(P, a).group
    H = retract_at(Qp.quotient, int(lab[a])).group
    try:
        lam = GroupHom.of(G, H, lab)
    except NotAHom as exc:
        rep.check("lambda_is_group_hom", False, exc.witness)
        return rep
    rep.check("lambda_is_group_hom", True)
    rep.check("lambda_surjective", lam.is_surjective())
    K = lam.kernel()
    rep.info["kernel"] = list(K.members)
    rep.check("kernel_normal", G.is_normal_subset(K.members))
    Gq, proj = quotient_group(G, K)
    induced = np.zeros(Gq.order, dtype=np.int64)
    induced[proj.map] = lab
    ok = True
    try:
        ind = GroupHom.of(Gq, H, induced)
        ok = ind.is_isomorphism()
    except NotAHom:
        ok = False
    rep.check("induced_isomorphism", ok, None if ok else induced.tolist())
    return rep


# -- the R <= G x G construction -------------------------------------------------

def congruence_as_subgroup(P: PolyadicGroup, R) -> tuple[tuple[int, ...], Report]:
    """R as a set of pairs (x, y) -> x*m + y in the base group G x G."""
    C = R if isinstance(R, Congruence) else Congruence(P, _frozen(_labels_of(P, R)))
    if not is_congruence(P, C):
        raise NotACongruence("not a congruence")
    G = P.hg_triple.base
    GG = direct_product([G, G])
    m = G.order
    members = tuple(sorted(x * m + y for x in range(m) for y in range(m) if C.labels[x] == C.labels[y]))
    rep = Report("congruence_as_subgroup", info={"pairs": len(members)})
    sub = rep.check("R_is_subgroup_of_GxG", GG.is_subgroup(members))
    rep.info["normal_in_GxG"] = GG.is_normal_subset(members) if sub else False
    if not sub:
        raise NotASubgroup("R is not closed in G x G")
    return members, rep


@dataclass(frozen=True, eq=False)
class PsiEmbedding:
    map: np.ndarray
    source: PolyadicGroup
    target: PolyadicGroup
    report: Report


def _fail(exc_type, message, rep):
    exc = exc_type(message)
    exc.report = rep
    raise exc


def psi_embedding(P: PolyadicGroup, R) -> PsiEmbedding:
    """psi([x]) = (x, 1)R into der_{theta-bar, b-bar}((G x G)/R)."""
    C = R if isinstance(R, Congruence) else Congruence(P, _frozen(_labels_of(P, R)))
    pairs, rep = congruence_as_subgroup(P, C)
    rep.name = "psi_embedding"
    hg = P.hg_triple
    G, m, n = hg.base, hg.base.order, P.arity
    GG = direct_product([G, G])
    normal = rep.check("R_normal_in_GxG", GG.is_normal_subset(pairs))
    if not normal:
        x, y = _non_normal_witness(GG, pairs)
        rep.checks[-1]["witness"] = [[x // m, x % m], [y // m, y % m]]
        _fail(IllDefined, "(G x G)/R is not a group: R is not normal in G x G", rep)
    Qg, proj = quotient_group(GG, pairs)
    lab = proj.map
    rep.info["quotient_order"] = Qg.order
    theta2 = np.array([hg.theta.map[x // m] * m + hg.theta.map[x % m] for x in range(GG.order)])
    inv = rep.check("R_theta_invariant", bool(np.isin(theta2[list(pairs)], pairs).all()))
    if not inv:
        _fail(IllDefined, "theta x theta does not preserve R", rep)
    theta_bar = np.zeros(Qg.order, dtype=np.int64)
    theta_bar[lab] = lab[theta2]
    b_bar = int(lab[hg.b * m + G.identity])
    try:
        target = derive_theta(Qg, theta_bar, b_bar, n, name="der(GxG/R)")
        rep.check("target_hg_conditions", True)
    except ConditionViolated as exc:
        rep.check("target_hg_conditions", False, exc.witness, condition=exc.condition)
        _fail(IllDefined, f"der_(theta-bar, b-bar) is not a polyadic group: {exc}", rep)
    Qp = quotient(P, C)
    psi_pts = lab[np.arange(m) * m + G.identity]
    well = all(len(set(psi_pts[blk].tolist())) == 1 for blk in C.blocks)
    rep.check("psi_well_defined", well)
    if not well:
        _fail(IllDefined, "(x, 1)R depends on the representative of [x]", rep)
    psi = psi_pts[C.representatives]
    inj = rep.check("psi_injective", len(set(psi.tolist())) == len(psi))
    if not inj:
        _fail(NotInjective, "psi identifies distinct classes", rep)
    v = hom_verify(psi, Qp.quotient, target)
    rep.check("psi_polyadic_hom", bool(v), v.witness)
    if not v:
        _fail(NotAHom, f"psi is not a polyadic homomorphism at {v.witness}", rep)
    return PsiEmbedding(_frozen(psi), Qp.quotient, target, rep)


def _non_normal_witness(GG, members):
    inside = set(members)
    for g in range(GG.order):
        for x in members:
            y = GG.conj(g, x)
            if y not in inside:
                return x, y
    return None, None
