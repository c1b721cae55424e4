"""Polyadic (n-ary) groups.

A :class:`PolyadicGroup` is backed either by an explicit n-dimensional
operation table or by a Hosszu-Gluskin triple ``(G, theta, b)``, where

    f(x1, ..., xn) = x1 theta(x2) theta^2(x3) ... theta^(n-1)(xn) b.

Tables use dense indices and C order, so ``table[x1, ..., xn]`` is the
value and the flat index of a tuple is its base-``m`` numeral.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    ArityMismatch,
    BadShape,
    BudgetExceeded,
    ConditionViolated,
    NotAssociative,
    NotCentral,
    NotLatin,
    PolyadicError,
)
from .groups import Automorphism, FiniteGroup, group_from_table, _frozen

TABLE_LIMIT = 10 ** 7
ASSOC_LIMIT = 10 ** 8


@dataclass(frozen=True, eq=False)
class HGTriple:
    base: FiniteGroup
    theta: Automorphism
    b: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check; falsy when a violation was found."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    method: str = "exhaustive"

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "axiom": self.axiom, "witness": _plain(self.witness), "method": self.method}


def _plain(obj):
    if isinstance(obj, (tuple, list)):
        return [_plain(o) for o in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# -- verification -------------------------------------------------------------

def _as_cube(table, n: int | None):
    t = np.asarray(table)
    if t.dtype == object or t.ndim == 0:
        raise BadShape("operation table must be a rectangular integer array")
    if n is None:
        n = t.ndim
    if n < 1 or t.ndim != n:
        raise BadShape(f"expected an {n}-dimensional table, got {t.ndim} dimensions")
    m = t.shape[0]
    if m == 0 or any(s != m for s in t.shape):
        raise BadShape(f"table extents must all equal m, got {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        raise BadShape("table entries must be integers")
    t = t.astype(np.int64)
    if t.min() < 0 or t.max() >= m:
        raise BadShape("table entries must lie in 0..m-1")
    return t, m, n


def verify_polyadic(table, n: int | None = None) -> Verdict:
    """Check both polyadic-group axioms on an explicit table.

    Unique solvability is the Latin-cube condition (every coordinate line
    is a permutation).  Associativity compares the n bracketings of every
    (2n-1)-tuple; when that scan is too large the table is instead matched
    against the Hosszu-Gluskin triple read off it, which is sound because
    every such triple yields an associative operation.  Witness positions
    are 1-based.
    """
    cube, m, n = _as_cube(table, n)
    flat = np.ascontiguousarray(cube.reshape(-1))
    hit = kernels.latin_violation(flat, m, n)
    if hit is not None:
        axis, coords, value = hit
        return Verdict(False, "unique_solvability", (axis + 1, coords, value))
    if n == 1:
        return Verdict(True)
    if m ** (2 * n - 1) <= ASSOC_LIMIT:
        hit = kernels.assoc_violation(flat, m, n)
        if hit is not None:
            tup, i, j = hit
            return Verdict(False, "associativity", (tup, i + 1, j + 1))
        return Verdict(True)
    return _verify_by_triple(cube, m, n)


def _verify_by_triple(cube, m, n) -> Verdict:
    P = PolyadicGroup(n, m, _frozen(cube), None, "")
    try:
        G, theta, b = sokolov_triple(P, 0)
        Q = derive_theta(G, theta, b, n)
    except PolyadicError as exc:
        return Verdict(False, "associativity", (str(exc),), method="hg-conditions")
    bad = np.argwhere(Q.table != cube)
    if bad.size:
        return Verdict(False, "associativity", (tuple(int(v) for v in bad[0]),), method="hg-conditions")
    return Verdict(True, method="hg-conditions")


# -- the polyadic group value -------------------------------------------------

@dataclass(frozen=True, eq=False)
class PolyadicGroup:
    arity: int
    size: int
    explicit: np.ndarray | None
    hg: HGTriple | None
    name: str = ""

    def __repr__(self):
        kind = "hg" if self.hg is not None else "table"
        return f"PolyadicGroup({self.name or '?'}, n={self.arity}, m={self.size}, {kind})"

    @classmethod
    def from_table(cls, table, n: int | None = None, name: str = "") -> PolyadicGroup:
        cube, m, n = _as_cube(table, n)
        verdict = verify_polyadic(cube, n)
        if not verdict:
            err = NotLatin if verdict.axiom == "unique_solvability" else NotAssociative
            raise err(f"not a polyadic group: {verdict.axiom} fails at {verdict.witness}", verdict.witness)
        return cls(n, m, _frozen(cube), None, name)

    @cached_property
    def theta_powers(self) -> np.ndarray:
        """Row k is theta**k, k = 0..n-1 (HG backing only)."""
        assert self.hg is not None
        return np.stack([self.hg.theta.power(k) for k in range(self.arity)])

    @cached_property
    def table(self) -> np.ndarray:
        if self.explicit is not None:
            return self.explicit
        if self.size ** self.arity > TABLE_LIMIT:
            raise BudgetExceeded(f"{self.size}^{self.arity} cells exceed the table limit")
        G = self.hg.base
        m, n = self.size, self.arity
        acc = np.arange(m)
        for k in range(1, n):
            acc = G.table[acc[..., None], self.theta_powers[k]]
        acc = G.table[acc, self.hg.b]
        return _frozen(acc)

    @property
    def flat(self) -> np.ndarray:
        return self.table.reshape(-1)

    def elements(self) -> range:
        return range(self.size)

    def f(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        if self.explicit is not None or "table" in self.__dict__:
            return int(self.table[tuple(args)])
        G, tp = self.hg.base, self.theta_powers
        acc = G.identity
        for k, x in enumerate(args):
            acc = G.mul(acc, int(tp[k][x]))
        return G.mul(acc, self.hg.b)

    @cached_property
    def hg_triple(self) -> HGTriple:
        """The designated Hosszu-Gluskin triple: the stored one, or the
        Sokolov triple at basepoint 0 for table-backed groups."""
        if self.hg is not None:
            return self.hg
        G, theta, b = sokolov_triple(self, 0)
        return HGTriple(G, Automorphism(G, theta.map), b)

    def same_operation(self, other: PolyadicGroup) -> bool:
        return (self.arity == other.arity and self.size == other.size
                and bool((self.table == other.table).all()))


def eval_f(P: PolyadicGroup, args: Sequence[int]) -> int:
    return P.f(*args)


# -- constructors -------------------------------------------------------------

def _check_hg(G: FiniteGroup, theta: Automorphism, b: int, n: int):
    if int(theta.map[b]) != b:
        raise ConditionViolated(f"theta(b) = {int(theta.map[b])} != b = {b}", "theta_fixes_b", (b,))
    power = theta.power(n - 1)
    inner = np.array([G.conj(b, x) for x in range(G.order)])
    bad = np.flatnonzero(power != inner)
    if bad.size:
        x = int(bad[0])
        raise ConditionViolated(
            f"theta^{n - 1}({x}) = {int(power[x])} but b x b^-1 = {int(inner[x])}",
            "theta_power_inner", (x,))


def derive_theta(G: FiniteGroup, theta, b: int, n: int, name: str = "") -> PolyadicGroup:
    if n < 2:
        raise ArityMismatch("arity must be at least 2")
    if not isinstance(theta, Automorphism) or theta.domain is not G:
        theta = Automorphism.of(G, theta.map if isinstance(theta, Automorphism) else theta)
    _check_hg(G, theta, int(b), n)
    return PolyadicGroup(n, G.order, None, HGTriple(G, theta, int(b)), name)


def derive_b(G: FiniteGroup, b: int, n: int, name: str = "") -> PolyadicGroup:
    if b not in G.center():
        raise NotCentral(f"{b} is not central in {G.name or 'G'}")
    return derive_theta(G, Automorphism.identity(G), b, n, name)


def derive(G: FiniteGroup, n: int, name: str = "") -> PolyadicGroup:
    return derive_theta(G, Automorphism.identity(G), G.identity, n, name)


# -- equations, skew elements, identities --------------------------------------

def solve(P: PolyadicGroup, i: int, known: Sequence[int], rhs: int) -> int:
    """The unique x with f(known[:i-1], x, known[i-1:]) = rhs (i is 1-based)."""
    n = P.arity
    if not 1 <= i <= n:
        raise ArityMismatch(f"position {i} outside 1..{n}")
    if len(known) != n - 1:
        raise ArityMismatch(f"expected {n - 1} known arguments")
    known = [int(k) for k in known]
    if P.hg is not None:
        G, tp = P.hg.base, P.theta_powers
        left = G.prod(*(int(tp[k][x]) for k, x in enumerate(known[:i - 1])))
        right = G.prod(*(int(tp[i + k][x]) for k, x in enumerate(known[i - 1:])), P.hg.b)
        y = G.prod(G.inv(left), rhs, G.inv(right))
        return int(np.argsort(tp[i - 1])[y])
    idx = tuple(known[:i - 1]) + (slice(None),) + tuple(known[i - 1:])
    hits = np.flatnonzero(P.table[idx] == rhs)
    return int(hits[0])


@dataclass(frozen=True, eq=False)
class SkewMap:
    parent: PolyadicGroup
    map: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.map[x])


def skew(P: PolyadicGroup) -> SkewMap:
    n = P.arity
    return SkewMap(P, _frozen([solve(P, n, [x] * (n - 1), x) for x in range(P.size)]))


def check_dornte(P: PolyadicGroup) -> Verdict:
    """f(x..x, skew x, x..x, y) = y = f(y, x..x, skew x, x..x) with the
    skew element in position i (left form) for every 2 <= i <= n."""
    if not isinstance(P, PolyadicGroup):
        raise TypeError("check_dornte needs a validated PolyadicGroup")
    n, m, T = P.arity, P.size, P.table
    sk = skew(P).map
    x = np.arange(m)[:, None]
    y = np.arange(m)[None, :]
    xs = np.broadcast_to(x, (m, m))
    ys = np.broadcast_to(y, (m, m))
    sks = np.broadcast_to(sk[:, None], (m, m))
    for i in range(2, n + 1):
        left = T[tuple([xs] * (i - 2) + [sks] + [xs] * (n - i) + [ys])]
        right = T[tuple([ys] + [xs] * (n - i) + [sks] + [xs] * (i - 2))]
        for side, vals in (("left", left), ("right", right)):
            bad = np.argwhere(vals != ys)
            if bad.size:
                a, c = (int(v) for v in bad[0])
                return Verdict(False, f"dornte_{side}", (i, a, c))
    return Verdict(True)


def find_nary_identity(P: PolyadicGroup) -> int | None:
    """Least a with f(a..a, x, a..a) = x for every x and every position."""
    n, m, T = P.arity, P.size, P.table
    xs = np.arange(m)
    for a in range(m):
        if all((T[(a,) * (i - 1) + (slice(None),) + (a,) * (n - i)] == xs).all() for i in range(1, n + 1)):
            return a
    return None


def idempotents(P: PolyadicGroup) -> list[int]:
    return [x for x in range(P.size) if P.f(*([x] * P.arity)) == x]


# -- retracts and the Sokolov triple ------------------------------------------

def retract_table(P: PolyadicGroup, a: int) -> np.ndarray:
    """x . y = f(x, a, ..., a, y)"""
    n = P.arity
    return P.table[(slice(None),) + (a,) * (n - 2) + (slice(None),)]


def sokolov_triple(P: PolyadicGroup, v: int):
    """(retract at v, theta, b) with theta(x) = f(skew v, x, v..v) and
    b = f(skew v, ..., skew v).  Raises if the retract is not a group."""
    n = P.arity
    G = group_from_table(retract_table(P, v), name=f"ret{v}")
    if n == 2:
        return G, Automorphism.identity(G), G.identity
    vbar = solve(P, n, [v] * (n - 1), v)
    T = P.table
    theta = T[(vbar, slice(None)) + (v,) * (n - 2)]
    b = int(T[(vbar,) * n])
    return G, Automorphism.of(G, theta), b


# -- substructures, products, isomorphism --------------------------------------

def generated_sub(P: PolyadicGroup, elems) -> tuple[int, ...]:
    """Closure of ``elems`` under f and skew."""
    n, T = P.arity, P.table
    sk = skew(P).map
    cur = set(int(e) for e in elems)
    while True:
        idx = np.array(sorted(cur))
        vals = set(np.unique(T[np.ix_(*([idx] * n))]).tolist()) | set(sk[idx].tolist())
        if vals <= cur:
            return tuple(sorted(cur))
        cur |= vals


def sub_polyadic(P: PolyadicGroup, carrier: Sequence[int], name: str = "") -> tuple[PolyadicGroup, np.ndarray]:
    """Restriction of P to a closed subset, relabelled 0..k-1 in increasing
    order; also returns the inclusion map."""
    carrier = sorted(int(c) for c in carrier)
    relabel = np.full(P.size, -1, dtype=np.int64)
    relabel[carrier] = np.arange(len(carrier))
    block = P.table[np.ix_(*([carrier] * P.arity))]
    if (relabel[block] < 0).any():
        raise ValueError("carrier is not closed under f")
    return PolyadicGroup.from_table(relabel[block], P.arity, name), np.array(carrier)


def enumerate_subs(P: PolyadicGroup) -> list[tuple[int, ...]]:
    """All non-empty sub-polyadic groups, by size then lexicographically."""
    found = set()
    queue = [generated_sub(P, [x]) for x in range(P.size)]
    found.update(queue)
    while queue:
        S = queue.pop()
        for x in range(P.size):
            if x not in S:
                T = generated_sub(P, S + (x,))
                if T not in found:
                    found.add(T)
                    queue.append(T)
    return sorted(found, key=lambda s: (len(s), s))


def polyadic_product(factors: Sequence[PolyadicGroup], name: str = "") -> PolyadicGroup:
    """Componentwise product; carrier encoded like ``direct_product``."""
    from .groups import direct_product, product_decode, product_encode

    n = factors[0].arity
    if any(P.arity != n for P in factors):
        raise ArityMismatch("factors must share the arity")
    triples = [P.hg_triple for P in factors]
    G = direct_product([t.base for t in triples])
    orders = [t.base.order for t in triples]
    theta = [product_encode(orders, [int(t.theta.map[c]) for t, c in zip(triples, product_decode(orders, x))])
             for x in range(G.order)]
    b = product_encode(orders, [t.b for t in triples])
    return derive_theta(G, theta, b, n, name or "x".join(P.name or "?" for P in factors))


def _element_invariants(P: PolyadicGroup) -> list[tuple]:
    ident = find_nary_identity(P)
    sk = skew(P).map
    idem = set(idempotents(P))
    return [(len(generated_sub(P, [x])), x in idem, x == ident, int(sk[x]) == x) for x in range(P.size)]


def find_polyadic_isomorphism(P: PolyadicGroup, Q: PolyadicGroup) -> np.ndarray | None:
    """A bijection sigma with sigma(f(x)) = g(sigma(x)), by backtracking on
    the carrier with forced-value propagation, or None."""
    if P.arity != Q.arity or P.size != Q.size:
        return None
    n, m = P.arity, P.size
    inv_p, inv_q = _element_invariants(P), _element_invariants(Q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    TP, TQ = P.table, Q.table

    def propagate(sigma):
        while True:
            dom = np.flatnonzero(sigma >= 0)
            img = sigma[dom]
            src = TP[np.ix_(*([dom] * n))].reshape(-1)
            dst = TQ[np.ix_(*([img] * n))].reshape(-1)
            assigned = sigma[src]
            if ((assigned >= 0) & (assigned != dst)).any():
                return None
            new = assigned < 0
            if not new.any():
                return sigma
            pairs = np.unique(np.stack([src[new], dst[new]], axis=1), axis=0)
            if len(np.unique(pairs[:, 0])) != len(pairs) or len(np.unique(pairs[:, 1])) != len(pairs):
                return None
            for x, y in pairs:
                if y in sigma or inv_p[x] != inv_q[y]:
                    return None
                sigma[x] = y

    def search(sigma):
        sigma = propagate(sigma)
        if sigma is None:
            return None
        free = np.flatnonzero(sigma < 0)
        if free.size == 0:
            return sigma
        x = int(free[0])
        used = set(sigma[sigma >= 0].tolist())
        for y in range(m):
            if y in used or inv_q[y] != inv_p[x]:
                continue
            trial = sigma.copy()
            trial[x] = y
            out = search(trial)
            if out is not None:
                return out
        return None

    return search(np.full(m, -1, dtype=np.int64))


def is_polyadic_hom(P: PolyadicGroup, Q: PolyadicGroup, fmap) -> tuple | None:
    """First n-tuple where ``fmap`` fails to be a homomorphism, or None."""
    return kernels.hom_violation(P.flat, Q.flat, np.asarray(fmap, dtype=np.int64), P.size, Q.size, P.arity)
