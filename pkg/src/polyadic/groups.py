"""Finite groups on dense element indices ``0..m-1``.

A group is its Cayley table plus cached identity and inverse arrays.
Subgroups are canonical sorted tuples of element indices, so they hash
and sort deterministically.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConditionViolated,
    NoIdentity,
    NotAHom,
    NotAssociative,
    NotLatin,
    NotNormal,
    UnknownClass,
    BadShape,
)


def _frozen(arr) -> np.ndarray:
    a = np.array(arr, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def prod(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        for _ in range(k):
            acc = int(self.table[acc, x])
        return acc

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def commutator(self, a: int, b: int) -> int:
        return self.prod(self.inv(a), self.inv(b), a, b)

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            k, acc = 1, x
            while acc != self.identity:
                acc = int(self.table[acc, x])
                k += 1
            orders[x] = k
        orders.setflags(write=False)
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(int(z) for z in range(self.order) if (t[z, :] == t[:, z]).all())

    def same_table(self, other: FiniteGroup) -> bool:
        return self.order == other.order and bool((self.table == other.table).all())

    # -- subgroups ----------------------------------------------------------

    def subgroup(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by ``gens`` (closure under right multiplication)."""
        gens = sorted(set(int(g) for g in gens))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = sorted(set(int(x) for x in subset))
        if self.identity not in s:
            return False
        block = self.table[np.ix_(s, s)]
        return bool(np.isin(block, s).all())

    def is_normal_subset(self, subset: Iterable[int]) -> bool:
        s = sorted(set(int(x) for x in subset))
        if not self.is_subgroup(s):
            return False
        conj = self.table[self.table[:, s], self.inverse[:, None]]
        return bool(np.isin(conj, s).all())

    def normal_closure(self, subset: Iterable[int]) -> tuple[int, ...]:
        s = sorted(set(int(x) for x in subset))
        if not s:
            return (self.identity,)
        conj = self.table[self.table[:, s], self.inverse[:, None]]
        return self.subgroup(np.unique(conj).tolist())

    def commutator_subgroup(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """[A, B] generated by all commutators a^-1 b^-1 a b."""
        return self.subgroup({self.commutator(x, y) for x in a for y in b})

    # -- generation and homomorphism search ---------------------------------

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set: greedily add the element of largest order
        (smallest index on ties) not yet in the span."""
        span = {self.identity}
        gens: list[int] = []
        by_order = sorted(range(self.order), key=lambda x: (-self.element_order(x), x))
        while len(span) < self.order:
            g = next(x for x in by_order if x not in span)
            gens.append(g)
            span = set(self.subgroup(gens))
        return tuple(gens)

    def extend_generator_images(self, target: FiniteGroup, images: Sequence[int]) -> np.ndarray | None:
        """The homomorphism sending ``generators[k]`` to ``images[k]``, or
        None if no such homomorphism exists."""
        return extend_hom(self, target, self.generators, images)


def extend_hom(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> np.ndarray | None:
    """The homomorphism G -> H with gens[k] -> images[k], if one exists.

    Elements are reached breadth-first as parent * generator; the map is a
    homomorphism iff phi(x g) = phi(x) phi(g) for every x and generator g.
    Returns None when the assignment does not extend or gens do not
    generate G.
    """
    gens = [int(g) for g in gens]
    img = np.asarray(images, dtype=np.int64)
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        y = queue.popleft()
        for k, g in enumerate(gens):
            x = int(G.table[y, g])
            if phi[x] < 0:
                phi[x] = H.table[phi[y], img[k]]
                queue.append(x)
    if (phi < 0).any():
        return None
    if len(gens) and not (phi[G.table[:, gens]] == H.table[phi[:, None], img[None, :]]).all():
        return None
    return phi


def subgroup_as_group(G: FiniteGroup, members: Sequence[int], name: str = "") -> FiniteGroup:
    """The subgroup on ``members`` relabelled 0..k-1 in increasing order."""
    members = sorted(int(x) for x in members)
    relabel = np.full(G.order, -1, dtype=np.int64)
    relabel[members] = np.arange(len(members))
    return group_from_table(relabel[G.table[np.ix_(members, members)]], name)


def group_from_table(table, name: str = "") -> FiniteGroup:
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise BadShape(f"group table must be a non-empty square array, got shape {t.shape}")
    m = t.shape[0]
    t = t.astype(np.int64)
    if t.min() < 0 or t.max() >= m:
        raise BadShape("table entries must lie in 0..m-1")
    target = np.arange(m)
    for axis, label in ((1, "row"), (0, "column")):
        lines = np.sort(t, axis=axis)
        good = (lines == (target[None, :] if axis == 1 else target[:, None])).all(axis=axis)
        if not good.all():
            i = int(np.flatnonzero(~good)[0])
            raise NotLatin(f"{label} {i} is not a permutation", witness=(label, i))
    ids = [e for e in range(m) if (t[e] == target).all() and (t[:, e] == target).all()]
    if not ids:
        raise NoIdentity("no two-sided identity")
    e = ids[0]
    left = t[t]            # (xy)z at [x, y, z]
    right = t[:, t]        # x(yz) at [x, y, z]
    bad = np.argwhere(left != right)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        raise NotAssociative(f"({x}*{y})*{z} != {x}*({y}*{z})", witness=(x, y, z))
    inverse = np.argmax(t == e, axis=1)
    return FiniteGroup(_frozen(t), int(e), _frozen(inverse), name)


def cyclic_group(m: int) -> FiniteGroup:
    a = np.arange(m)
    return group_from_table((a[:, None] + a[None, :]) % m, name=f"Z{m}")


def permutation_group(perms: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Group of the given (closed) permutation list under composition
    (p*q)(i) = p(q(i)); elements are indexed in list order."""
    index = {tuple(p): k for k, p in enumerate(perms)}
    table = [[index[tuple(p[i] for i in q)] for q in perms] for p in perms]
    return group_from_table(table, name)


# -- products and quotients ---------------------------------------------------

def product_encode(orders: Sequence[int], comps: Sequence[int]) -> int:
    """Mixed-radix index of a tuple; the first factor is most significant."""
    idx = 0
    for m, c in zip(orders, comps):
        idx = idx * m + int(c)
    return idx


def product_decode(orders: Sequence[int], idx: int) -> tuple[int, ...]:
    out = []
    for m in reversed(orders):
        out.append(idx % m)
        idx //= m
    return tuple(reversed(out))


def direct_product(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    """Componentwise product, encoded by :func:`product_encode`."""
    if not factors:
        raise ValueError("direct_product needs at least one factor")
    table = factors[0].table
    for g in factors[1:]:
        a, b = table.shape[0], g.order
        table = (table[:, None, :, None] * b + g.table[None, :, None, :]).reshape(a * b, a * b)
    if len(factors) == 1:
        return factors[0]
    name = "x".join(g.name or f"G{g.order}" for g in factors)
    orders = [g.order for g in factors]
    identity = product_encode(orders, [g.identity for g in factors])
    inverse = np.zeros(table.shape[0], dtype=np.int64)
    for idx in range(table.shape[0]):
        comps = product_decode(orders, idx)
        inverse[idx] = product_encode(orders, [g.inv(c) for g, c in zip(factors, comps)])
    return FiniteGroup(_frozen(table), identity, _frozen(inverse), name)


def product_projection(factors: Sequence[FiniteGroup], k: int) -> GroupHom:
    P = direct_product(factors)
    orders = [g.order for g in factors]
    images = [product_decode(orders, x)[k] for x in range(P.order)]
    return GroupHom.of(P, factors[k], images)


@dataclass(frozen=True, eq=False)
class NormalSubgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @classmethod
    def of(cls, G: FiniteGroup, members: Iterable[int]) -> NormalSubgroup:
        s = tuple(sorted(set(int(x) for x in members)))
        if not G.is_subgroup(s):
            raise NotNormal(f"{list(s)} is not a subgroup")
        if not G.is_normal_subset(s):
            raise NotNormal(f"{list(s)} is not normal")
        return cls(G, s)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x):
        return x in set(self.members)

    def __repr__(self):
        return f"NormalSubgroup({list(self.members)})"


def quotient_group(G: FiniteGroup, N: NormalSubgroup | Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """Coset group G/N, cosets ordered (and represented) by their minimal
    element, with the canonical projection."""
    members = N.members if isinstance(N, NormalSubgroup) else tuple(sorted(set(N)))
    if not G.is_normal_subset(members):
        raise NotNormal(f"{list(members)} is not a normal subgroup")
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if label[x] >= 0:
            continue
        label[G.table[x, list(members)]] = len(reps)
        reps.append(x)
    table = label[G.table[np.ix_(reps, reps)]]
    Q = group_from_table(table, name=f"{G.name or 'G'}/N{len(members)}")
    return Q, GroupHom(G, Q, _frozen(label))


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    @classmethod
    def of(cls, source: FiniteGroup, target: FiniteGroup, images) -> GroupHom:
        f = _frozen(images)
        if f.shape != (source.order,) or f.min() < 0 or f.max() >= target.order:
            raise NotAHom("map has the wrong length or leaves the target")
        witness = hom_witness(source, target, f)
        if witness is not None:
            raise NotAHom(f"map({witness[0]}*{witness[1]}) != map({witness[0]})*map({witness[1]})", witness)
        return cls(source, target, f)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def kernel(self) -> NormalSubgroup:
        return NormalSubgroup(self.source, tuple(int(x) for x in np.flatnonzero(self.map == self.target.identity)))

    def image(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unique(self.map))

    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.order

    def is_isomorphism(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def compose(self, inner: GroupHom) -> GroupHom:
        """self after inner."""
        return GroupHom(inner.source, self.target, _frozen(self.map[inner.map]))

    def same_map(self, other: GroupHom) -> bool:
        return bool((self.map == other.map).all())


def hom_witness(source: FiniteGroup, target: FiniteGroup, f) -> tuple[int, int] | None:
    f = np.asarray(f)
    bad = np.argwhere(f[source.table] != target.table[f[:, None], f[None, :]])
    if bad.size:
        return int(bad[0][0]), int(bad[0][1])
    return None


def _image_candidates(G: FiniteGroup, H: FiniteGroup, bijective: bool) -> list[list[int]]:
    cands = []
    for g in G.generators:
        k = G.element_order(g)
        if bijective:
            cands.append([h for h in range(H.order) if H.element_order(h) == k])
        else:
            cands.append([h for h in range(H.order) if k % H.element_order(h) == 0])
    return cands


def homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms G -> H, ordered lexicographically by map array."""
    out = []
    for images in itertools.product(*_image_candidates(G, H, False)):
        phi = G.extend_generator_images(H, images)
        if phi is not None:
            out.append(GroupHom(G, H, _frozen(phi)))
    out.sort(key=lambda h: h.map.tolist())
    return out


def isomorphisms(G: FiniteGroup, H: FiniteGroup, first_only: bool = False) -> list[GroupHom]:
    if G.order != H.order or sorted(G.element_orders.tolist()) != sorted(H.element_orders.tolist()):
        return []
    out = []
    for images in itertools.product(*_image_candidates(G, H, True)):
        phi = G.extend_generator_images(H, images)
        if phi is not None and len(np.unique(phi)) == G.order:
            out.append(GroupHom(G, H, _frozen(phi)))
            if first_only:
                return out
    out.sort(key=lambda h: h.map.tolist())
    return out


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    found = isomorphisms(G, H, first_only=True)
    return found[0] if found else None


def is_cyclic(G: FiniteGroup) -> bool:
    return int(G.element_orders.max()) == G.order


# -- automorphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Automorphism:
    domain: FiniteGroup
    map: np.ndarray

    @classmethod
    def of(cls, G: FiniteGroup, perm) -> Automorphism:
        p = _frozen(perm)
        if p.shape != (G.order,) or sorted(p.tolist()) != list(range(G.order)):
            raise ConditionViolated("theta is not a permutation of the carrier", "not_automorphism")
        w = hom_witness(G, G, p)
        if w is not None:
            raise ConditionViolated(f"theta does not preserve the product at {w}", "not_automorphism", w)
        return cls(G, p)

    @classmethod
    def identity(cls, G: FiniteGroup) -> Automorphism:
        return cls(G, _frozen(np.arange(G.order)))

    @classmethod
    def inner(cls, G: FiniteGroup, g: int) -> Automorphism:
        return cls(G, _frozen([G.conj(g, x) for x in range(G.order)]))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def power(self, k: int) -> np.ndarray:
        """The permutation array of theta**k (k may be negative)."""
        base = self.map if k >= 0 else np.argsort(self.map)
        out = np.arange(self.domain.order)
        for _ in range(abs(k)):
            out = base[out]
        return out

    def inverse(self) -> Automorphism:
        return Automorphism(self.domain, _frozen(np.argsort(self.map)))

    def is_identity(self) -> bool:
        return bool((self.map == np.arange(self.domain.order)).all())

    def image(self, subset: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(int(self.map[x]) for x in subset))


def automorphisms(G: FiniteGroup) -> list[Automorphism]:
    return [Automorphism(G, h.map) for h in isomorphisms(G, G)]


# -- normal subgroups ---------------------------------------------------------

def enumerate_normal_subgroups(G: FiniteGroup) -> list[NormalSubgroup]:
    """All normal subgroups, by size then lexicographically.

    Every normal subgroup is reached by repeatedly taking normal closures
    of a known normal subgroup plus one element.
    """
    start = (G.identity,)
    found = {start}
    queue = deque([start])
    while queue:
        N = queue.popleft()
        inside = set(N)
        for g in range(G.order):
            if g in inside:
                continue
            M = G.normal_closure(N + (g,))
            if M not in found:
                found.add(M)
                queue.append(M)
    return [NormalSubgroup(G, s) for s in sorted(found, key=lambda s: (len(s), s))]


# -- group classes ------------------------------------------------------------

def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class GroupClass:
    """A named class of finite groups closed under the usual operators."""

    kind: str
    p: int = 0

    @property
    def name(self) -> str:
        return f"{self.p}-group" if self.kind == "p-group" else self.kind

    def contains(self, G: FiniteGroup) -> bool:
        if self.kind == "abelian":
            return G.is_abelian()
        if self.kind == "p-group":
            m = G.order
            while m % self.p == 0:
                m //= self.p
            return m == 1
        if self.kind == "solvable":
            H = tuple(G.elements())
            while len(H) > 1:
                K = G.commutator_subgroup(H, H)
                if K == H:
                    return False
                H = K
            return True
        if self.kind == "nilpotent":
            full = tuple(G.elements())
            H = full
            while len(H) > 1:
                K = G.commutator_subgroup(H, full)
                if K == H:
                    return False
                H = K
            return True
        if self.kind == "all":
            return True
        raise UnknownClass(self.kind)


def parse_class(name: str) -> GroupClass:
    """``abelian``, ``solvable``, ``nilpotent``, ``all``, or a p-group
    written ``2-group``, ``p-group(2)`` or ``p-group:2``."""
    key = name.strip().lower()
    if key in ("abelian", "solvable", "nilpotent", "all"):
        return GroupClass(key)
    p = None
    if key.endswith("-group") and key[:-6].isdigit():
        p = int(key[:-6])
    elif key.startswith("p-group(") and key.endswith(")") and key[8:-1].isdigit():
        p = int(key[8:-1])
    elif key.startswith("p-group:") and key[8:].isdigit():
        p = int(key[8:])
    if p is None or not _is_prime(p):
        raise UnknownClass(f"unknown group class {name!r}")
    return GroupClass("p-group", p)


def class_predicate(name: str | GroupClass, G: FiniteGroup) -> bool:
    cls = name if isinstance(name, GroupClass) else parse_class(name)
    return cls.contains(G)
