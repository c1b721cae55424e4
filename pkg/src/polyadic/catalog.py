"""Polyadic groups of small order up to isomorphism, by Hosszu-Gluskin
parameters over the built-in small groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceeded, ConditionViolated, InvalidParams
from .groups import automorphisms
from .library import small_groups
from .polyadic import (
    PolyadicGroup,
    _check_hg,
    _element_invariants,
    derive_theta,
    find_nary_identity,
    find_polyadic_isomorphism,
    verify_polyadic,
)

MAX_ORDER = 8
BRUTE_FORCE_LIMIT = 10**5


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    polyadic: PolyadicGroup
    group: str
    theta: tuple
    b: int
    reducible: bool
    identity: int | None
    parameters: int  # number of (theta, b) choices landing in this class

    @property
    def order(self) -> int:
        return self.polyadic.size

    def to_dict(self) -> dict:
        return {"group": self.group, "order": self.order, "theta": list(self.theta), "b": self.b,
                "reducible": self.reducible, "nary_identity": self.identity,
                "parameters": self.parameters}


@dataclass(frozen=True, eq=False)
class Catalog:
    arity: int
    max_order: int
    entries: tuple
    cross_validation: dict | None

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def of_order(self, lo: int = 1, hi: int | None = None) -> list[CatalogEntry]:
        hi = self.max_order if hi is None else hi
        return [e for e in self.entries if lo <= e.order <= hi]

    def to_dict(self) -> dict:
        return {"arity": self.arity, "max_order": self.max_order, "count": len(self.entries),
                "entries": [e.to_dict() for e in self.entries],
                "cross_validation": self.cross_validation}


def _signature(P: PolyadicGroup) -> tuple:
    return P.size, tuple(sorted(_element_invariants(P)))


def hg_parameters(G, n: int):
    """All (theta, b) with theta(b) = b and theta^(n-1) = conjugation by b."""
    for theta in automorphisms(G):
        for b in range(G.order):
            try:
                _check_hg(G, theta, b, n)
            except ConditionViolated:
                continue
            yield theta, b


class _Classifier:
    def __init__(self):
        self.reps: dict = {}

    def find(self, P: PolyadicGroup):
        sig = _signature(P)
        for k, Q in self.reps.get(sig, []):
            if find_polyadic_isomorphism(P, Q) is not None:
                return k
        return None

    def add(self, P: PolyadicGroup, k):
        self.reps.setdefault(_signature(P), []).append((k, P))


def build_catalog(n: int, max_order: int, min_order: int = 2, cross_validate: bool = True) -> Catalog:
    if n < 3:
        raise InvalidParams("catalog arity must be at least 3")
    if max_order > kernels.budget(MAX_ORDER):
        raise BudgetExceeded(f"max order {max_order} exceeds the built-in group list")
    cls = _Classifier()
    found = []
    counts = []
    for G in small_groups(max_order, min_order):
        name = G.name
        for theta, b in hg_parameters(G, n):
            P = derive_theta(G, theta, b, n, name=f"der[{name},{b}]")
            k = cls.find(P)
            if k is not None:
                counts[k] += 1
                continue
            cls.add(P, len(found))
            found.append((P, name, tuple(int(t) for t in theta.map), b))
            counts.append(1)
    entries = []
    for (P, name, theta, b), c in zip(found, counts):
        ident = find_nary_identity(P)
        entries.append(CatalogEntry(P, name, theta, b, ident is not None, ident, c))
    xv = None
    if cross_validate:
        xv = {}
        for m in range(min_order, max_order + 1):
            if m ** (m ** n) > kernels.budget(BRUTE_FORCE_LIMIT):
                continue
            brute = brute_force_classes(n, m)
            hg = [e.polyadic for e in entries if e.order == m]
            matched = all(any(find_polyadic_isomorphism(P, Q) is not None for Q in hg) for P in brute)
            xv[str(m)] = {"brute_force": len(brute), "hg": len(hg),
                          "agree": matched and len(brute) == len(hg)}
    return Catalog(n, max_order, tuple(entries), xv)


def brute_force_classes(n: int, m: int) -> list[PolyadicGroup]:
    """Every n-ary table on m points, filtered by the axioms and reduced to
    isomorphism-class representatives (first table in lexicographic order)."""
    cells = m ** n
    if m ** cells > kernels.budget(BRUTE_FORCE_LIMIT):
        raise BudgetExceeded(f"{m}^{cells} tables exceed the brute-force budget")
    cls = _Classifier()
    reps = []
    for values in itertools.product(range(m), repeat=cells):
        table = np.array(values, dtype=np.int64).reshape((m,) * n)
        if not verify_polyadic(table, n):
            continue
        P = PolyadicGroup.from_table(table, n, name=f"table{len(reps)}")
        if cls.find(P) is None:
            cls.add(P, len(reps))
            reps.append(P)
    return reps
