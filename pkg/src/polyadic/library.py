"""Built-in tables for every group of order at most 8, one per isomorphism
class.  Each table goes through :func:`group_from_table` when the module
is imported, so a corrupted entry fails loudly."""

import itertools

from .groups import FiniteGroup, cyclic_group, direct_product, group_from_table, permutation_group


def _closure(gens):
    seen = {tuple(range(len(gens[0])))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[i] for i in g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def symmetric_group(k: int) -> FiniteGroup:
    return permutation_group(list(itertools.permutations(range(k))), name=f"S{k}")


def dihedral_group(k: int) -> FiniteGroup:
    """Symmetries of a regular k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return permutation_group(_closure([rot, ref]), name=f"D{k}")


def quaternion_group() -> FiniteGroup:
    # units 1, i, j, k as 0..3; unit products as (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    # element 2u + s encodes sign (s=0 positive) times unit u
    elems = [(s, u) for u in range(4) for s in (0, 1)]
    index = {e: k for k, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            sign, u = unit[(u1, u2)]
            s = (s1 + s2 + (sign < 0)) % 2
            row.append(index[(s, u)])
        table.append(row)
    return group_from_table(table, name="Q8")


def _named(G: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(G.table, G.identity, G.inverse, name)


def _build():
    z2 = cyclic_group(2)
    return [
        cyclic_group(1),
        z2,
        cyclic_group(3),
        cyclic_group(4),
        _named(direct_product([z2, z2]), "V4"),
        cyclic_group(5),
        cyclic_group(6),
        symmetric_group(3),
        cyclic_group(7),
        cyclic_group(8),
        _named(direct_product([cyclic_group(4), z2]), "Z4xZ2"),
        _named(direct_product([z2, z2, z2]), "Z2^3"),
        _named(dihedral_group(4), "D4"),
        quaternion_group(),
    ]


SMALL_GROUPS: list = _build()


def small_groups(max_order: int = 8, min_order: int = 1) -> list:
    if max_order > 8:
        raise ValueError("the built-in list stops at order 8")
    return [G for G in SMALL_GROUPS if min_order <= G.order <= max_order]


def group_by_name(name: str) -> FiniteGroup:
    for G in SMALL_GROUPS:
        if G.name == name:
            return G
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("S") and name[1:].isdigit() and int(name[1:]) <= 4:
        return symmetric_group(int(name[1:]))
    raise KeyError(name)
