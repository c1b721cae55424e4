"""Pure numpy implementation of the exhaustive-search kernels.

Mirrors ``_kernels.pyx`` exactly, including which violation is reported
first.  All tables are flat C-ordered int64 arrays; an ``n``-ary table on
``m`` elements has ``m**n`` entries, the first argument most significant.
"""

import numpy as np

BACKEND = "python"

_CHUNK = 1 << 20


def latin_violation(table, m, n):
    """First line (axis, other coordinates lexicographic) that is not a
    permutation.  Returns ``(axis, coords, value)`` where ``coords`` is the
    cell holding the first repeated ``value`` in that line, or None."""
    cube = np.asarray(table, dtype=np.int64).reshape((m,) * n)
    target = np.arange(m)
    for axis in range(n):
        lines = np.moveaxis(cube, axis, -1).reshape(-1, m)
        bad = np.flatnonzero((np.sort(lines, axis=1) != target).any(axis=1))
        if bad.size == 0:
            continue
        row = int(bad[0])
        others = np.unravel_index(row, (m,) * (n - 1)) if n > 1 else ()
        seen = set()
        for t, v in enumerate(lines[row].tolist()):
            if v in seen:
                coords = [int(c) for c in others]
                coords.insert(axis, t)
                return axis, tuple(coords), v
            seen.add(v)
    return None


def _placements(cube, coords, n):
    """Values of the n ways to bracket one inner application inside an
    outer one, for every (2n-1)-tuple given as coordinate arrays."""
    vals = []
    for p in range(n):
        inner = cube[tuple(coords[p:p + n])]
        outer = coords[:p] + [inner] + coords[p + n:]
        vals.append(cube[tuple(outer)])
    return vals


def assoc_violation(table, m, n):
    """First (2n-1)-tuple in lexicographic order on which two bracketings
    disagree.  Returns ``(tuple, i, j)`` with 0-based placements ``i < j``."""
    cube = np.asarray(table, dtype=np.int64).reshape((m,) * n)
    k = 2 * n - 1
    shape = (m,) * k
    total = m ** k
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        coords = list(np.unravel_index(idx, shape))
        vals = _placements(cube, coords, n)
        first = vals[0]
        diff = np.zeros(idx.shape, dtype=bool)
        for p in range(1, n):
            diff |= vals[p] != first
        hit = np.flatnonzero(diff)
        if hit.size:
            h = int(hit[0])
            j = next(p for p in range(1, n) if vals[p][h] != first[h])
            return tuple(int(c[h]) for c in coords), 0, j
    return None


def hom_violation(src, tgt, fmap, ms, mt, n):
    """First n-tuple ``t`` (lexicographic) with map(f(t)) != g(map(t))."""
    src = np.asarray(src, dtype=np.int64)
    fmap = np.asarray(fmap, dtype=np.int64)
    tcube = np.asarray(tgt, dtype=np.int64).reshape((mt,) * n)
    lhs = fmap[src]
    rhs = tcube[np.ix_(*([fmap] * n))].reshape(-1)
    bad = np.flatnonzero(lhs != rhs)
    if bad.size == 0:
        return None
    return tuple(int(c) for c in np.unravel_index(int(bad[0]), (ms,) * n))


def enumerate_hom_maps(src, tgt, ms, mt, n):
    """Every map ``ms -> mt`` (lexicographic, first point most significant)
    that is a homomorphism, as a ``(k, ms)`` array.  No pruning: each of the
    ``mt**ms`` maps is tested."""
    src = np.asarray(src, dtype=np.int64)
    tcube = np.asarray(tgt, dtype=np.int64).reshape((mt,) * n)
    cells = ms ** n
    coords = np.unravel_index(np.arange(cells), (ms,) * n)
    total = mt ** ms
    chunk = max(1, (1 << 22) // max(cells, 1))
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        maps = np.stack(np.unravel_index(idx, (mt,) * ms), axis=1) if ms else np.zeros((idx.size, 0), np.int64)
        lhs = maps[:, src]
        rhs = tcube[tuple(maps[:, c] for c in coords)]
        ok = (lhs == rhs).all(axis=1)
        if ok.any():
            found.append(maps[ok])
    if not found:
        return np.zeros((0, ms), dtype=np.int64)
    return np.concatenate(found).astype(np.int64)
