"""Bounded normal-coordinate enumeration (pure Python kernel).

Depth-first over tetrahedra in a fixed order, choosing at most one quad
type and its count per tetrahedron.  Triangle coordinates are carried as
potentials in a union-find: each matching equation fixes the difference
of two triangle coordinates once both tetrahedra have their quads.  A
contradiction on a cycle, or a potential spread wider than the bound,
prunes the branch.

Equation record: (stage, ta, va, qa, tb, vb, qb, const) meaning
    T[ta][va] - T[tb][vb] = Q[tb][qb] - Q[ta][qa] + const
"""

from __future__ import annotations

from itertools import product


def enumerate_kernel(n, order, eqs, bound, oct_tet=-1, oct_type=-1, reduced=False, quads_only=False):
    nodes = 4 * n
    parent = list(range(nodes))
    pot = [0] * nodes
    size = [1] * nodes
    lo = [0] * nodes
    hi = [0] * nodes
    qtype = [-1] * n
    qcount = [0] * n
    by_stage = [[] for _ in range(n)]
    for e in eqs:
        by_stage[e[0]].append(e[1:])
    out = []

    def find(x):
        d = 0
        while parent[x] != x:
            d += pot[x]
            x = parent[x]
        return x, d

    def qval(t, q):
        return qcount[t] if qtype[t] == q else 0

    def apply(stage, log):
        for ta, va, qa, tb, vb, qb, c in by_stage[stage]:
            d = qval(tb, qb) - qval(ta, qa) + c
            x, px = find(4 * ta + va)
            y, py = find(4 * tb + vb)
            if x == y:
                if px - py != d:
                    return False
                continue
            # T[y] - T[x] = px - py - d
            off = px - py - d
            if size[x] < size[y]:
                x, y, off = y, x, -off
            nlo = min(lo[x], lo[y] + off)
            nhi = max(hi[x], hi[y] + off)
            log.append((y, x, lo[x], hi[x]))
            parent[y] = x
            pot[y] = off
            size[x] += size[y]
            lo[x], hi[x] = nlo, nhi
            if nhi - nlo > bound:
                return False
        return True

    def undo(log):
        while log:
            y, x, l0, h0 = log.pop()
            parent[y] = y
            pot[y] = 0
            size[x] -= size[y]
            lo[x], hi[x] = l0, h0

    def leaf():
        roots = {}
        vals = [0] * nodes
        for x in range(nodes):
            r, d = find(x)
            vals[x] = d
            roots.setdefault(r, []).append(x)
        groups = []
        for r, members in roots.items():
            m = min(vals[x] for x in members)
            spread = max(vals[x] for x in members) - m
            for x in members:
                vals[x] -= m
            groups.append((members, bound - spread))
        base = []
        for t in range(n):
            row = vals[4 * t: 4 * t + 4] + [0, 0, 0]
            if qtype[t] >= 0:
                row[4 + qtype[t]] = qcount[t]
            base.extend(row)
        if quads_only or reduced:
            if any(base):
                out.append(tuple(base))
            return
        ranges = [range(0, slack + 1) for _, slack in groups]
        for shifts in product(*ranges):
            vec = list(base)
            for (members, _), s in zip(groups, shifts):
                if s:
                    for x in members:
                        t, v = divmod(x, 4)
                        vec[7 * t + v] += s
            if any(vec):
                out.append(tuple(vec))

    def dfs(i):
        if i == n:
            leaf()
            return
        t = order[i]
        choices = [(-1, 0)]
        if t != oct_tet:
            choices += [(q, c) for q in range(3) for c in range(1, bound + 1)]
        for q, c in choices:
            qtype[t], qcount[t] = q, c
            log = []
            if apply(i, log):
                dfs(i + 1)
            undo(log)
        qtype[t], qcount[t] = -1, 0

    dfs(0)
    return out


_QT = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}
_BLOCK0 = ((0, 1), (0, 2), (0, 3))


def _qt(a, b):
    return _QT[(a, b) if a < b else (b, a)]


def component_count(n, width, vec, glues):
    """Number of connected components of the surface with coordinates ``vec``.

    ``glues`` holds (t, f, t2, f2, perm) once per glued face pair.  Piece
    and stacking conventions follow ``normal.reconstruct``.
    """
    base = []
    total = 0
    for t in range(n):
        row = []
        for k in range(width):
            row.append(total)
            total += vec[width * t + k]
        base.append(row)
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def piece(t, f, v, d):
        o = width * t
        tv = vec[o + v]
        if d < tv:
            return base[t][v] + d
        d -= tv
        q = _qt(v, f)
        cq = vec[o + 4 + q]
        if d < cq:
            return base[t][4 + q] + (d if v in _BLOCK0[q] else cq - 1 - d)
        d -= cq
        for m in range(3):
            if m != q and width == 10 and vec[o + 7 + m]:
                if d < vec[o + 7 + m]:
                    return base[t][7 + m] + d
                d -= vec[o + 7 + m]
        raise AssertionError("arc index out of range")

    def count(t, f, v):
        o = width * t
        q = _qt(v, f)
        c = vec[o + v] + vec[o + 4 + q]
        if width == 10:
            c += sum(vec[o + 7 + m] for m in range(3) if m != q)
        return c

    comps = total
    for t, f, t2, f2, perm in glues:
        for v in range(4):
            if v == f:
                continue
            for d in range(count(t, f, v)):
                a, b = find(piece(t, f, v, d)), find(piece(t2, f2, perm[v], d))
                if a != b:
                    parent[b] = a
                    comps -= 1
    return comps
