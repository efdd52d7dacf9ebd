# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_enum_py.enumerate_kernel``; same arguments, same output."""

from libc.stdlib cimport malloc, free


cdef struct State:
    int nodes
    int n
    int bound
    int *parent
    int *pot
    int *size
    int *lo
    int *hi
    int *qtype
    int *qcount
    # equations grouped by stage: eq_start[stage] .. eq_start[stage+1]
    int *eq_start
    int *eq  # 7 ints per equation: ta va qa tb vb qb const
    # rollback log: 4 ints per union
    int *log
    int log_top
    int *vals


cdef inline int find(State *s, int x, int *d) noexcept nogil:
    cdef int acc = 0
    while s.parent[x] != x:
        acc += s.pot[x]
        x = s.parent[x]
    d[0] = acc
    return x


cdef inline int qval(State *s, int t, int q) noexcept nogil:
    if s.qtype[t] == q:
        return s.qcount[t]
    return 0


cdef int apply(State *s, int stage) noexcept nogil:
    cdef int k, ta, va, qa, tb, vb, qb, c, d, x, y, px, py, off, tmp, nlo, nhi
    cdef int *e
    for k in range(s.eq_start[stage], s.eq_start[stage + 1]):
        e = s.eq + 7 * k
        ta = e[0]; va = e[1]; qa = e[2]; tb = e[3]; vb = e[4]; qb = e[5]; c = e[6]
        d = qval(s, tb, qb) - qval(s, ta, qa) + c
        x = find(s, 4 * ta + va, &px)
        y = find(s, 4 * tb + vb, &py)
        if x == y:
            if px - py != d:
                return 0
            continue
        off = px - py - d
        if s.size[x] < s.size[y]:
            tmp = x; x = y; y = tmp
            off = -off
        nlo = s.lo[x]
        if s.lo[y] + off < nlo:
            nlo = s.lo[y] + off
        nhi = s.hi[x]
        if s.hi[y] + off > nhi:
            nhi = s.hi[y] + off
        s.log[4 * s.log_top] = y
        s.log[4 * s.log_top + 1] = x
        s.log[4 * s.log_top + 2] = s.lo[x]
        s.log[4 * s.log_top + 3] = s.hi[x]
        s.log_top += 1
        s.parent[y] = x
        s.pot[y] = off
        s.size[x] += s.size[y]
        s.lo[x] = nlo
        s.hi[x] = nhi
        if nhi - nlo > s.bound:
            return 0
    return 1


cdef void undo(State *s, int mark) noexcept nogil:
    cdef int y, x
    while s.log_top > mark:
        s.log_top -= 1
        y = s.log[4 * s.log_top]
        x = s.log[4 * s.log_top + 1]
        s.parent[y] = y
        s.pot[y] = 0
        s.size[x] -= s.size[y]
        s.lo[x] = s.log[4 * s.log_top + 2]
        s.hi[x] = s.log[4 * s.log_top + 3]


cdef object leaf(State *s, bint reduced, list out):
    cdef int x, r, d, t, v
    cdef int nodes = s.nodes
    cdef int *root = <int *> malloc(nodes * sizeof(int))
    cdef int *low = <int *> malloc(nodes * sizeof(int))
    cdef int *high = <int *> malloc(nodes * sizeof(int))
    try:
        for x in range(nodes):
            low[x] = 1 << 30
            high[x] = -(1 << 30)
        for x in range(nodes):
            r = find(s, x, &d)
            root[x] = r
            s.vals[x] = d
            if d < low[r]:
                low[r] = d
            if d > high[r]:
                high[r] = d
        base = []
        for t in range(s.n):
            for v in range(4):
                x = 4 * t + v
                base.append(s.vals[x] - low[root[x]])
            for v in range(3):
                base.append(s.qcount[t] if s.qtype[t] == v else 0)
        if reduced:
            if any(base):
                out.append(tuple(base))
            return None
        groups = []
        for x in range(nodes):
            if root[x] == x:
                members = [y for y in range(nodes) if root[y] == x]
                groups.append((members, s.bound - (high[x] - low[x])))
        _expand(base, groups, 0, out)
    finally:
        free(root)
        free(low)
        free(high)
    return None


def _expand(list vec, list groups, int i, list out):
    if i == len(groups):
        if any(vec):
            out.append(tuple(vec))
        return
    members, slack = groups[i]
    cdef int sft, y
    for sft in range(slack + 1):
        if sft:
            for y in members:
                vec[7 * (y // 4) + y % 4] += 1
        _expand(vec, groups, i + 1, out)
    if slack:
        for y in members:
            vec[7 * (y // 4) + y % 4] -= slack


cdef object dfs(State *s, int i, int *order, int oct_tet, bint reduced, list out):
    if i == s.n:
        leaf(s, reduced, out)
        return None
    cdef int t = order[i]
    cdef int q, c, mark
    for q in range(-1, 3):
        if q >= 0 and t == oct_tet:
            break
        for c in range(1 if q >= 0 else 0, (s.bound + 1) if q >= 0 else 1):
            s.qtype[t] = q
            s.qcount[t] = c
            mark = s.log_top
            if apply(s, i):
                dfs(s, i + 1, order, oct_tet, reduced, out)
            undo(s, mark)
    s.qtype[t] = -1
    s.qcount[t] = 0
    return None


def enumerate_kernel(int n, order, eqs, int bound, int oct_tet=-1, int oct_type=-1, bint reduced=False, bint quads_only=False):
    cdef State s
    cdef int nodes = 4 * n
    cdef int m = len(eqs)
    cdef int k, stage, j
    cdef int *ord_ = <int *> malloc(max(n, 1) * sizeof(int))
    s.nodes = nodes
    s.n = n
    s.bound = bound
    s.parent = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.pot = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.size = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.lo = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.hi = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.vals = <int *> malloc(max(nodes, 1) * sizeof(int))
    s.qtype = <int *> malloc(max(n, 1) * sizeof(int))
    s.qcount = <int *> malloc(max(n, 1) * sizeof(int))
    s.eq_start = <int *> malloc((n + 1) * sizeof(int))
    s.eq = <int *> malloc(max(7 * m, 1) * sizeof(int))
    s.log = <int *> malloc(max(4 * m, 4) * sizeof(int))
    s.log_top = 0
    out = []
    try:
        for k in range(nodes):
            s.parent[k] = k
            s.pot[k] = 0
            s.size[k] = 1
            s.lo[k] = 0
            s.hi[k] = 0
        for k in range(n):
            s.qtype[k] = -1
            s.qcount[k] = 0
            ord_[k] = order[k]
        # counting sort of equations by stage
        counts = [0] * (n + 1)
        for e in eqs:
            counts[e[0] + 1] += 1
        for k in range(n):
            counts[k + 1] += counts[k]
        for k in range(n + 1):
            s.eq_start[k] = counts[k]
        fill = list(counts)
        for e in eqs:
            stage = e[0]
            j = fill[stage]
            fill[stage] += 1
            for k in range(7):
                s.eq[7 * j + k] = e[k + 1]
        dfs(&s, 0, ord_, oct_tet, reduced or quads_only, out)
    finally:
        free(ord_)
        free(s.parent)
        free(s.pot)
        free(s.size)
        free(s.lo)
        free(s.hi)
        free(s.vals)
        free(s.qtype)
        free(s.qcount)
        free(s.eq_start)
        free(s.eq)
        free(s.log)
    return out


cdef inline int _qt(int a, int b) noexcept nogil:
    if a > b:
        a, b = b, a
    if (a == 0 and b == 1) or (a == 2 and b == 3):
        return 0
    if (a == 0 and b == 2) or (a == 1 and b == 3):
        return 1
    return 2


cdef inline int _find(int *parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline int _count(int *vec, int width, int t, int f, int v) noexcept nogil:
    cdef int o = width * t
    cdef int q = _qt(v, f)
    cdef int c = vec[o + v] + vec[o + 4 + q]
    cdef int m
    if width == 10:
        for m in range(3):
            if m != q:
                c += vec[o + 7 + m]
    return c


cdef inline int _piece(int *vec, int *base, int width, int t, int f, int v, int d) noexcept nogil:
    cdef int o = width * t
    cdef int tv = vec[o + v]
    cdef int q, cq, m
    if d < tv:
        return base[o + v] + d
    d -= tv
    q = _qt(v, f)
    cq = vec[o + 4 + q]
    if d < cq:
        # vertex 0 lies in the first block of every partition
        if v == 0 or v == q + 1:
            return base[o + 4 + q] + d
        return base[o + 4 + q] + cq - 1 - d
    d -= cq
    if width == 10:
        for m in range(3):
            if m != q and vec[o + 7 + m]:
                if d < vec[o + 7 + m]:
                    return base[o + 7 + m] + d
                d -= vec[o + 7 + m]
    return -1


def component_count(int n, int width, vec, glues):
    cdef int size = n * width
    cdef int *cv = <int *> malloc(max(size, 1) * sizeof(int))
    cdef int *base = <int *> malloc(max(size, 1) * sizeof(int))
    cdef int total = 0, k, comps, t, f, t2, f2, v, d, c, a, b, pa, pb
    cdef int *parent
    cdef int g = len(glues)
    cdef int *gl = <int *> malloc(max(8 * g, 1) * sizeof(int))
    try:
        for k in range(size):
            cv[k] = vec[k]
            base[k] = total
            total += cv[k]
        for k in range(g):
            row = glues[k]
            gl[8 * k] = row[0]
            gl[8 * k + 1] = row[1]
            gl[8 * k + 2] = row[2]
            gl[8 * k + 3] = row[3]
            p = row[4]
            gl[8 * k + 4] = p[0]
            gl[8 * k + 5] = p[1]
            gl[8 * k + 6] = p[2]
            gl[8 * k + 7] = p[3]
        parent = <int *> malloc(max(total, 1) * sizeof(int))
        for k in range(total):
            parent[k] = k
        comps = total
        with nogil:
            for k in range(g):
                t = gl[8 * k]; f = gl[8 * k + 1]; t2 = gl[8 * k + 2]; f2 = gl[8 * k + 3]
                for v in range(4):
                    if v == f:
                        continue
                    c = _count(cv, width, t, f, v)
                    for d in range(c):
                        pa = _piece(cv, base, width, t, f, v, d)
                        pb = _piece(cv, base, width, t2, f2, gl[8 * k + 4 + v], d)
                        a = _find(parent, pa)
                        b = _find(parent, pb)
                        if a != b:
                            parent[b] = a
                            comps -= 1
        free(parent)
    finally:
        free(cv)
        free(base)
        free(gl)
    return comps
