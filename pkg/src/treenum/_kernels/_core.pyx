# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pure``."""

from libc.stdlib cimport malloc, free


def deliver(list out, perm):
    cdef Py_ssize_t i, n = len(perm)
    cdef Py_ssize_t count = 0
    cdef list inbox = [0] * n
    cdef object sym
    for i in range(n):
        sym = out[<Py_ssize_t>perm[i]]
        inbox[i] = sym
        if sym != 0:
            count += 1
    return inbox, count


def lowlink_bridges(int n, offsets, targets):
    cdef int m = len(targets)
    cdef int *off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *tgt = <int *> malloc((m + 1) * sizeof(int))
    cdef int *disc = <int *> malloc((n + 1) * sizeof(int))
    cdef int *low = <int *> malloc((n + 1) * sizeof(int))
    cdef int *st_v = <int *> malloc((n + 1) * sizeof(int))
    cdef int *st_p = <int *> malloc((n + 1) * sizeof(int))
    cdef int *st_i = <int *> malloc((n + 1) * sizeof(int))
    cdef int i, v, u, p, top, root, timer = 0
    bridges = []
    try:
        for i in range(n + 1):
            off[i] = offsets[i]
        for i in range(m):
            tgt[i] = targets[i]
        for i in range(n):
            disc[i] = -1
        for root in range(n):
            if disc[root] != -1:
                continue
            disc[root] = timer
            low[root] = timer
            timer += 1
            top = 0
            st_v[0] = root
            st_p[0] = -1
            st_i[0] = off[root]
            while top >= 0:
                v = st_v[top]
                p = st_p[top]
                i = st_i[top]
                if i < off[v + 1]:
                    st_i[top] = i + 1
                    u = tgt[i]
                    if u == p:
                        continue
                    if disc[u] == -1:
                        disc[u] = timer
                        low[u] = timer
                        timer += 1
                        top += 1
                        st_v[top] = u
                        st_p[top] = v
                        st_i[top] = off[u]
                    elif disc[u] < low[v]:
                        low[v] = disc[u]
                else:
                    top -= 1
                    if p >= 0:
                        if low[v] < low[p]:
                            low[p] = low[v]
                        if low[v] > disc[p]:
                            bridges.append((min(v, p), max(v, p)))
    finally:
        free(off); free(tgt); free(disc); free(low)
        free(st_v); free(st_p); free(st_i)
    bridges.sort()
    return bridges


def removal_bridges(int n, edges):
    cdef int m = len(edges)
    cdef int *eu = <int *> malloc((m + 1) * sizeof(int))
    cdef int *ev = <int *> malloc((m + 1) * sizeof(int))
    cdef int *deg = <int *> malloc((n + 1) * sizeof(int))
    cdef int *off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *nbr = <int *> malloc((2 * m + 1) * sizeof(int))
    cdef int *eid = <int *> malloc((2 * m + 1) * sizeof(int))
    cdef char *seen = <char *> malloc((n + 1) * sizeof(char))
    cdef int *queue = <int *> malloc((n + 1) * sizeof(int))
    cdef int i, j, a, b, v, head, tail, skip
    bridges = []
    try:
        for i in range(n + 1):
            deg[i] = 0
        for i in range(m):
            eu[i] = edges[i][0]
            ev[i] = edges[i][1]
            deg[eu[i]] += 1
            deg[ev[i]] += 1
        off[0] = 0
        for i in range(n):
            off[i + 1] = off[i] + deg[i]
            deg[i] = 0
        for i in range(m):
            a = eu[i]
            b = ev[i]
            nbr[off[a] + deg[a]] = b
            eid[off[a] + deg[a]] = i
            deg[a] += 1
            nbr[off[b] + deg[b]] = a
            eid[off[b] + deg[b]] = i
            deg[b] += 1
        for skip in range(m):
            for i in range(n):
                seen[i] = 0
            a = eu[skip]
            b = ev[skip]
            seen[a] = 1
            queue[0] = a
            head = 0
            tail = 1
            while head < tail:
                v = queue[head]
                head += 1
                for j in range(off[v], off[v + 1]):
                    if eid[j] != skip and not seen[nbr[j]]:
                        seen[nbr[j]] = 1
                        queue[tail] = nbr[j]
                        tail += 1
            if not seen[b]:
                bridges.append((min(a, b), max(a, b)))
    finally:
        free(eu); free(ev); free(deg); free(off)
        free(nbr); free(eid); free(seen); free(queue)
    bridges.sort()
    return bridges
