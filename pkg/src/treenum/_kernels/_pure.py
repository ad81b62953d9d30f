"""Pure-Python kernels; the compiled ``_core`` module mirrors these signatures."""

from collections import deque


def deliver(out, perm):
    """Route one round of symbols: ``inbox[i] = out[perm[i]]``.

    ``perm`` is the flat port involution. Returns ``(inbox, non_empty)``.
    """
    inbox = [out[j] for j in perm]
    return inbox, len(inbox) - inbox.count(0)


def lowlink_bridges(n, offsets, targets):
    """Bridges of a simple connected graph in CSR form (nodes ``0..n-1``).

    Iterative DFS with low-link values; parent edge skipped by node since the
    graph has no parallel edges.
    """
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, offsets[root])]
        while stack:
            v, parent, i = stack[-1]
            if i < offsets[v + 1]:
                stack[-1] = (v, parent, i + 1)
                u = targets[i]
                if u == parent:
                    continue
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, v, offsets[u]))
                elif disc[u] < low[v]:
                    low[v] = disc[u]
            else:
                stack.pop()
                if parent >= 0:
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > disc[parent]:
                        bridges.append((min(v, parent), max(v, parent)))
    bridges.sort()
    return bridges


def removal_bridges(n, edges):
    """Bridges by deleting each edge and re-checking connectivity, O(E (V + E))."""
    adj = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    bridges = []
    for skip, (a, b) in enumerate(edges):
        seen = [False] * n
        seen[a] = True
        queue = deque([a])
        while queue:
            v = queue.popleft()
            for u, idx in adj[v]:
                if idx != skip and not seen[u]:
                    seen[u] = True
                    queue.append(u)
        if not seen[b]:
            bridges.append((min(a, b), max(a, b)))
    bridges.sort()
    return bridges
