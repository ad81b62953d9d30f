"""Centralized reference algorithms used as ground truth for the protocols."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import _kernels
from .network import Configuration, Network


@dataclass
class RootedTree:
    """A rooted tree with ordered children; nodes are arbitrary integer ids."""

    root: int
    parent: dict[int, int] = field(default_factory=dict)
    children: dict[int, list[int]] = field(default_factory=dict)
    depth: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_children(cls, root: int, children: dict[int, list[int]]) -> "RootedTree":
        tree = cls(root)
        tree.depth[root] = 0
        tree.children[root] = []
        queue = deque([root])
        while queue:
            v = queue.popleft()
            kids = list(children.get(v, ()))
            tree.children[v] = kids
            for c in kids:
                tree.parent[c] = v
                tree.depth[c] = tree.depth[v] + 1
                queue.append(c)
        return tree

    @property
    def size(self) -> int:
        return len(self.depth)

    def bfs_order(self) -> list[int]:
        order = [self.root]
        for v in order:
            order.extend(self.children[v])
        return order

    def relabel(self, mapping: dict[int, int]) -> "RootedTree":
        return RootedTree.from_children(
            mapping[self.root], {mapping[v]: [mapping[c] for c in cs] for v, cs in self.children.items()}
        )

    def path(self, a: int, b: int) -> list[int]:
        """Unique tree path from ``a`` to ``b``."""
        up_a, up_b = [a], [b]
        while self.depth[up_a[-1]] > self.depth[up_b[-1]]:
            up_a.append(self.parent[up_a[-1]])
        while self.depth[up_b[-1]] > self.depth[up_a[-1]]:
            up_b.append(self.parent[up_b[-1]])
        while up_a[-1] != up_b[-1]:
            up_a.append(self.parent[up_a[-1]])
            up_b.append(self.parent[up_b[-1]])
        return up_a + up_b[-2::-1]

    def lca(self, a: int, b: int) -> int:
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a


def bfs_tree(cfg: Configuration) -> RootedTree:
    """BFS tree from the leader under the fixed tie-breaks.

    A node's parent is the shallower neighbor behind its lowest port; children
    are ordered by the parent's port toward them.
    """
    net = cfg.network
    dist = _distances(net, cfg.leader)
    children: dict[int, list[tuple[int, int]]] = {v: [] for v in net.nodes}
    for v in net.nodes:
        if v == cfg.leader:
            continue
        for u, j in net.ports[v - 1]:
            if dist[u] == dist[v] - 1:
                children[u].append((j, v))
                break
    return RootedTree.from_children(cfg.leader, {v: [c for _, c in sorted(cs)] for v, cs in children.items()})


def _distances(net: Network, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u, _ in net.ports[v - 1]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def height(cfg: Configuration) -> int:
    return max(_distances(cfg.network, cfg.leader).values())


def canonical_numeration(tree: RootedTree) -> dict[int, int]:
    """Numeration via BFS: depth first, then parent order, then sibling order."""
    return {v: i for i, v in enumerate(tree.bfs_order(), start=1)}


def _csr(net: Network) -> tuple[list[int], list[int]]:
    offsets = [0]
    targets: list[int] = []
    for row in net.ports:
        targets.extend(u - 1 for u, _ in row)
        offsets.append(len(targets))
    return offsets, targets


def bridges_dfs(cfg: Configuration) -> set[tuple[int, int]]:
    """Exact bridge set by DFS low-link."""
    net = cfg.network
    offsets, targets = _csr(net)
    return {(u + 1, v + 1) for u, v in _kernels.lowlink_bridges(net.node_count, offsets, targets)}


def bridges_by_removal(cfg: Configuration) -> set[tuple[int, int]]:
    """Bridge set by deleting each edge in turn and testing connectivity."""
    net = cfg.network
    edges = [(u - 1, v - 1) for u, v in net.edges()]
    return {(u + 1, v + 1) for u, v in _kernels.removal_bridges(net.node_count, edges)}


@dataclass(frozen=True)
class CrossEdgeProfile:
    """Per-node quantities for the bridge criterion.

    ``p_endpoint``/``g_endpoint`` use the minimum endpoint height of each
    cross-edge; ``p``/``g`` use the height of the endpoints' lowest common
    ancestor, which is what decides bridges in a BFS tree.
    """

    h: int
    p_endpoint: int
    g_endpoint: int
    p: int
    g: int
    g_prime: int


def cross_edge_profile(cfg: Configuration, tree: RootedTree | None = None) -> dict[int, CrossEdgeProfile]:
    net = cfg.network
    if tree is None:
        tree = bfs_tree(cfg)
    d = max(tree.depth.values())
    h = tree.depth
    p_end: dict[int, int] = {}
    p_lca: dict[int, int] = {}
    for v in net.nodes:
        tree_nbrs = set(tree.children[v])
        if v in tree.parent:
            tree_nbrs.add(tree.parent[v])
        cross = [u for u in net.neighbors(v) if u not in tree_nbrs]
        p_end[v] = min((min(h[v], h[u]) for u in cross), default=h[v])
        p_lca[v] = min((h[tree.lca(v, u)] for u in cross), default=h[v])
    g_end: dict[int, int] = {}
    g: dict[int, int] = {}
    for v in reversed(tree.bfs_order()):
        g_end[v] = min([p_end[v]] + [g_end[c] for c in tree.children[v]])
        g[v] = min([p_lca[v]] + [g[c] for c in tree.children[v]])
    return {v: CrossEdgeProfile(h[v], p_end[v], g_end[v], p_lca[v], g[v], d - g[v]) for v in net.nodes}


def bridges_from_profile(tree: RootedTree, profile: dict[int, CrossEdgeProfile], endpoint: bool = False) -> set[tuple[int, int]]:
    """Tree edges ``(parent, v)`` with ``g(v) = h(v)``."""
    out = set()
    for v, par in tree.parent.items():
        gv = profile[v].g_endpoint if endpoint else profile[v].g
        if gv == profile[v].h:
            out.add((min(v, par), max(v, par)))
    return out
