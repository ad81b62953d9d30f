"""Port-numbered networks, leader configurations, the graph file format and generators."""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class NetworkError(ValueError):
    """Base class for malformed networks and graph files."""


class InvalidPortError(NetworkError):
    pass


class GraphFormatError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class SelfLoopError(NetworkError):
    pass


class DisconnectedGraphError(NetworkError):
    pass


class PortConflictError(NetworkError):
    pass


class MissingLeaderError(NetworkError):
    pass


class InfeasibleError(NetworkError):
    pass


Port = tuple[int, int]


@dataclass(frozen=True)
class Network:
    """An undirected simple connected network seen through local port numbers.

    ``ports[v - 1][k]`` is the far end ``(u, j)`` of port ``k`` of node ``v``.
    Nodes are numbered ``1..V``; ports ``0..deg(v) - 1``.
    """

    ports: tuple[tuple[Port, ...], ...]

    def __post_init__(self) -> None:
        self._validate()

    @property
    def node_count(self) -> int:
        return len(self.ports)

    @property
    def nodes(self) -> range:
        return range(1, len(self.ports) + 1)

    def degree(self, v: int) -> int:
        return len(self.ports[v - 1])

    def invert_port(self, v: int, k: int) -> Port:
        if not 1 <= v <= self.node_count:
            raise InvalidPortError(f"node {v} does not exist")
        row = self.ports[v - 1]
        if not 0 <= k < len(row):
            raise InvalidPortError(f"node {v} has no port {k} (degree {len(row)})")
        return row[k]

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.ports[v - 1]]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted((v, u) for v in self.nodes for u, _ in self.ports[v - 1] if v < u)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.ports) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Network":
        """Build a network assigning ports in edge order at each endpoint."""
        if n < 1:
            raise GraphFormatError("a network needs at least one node")
        rows: list[list[Port]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            _check_pair(n, u, v, seen)
            rows[u - 1].append((v, len(rows[v - 1])))
            rows[v - 1].append((u, len(rows[u - 1]) - 1))
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_port_edges(cls, n: int, edges: Iterable[tuple[int, int, int, int]]) -> "Network":
        """Build a network from explicit ``(u, pu, v, pv)`` wiring."""
        if n < 1:
            raise GraphFormatError("a network needs at least one node")
        edges = list(edges)
        seen: set[tuple[int, int]] = set()
        deg = [0] * n
        for u, _, v, _ in edges:
            _check_pair(n, u, v, seen)
            deg[u - 1] += 1
            deg[v - 1] += 1
        rows: list[list[Port | None]] = [[None] * d for d in deg]
        for u, pu, v, pv in edges:
            for a, pa, b, pb in ((u, pu, v, pv), (v, pv, u, pu)):
                if not 0 <= pa < deg[a - 1]:
                    raise PortConflictError(f"port {pa} of node {a} outside [0, {deg[a - 1] - 1}]")
                if rows[a - 1][pa] is not None:
                    raise PortConflictError(f"port {pa} of node {a} wired twice")
                rows[a - 1][pa] = (b, pb)
        return cls(tuple(tuple(r) for r in rows))  # type: ignore[arg-type]

    def _validate(self) -> None:
        n = len(self.ports)
        if n < 1:
            raise GraphFormatError("a network needs at least one node")
        for v, row in enumerate(self.ports, start=1):
            seen = set()
            for k, (u, j) in enumerate(row):
                if not 1 <= u <= n or not 0 <= j < len(self.ports[u - 1]):
                    raise PortConflictError(f"port ({v}, {k}) points outside the network")
                if (u, j) == (v, k):
                    raise PortConflictError(f"port ({v}, {k}) is a fixed point")
                if self.ports[u - 1][j] != (v, k):
                    raise PortConflictError(f"port ({v}, {k}) is not paired symmetrically")
                if u == v:
                    raise SelfLoopError(f"self-loop at node {v}")
                if u in seen:
                    raise DuplicateEdgeError(f"parallel edges between {v} and {u}")
                seen.add(u)
        if len(bfs_distances(self, 1)) != n:
            raise DisconnectedGraphError("network is not connected")


def _check_pair(n: int, u: int, v: int, seen: set[tuple[int, int]]) -> None:
    if not (1 <= u <= n and 1 <= v <= n):
        raise GraphFormatError(f"edge ({u}, {v}) references a node outside 1..{n}")
    if u == v:
        raise SelfLoopError(f"self-loop at node {u}")
    key = (min(u, v), max(u, v))
    if key in seen:
        raise DuplicateEdgeError(f"duplicate edge {key[0]}-{key[1]}")
    seen.add(key)


def bfs_distances(net: Network, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u, _ in net.ports[v - 1]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


@dataclass(frozen=True)
class Configuration:
    network: Network
    leader: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.leader <= self.network.node_count:
            raise MissingLeaderError(f"leader {self.leader} is not a node of the network")

    def with_leader(self, leader: int) -> "Configuration":
        return Configuration(self.network, leader)


def invert_port(net: Network, v: int, k: int) -> Port:
    return net.invert_port(v, k)


# -- file format -------------------------------------------------------------


def parse_graph(text: str, leader: int | None = None, require_leader: bool = False) -> Configuration:
    """Parse the line-oriented graph format.

    ``leader`` overrides the file's ``leader`` line; with neither present node 1
    leads unless ``require_leader`` is set.
    """
    n = None
    file_leader = None
    implicit: list[tuple[int, int]] = []
    explicit: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            args = [int(x) for x in rest]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer argument") from None
        if head == "nodes" and len(args) == 1:
            if n is not None:
                raise GraphFormatError(f"line {lineno}: repeated 'nodes' line")
            n = args[0]
        elif head == "leader" and len(args) == 1:
            file_leader = args[0]
        elif head == "edge" and len(args) == 2:
            implicit.append((args[0], args[1]))
        elif head == "edge" and len(args) == 4:
            explicit.append((args[0], args[1], args[2], args[3]))
        else:
            raise GraphFormatError(f"line {lineno}: cannot parse {raw!r}")
    if n is None:
        raise GraphFormatError("missing 'nodes' line")
    if implicit and explicit:
        raise GraphFormatError("implicit and explicit edge lines cannot be mixed")
    net = Network.from_port_edges(n, explicit) if explicit else Network.from_edges(n, implicit)
    chosen = leader if leader is not None else file_leader
    if chosen is None:
        if require_leader:
            raise MissingLeaderError("no leader given")
        chosen = 1
    return Configuration(net, chosen)


def format_graph(cfg: Configuration, comment: str | None = None) -> str:
    """Serialize; implicit edge lines when they reproduce the ports, explicit otherwise."""
    net = cfg.network
    lines = [f"# {comment}"] if comment else []
    lines += [f"nodes {net.node_count}", f"leader {cfg.leader}"]
    edges = net.edges()
    if Network.from_edges(net.node_count, edges) == net:
        lines += [f"edge {u} {v}" for u, v in edges]
    else:
        for u, v in edges:
            pu = net.neighbors(u).index(v)
            pv = net.ports[u - 1][pu][1]
            lines.append(f"edge {u} {pu} {v} {pv}")
    return "\n".join(lines) + "\n"


# -- generators ---------------------------------------------------------------

KINDS = ("path", "star", "cycle", "random_tree", "random_connected")


def generate(kind: str, n: int, extra_edges: int = 0, seed: int = 0, leader: int = 1) -> Configuration:
    """Deterministic connected simple graphs, edges emitted in sorted order."""
    if n < 1:
        raise InfeasibleError("n must be at least 1")
    if extra_edges and kind != "random_connected":
        raise InfeasibleError("extra_edges only applies to random_connected")
    rng = random.Random(seed)
    if kind == "path":
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "star":
        edges = [(1, i) for i in range(2, n + 1)]
    elif kind == "cycle":
        if n < 3:
            raise InfeasibleError("a simple cycle needs at least 3 nodes")
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    elif kind in ("random_tree", "random_connected"):
        edges = _random_tree(n, rng)
        if kind == "random_connected":
            room = n * (n - 1) // 2 - (n - 1)
            if extra_edges < 0 or extra_edges > room:
                raise InfeasibleError(f"{extra_edges} extra edges do not fit (at most {room})")
            edges += _extra_edges(n, set(edges), extra_edges, rng)
    else:
        raise InfeasibleError(f"unknown graph kind {kind!r}")
    return Configuration(Network.from_edges(n, sorted(edges)), leader)


def _random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # uniform labelled tree via a random Pruefer sequence
    if n <= 2:
        return [(1, 2)] if n == 2 else []
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [i for i in range(1, n + 1) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def _extra_edges(n: int, present: set[tuple[int, int]], count: int, rng: random.Random) -> list[tuple[int, int]]:
    if count == 0:
        return []
    total = n * (n - 1) // 2
    if count * 3 > total - len(present):
        pool = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1) if (u, v) not in present]
        return rng.sample(pool, count)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < count:
        u, v = rng.sample(range(1, n + 1), 2)
        e = (min(u, v), max(u, v))
        if e not in present:
            chosen.add(e)
    return sorted(chosen)


def from_edge_list(edges: Sequence[tuple[int, int]], n: int | None = None, leader: int = 1) -> Configuration:
    """Convenience constructor for tests and examples."""
    if n is None:
        n = max((max(e) for e in edges), default=1)
    return Configuration(Network.from_edges(n, edges), leader)
