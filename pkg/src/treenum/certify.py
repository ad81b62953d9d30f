"""BFS-certificates of rooted trees.

A certificate is a string over ``0``/``1``/``2``: one block per node in BFS
numeration order, each block one mark per child followed by ``0``. A node
certificate turns the mark of that node's incoming edge into ``2``; a bridges
certificate does so for every child whose parent edge is a bridge.

Besides the batch encoders this module carries the two streaming primitives
the numeration protocol is built from: merging children's subtree prefixes
into the parent's (``SubtreeStream``) and deriving a child's certificate from
the parent's as it arrives (``ChildCertStream``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .oracle import RootedTree


class CertificateError(ValueError):
    pass


def is_full(prefix: str) -> bool:
    """True when the prefix is a complete certificate: zeros exceed marks by one."""
    zeros = prefix.count("0")
    return zeros == len(prefix) - zeros + 1


@dataclass
class PrefixStream:
    emitted: str = ""

    @property
    def complete(self) -> bool:
        return is_full(self.emitted)

    def extend(self, symbols: str) -> None:
        if self.complete and symbols:
            raise CertificateError("stream already complete")
        self.emitted += symbols


def encode_tree(tree: RootedTree, marked: Iterable[int] = ()) -> str:
    """S(T) in numeration-via-BFS order; children in ``marked`` get ``2``."""
    marked = set(marked)
    return "".join(
        "".join("2" if c in marked else "1" for c in tree.children[v]) + "0" for v in tree.bfs_order()
    )


def _check_symbols(cert: str) -> None:
    bad = set(cert) - {"0", "1", "2"}
    if bad:
        raise CertificateError(f"illegal symbols {sorted(bad)}")


def decode_tree(cert: str) -> RootedTree:
    """Tree with nodes named by their BFS numbers ``1..V``."""
    _check_symbols(cert)
    children: dict[int, list[int]] = {1: []}
    block, nxt = 1, 2
    for pos, s in enumerate(cert):
        if block >= nxt:
            raise CertificateError(f"trailing symbols after position {pos}")
        if s == "0":
            block += 1
        else:
            children[block].append(nxt)
            children[nxt] = []
            nxt += 1
    if block != nxt:
        raise CertificateError("certificate is incomplete")
    return RootedTree.from_children(1, children)


def node_count(cert: str) -> int:
    return cert.count("0")


def node_certificate(cert: str, i: int) -> str:
    """Certificate of node ``i``; node 1 (the root) keeps the plain certificate."""
    v = node_count(cert)
    if not 1 <= i <= v:
        raise CertificateError(f"node {i} outside [1, {v}]")
    if "2" in cert:
        raise CertificateError("expected a plain BFS-certificate")
    if i == 1:
        return cert
    pos = _nth_mark(cert, i - 1)
    return cert[:pos] + "2" + cert[pos + 1 :]


def _nth_mark(cert: str, n: int) -> int:
    seen = 0
    for pos, s in enumerate(cert):
        if s != "0":
            seen += 1
            if seen == n:
                return pos
    raise CertificateError(f"certificate has fewer than {n} marks")


def decode_position(cert: str) -> tuple[int, int, int]:
    """``(number, parent_number, depth)`` of the node owning a node certificate."""
    _check_symbols(cert)
    if cert.count("2") != 1:
        raise CertificateError(f"expected exactly one '2', found {cert.count('2')}")
    pos = cert.index("2")
    number = cert[:pos].count("1") + 2
    parent = cert[:pos].count("0") + 1
    tree = decode_tree(cert)
    return number, parent, tree.depth[number]


def tree_path(cert: str, a: int, b: int) -> list[int]:
    tree = decode_tree(cert.replace("2", "1"))
    v = tree.size
    for x in (a, b):
        if not 1 <= x <= v:
            raise CertificateError(f"node {x} outside [1, {v}]")
    return tree.path(a, b)


def bridges_certificate(cert: str, bridge_children: Iterable[int]) -> str:
    v = node_count(cert)
    out = list(cert)
    for i in set(bridge_children):
        if not 2 <= i <= v:
            raise CertificateError(f"bridge child {i} outside [2, {v}]")
        out[_nth_mark(cert, i - 1)] = "2"
    return "".join(out)


def decode_bridges(bcert: str) -> set[tuple[int, int]]:
    """``{(parent_number, child_number)}`` for every ``2`` mark."""
    _check_symbols(bcert)
    decode_tree(bcert)
    out = set()
    block, child = 1, 2
    for s in bcert:
        if s == "0":
            block += 1
        else:
            if s == "2":
                out.add((block, child))
            child += 1
    return out


def format_slices(cert: str) -> str:
    """Human form with slices separated by `` – ``; purely cosmetic."""
    tree = decode_tree(cert.replace("2", "1"))
    blocks = []
    start = 0
    for _ in range(tree.size):
        end = cert.index("0", start) + 1
        blocks.append(cert[start:end])
        start = end
    order = range(1, tree.size + 1)
    slices: list[list[str]] = []
    for i in order:
        d = tree.depth[i]
        if d == len(slices):
            slices.append([])
        slices[d].append(blocks[i - 1])
    return " – ".join(" ".join(s) for s in slices)


# -- prefix computations ---------------------------------------------------


def _layers(prefix: str) -> tuple[list[str], str, bool]:
    """Split a certificate prefix into complete slices, a partial tail, and a done flag."""
    layers = []
    start = 0
    need, zeros, marks = 1, 0, 0
    for pos, s in enumerate(prefix):
        if s == "0":
            zeros += 1
            if zeros == need:
                layers.append(prefix[start : pos + 1])
                start = pos + 1
                if marks == 0:
                    return layers, "", True
                need, zeros, marks = marks, 0, 0
        else:
            marks += 1
    return layers, prefix[start:], False


def subtree_prefix(block: str, child_prefixes: Sequence[str]) -> str:
    """Longest prefix of S(T_v) computable from ``v``'s block and children's prefixes.

    Slice ``m`` of S(T_v) is slice ``m - 1`` of each child's certificate, in
    child order.
    """
    out = block
    parsed = [_layers(p) for p in child_prefixes]
    j = 0
    while parsed:
        for layers, tail, done in parsed:
            if j < len(layers):
                out += layers[j]
            elif not done:
                return out + tail
        if all(done and len(layers) <= j + 1 for layers, _, done in parsed):
            return out
        j += 1
    return out


def subtree_prefix_step(own_children: int | str, child_streams: Sequence[PrefixStream | str], own_emitted: int) -> str:
    """Symbols of S(T_v) beyond the first ``own_emitted`` that are now computable."""
    block = own_children if isinstance(own_children, str) else "1" * own_children + "0"
    prefixes = [s.emitted if isinstance(s, PrefixStream) else s for s in child_streams]
    return subtree_prefix(block, prefixes)[own_emitted:]


def child_prefix_extract(own_prefix: str, k: int, children: int | None = None, is_root: bool = False) -> str:
    """Prefix of the ``k``-th child's node certificate (``k`` from 1)."""
    if children is not None and not 1 <= k <= children:
        raise CertificateError(f"child index {k} outside [1, {children}]")
    if k < 1:
        raise CertificateError(f"child index {k} must be positive")
    stream = ChildCertStream(k, is_root=is_root)
    return "".join(stream.push(s)[k - 1] for s in own_prefix)


class SubtreeStream:
    """Incremental S(T_v): feed children's symbols, read newly computable output."""

    def __init__(self, block: str):
        self.children = len(block) - 1
        self.out: list[str] = list(block)
        k = self.children
        self._buf: list[list[str]] = [[] for _ in range(k)]
        self._ends: list[list[int]] = [[] for _ in range(k)]
        self._need = [1] * k
        self._zeros = [0] * k
        self._marks = [0] * k
        self._done = [False] * k
        self._pos = [0] * k
        self._layer = 0
        self._cur = 0
        self.complete = k == 0

    def push(self, c: int, s: str) -> None:
        buf = self._buf[c]
        buf.append(s)
        if s == "0":
            self._zeros[c] += 1
            if self._zeros[c] == self._need[c]:
                self._ends[c].append(len(buf))
                if self._marks[c] == 0:
                    self._done[c] = True
                else:
                    self._need[c] = self._marks[c]
                self._zeros[c] = self._marks[c] = 0
        else:
            self._marks[c] += 1

    def advance(self) -> None:
        k = self.children
        while not self.complete:
            c, j = self._cur, self._layer
            ends = self._ends[c]
            if j < len(ends):
                end = ends[j]
                self.out.extend(self._buf[c][self._pos[c] : end])
                self._pos[c] = end
            elif not self._done[c]:
                buf = self._buf[c]
                self.out.extend(buf[self._pos[c] :])
                self._pos[c] = len(buf)
                return
            c += 1
            if c == k:
                c, j = 0, j + 1
                if all(self._done[i] and len(self._ends[i]) <= j for i in range(k)):
                    self.complete = True
            self._cur, self._layer = c, j


class ChildCertStream:
    """Derives children's certificates symbol by symbol from this node's own.

    With ``relay`` set the input is forwarded verbatim (bridges certificate).
    """

    def __init__(self, children: int, is_root: bool = False, relay: bool = False):
        self.children = children
        self.relay = relay
        self.number = 1 if is_root else None
        self._zeros = 0
        self._marks = 0
        self._block_pos = 0
        self.received: list[str] = []

    def push(self, s: str) -> list[str]:
        self.received.append(s)
        block = self._zeros + 1
        self._block_pos += 1
        out_s = s
        if s == "0":
            self._zeros += 1
            self._block_pos = 0
        else:
            self._marks += 1
            if s == "2" and not self.relay and self.number is None:
                self.number = self._marks + 1
                out_s = "1"
        if self.relay or self.number != block or s == "0":
            return [out_s] * self.children
        i = self._block_pos
        return [("2" if k == i else out_s) for k in range(1, self.children + 1)]

    @property
    def complete(self) -> bool:
        return self._zeros == self._marks + 1
