"""Neighbor-number exchange and the bridge search built on the numerated tree."""

from __future__ import annotations

from ..certify import decode_tree
from .base import LAMBDA, Stage

BIT = (1, 2)  # wire codes for binary/unary 0 and 1


def number_width(v: int) -> int:
    """Bits needed for numbers in ``[1, v]``: ceil(log2(v + 1))."""
    return v.bit_length()


class ExchangeProgram:
    """Every node sends its number, MSB first in fixed width, on every port."""

    def __init__(self, know, start):
        self.degree = know["degree"]
        self.start = start
        self.width = number_width(know["V"])
        number = know["number"]
        self.bits = [(number >> (self.width - 1 - i)) & 1 for i in range(self.width)]
        self.heard = [0] * self.degree
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        i = t - self.start
        if self.halted:
            return [LAMBDA] * self.degree
        if i >= 1:
            self.heard = [(h << 1) | (s - 1) for h, s in zip(self.heard, inbox)]
        if i >= self.width:
            self.halted = True
            self.output = {"neighbor_numbers": tuple(self.heard)}
            return [LAMBDA] * self.degree
        return [BIT[self.bits[i]]] * self.degree


class ExchangeStage(Stage):
    name = "exchange"
    alphabet = 3

    def make(self, know, start):
        return ExchangeProgram(know, start)


class FindBridgesProgram:
    """Convergecast of ``D - g`` in unary, merged by pointwise maximum.

    ``g(v)`` is the least height reachable from the subtree of ``v`` through a
    cross-edge, where a cross-edge counts at the height of its endpoints'
    lowest common ancestor in the tree (the node's own height when it has no
    cross-edges). The edge above ``v`` is a bridge iff ``g(v) = h(v)``.
    """

    def __init__(self, know, start):
        self.degree = know["degree"]
        self.is_root = know["is_leader"]
        self.parent = know.get("parent")
        self.children = tuple(know.get("children", ()))
        self.number = know["number"]
        self.d = know["D"]
        cert = know["cert"]
        tree = decode_tree(cert.replace("2", "1"))
        self.h = tree.depth[self.number]
        tree_ports = set(self.children)
        if self.parent is not None:
            tree_ports.add(self.parent)
        nbrs = self.nbrs = know["neighbor_numbers"]
        lowest = self.h
        for k in range(self.degree):
            if k not in tree_ports:
                lowest = min(lowest, tree.depth[tree.lca(self.number, nbrs[k])])
        self.p = lowest
        self.own = self.d - lowest
        self.child_ones = [0] * len(self.children)
        self.child_g = [None] * len(self.children)
        self.pos = 0
        self.sent_end = self.is_root
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        out = [LAMBDA] * self.degree
        if self.halted:
            return out
        for i, k in enumerate(self.children):
            s = inbox[k]
            if s == BIT[1]:
                self.child_ones[i] += 1
            elif s == BIT[0]:
                self.child_g[i] = self.child_ones[i]
        if not self.sent_end:
            j = self.pos
            if self.own > j or any(c > j for c in self.child_ones):
                out[self.parent] = BIT[1]
                self.pos += 1
            elif all(g is not None for g in self.child_g):
                out[self.parent] = BIT[0]
                self.sent_end = True
            return out
        if any(g is None for g in self.child_g):
            return out
        self.halted = True
        self._finish()
        return out

    def _finish(self):
        g_prime = max([self.own] + self.child_g)
        bridge_children = tuple(k for k, g in zip(self.children, self.child_g) if g == self.d - self.h - 1)
        parent_bridge = not self.is_root and g_prime == self.d - self.h
        ends = list(bridge_children) + ([self.parent] if parent_bridge else [])
        adjacent = sorted((min(self.number, self.nbrs[k]), max(self.number, self.nbrs[k])) for k in ends)
        self.output = {
            "g_prime": g_prime,
            "P": self.p,
            "bridge_children": bridge_children,
            "parent_bridge": parent_bridge,
            "adjacent_bridges": adjacent,
        }


class FindBridgesStage(Stage):
    name = "bridges"
    alphabet = 3

    def make(self, know, start):
        return FindBridgesProgram(know, start)
