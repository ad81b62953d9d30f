"""Tree numeration: subtree certificates stream up while node certificates stream down."""

from __future__ import annotations

from collections import deque

from ..certify import ChildCertStream, SubtreeStream, decode_bridges
from .base import CODE_DIGIT, DIGIT_CODE, LAMBDA, Stage


class NumerateProgram:
    """Needs ``parent``/``children`` ports from the height search.

    Upward, the node merges its children's subtree-certificate prefixes into
    its own and forwards one symbol per round to the parent. Downward, it
    rewrites its own certificate into each child's as symbols arrive (the root
    feeds the certificate it assembles itself). It stops once its certificate
    is complete and every queued symbol has left.

    In ``bridges`` mode the block marks carry bridge flags (``2`` for a child
    behind a bridge) and the assembled certificate is relayed verbatim.
    """

    def __init__(self, know, start, bridges=False):
        self.degree = know["degree"]
        self.is_root = know["is_leader"]
        self.parent = know.get("parent")
        self.children = tuple(know.get("children", ()))
        self.bridges = bridges
        if bridges:
            marked = set(know.get("bridge_children", ()))
            block = "".join("2" if k in marked else "1" for k in self.children) + "0"
        else:
            block = "1" * len(self.children) + "0"
        self.up = SubtreeStream(block)
        self.up_sent = 0
        self.down = ChildCertStream(len(self.children), is_root=self.is_root, relay=bridges)
        self.root_fed = 0
        self.queues = [deque() for _ in self.children]
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        out = [LAMBDA] * self.degree
        if self.halted:
            return out
        up, down, queues = self.up, self.down, self.queues
        for i, k in enumerate(self.children):
            s = inbox[k]
            if s:
                up.push(i, CODE_DIGIT[s])
        if not up.complete:
            up.advance()
        if self.is_root:
            while self.root_fed < len(up.out):
                self._fan_out(down.push(up.out[self.root_fed]))
                self.root_fed += 1
        else:
            s = inbox[self.parent]
            if s:
                self._fan_out(down.push(CODE_DIGIT[s]))
            if self.up_sent < len(up.out):
                out[self.parent] = DIGIT_CODE[up.out[self.up_sent]]
                self.up_sent += 1
        busy = False
        for k, q in zip(self.children, queues):
            if q:
                out[k] = DIGIT_CODE[q.popleft()]
                busy = True
        if busy or not down.complete or not up.complete:
            return out
        if not self.is_root and (out[self.parent] or self.up_sent < len(up.out)):
            return out
        self.halted = True
        self._finish()
        return out

    def _fan_out(self, symbols):
        for q, s in zip(self.queues, symbols):
            q.append(s)

    def _finish(self):
        cert = "".join(self.up.out) if self.is_root else "".join(self.down.received)
        if self.bridges:
            pairs = sorted((min(a, b), max(a, b)) for a, b in decode_bridges(cert))
            self.output = {"bridges_cert": cert, "bridges": pairs}
        else:
            self.output = {"number": self.down.number, "cert": cert, "V": cert.count("0")}


class NumerateStage(Stage):
    name = "numerate"
    alphabet = 4

    def make(self, know, start):
        return NumerateProgram(know, start)


class DistributeStage(Stage):
    name = "distribute"
    alphabet = 4

    def make(self, know, start):
        return NumerateProgram(know, start, bridges=True)
