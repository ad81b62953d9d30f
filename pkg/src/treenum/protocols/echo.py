"""Echo: a broadcast of ``1`` answered by ``0`` acknowledgments converging on the leader."""

from __future__ import annotations

from .base import LAMBDA, Stage

# standalone alphabet shared with height search
ZERO, ONE, TWO, ACCEPT = 1, 2, 3, 4


class EchoCore:
    """Per-node echo state machine, reusable with any symbol triple.

    A node activates on its first ``one`` (the leader on its own) once
    ``enabled``; earlier ``one``s are buffered and answered on activation. The
    parent is the lowest port among the earliest ``one``s; the node reports it
    with ``accept``, answers the other early ports with ``zero`` and floods
    ``one`` everywhere else. A non-parent port is settled by any ``zero`` or
    ``one`` read on it. When every non-parent port is settled, and no sooner
    than ``hold`` rounds after activation, the node sends ``zero`` to its
    parent. The leader completes when all its ports are settled.

    With ``hold=3`` and all nodes enabled from the start, a node at distance
    ``k`` activates in round ``start + k`` and the leader completes in round
    ``start + 2D + 3``.
    """

    def __init__(self, degree: int, is_leader: bool, hold: int, zero: int, one: int, accept: int):
        self.degree = degree
        self.is_leader = is_leader
        self.hold = hold
        self.zero, self.one, self.accept = zero, one, accept
        self.active_at: int | None = None
        self.parent: int | None = None
        self.children: list[int] = []
        self.pending: dict[int, int] = {}
        self.settled = [False] * degree
        self.unsettled = degree
        self.replies: list[int] = []
        self.sent_up: int | None = None
        self.complete_at: int | None = None

    def _settle(self, k: int) -> None:
        if not self.settled[k]:
            self.settled[k] = True
            self.unsettled -= 1

    def read(self, t: int, inbox) -> None:
        if not any(inbox):
            return
        one, zero, accept = self.one, self.zero, self.accept
        for k, s in enumerate(inbox):
            if s == one:
                if self.active_at is None:
                    self.pending.setdefault(k, t)
                else:
                    self._settle(k)
                    self.replies.append(k)
            elif s == zero:
                self._settle(k)
            elif s == accept:
                self.children.append(k)

    def act(self, t: int, out: list[int], enabled: bool = True) -> None:
        if self.sent_up is not None or self.complete_at is not None:
            if self.replies:
                for k in self.replies:
                    out[k] = self.zero
                self.replies.clear()
            return
        if self.active_at is None:
            if not enabled or not (self.is_leader or self.pending):
                return
            self.active_at = t
            pending = self.pending
            if not self.is_leader:
                first = min(pending.values())
                self.parent = min(k for k, r in pending.items() if r == first)
                self._settle(self.parent)
            for k in range(self.degree):
                if k == self.parent:
                    out[k] = self.accept
                elif k in pending:
                    self._settle(k)
                    out[k] = self.zero
                else:
                    out[k] = self.one
            pending.clear()
        elif self.replies:
            for k in self.replies:
                out[k] = self.zero
            self.replies.clear()
        if self.unsettled:
            return
        if self.is_leader:
            if self.complete_at is None:
                self.complete_at = t
        elif self.sent_up is None and t >= self.active_at + self.hold:
            out[self.parent] = self.zero  # type: ignore[index]
            self.sent_up = t


class EchoProgram:
    """Bare echo; leaves stop after their acknowledgment, so halts are staggered."""

    def __init__(self, know, start):
        self.degree = know["degree"]
        self.core = EchoCore(self.degree, know["is_leader"], 3, ZERO, ONE, ACCEPT)
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        out = [LAMBDA] * self.degree
        if self.halted:
            return out
        core = self.core
        if core.sent_up is not None:
            self._finish()
            return out
        core.read(t, inbox)
        core.act(t, out)
        if core.complete_at is not None:
            self._finish()
        return out

    def _finish(self):
        core = self.core
        self.halted = True
        self.output = {
            "parent": core.parent,
            "children": tuple(sorted(core.children)),
            "complete_at": core.complete_at,
            "active_at": core.active_at,
        }


class EchoStage(Stage):
    name = "echo"
    alphabet = 5

    def make(self, know, start):
        return EchoProgram(know, start)
