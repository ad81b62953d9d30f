"""Height search: echo, then a ``2`` broadcast that fixes a common stopping round."""

from __future__ import annotations

from collections import deque

from .base import LAMBDA, Stage
from .echo import ACCEPT, ONE, TWO, ZERO, EchoCore


class HeightProgram:
    """One node of the height search.

    The leader broadcasts ``two`` the round after its echo completes, so a node
    at distance ``k`` first reads ``one`` at ``P = start + k`` and reads ``two``
    at ``S = start + 2D + 4 + k``; hence ``D = (S - P - 4) / 2``.

    With ``known_start`` the node knows ``start`` (it is the stage boundary)
    and stops at ``S + D - (P - start) = start + 3D + 4``. Otherwise, as when
    the leader launches the search at a moment only it knows, the ``two`` is
    followed down the tree by the child's depth in unary (``1`` * (depth) then
    ``0``, one extra ``1`` prepended per hop) and every node stops at
    ``S - depth + 2D + 1 = start + 4D + 5``. A ``known_depth`` from an
    earlier stage skips the stream and restores the ``start + 3D + 4`` stop.
    """

    def __init__(self, know, start, known_start=True, symbols=(ZERO, ONE, TWO, ACCEPT), enabled_from=None, known_depth=None):
        self.degree = know["degree"]
        self.is_leader = know["is_leader"]
        self.start = start
        self.known_start = known_start
        zero, one, two, accept = symbols
        self.zero, self.one, self.two = zero, one, two
        self.core = EchoCore(self.degree, self.is_leader, 3, zero, one, accept)
        self.enabled_from = start if enabled_from is None else enabled_from
        self.s_round: int | None = None
        self.depth: int | None = None
        self.d: int | None = None
        self.halt_at: int | None = None
        self.down: deque[int] = deque()
        self.ones_read = 0
        self.known_depth = known_depth
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        out = [LAMBDA] * self.degree
        if self.halted:
            return out
        if self.degree == 0:
            # lone leader: nothing to search
            if t < self.enabled_from:
                return out
            self.d, self.depth = 0, 0
            return self._halt(out)
        core = self.core
        if self.s_round is None:
            core.read(t, inbox)
            if not self.is_leader and core.parent is not None and inbox[core.parent] == self.two:
                self._got_two(t, core.active_at)
            else:
                core.act(t, out, enabled=t >= self.enabled_from)
                if self.is_leader and core.complete_at is not None and t == core.complete_at + 1:
                    self._got_two(t, core.active_at)
            if self.s_round == t:
                for k in core.children:
                    out[k] = self.two
        elif self.down or self.depth is None:
            self._depth_stream(t, inbox, out)
        if self.halt_at is not None and t >= self.halt_at:
            return self._halt(out)
        return out

    def _got_two(self, t, p_round):
        self.s_round = t
        self.d = (t - p_round - 4) // 2
        if self.known_start:
            self.depth = p_round - self.start
            self.halt_at = t + self.d - self.depth
        elif self.known_depth is not None:
            self.depth = self.known_depth
            self.halt_at = t + self.d - self.depth
        else:
            self.down.append(self.one)
            if self.is_leader:
                self.depth = 0
                self.down.append(self.zero)
                self.halt_at = t + 2 * self.d + 1

    def _depth_stream(self, t, inbox, out):
        if self.depth is None:
            s = inbox[self.core.parent]
            if s == self.one:
                self.ones_read += 1
                self.down.append(s)
            elif s == self.zero:
                self.down.append(s)
                self.depth = self.ones_read
                self.halt_at = self.s_round - self.depth + 2 * self.d + 1
        if self.down:
            s = self.down.popleft()
            for k in self.core.children:
                out[k] = s

    def _halt(self, out):
        for k in range(self.degree):
            out[k] = LAMBDA
        self.halted = True
        core = self.core
        self.output = {
            "D": self.d,
            "depth": self.depth,
            "parent": core.parent,
            "children": tuple(sorted(core.children)),
            "active_at": core.active_at,
            "echo_complete_at": core.complete_at,
            "s_round": self.s_round,
        }
        return out


class HeightStage(Stage):
    name = "height"
    alphabet = 5

    def make(self, know, start):
        return HeightProgram(know, start)
