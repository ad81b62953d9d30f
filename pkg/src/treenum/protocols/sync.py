"""Clock synchronization: turn a locally terminating stage into one where all nodes stop together.

Every wire symbol is a pair ``(inner, control)`` encoded as
``inner * CONTROL + control``. The first component replays the inner stage
untouched. On the control channel the leader, once its inner program has
stopped, runs an echo whose messages other nodes only answer after their own
inner program stopped; echo completion therefore certifies global inner
termination. The leader then starts a height search on fresh symbols, which
brings every node to the same stopping round. A node that already knows its
depth (every stage after the first height search) stops at the height
search's usual ``3D + 4`` mark; otherwise depth is streamed down first.
"""

from __future__ import annotations

from .base import LAMBDA, Stage
from .echo import EchoCore
from .height import HeightProgram

# control-channel alphabet: termination echo, then height search
E0, E1, EP = 1, 2, 3
H0, H1, H2, HP = 4, 5, 6, 7
CONTROL = 8  # wire symbol = inner << 3 | control

NEVER = 1 << 62


class SyncProgram:
    def __init__(self, inner_stage: Stage, know, start):
        self.degree = know["degree"]
        self.is_leader = know["is_leader"]
        self.inner = inner_stage.make(know, start)
        self.inner_halt: int | None = None
        self.echo = EchoCore(self.degree, self.is_leader, 1, E0, E1, EP)
        self.height = HeightProgram(
            know,
            start,
            known_start=False,
            symbols=(H0, H1, H2, HP),
            enabled_from=NEVER if self.is_leader else start,
            known_depth=know.get("depth"),
        )
        self._quiet = [LAMBDA] * self.degree
        self.halted = False
        self.output: dict = {}

    def step(self, t, inbox):
        deg = self.degree
        quiet = self._quiet
        if self.halted:
            return quiet
        busy = any(inbox)
        if busy:
            first = [s >> 3 for s in inbox]
            control = [s & 7 for s in inbox]
            busy = any(control)
        else:
            first = quiet
        if self.inner_halt is None:
            inner_out = self.inner.step(t, first)
            if self.inner.halted:
                self.inner_halt = t
        else:
            inner_out = quiet
        if not busy and self._idle():
            return [a << 3 for a in inner_out] if any(inner_out) else quiet
        if busy:
            echo_in = [s if s < H0 else LAMBDA for s in control]
            height_in = [s if s >= H0 else LAMBDA for s in control]
        else:
            echo_in = height_in = quiet

        echo = self.echo
        echo_out = [LAMBDA] * deg
        echo.read(t, echo_in)
        echo.act(t, echo_out, enabled=self.inner_halt is not None)
        if self.is_leader and echo.complete_at is not None and self.height.enabled_from == NEVER:
            self.height.enabled_from = echo.complete_at + 1
        height_out = self.height.step(t, height_in)
        if self.height.halted:
            self.halted = True
            self.output = dict(self.inner.output)
            return quiet
        if any(echo_out) or any(height_out):
            return [(a << 3) | b | c for a, b, c in zip(inner_out, echo_out, height_out)]
        return [a << 3 for a in inner_out]


    def _idle(self) -> bool:
        # nothing scheduled: every remaining move needs a non-empty inbox
        echo, height = self.echo, self.height
        if echo.replies or (echo.active_at is not None and echo.sent_up is None and echo.complete_at is None):
            return False
        if echo.active_at is None and (self.is_leader or echo.pending):
            return False
        if height.halt_at is not None or height.down:
            return False
        core = height.core
        if core.replies:
            return False
        if core.active_at is None:
            return not (core.pending or self.is_leader)
        return core.sent_up is not None and height.s_round is None


class SyncStage(Stage):
    def __init__(self, inner: Stage):
        self.inner = inner
        self.name = f"sync({inner.name})"
        self.alphabet = inner.alphabet * CONTROL

    def make(self, know, start):
        return SyncProgram(self.inner, know, start)
