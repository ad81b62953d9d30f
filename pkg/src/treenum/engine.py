"""Lockstep round simulator.

In round ``t`` every node reads the symbols its neighbors put on the shared
edges in round ``t - 1`` (all λ at ``t = 0``) and writes one symbol per port.
λ is the value 0 in every alphabet and is never counted as traffic.
"""

from __future__ import annotations

import copy
import io
from dataclasses import dataclass, field
from typing import Any, Protocol, Sequence, TextIO

from . import _kernels
from .network import Configuration

LAMBDA = 0


class NodeProgram(Protocol):
    halted: bool
    output: dict[str, Any]

    def step(self, t: int, inbox: Sequence[int]) -> list[int]: ...


class Behavior(Protocol):
    name: str
    alphabet: int

    def spawn(self, degree: int, is_leader: bool) -> NodeProgram: ...


class RoundLimitExceeded(RuntimeError):
    """Raised when the run has not halted within ``max_rounds``; carries the partial run."""

    def __init__(self, run: "Run"):
        super().__init__(f"{run.behavior.name}: no global halt within {run.max_rounds} rounds")
        self.run = run


class ProtocolViolation(RuntimeError):
    pass


@dataclass
class TrafficStats:
    total: int = 0
    per_round: list[int] = field(default_factory=list)


def default_max_rounds(cfg: Configuration, behavior: Behavior | None = None) -> int:
    """``k * V + 50``; ``k`` is the behavior's ``rounds_per_node`` (10 if absent)."""
    k = getattr(behavior, "rounds_per_node", 10)
    return k * cfg.network.node_count + 50


class Run:
    """A configuration being executed under a behavior, one round per ``step``."""

    def __init__(
        self,
        cfg: Configuration,
        behavior: Behavior,
        *,
        max_rounds: int | None = None,
        record: bool = True,
        order: Sequence[int] | None = None,
    ):
        net = cfg.network
        self.cfg = cfg
        self.behavior = behavior
        self.max_rounds = default_max_rounds(cfg, behavior) if max_rounds is None else max_rounds
        self.record = record
        n = net.node_count
        self.order = list(range(n)) if order is None else [v - 1 for v in order]
        if sorted(self.order) != list(range(n)):
            raise ValueError("order must be a permutation of the nodes")
        self.offsets = [0]
        for v in net.nodes:
            self.offsets.append(self.offsets[-1] + net.degree(v))
        self.perm = [self.offsets[u - 1] + j for row in net.ports for (u, j) in row]
        self.programs = [behavior.spawn(net.degree(v), v == cfg.leader) for v in net.nodes]
        self.inbox = [LAMBDA] * self.offsets[-1]
        self.round = 0
        self.halt_rounds: list[int | None] = [None] * n
        self.traffic = TrafficStats()
        self.sent: list[list[int]] = []
        self.violations: list[tuple[int, int]] = []

    @property
    def all_halted(self) -> bool:
        return all(r is not None for r in self.halt_rounds)

    @property
    def execution_time(self) -> int | None:
        return max(self.halt_rounds) if self.all_halted else None  # type: ignore[type-var]

    @property
    def outputs(self) -> list[dict[str, Any]]:
        return [p.output for p in self.programs]

    def step(self) -> None:
        t = self.round
        offsets, inbox, alphabet = self.offsets, self.inbox, self.behavior.alphabet
        out = [LAMBDA] * len(inbox)
        for v in self.order:
            lo, hi = offsets[v], offsets[v + 1]
            prog = self.programs[v]
            sent = prog.step(t, inbox[lo:hi])
            if len(sent) != hi - lo:
                raise ProtocolViolation(f"node {v + 1} emitted {len(sent)} symbols on {hi - lo} ports")
            if self.halt_rounds[v] is not None:
                if any(sent):
                    self.violations.append((t, v + 1))
            elif prog.halted:
                self.halt_rounds[v] = t
                if any(sent):
                    self.violations.append((t, v + 1))
            out[lo:hi] = sent
        if out and (max(out) >= alphabet or min(out) < 0):
            raise ProtocolViolation(f"round {t}: symbol outside alphabet of size {alphabet}")
        self.inbox, count = _kernels.deliver(out, self.perm)
        self.traffic.total += count
        self.traffic.per_round.append(count)
        if self.record:
            self.sent.append(out)
        self.round = t + 1

    def run_until_halt(self) -> "Run":
        while not self.all_halted:
            if self.round > self.max_rounds:
                raise RoundLimitExceeded(self)
            self.step()
        return self

    # -- trace access -------------------------------------------------------

    def outgoing(self, t: int, v: int) -> list[int]:
        return self.sent[t][self.offsets[v - 1] : self.offsets[v]]

    def incoming(self, t: int, v: int) -> list[int]:
        """H'(t, v): what node ``v`` reads in round ``t``."""
        if t == 0:
            return [LAMBDA] * self.cfg.network.degree(v)
        prev = self.sent[t - 1]
        return [prev[self.perm[i]] for i in range(self.offsets[v - 1], self.offsets[v])]


def run_until_halt(
    cfg: Configuration,
    behavior: Behavior,
    max_rounds: int | None = None,
    *,
    record: bool = True,
    order: Sequence[int] | None = None,
) -> Run:
    return Run(cfg, behavior, max_rounds=max_rounds, record=record, order=order).run_until_halt()


def traffic(run: Run) -> TrafficStats:
    return run.traffic


def audit_strong_termination(run: Run, slack: int) -> bool:
    """All nodes halted in the same round and stay silent for ``slack`` more rounds.

    Works on a copy; the given run is left untouched.
    """
    if not run.all_halted or len(set(run.halt_rounds)) != 1 or run.violations:
        return False
    probe = copy.deepcopy(run)
    probe.record = False
    for _ in range(slack):
        before = probe.traffic.total
        probe.step()
        if probe.traffic.total != before or probe.violations:
            return False
    return True


def write_trace(run: Run, out: TextIO | None = None, header_lines: Sequence[str] = ()) -> str:
    """Line-oriented trace of every non-λ symbol plus halt events."""
    if not run.record:
        raise ValueError("run was not recorded")
    buf = out if out is not None else io.StringIO()
    net = run.cfg.network
    buf.write(f"trace v={net.node_count} protocol={run.behavior.name}\n")
    for line in header_lines:
        buf.write(f"# {line}\n")
    owner = [(v, k) for v in net.nodes for k in range(net.degree(v))]
    for t, sent in enumerate(run.sent):
        for i, s in enumerate(sent):
            if s:
                v, k = owner[i]
                buf.write(f"{t} {v} {k} out {s}\n")
        for i, j in enumerate(run.perm):
            s = sent[j]
            if s:
                v, k = owner[i]
                buf.write(f"{t + 1} {v} {k} in {s}\n")
    for v, r in enumerate(run.halt_rounds, start=1):
        if r is not None:
            buf.write(f"halt {v} {r}\n")
    return buf.getvalue() if out is None else ""
