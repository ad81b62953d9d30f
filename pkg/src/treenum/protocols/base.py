"""Stages, sequential composition and the adapter to the engine's behavior interface.

A stage is a per-node program started at a round every node agrees on. Its
``make(knowledge, start)`` receives what earlier stages learned at this node
(``degree`` and ``is_leader`` at minimum) and returns a program whose
``output`` dict is merged into that knowledge once it halts.
"""

from __future__ import annotations

from typing import Any, Sequence

LAMBDA = 0

# wire codes for certificate digits and unary/binary streams
DIGIT_CODE = {"0": 1, "1": 2, "2": 3}
CODE_DIGIT = {1: "0", 2: "1", 3: "2"}


class Stage:
    name = "stage"
    alphabet = 1
    rounds_per_node = 10  # round budget per node, for the engine's default limit

    def make(self, know: dict[str, Any], start: int):
        raise NotImplementedError


class ChainProgram:
    """Runs stages back to back; the next one starts in the round the previous halts."""

    def __init__(self, stages: Sequence[Stage], know: dict[str, Any], start: int):
        self.stages = stages
        self.know = dict(know)
        self.output = self.know
        self.degree = know["degree"]
        self.index = 0
        self.halted = False
        self.current = stages[0].make(self.know, start)

    def step(self, t: int, inbox):
        if self.halted:
            return [LAMBDA] * self.degree
        out = self.current.step(t, inbox)
        while self.current.halted:
            self.know.update(self.current.output)
            self.index += 1
            if self.index == len(self.stages):
                self.halted = True
                return out
            # whatever arrives in the boundary round belongs to the finished stage
            self.current = self.stages[self.index].make(self.know, t)
            out = self.current.step(t, [LAMBDA] * self.degree)
        return out


class Chain(Stage):
    def __init__(self, stages: Sequence[Stage], name: str | None = None):
        self.stages = list(stages)
        self.name = name or "+".join(s.name for s in self.stages)
        self.alphabet = max(s.alphabet for s in self.stages)
        self.rounds_per_node = sum(s.rounds_per_node for s in self.stages)

    def make(self, know, start):
        return ChainProgram(self.stages, know, start)


class StageBehavior:
    """Engine-facing behavior that runs a stage from round 0."""

    def __init__(self, stage: Stage, name: str | None = None):
        self.stage = stage
        self.name = name or stage.name
        self.alphabet = stage.alphabet
        self.rounds_per_node = stage.rounds_per_node

    def spawn(self, degree: int, is_leader: bool):
        return self.stage.make({"degree": degree, "is_leader": is_leader}, 0)
