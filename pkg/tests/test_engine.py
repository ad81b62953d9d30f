import io
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from conftest import random_port_network
from treenum import protocols as P
from treenum.engine import (
    ProtocolViolation,
    RoundLimitExceeded,
    Run,
    audit_strong_termination,
    default_max_rounds,
    run_until_halt,
    traffic,
    write_trace,
)
from treenum.network import generate


class Scripted:
    """Each node emits ``script(v_index, t, degree)`` and halts at ``halt_at(degree, is_leader)``."""

    name = "scripted"

    def __init__(self, alphabet=4, script=None, halt_at=None):
        self.alphabet = alphabet
        self.script = script or (lambda t, deg, leader: [0] * deg)
        self.halt_at = halt_at or (lambda deg, leader: 0)

    def spawn(self, degree, is_leader):
        return _ScriptedProgram(self, degree, is_leader)


class _ScriptedProgram:
    def __init__(self, b, degree, is_leader):
        self.b, self.degree, self.is_leader = b, degree, is_leader
        self.halted = False
        self.output = {"heard": []}

    def step(self, t, inbox):
        self.output["heard"].append(list(inbox))
        if t >= self.b.halt_at(self.degree, self.is_leader):
            self.halted = True
        return list(self.b.script(t, self.degree, self.is_leader))


class Noise:
    """Pseudo-random symbols, seeded per node; checks delivery on arbitrary traffic."""

    name = "noise"
    alphabet = 5

    def __init__(self, rounds):
        self.rounds = rounds
        self.spawned = 0

    def spawn(self, degree, is_leader):
        self.spawned += 1
        return _NoiseProgram(degree, self.rounds, self.spawned)


class _NoiseProgram:
    def __init__(self, degree, rounds, seed):
        self.rng = random.Random(seed)
        self.degree, self.rounds = degree, rounds
        self.halted = False
        self.output = {}

    def step(self, t, inbox):
        if t >= self.rounds:
            self.halted = True
            return [0] * self.degree
        return [self.rng.randrange(5) for _ in range(self.degree)]


def test_all_lambda_halts_at_zero():
    run = run_until_halt(generate("cycle", 5), Scripted())
    assert run.execution_time == 0 and traffic(run).total == 0
    assert audit_strong_termination(run, 5)


def test_two_node_delivery():
    b = Scripted(script=lambda t, d, leader: [1] if leader and t == 0 else [0], halt_at=lambda d, leader: 1)
    run = run_until_halt(generate("path", 2), b)
    assert run.programs[1].output["heard"] == [[0], [1]]
    assert run.incoming(1, 2) == [1] and run.outgoing(0, 1) == [1]
    assert traffic(run).total == 1 and traffic(run).per_round == [1, 0]


def test_height_on_two_node_path_and_timeout():
    cfg = generate("path", 2)
    assert run_until_halt(cfg, P.height_search()).execution_time == 7
    with pytest.raises(RoundLimitExceeded) as err:
        run_until_halt(cfg, P.height_search(), max_rounds=3)
    assert err.value.run.round == 4 and not err.value.run.all_halted


def test_late_halter_fails_audit():
    b = Scripted(halt_at=lambda d, leader: 3 if leader else 2)
    run = run_until_halt(generate("star", 4), b)
    assert run.halt_rounds == [3, 2, 2, 2]
    assert not audit_strong_termination(run, 4)


def test_post_halt_emission_recorded():
    b = Scripted(script=lambda t, d, leader: [1] * d if t == 3 else [0] * d, halt_at=lambda d, leader: 1)
    run = Run(generate("path", 3), b)
    run.run_until_halt()
    assert not run.violations and audit_strong_termination(run, 1)
    assert not audit_strong_termination(run, 4)
    for _ in range(3):
        run.step()
    assert run.violations == [(3, 1), (3, 2), (3, 3)]


def test_bad_behaviors_raise():
    wrong_count = Scripted(script=lambda t, d, leader: [0] * (d + 1))
    with pytest.raises(ProtocolViolation):
        run_until_halt(generate("path", 2), wrong_count)
    out_of_range = Scripted(alphabet=2, script=lambda t, d, leader: [2] * d)
    with pytest.raises(ProtocolViolation):
        run_until_halt(generate("path", 2), out_of_range)


def test_bare_echo_fails_audit_sync_echo_passes():
    cfg = generate("path", 5)
    assert not audit_strong_termination(run_until_halt(cfg, P.echo()), 20)
    assert audit_strong_termination(run_until_halt(cfg, P.by_name("sync-echo")), 20)


def test_default_round_budget():
    cfg = generate("path", 10)
    assert default_max_rounds(cfg) == 150
    assert default_max_rounds(cfg, P.height_search()) == 150
    assert default_max_rounds(cfg, P.pipeline()) == 550


def test_invalid_order_rejected():
    with pytest.raises(ValueError):
        Run(generate("path", 3), Scripted(), order=[1, 1, 2])


@given(st.integers(2, 20), st.integers(0, 15), st.integers(0, 10**6))
def test_delivery_fidelity_and_conservation(n, extra, seed):
    extra = min(extra, n * (n - 1) // 2 - (n - 1))
    cfg = random_port_network(n, extra, seed)
    run = run_until_halt(cfg, Noise(6))
    net = cfg.network
    for t in range(len(run.sent) - 1):
        sent, got = Counter(), Counter()
        for v in net.nodes:
            out = run.outgoing(t, v)
            for k, s in enumerate(out):
                u, j = net.invert_port(v, k)
                assert run.incoming(t + 1, u)[j] == s
            sent.update(out)
            got.update(run.incoming(t + 1, v))
        assert sent == got
    assert run.traffic.total == sum(1 for row in run.sent for s in row if s)


@given(st.integers(2, 18), st.integers(0, 10), st.integers(0, 10**6), st.sampled_from(["height", "numerate", "pipeline"]))
def test_order_permutation_and_repeat_give_identical_traces(n, extra, seed, name):
    extra = min(extra, n * (n - 1) // 2 - (n - 1))
    cfg = random_port_network(n, extra, seed)
    order = list(cfg.network.nodes)
    random.Random(seed).shuffle(order)
    a = write_trace(run_until_halt(cfg, P.by_name(name)))
    b = write_trace(run_until_halt(cfg, P.by_name(name)))
    c = write_trace(run_until_halt(cfg, P.by_name(name), order=order))
    assert a == b == c


def test_trace_format():
    b = Scripted(script=lambda t, d, leader: [2] if leader and t == 0 else [0] * d, halt_at=lambda d, leader: 1)
    run = run_until_halt(generate("path", 2), b)
    buf = io.StringIO()
    write_trace(run, buf, header_lines=["hello"])
    assert buf.getvalue().splitlines() == [
        "trace v=2 protocol=scripted",
        "# hello",
        "0 1 0 out 2",
        "1 2 0 in 2",
        "halt 1 1",
        "halt 2 1",
    ]
    with pytest.raises(ValueError):
        write_trace(run_until_halt(generate("path", 2), b, record=False))
