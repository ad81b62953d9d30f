import random

import pytest
from hypothesis import settings

from treenum.network import Configuration, Network, from_edge_list, generate

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# 12-node example tree used throughout the certificate discussion
EXAMPLE_CERT = "1110" + "11010110" + "11000100" + "000"
EXAMPLE_SLICES = "1110 – 110 10 110 – 110 0 0 10 0 – 000"
EXAMPLE_NODE7_SLICES = "1110 – 110 20 110 – 110 0 0 10 0 – 000"


def unspaced(slices: str) -> list[str]:
    return [part.replace(" ", "") for part in slices.split(" – ")]

TRIANGLE_PENDANT = [(1, 2), (1, 3), (2, 3), (3, 4)]

PETERSEN = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
            (6, 8), (8, 10), (7, 10), (7, 9), (6, 9)]


def small_corpus():
    """A few dozen varied graphs, cheap enough for every protocol."""
    out = [generate("path", n) for n in (1, 2, 3, 5)]
    out += [generate("star", n) for n in (2, 4, 7)]
    out += [generate("cycle", n) for n in (3, 4, 5, 8)]
    out += [from_edge_list(TRIANGLE_PENDANT), from_edge_list(PETERSEN)]
    out.append(from_edge_list(TRIANGLE_PENDANT, leader=4))
    out += [generate("random_tree", n, seed=s) for n, s in ((9, 1), (14, 2), (20, 3))]
    out += [generate("random_connected", n, extra_edges=e, seed=s) for n, e, s in ((6, 3, 4), (12, 8, 5), (18, 20, 6), (25, 10, 7))]
    out.append(generate("random_connected", 15, extra_edges=6, seed=8, leader=9))
    return out


def corpus_id(cfg: Configuration) -> str:
    net = cfg.network
    return f"V{net.node_count}E{net.edge_count}L{cfg.leader}"


def random_port_network(n: int, extra: int, seed: int) -> Configuration:
    """Same underlying graph as the generator but with shuffled port numbers."""
    rng = random.Random(seed)
    base = generate("random_connected", n, extra_edges=extra, seed=seed).network
    edges = base.edges()
    rng.shuffle(edges)
    edges = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]
    return Configuration(Network.from_edges(n, edges), rng.randint(1, n))


@pytest.fixture
def triangle_pendant():
    return from_edge_list(TRIANGLE_PENDANT)


# one summary line per acceptance criterion, printed at the end of the session
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])
