"""Acceptance criteria 1 to 8, one test each; every test records a PASS/FAIL line."""

import math
import random
from functools import lru_cache

import pytest

from conftest import ACCEPTANCE, EXAMPLE_CERT, EXAMPLE_NODE7_SLICES, EXAMPLE_SLICES, unspaced
from treenum import protocols as P
from treenum.certify import (
    ChildCertStream,
    SubtreeStream,
    decode_position,
    decode_tree,
    encode_tree,
    format_slices,
    is_full,
    node_certificate,
    subtree_prefix,
)
from treenum.engine import audit_strong_termination, run_until_halt, write_trace
from treenum.network import generate
from treenum.oracle import RootedTree, bfs_tree, bridges_by_removal, bridges_dfs, height
from treenum.verify import CHECKS, audit_slack, echo_round, height_round

CORPUS_RANDOM = 200
CORPUS_SEED = 1000


def _random_corpus():
    out = []
    for i in range(CORPUS_RANDOM):
        rng = random.Random(CORPUS_SEED + i)
        v = rng.randint(2, 256)
        room = v * (v - 1) // 2 - (v - 1)
        extra = rng.randint(0, min(room, 2 * v))
        out.append(generate("random_connected", v, extra_edges=extra, seed=i, leader=rng.randint(1, v)))
    return out


CORPUS = (
    _random_corpus()
    + [generate("path", n) for n in (2, 3, 5, 16, 64, 256)]
    + [generate("path", 9, leader=5)]
    + [generate("star", n) for n in (2, 5, 64, 256)]
    + [generate("star", 12, leader=7)]
    + [generate("cycle", n) for n in (3, 4, 7, 64, 256)]
)


@lru_cache(maxsize=None)
def corpus_run(i, name):
    return run_until_halt(CORPUS[i], P.by_name(name), record=False)


def report(n, ok, text):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {text}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def test_c1_height_timing():
    bad = []
    for i, cfg in enumerate(CORPUS):
        bad += [f"graph {i}: {m}" for m in CHECKS["height"](cfg, corpus_run(i, "height"))]
    ok = report(1, not bad, f"height halts at 3D+4, D = oracle, on {len(CORPUS)} graphs; shift 0, tolerance 0; {len(bad)} mismatches")
    assert ok, bad[:5]


def test_c2_echo_timing():
    bad = []
    for i, cfg in enumerate(CORPUS):
        done = corpus_run(i, "echo").outputs[cfg.leader - 1]["complete_at"]
        if done != 2 * height(cfg) + 3 or done != echo_round(cfg):
            bad.append((i, done, 2 * height(cfg) + 3))
    ok = report(2, not bad, f"leader echo completes at 2D+3 on {len(CORPUS)} graphs; shift 0, tolerance 0; {len(bad)} mismatches")
    assert ok, bad[:5]


def test_c3_numeration():
    bad = []
    for i, cfg in enumerate(CORPUS):
        bad += [f"graph {i}: {m}" for m in CHECKS["numerate"](cfg, corpus_run(i, "numerate"))]
    tree = decode_tree(EXAMPLE_CERT)
    from treenum.network import from_edge_list

    example = from_edge_list([(p, c) for c, p in sorted(tree.parent.items())], n=12)
    outs = run_until_halt(example, P.numerate()).outputs
    if unspaced(format_slices(outs[0]["cert"])) != unspaced(EXAMPLE_SLICES):
        bad.append(f"example certificate {format_slices(outs[0]['cert'])}")
    seven = next(o for o in outs if o["number"] == 7)
    if unspaced(format_slices(seven["cert"])) != unspaced(EXAMPLE_NODE7_SLICES):
        bad.append(f"node 7 certificate {format_slices(seven['cert'])}")
    ok = report(3, not bad, f"numbers and node certificates equal the oracle on {len(CORPUS)} graphs, 12-node example and node 7 verbatim; {len(bad)} mismatches")
    assert ok, bad[:5]


def test_c4_bridges():
    rng = random.Random(4)
    bad, oracle_bad, nonempty = [], [], 0
    for i in range(1000):
        v = rng.randint(1, 64)
        room = v * (v - 1) // 2 - (v - 1)
        extra = rng.randint(0, min(room, max(0, 3 * v - (v - 1))))
        cfg = generate("random_connected", v, extra_edges=extra, seed=40_000 + i, leader=rng.randint(1, v))
        truth = bridges_dfs(cfg)
        if truth != bridges_by_removal(cfg):
            oracle_bad.append(i)
        nonempty += bool(truth)
        run = run_until_halt(cfg, P.pipeline(), record=False)
        bad += [f"graph {i}: {m}" for m in CHECKS["pipeline"](cfg, run)]
    ok = report(4, not bad and not oracle_bad,
                f"pipeline bridges = bridges_dfs = removal oracle on 1000 graphs (V<=64, E<=3V, {nonempty} with bridges); exact set equality; {len(bad)} protocol and {len(oracle_bad)} oracle mismatches")
    assert ok, (bad[:5], oracle_bad[:5])


def test_c5_strong_termination():
    failed = {}
    for name in ("height", "sync-echo", "numerate", "pipeline"):
        failed[name] = [i for i, cfg in enumerate(CORPUS) if not audit_strong_termination(corpus_run(i, name), audit_slack(cfg))]
    deep = [i for i, cfg in enumerate(CORPUS) if height(cfg) >= 2]
    echo_passed = [i for i in deep if audit_strong_termination(corpus_run(i, "echo"), audit_slack(CORPUS[i]))]
    shallow = len(CORPUS) - len(deep)
    ok = not any(failed.values()) and not echo_passed
    counts = ", ".join(f"{k} {len(v)}" for k, v in failed.items())
    report(5, ok, f"audit (slack 2D+8) failures on {len(CORPUS)} graphs: {counts}; bare echo fails on {len(deep) - len(echo_passed)}/{len(deep)} graphs with D>=2 ({shallow} graphs with D<=1 halt together by construction)")
    assert ok, (failed, echo_passed[:5])


FAMILIES = ("path", "random_tree", "cycle")
CALIBRATION = (16, 32, 64)
HELD_OUT = (128, 256, 512)


def _measure(kind, n):
    cfg = generate(kind, n, seed=n)
    run = run_until_halt(cfg, P.pipeline(), record=False)
    v, e = cfg.network.node_count, cfg.network.edge_count
    return v, run.execution_time, run.traffic.total, v * v + e * math.log2(v)


def _slope(points):
    mx = sum(x for x, _ in points) / len(points)
    my = sum(y for _, y in points) / len(points)
    return sum((x - mx) * (y - my) for x, y in points) / sum((x - mx) ** 2 for x, _ in points)


def test_c6_linearity():
    cal = {k: [_measure(k, n) for n in CALIBRATION] for k in FAMILIES}
    # freeze: 5% headroom on the steepest least-squares slope, tightest intercept that covers calibration
    a = 1.05 * max(_slope([(v, r) for v, r, _, _ in pts]) for pts in cal.values())
    b = max(0.0, max(r - a * v for pts in cal.values() for v, r, _, _ in pts))
    c = 1.05 * max(t / s for pts in cal.values() for _, _, t, s in pts)
    worst_r, worst_t, bad = 0.0, 0.0, []
    for k in FAMILIES:
        for n in HELD_OUT:
            v, r, t, s = _measure(k, n)
            worst_r, worst_t = max(worst_r, r / (a * v + b)), max(worst_t, t / (c * s))
            if r > a * v + b or t > c * s:
                bad.append((k, n, r, t))
    ok = report(6, not bad, f"frozen a={a:.3f} b={b:.1f} C={c:.3f} from V<=64; at V in {HELD_OUT}: max rounds/(aV+b)={worst_r:.3f}, max traffic/(C(V^2+E log2 V))={worst_t:.3f}")
    assert ok, bad


def _random_tree(n, rng):
    children = {1: []}
    for v in range(2, n + 1):
        children[rng.randint(max(1, v - rng.choice((2, 10, v))), v - 1)].append(v)
        children[v] = []
    return decode_tree(encode_tree(RootedTree.from_children(1, children)))


def _subtree_cert(tree, v):
    kids, todo = {}, [v]
    while todo:
        u = todo.pop()
        kids[u] = list(tree.children[u])
        todo += kids[u]
    return encode_tree(RootedTree.from_children(v, kids))


def test_c7_certificate_algebra():
    rng = random.Random(7)
    failures = 0
    for _ in range(1000):
        tree = _random_tree(rng.randint(1, 1000), rng)
        cert = encode_tree(tree)
        failures += decode_tree(cert) != tree
        failures += not is_full(cert) or is_full(cert[: rng.randrange(len(cert))])
        for v in rng.sample(range(1, tree.size + 1), min(3, tree.size)):
            own = node_certificate(cert, v)
            if v > 1:
                failures += decode_position(own) != (v, tree.parent[v], tree.depth[v])
            kids = tree.children[v]
            # subtree certificates: stream children round-robin, compare with batch at a cut and at the end
            parts = [_subtree_cert(tree, c) for c in kids]
            up = SubtreeStream("1" * len(kids) + "0")
            cut = rng.randint(0, max(len(p) for p in parts)) if parts else 0
            for j in range(max((len(p) for p in parts), default=0)):
                for c, p in enumerate(parts):
                    if j < len(p):
                        up.push(c, p[j])
                up.advance()
                if j + 1 == cut:
                    failures += "".join(up.out) != subtree_prefix("1" * len(kids) + "0", [p[:cut] for p in parts])
            failures += "".join(up.out) != _subtree_cert(tree, v)
            down = ChildCertStream(len(kids), is_root=v == 1)
            got = [[] for _ in kids]
            for s in own:
                for g, x in zip(got, down.push(s)):
                    g.append(x)
            failures += any("".join(g) != node_certificate(cert, c) for g, c in zip(got, kids))
    ok = report(7, failures == 0, f"round-trip, fullness, streaming = batch, decode_position inverse on 1000 trees (V<=1000); {failures} failures")
    assert ok


def test_c8_determinism():
    picks = [CORPUS[i] for i in range(0, CORPUS_RANDOM, 25) if CORPUS[i].network.node_count <= 128]
    picks += [generate("cycle", 9), generate("star", 6)]
    diffs = 0
    for j, cfg in enumerate(picks):
        order = list(cfg.network.nodes)
        random.Random(j).shuffle(order)
        base = write_trace(run_until_halt(cfg, P.pipeline()))
        again = write_trace(run_until_halt(cfg, P.pipeline()))
        shuffled = write_trace(run_until_halt(cfg, P.pipeline(), order=order))
        reverse = write_trace(run_until_halt(cfg, P.pipeline(), order=order[::-1]))
        diffs += (base != again) + (base != shuffled) + (base != reverse)
    ok = report(8, diffs == 0, f"pipeline traces byte-identical across repeats and 2 evaluation orders on {len(picks)} graphs; {diffs} differences")
    assert ok
