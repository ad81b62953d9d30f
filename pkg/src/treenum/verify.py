"""Compare a finished run against the centralized oracles.

Each checker returns a list of human-readable mismatches; empty means agreement.
"""

from __future__ import annotations

from .certify import encode_tree, node_certificate
from .engine import Run, audit_strong_termination
from .network import Configuration
from .oracle import bfs_tree, bridges_dfs, canonical_numeration, height

# protocols whose halts are staggered by design
UNSYNCHRONIZED = {"echo"}


def audit_slack(cfg: Configuration) -> int:
    return 2 * height(cfg) + 8


def _port_target(cfg: Configuration, v: int, k: int | None) -> int | None:
    return None if k is None else cfg.network.invert_port(v, k)[0]


def check_tree(cfg: Configuration, run: Run) -> list[str]:
    tree = bfs_tree(cfg)
    bad = []
    for v, out in zip(cfg.network.nodes, run.outputs):
        parent = _port_target(cfg, v, out.get("parent"))
        if parent != tree.parent.get(v):
            bad.append(f"node {v}: parent {parent}, expected {tree.parent.get(v)}")
        kids = [_port_target(cfg, v, k) for k in out.get("children", ())]
        if kids != tree.children[v]:
            bad.append(f"node {v}: children {kids}, expected {tree.children[v]}")
    return bad


def echo_round(cfg: Configuration) -> int:
    """Leader's echo completion: ``2D + 3``, or 0 for a lone leader."""
    return 2 * height(cfg) + 3 if cfg.network.node_count > 1 else 0


def height_round(cfg: Configuration) -> int:
    """Common stop of the height search: ``3D + 4``, or 0 for a lone leader."""
    return 3 * height(cfg) + 4 if cfg.network.node_count > 1 else 0


def check_echo(cfg: Configuration, run: Run) -> list[str]:
    bad = check_tree(cfg, run)
    done = run.outputs[cfg.leader - 1].get("complete_at")
    if done != echo_round(cfg):
        bad.append(f"leader completed at {done}, expected {echo_round(cfg)}")
    return bad


def check_height(cfg: Configuration, run: Run) -> list[str]:
    d = height(cfg)
    bad = check_tree(cfg, run)
    for v, out in zip(cfg.network.nodes, run.outputs):
        if out.get("D") != d:
            bad.append(f"node {v}: D={out.get('D')}, expected {d}")
    for v, r in zip(cfg.network.nodes, run.halt_rounds):
        if r != height_round(cfg):
            bad.append(f"node {v}: halted at {r}, expected {height_round(cfg)}")
    return bad


def check_numerate(cfg: Configuration, run: Run) -> list[str]:
    tree = bfs_tree(cfg)
    numbers = canonical_numeration(tree)
    cert = encode_tree(tree)
    bad = []
    for v, out in zip(cfg.network.nodes, run.outputs):
        n = numbers[v]
        if out.get("number") != n:
            bad.append(f"node {v}: number {out.get('number')}, expected {n}")
        elif out.get("cert") != node_certificate(cert, n):
            bad.append(f"node {v}: certificate {out.get('cert')}, expected {node_certificate(cert, n)}")
    return bad


def check_exchange(cfg: Configuration, run: Run) -> list[str]:
    numbers = canonical_numeration(bfs_tree(cfg))
    bad = check_numerate(cfg, run)
    for v, out in zip(cfg.network.nodes, run.outputs):
        want = tuple(numbers[u] for u in cfg.network.neighbors(v))
        if tuple(out.get("neighbor_numbers", ())) != want:
            bad.append(f"node {v}: heard {out.get('neighbor_numbers')}, expected {want}")
    return bad


def oracle_bridge_numbers(cfg: Configuration) -> set[tuple[int, int]]:
    numbers = canonical_numeration(bfs_tree(cfg))
    return {tuple(sorted((numbers[a], numbers[b]))) for a, b in bridges_dfs(cfg)}  # type: ignore[misc]


def check_bridges(cfg: Configuration, run: Run) -> list[str]:
    want = oracle_bridge_numbers(cfg)
    bad = check_exchange(cfg, run)
    got = {tuple(p) for out in run.outputs for p in out.get("adjacent_bridges", ())}
    if got != want:
        bad.append(f"bridges {sorted(got)}, expected {sorted(want)}")
    return bad


def check_pipeline(cfg: Configuration, run: Run) -> list[str]:
    want = sorted(oracle_bridge_numbers(cfg))
    bad = check_bridges(cfg, run)
    for v, out in zip(cfg.network.nodes, run.outputs):
        got = [tuple(p) for p in out.get("bridges", ())]
        if got != want:
            bad.append(f"node {v}: bridge list {got}, expected {want}")
    return bad


CHECKS = {
    "echo": check_echo,
    "sync-echo": check_echo,
    "height": check_height,
    "numerate": check_numerate,
    "exchange": check_exchange,
    "bridges": check_bridges,
    "pipeline": check_pipeline,
}


def verify_run(cfg: Configuration, run: Run, protocol: str) -> list[str]:
    """Oracle agreement plus, except for bare echo, the strong-termination audit."""
    bad = CHECKS[protocol](cfg, run)
    if protocol not in UNSYNCHRONIZED and not audit_strong_termination(run, audit_slack(cfg)):
        bad.append(f"strong-termination audit failed: halts {sorted(set(run.halt_rounds))}")
    return bad
