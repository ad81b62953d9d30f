"""treenum: generate networks, run the protocols, check them against the oracles, measure scaling.

Exit status: 0 success, 1 verification mismatch, 2 usage or input error, 3 round limit hit.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Sequence

from . import protocols as P
from .engine import RoundLimitExceeded, Run, run_until_halt, write_trace
from .network import KINDS, Configuration, NetworkError, format_graph, generate, parse_graph
from .oracle import height
from .verify import verify_run

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Corrupted:
    """Test hook: same behavior, but the last node's output is tampered with after it halts."""

    def __init__(self, inner):
        self.inner = inner
        self.name = inner.name
        self.alphabet = inner.alphabet
        self.rounds_per_node = getattr(inner, "rounds_per_node", 10)
        self.spawned = 0

    def spawn(self, degree, is_leader):
        self.spawned += 1
        prog = self.inner.spawn(degree, is_leader)
        return _CorruptedProgram(prog) if self.spawned > 1 and not is_leader else prog


class _CorruptedProgram:
    def __init__(self, prog):
        self.prog = prog
        self.output: dict = {}
        self.halted = False

    def step(self, t, inbox):
        out = self.prog.step(t, inbox)
        if self.prog.halted and not self.halted:
            self.halted = True
            self.output = dict(self.prog.output)
            for key in ("D", "number", "complete_at", "depth"):
                if isinstance(self.output.get(key), int):
                    self.output[key] += 1
            if "bridges" in self.output:
                self.output["bridges"] = list(self.output["bridges"]) + [(0, 0)]
            self.output["parent"] = None
        return out


def _load(path: str, leader: int | None) -> Configuration:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text, leader=leader)
    except NetworkError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _behavior(name: str, inject_fault: bool = False):
    try:
        b = P.by_name(name)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    return _Corrupted(b) if inject_fault else b


def _node_number(run: Run) -> dict[int, int]:
    return {o["number"]: v for v, o in enumerate(run.outputs, start=1) if "number" in o}


def report_lines(cfg: Configuration, run: Run, protocol: str) -> list[str]:
    net = cfg.network
    lines = [
        f"protocol={protocol} V={net.node_count} E={net.edge_count} D={height(cfg)} "
        f"halt={run.execution_time} traffic={run.traffic.total}"
    ]
    outs = run.outputs
    if protocol in ("echo", "sync-echo"):
        for v, o in enumerate(outs, start=1):
            k = o.get("parent")
            parent = "-" if k is None else net.invert_port(v, k)[0]
            lines.append(f"node {v} parent={parent}")
    elif protocol == "height":
        lines += [f"node {v} D={o.get('D')}" for v, o in enumerate(outs, start=1)]
    else:
        lines += [f"node {v} number={o.get('number')} cert={o.get('cert')}" for v, o in enumerate(outs, start=1)]
    if protocol in ("bridges", "pipeline"):
        node_of = _node_number(run)
        if protocol == "pipeline":
            pairs = {tuple(p) for p in outs[cfg.leader - 1].get("bridges", ())}
        else:
            pairs = {tuple(p) for o in outs for p in o.get("adjacent_bridges", ())}
        ids = sorted(tuple(sorted((node_of.get(a, a), node_of.get(b, b)))) for a, b in pairs)
        lines += [f"bridge {a} {b}" for a, b in ids]
    return lines


def _execute(cfg: Configuration, args, behavior) -> Run:
    return run_until_halt(cfg, behavior, max_rounds=args.max_rounds, record=bool(getattr(args, "trace", None)))


def cmd_gen(args) -> int:
    try:
        cfg = generate(args.kind, args.nodes, extra_edges=args.extra_edges, seed=args.seed)
    except NetworkError as exc:
        raise _UsageError(str(exc)) from None
    text = format_graph(cfg, comment=f"{args.kind} n={args.nodes} extra={args.extra_edges} seed={args.seed}")
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = _load(args.graph, args.leader)
    run = _execute(cfg, args, _behavior(args.protocol))
    lines = report_lines(cfg, run, args.protocol)
    print("\n".join(lines))
    if args.trace:
        with open(args.trace, "w") as fh:
            write_trace(run, fh, header_lines=lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load(args.graph, args.leader)
    run = _execute(cfg, args, _behavior(args.protocol, args.inject_fault))
    bad = verify_run(cfg, run, args.protocol)
    for line in bad:
        print(f"MISMATCH {line}")
    print(f"verify protocol={args.protocol} V={cfg.network.node_count} {'FAIL' if bad else 'OK'}")
    return EXIT_MISMATCH if bad else EXIT_OK


def bench_rows(kind: str, sizes: Sequence[int], seed: int, protocol: str, extra_edges: int | None = None):
    rows = []
    for n in sizes:
        extra = n // 2 if extra_edges is None and kind == "random_connected" else (extra_edges or 0)
        cfg = generate(kind, n, extra_edges=extra, seed=seed)
        run = run_until_halt(cfg, P.by_name(protocol), record=False)
        v, e = cfg.network.node_count, cfg.network.edge_count
        scale = v * v + e * math.log2(v) if v > 1 else 1
        rows.append(
            {
                "V": v,
                "E": e,
                "D": height(cfg),
                "rounds": run.execution_time,
                "traffic": run.traffic.total,
                "rounds/V": run.execution_time / v,
                "traffic/(V^2+E*log2V)": run.traffic.total / scale,
            }
        )
    return rows


def format_table(rows) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[f"{r[c]:.3f}" if isinstance(r[c], float) else str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(out)


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise _UsageError(f"bad --sizes {args.sizes!r}") from None
    try:
        rows = bench_rows(args.kind, sizes, args.seed, args.protocol, args.extra_edges)
    except NetworkError as exc:
        raise _UsageError(str(exc)) from None
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(f"# kind={args.kind} protocol={args.protocol} seed={args.seed}")
    print(format_table(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treenum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated network")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--extra-edges", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    names = list(P.PROTOCOLS)
    for cmd, func, helptext in (("run", cmd_run, "run a protocol and print its report"), ("verify", cmd_verify, "run and compare with the oracles")):
        r = sub.add_parser(cmd, help=helptext)
        r.add_argument("--graph", required=True)
        r.add_argument("--leader", type=int)
        r.add_argument("--protocol", choices=names, default="pipeline")
        r.add_argument("--max-rounds", type=int)
        if cmd == "run":
            r.add_argument("--trace")
        else:
            r.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
        r.set_defaults(func=func)

    b = sub.add_parser("bench", help="rounds and traffic over a size sweep")
    b.add_argument("--kind", choices=KINDS, default="path")
    b.add_argument("--sizes", default="16,32,64,128")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--extra-edges", type=int)
    b.add_argument("--protocol", choices=names, default="pipeline")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_rounds", None) is not None and args.max_rounds < 1:
        print("treenum: --max-rounds must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"treenum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoundLimitExceeded as exc:
        print(f"treenum: timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
