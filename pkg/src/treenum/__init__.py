"""Round-synchronous simulation of leader networks: BFS tree numeration and bridge finding."""

from .network import Configuration, Network, generate, parse_graph, format_graph
from .engine import Run, run_until_halt, audit_strong_termination

__all__ = [
    "Configuration",
    "Network",
    "generate",
    "parse_graph",
    "format_graph",
    "Run",
    "run_until_halt",
    "audit_strong_termination",
]
