"""The protocol suite as engine behaviors.

Every composite runs the height search first (all nodes start at round 0),
then each later stage under clock synchronization so that all nodes enter the
next stage in the same round.
"""

from .base import Chain, Stage, StageBehavior
from .bridges import ExchangeStage, FindBridgesStage, number_width
from .echo import EchoStage
from .height import HeightStage
from .numerate import DistributeStage, NumerateStage
from .sync import SyncStage

__all__ = [
    "Chain",
    "Stage",
    "StageBehavior",
    "echo",
    "height_search",
    "sync_wrap",
    "numerate",
    "exchange_numbers",
    "find_bridges",
    "distribute_bridges",
    "pipeline",
    "number_width",
    "by_name",
    "PROTOCOLS",
]


def _stage(x) -> Stage:
    return x.stage if isinstance(x, StageBehavior) else x


def echo() -> StageBehavior:
    return StageBehavior(EchoStage())


def height_search() -> StageBehavior:
    return StageBehavior(HeightStage())


def sync_wrap(inner) -> StageBehavior:
    return StageBehavior(SyncStage(_stage(inner)))


def _numerated():
    return [HeightStage(), SyncStage(NumerateStage())]


def numerate() -> StageBehavior:
    return StageBehavior(Chain(_numerated(), name="numerate"))


def exchange_numbers() -> StageBehavior:
    return StageBehavior(Chain(_numerated() + [SyncStage(ExchangeStage())], name="exchange"))


def find_bridges() -> StageBehavior:
    stages = _numerated() + [SyncStage(ExchangeStage()), SyncStage(FindBridgesStage())]
    return StageBehavior(Chain(stages, name="bridges"))


def distribute_bridges() -> StageBehavior:
    stages = _numerated() + [
        SyncStage(ExchangeStage()),
        SyncStage(FindBridgesStage()),
        SyncStage(DistributeStage()),
    ]
    return StageBehavior(Chain(stages, name="pipeline"))


pipeline = distribute_bridges

PROTOCOLS = {
    "echo": echo,
    "sync-echo": lambda: StageBehavior(SyncStage(EchoStage()), name="sync-echo"),
    "height": height_search,
    "numerate": numerate,
    "exchange": exchange_numbers,
    "bridges": find_bridges,
    "pipeline": pipeline,
}


def by_name(name: str) -> StageBehavior:
    try:
        return PROTOCOLS[name]()
    except KeyError:
        raise ValueError(f"unknown protocol {name!r}; choose from {', '.join(PROTOCOLS)}") from None
