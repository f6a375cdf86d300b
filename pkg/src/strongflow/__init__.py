"""Exact maximum flow by scaling over valid iterates with incremental transitive covers."""

from .engine import CountingFailure, EngineConfig, EngineFailure, SolveResult, solve
from .flowcore import FlowError, FlowInstance, UnboundedError
from .values import INF

__all__ = [
    "CountingFailure", "EngineConfig", "EngineFailure", "FlowError", "FlowInstance",
    "INF", "SolveResult", "UnboundedError", "solve",
]
__version__ = "0.1.0"
