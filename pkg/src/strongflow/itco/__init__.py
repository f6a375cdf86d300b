"""Incremental transitive cover backends."""

from .base import Itco, ItcoError, OracleItco, check_cover, oracle_closure
from .italiano import ItalianoItco
from .ordered import OrderedItco
from .treedepth import RepresentingTree, TreeDepthItco, TreeRespectError, restricted_closure_oracle

BACKENDS = ("oracle", "italiano", "treedepth", "ordered")


def make_itco(name: str, nodes, tree=None, x=None) -> Itco:
    if name == "oracle":
        return OracleItco(nodes)
    if name == "italiano":
        return ItalianoItco(nodes)
    if name == "treedepth":
        if tree is None:
            raise ItcoError("the treedepth backend needs a representing tree")
        return TreeDepthItco(nodes, tree)
    if name == "ordered":
        return OrderedItco(nodes, x)
    raise ItcoError("unknown backend %r" % name)


__all__ = [
    "BACKENDS", "Itco", "ItcoError", "OracleItco", "ItalianoItco", "OrderedItco",
    "RepresentingTree", "TreeDepthItco", "TreeRespectError", "check_cover",
    "make_itco", "oracle_closure", "restricted_closure_oracle",
]
