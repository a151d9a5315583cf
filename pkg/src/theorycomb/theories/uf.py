"""T_f and T_g: one unary function whose number of fixpoints at each finite
size is prescribed by a 0/1 table."""

from __future__ import annotations

from .. import logic as L
from ..flatten import chain_depths, consistent_partitions, flatten
from ..models import Membership, TableCheck, fixpoint_counts
from ..theory import SMOOTH, STABLY_INFINITE, TheoryHandle
from .params import FTable, GTable


def uf_decide(cube: L.Cube, func: str = "s") -> bool:
    """Satisfiability with ``func`` uninterpreted.

    Every term func^j(x) becomes a node; a partition of the nodes is a model
    when it respects the literals and maps equal nodes to equal successors.
    """
    cube = L.as_cube(cube)
    depths = chain_depths(cube, func)
    fl = flatten(cube, list(depths.items()))
    return next(consistent_partitions(fl), None) is not None


def fixpoint_member(table: FTable, name: str, func: str = "s") -> Membership:
    def check(k, view, consts):
        return fixpoint_counts(view) == table.ones(k)

    sig = L.Signature(name, functions=frozenset({func}))
    return Membership(name, sig, table_checks=(TableCheck(func, f"{name}:{table.text()}", check),))


def tf_member(f: FTable) -> Membership:
    return fixpoint_member(f, "tf")


def tf_decide(cube: L.Cube) -> bool:
    # independent of f: T_f has the quantifier-free consequences of a free function
    return uf_decide(cube, "s")


def tf_handle(f: FTable, name: str = "tf") -> TheoryHandle:
    return TheoryHandle(
        name,
        L.SIGMA_S,
        fixpoint_member(f, name),
        decide=tf_decide,
        flags=frozenset({STABLY_INFINITE, SMOOTH}),
    )


def tg_handle(g: GTable) -> TheoryHandle:
    if not isinstance(g, GTable):
        g = GTable(tuple(g.bits))
    return tf_handle(g, "tg")
