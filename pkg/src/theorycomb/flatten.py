"""Flattening of single-function terms and enumeration of the equivalence
relations on the flattened variables that respect the literals and
functional consistency (Ackermann constraints)."""

from __future__ import annotations

from dataclasses import dataclass

from . import logic as L
from .errors import TheoryCombError


@dataclass
class Flattening:
    """Nodes are (base, j) standing for func^j(base); edges link j to j+1."""

    nodes: list
    index: dict
    edges: list  # (i, i') meaning func(node i) = node i'
    lits: list  # (i, i', positive)


def chain_depths(cube: L.Cube, func: str) -> dict:
    """Largest power of ``func`` applied to each variable or constant, in order of appearance."""
    depths: dict = {}
    for lit in cube.literals:
        if not isinstance(lit.atom, L.Eq):
            raise TheoryCombError(f"predicate literal in a function-only cube: {L.to_text(lit)}")
        for side in (lit.atom.lhs, lit.atom.rhs):
            if any(f != func for f in L.term_funcs(side)):
                raise TheoryCombError(f"term over another function symbol: {L.term_to_text(side)}")
            base, j = L.peel(side)
            depths[base] = max(depths.get(base, 0), j)
    return depths


def flatten(cube: L.Cube, chains: list) -> Flattening:
    """``chains`` lists (base, length) pairs; node (base, j) exists for j <= length."""
    nodes = [(base, j) for base, m in chains for j in range(m + 1)]
    index = {n: i for i, n in enumerate(nodes)}
    edges = [(index[(b, j)], index[(b, j + 1)]) for b, m in chains for j in range(m)]
    lits = []
    for lit in cube.literals:
        a = index[L.peel(lit.atom.lhs)]
        b = index[L.peel(lit.atom.rhs)]
        lits.append((a, b, lit.positive))
    return Flattening(nodes, index, edges, lits)


def consistent_partitions(fl: Flattening):
    """Yield (blocks, succ, count) for every partition of the nodes, in
    restricted-growth order, satisfying the literals and functional consistency.

    ``succ`` maps a block to the block of the successors of its nodes (the
    partial function induced on classes).
    """
    n = len(fl.nodes)
    lits_due: list = [[] for _ in range(n)]
    for a, b, p in fl.lits:
        lits_due[max(a, b)].append((a, b, p))
    edges_due: list = [[] for _ in range(n)]
    for u, w in fl.edges:
        edges_due[max(u, w)].append((u, w))
    block = [0] * n
    succ: dict = {}

    def rec(i: int, count: int):
        if i == n:
            yield tuple(block), dict(succ), count
            return
        for b in range(count + 1):
            block[i] = b
            if not all((block[x] == block[y]) == p for x, y, p in lits_due[i]):
                continue
            added = []
            ok = True
            for u, w in edges_due[i]:
                bu, bw = block[u], block[w]
                if bu in succ:
                    if succ[bu] != bw:
                        ok = False
                        break
                else:
                    succ[bu] = bw
                    added.append(bu)
            if ok:
                yield from rec(i + 1, max(count, b + 1))
            for bu in added:
                del succ[bu]

    if n == 0:
        yield (), {}, 0
        return
    yield from rec(0, 0)
