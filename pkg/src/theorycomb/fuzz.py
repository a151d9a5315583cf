"""Seeded random cubes for differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import logic as L

VARS = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Grammar:
    """Term pool and literal mix for one signature."""

    terms: tuple
    max_literals: int = 4
    pred_max: int = 0  # predicate indices 1..pred_max, 0 for none
    pred_weight: float = 0.0
    positive_weight: float = 0.5


def var_terms(names=VARS[:3]) -> tuple:
    return tuple(L.Var(v) for v in names)


def chain_terms(func: str, bases, depth: int) -> tuple:
    return tuple(L.iterate(func, j, b) for b in bases for j in range(depth + 1))


EQUALITY = Grammar(var_terms(VARS), max_literals=4)
PREDICATES = Grammar(var_terms(VARS[:3]), max_literals=4, pred_max=5, pred_weight=0.45)
UNARY_S = Grammar(chain_terms("s", var_terms(("x", "y")), 2), max_literals=4)
ORBIT = Grammar(
    chain_terms("t", (L.Const("a"),), 2) + chain_terms("t", var_terms(("x",)), 1) + var_terms(("y",)),
    max_literals=4,
)
# smaller pool for checks that need every model to stay within a few elements
ORBIT_SMALL = Grammar(
    chain_terms("t", (L.Const("a"),), 2) + chain_terms("t", var_terms(("x",)), 1),
    max_literals=3,
)


class CubeFuzzer:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def literal(self, g: Grammar) -> L.Lit:
        rng = self.rng
        if g.pred_max and rng.random() < g.pred_weight:
            return L.pred(rng.randint(1, g.pred_max), rng.random() < g.positive_weight)
        lhs, rhs = rng.choice(g.terms), rng.choice(g.terms)
        return L.Lit(L.Eq(lhs, rhs), rng.random() < g.positive_weight)

    def cube(self, g: Grammar, min_literals: int = 0) -> L.Cube:
        n = self.rng.randint(min_literals, g.max_literals)
        return L.Cube(tuple(self.literal(g) for _ in range(n)))

    def cubes(self, g: Grammar, count: int, keep=None, max_tries: int = 100000) -> list:
        out = []
        tries = 0
        while len(out) < count:
            tries += 1
            if tries > max_tries:
                raise RuntimeError("fuzz filter rejects too many cubes")
            c = self.cube(g)
            if keep is None or keep(c):
                out.append(c)
        return out
