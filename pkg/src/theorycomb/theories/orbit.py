"""T_orb^2 and T_<=^orb: theories bounding the domain by the size of the
orbit of the constant a under t."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .. import logic as L
from ..flatten import chain_depths, consistent_partitions, flatten
from ..models import Membership, TableCheck, orbit_sizes
from ..spectra import ALEPH0, IntervalPiece, Spectrum, normalize
from ..theory import FINITE_MODEL_PROPERTY, TheoryHandle
from .params import FRelation

A = L.Const("a")
T = "t"


@dataclass(frozen=True)
class OrbitCase:
    """Summary of one admissible equivalence E on the flattened variables."""

    classes: int  # |V/E|
    orbit: int  # size of the orbit of [x_{0,0}] under t_E
    total: bool  # t_E defined on the whole orbit


@dataclass(frozen=True)
class ChainLayout:
    variables: tuple  # (name, M_i) for the variables, in order of appearance
    a_core: int  # M0': largest power of t applied to a
    a_len: int  # M0 = M0' + sum(M_i + 1)


def layout(cube: L.Cube) -> ChainLayout:
    depths = chain_depths(cube, T)
    variables = tuple((b.name, m) for b, m in depths.items() if isinstance(b, L.Var))
    a_core = depths.get(A, 0)
    return ChainLayout(variables, a_core, a_core + sum(m + 1 for _, m in variables))


def _orbit_from(start: int, succ: dict) -> tuple:
    seen = [start]
    cur = start
    while cur in succ:
        cur = succ[cur]
        if cur in seen:
            return len(seen), True
        seen.append(cur)
    return len(seen), False


def orbit_cases_literal(cube: L.Cube) -> frozenset:
    """Enumerate every admissible equivalence on all flattened variables,
    including the full a-chain up to M0."""
    cube = L.as_cube(cube)
    lay = layout(cube)
    fl = flatten(cube, [(A, lay.a_len)] + [(L.Var(v), m) for v, m in lay.variables])
    start = fl.index[(A, 0)]
    out = set()
    for blocks, succ, count in consistent_partitions(fl):
        size, total = _orbit_from(blocks[start], succ)
        out.add(OrbitCase(count, size, total))
    return frozenset(out)


def orbit_cases(cube: L.Cube) -> frozenset:
    """Same result as :func:`orbit_cases_literal`, faster.

    The a-chain positions beyond M0' carry no literal, so they are placed by a
    walk instead of by enumeration: at each such position the next class is
    forced when t_E is already defined, and otherwise is a new class, a class
    already on the walk (closing the orbit), or a class off the walk.
    """
    cube = L.as_cube(cube)
    lay = layout(cube)
    fl = flatten(cube, [(A, lay.a_core)] + [(L.Var(v), m) for v, m in lay.variables])
    start = fl.index[(A, 0)]
    out = set()
    for blocks, succ, count in consistent_partitions(fl):
        for extra, orbit, total in _walk(blocks[start], succ, count, lay.a_len):
            out.add(OrbitCase(count + extra, orbit, total))
    return frozenset(out)


def _walk(start: int, succ: dict, count: int, steps: int) -> frozenset:
    """Outcomes (new classes, orbit size, total) of placing ``steps`` chain
    nodes after the class ``start``."""
    NEW = -1
    succ = dict(succ)

    @lru_cache(maxsize=None)
    def go(cur: int, visited: frozenset, left: int) -> frozenset:
        # visited: core classes on the walk; new classes never have successors
        nxt = succ.get(cur) if cur != NEW else None
        if nxt is not None:
            if nxt in visited:
                return frozenset({(0, 0, True)})
            if left == 0:
                # no more chain nodes, but t_E is still followed
                return _shift(go(nxt, visited | {nxt}, 0), 0, 1)
            return _shift(go(nxt, visited | {nxt}, left - 1), 0, 1)
        if left == 0:
            return frozenset({(0, 0, False)})
        res = {(0, 0, True)}  # close onto a class already on the walk
        res |= _shift(go(NEW, visited, left - 1), 1, 1)
        for c in range(count):
            if c not in visited:
                res |= _shift(go(c, visited | {c}, left - 1), 0, 1)
        return frozenset(res)

    return frozenset((e, o + 1, t) for e, o, t in go(start, frozenset({start}), steps))


def _shift(results: frozenset, de: int, do: int) -> frozenset:
    return frozenset((e + de, o + do, t) for e, o, t in results)


def _cubes(phi: L.Formula) -> list:
    return [L.as_cube(phi)] if L.is_cube_like(phi) else L.to_dnf(phi)


def torb2_spectrum(phi: L.Formula) -> Spectrum:
    pieces = []
    for cube in _cubes(phi):
        for case in orbit_cases(cube):
            if 2 * case.orbit < case.classes:
                continue
            hi = 2 * case.orbit if case.total else ALEPH0
            pieces.append(IntervalPiece(case.classes, hi))
    return normalize(pieces)


def torb2_witness(cube: L.Cube) -> L.Cube:
    """phi plus x_{i,j} = t^j(x_i) for every variable, and the a-chain up to M0."""
    cube = L.as_cube(cube)
    lay = layout(cube)
    defs = []
    for v, m in lay.variables:
        for j in range(m + 1):
            defs.append(L.eq(L.fresh_var(), L.iterate(T, j, L.Var(v))))
    for j in range(lay.a_len + 1):
        defs.append(L.eq(L.fresh_var(), L.iterate(T, j, A)))
    return cube & L.Cube(tuple(defs))


def torb2_member() -> Membership:
    def check(k, view, consts):
        return 2 * orbit_sizes(view, consts["a"]) >= k

    return Membership("torb2", L.SIGMA_TA, table_checks=(TableCheck(T, "torb2", check),))


def torb2_handle() -> TheoryHandle:
    from ..minmod import minmod_value

    h = TheoryHandle(
        "torb2",
        L.SIGMA_TA,
        torb2_member(),
        decide=lambda c: not torb2_spectrum(c).is_empty(),
        gentle=torb2_spectrum,
        contains_finite=lambda c, k: k in torb2_spectrum(c),
        witness=torb2_witness,
        strong_witness=True,
        flags=frozenset({FINITE_MODEL_PROPERTY}),
    )
    return replace(h, minmod=lambda c: minmod_value(h, c))


# ---------------------------------------------------------------------------
# T_<=^orb


def tleorb_decide(cube: L.Cube, F: FRelation) -> bool:
    """Some admissible E has an orbit that can be extended (partial t_E), or
    a closed orbit of size b with F(b) >= |V/E| - b."""
    return any(
        (not case.total) or F.geq(case.orbit, case.classes - case.orbit) for case in orbit_cases(cube)
    )


def tleorb_member(F: FRelation) -> Membership:
    def check(k, view, consts):
        sizes = orbit_sizes(view, consts["a"])
        allowed = [True] + [F.geq(n, k - n) for n in range(1, k + 1)]
        return np.array(allowed)[sizes]

    return Membership("tleorb", L.SIGMA_TA, table_checks=(TableCheck(T, f"tleorb:{id(F)}", check),))


def tleorb_handle(F: FRelation) -> TheoryHandle:
    return TheoryHandle("tleorb", L.SIGMA_TA, tleorb_member(F), decide=lambda c: tleorb_decide(c, F))
