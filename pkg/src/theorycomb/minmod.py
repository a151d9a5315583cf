"""Minimal model size from a strong witness.

With one sort, the sizes |V/E| of the arrangements E of vars(wit(phi)) that
are satisfiable together with wit(phi) have a least element, which is the
smallest model size of phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import logic as L
from .errors import ContractViolation, LimitExceeded, UnsatisfiableInput
from .spectra import ALEPH0

DEFAULT_VAR_LIMIT = 9


@dataclass(frozen=True)
class MinmodResult:
    value: float
    arrangement: Optional[L.Arrangement] = None


def _var_literals(cube: L.Cube, pos: dict) -> list:
    out = []
    for lit in cube.literals:
        a = lit.atom
        if isinstance(a, L.Eq) and isinstance(a.lhs, L.Var) and isinstance(a.rhs, L.Var):
            out.append((pos[a.lhs.name], pos[a.rhs.name], lit.positive))
    return out


def _minmod_cube(handle, cube: L.Cube, limit: int) -> Optional[MinmodResult]:
    if not handle.decide(cube):
        return None
    wit = handle.witness(cube)
    names = L.vars_of(wit)
    if len(names) > limit:
        raise LimitExceeded(f"witness has {len(names)} variables, above the limit {limit}")
    pos = {v: i for i, v in enumerate(names)}
    direct = _var_literals(wit, pos)
    by_blocks: dict = {}
    for rgs in L.restricted_growth_strings(len(names)):
        # arrangements contradicting a literal between variables cannot be satisfiable
        if all((rgs[a] == rgs[b]) == p for a, b, p in direct):
            # a witness without variables still has a non-empty domain
            by_blocks.setdefault(max(rgs, default=0) + 1, []).append(rgs)
    for nb in sorted(by_blocks):
        for rgs in by_blocks[nb]:
            arr = L.Arrangement.from_rgs(names, rgs)
            if handle.decide(wit & arr.to_cube()):
                return MinmodResult(nb, arr)
    raise ContractViolation(f"{handle.name}: satisfiable cube but no arrangement of its witness is satisfiable")


def minmod_from_strong_witness(handle, phi: L.Formula, limit: int = DEFAULT_VAR_LIMIT) -> MinmodResult:
    """Least model size of a satisfiable ``phi`` (the minimum over its DNF cubes)."""
    handle.require("witness")
    if not handle.strong_witness:
        from .errors import CapabilityError

        raise CapabilityError(f"theory {handle.name} has no strong witness")
    cubes = [L.as_cube(phi)] if L.is_cube_like(phi) else L.to_dnf(phi)
    best: Optional[MinmodResult] = None
    for cube in cubes:
        res = _minmod_cube(handle, cube, limit)
        if res is not None and (best is None or res.value < best.value):
            best = res
    if best is None:
        raise UnsatisfiableInput("minmod of an unsatisfiable formula")
    return best


def minmod_value(handle, phi: L.Formula):
    return minmod_from_strong_witness(handle, phi).value


def minmod_of(handle, phi: L.Formula):
    """The handle's own minmod if present (e.g. aleph_0 for T_inf), else the extractor."""
    if handle.minmod is not None:
        return handle.minmod(L.as_cube(phi) if L.is_cube_like(phi) else phi)
    return minmod_value(handle, phi)


__all__ = ["MinmodResult", "minmod_from_strong_witness", "minmod_value", "minmod_of", "ALEPH0"]
