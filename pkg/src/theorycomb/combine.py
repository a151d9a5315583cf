"""Combination engines for two theories over disjoint signatures.

Each engine purifies the mixed cube, guesses an arrangement of the shared
variables, and checks the two pure sides against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import logic as L
from .errors import CapabilityError, TheoryCombError
from .minmod import minmod_of
from .spectra import intersect_empty, intersect_empty_vs_cfs, is_aleph0
from .theory import SMOOTH, STABLY_INFINITE, TheoryHandle


@dataclass(frozen=True)
class CombinationProblem:
    t1: TheoryHandle
    t2: TheoryHandle
    mixed: L.Formula

    def __post_init__(self):
        if not self.t1.sig.disjoint(self.t2.sig):
            raise TheoryCombError(f"signatures of {self.t1.name} and {self.t2.name} overlap")


@dataclass
class CombineResult:
    sat: bool
    arrangement: Optional[L.Arrangement] = None
    detail: list = field(default_factory=list)  # human-readable notes for verbose output
    probes: list = field(default_factory=list)  # sizes passed to containsFinite

    def __bool__(self) -> bool:
        return self.sat


def _distinct_fresh(n: int) -> L.Cube:
    # zero or one fresh variable asks for nothing beyond non-emptiness
    return L.build_distinct(L.fresh_vars(n)) if n >= 2 else L.TRUE


def _run(problem: CombinationProblem, per_arrangement) -> CombineResult:
    cubes = [L.as_cube(problem.mixed)] if L.is_cube_like(problem.mixed) else L.to_dnf(problem.mixed)
    result = CombineResult(False)
    for cube in cubes:
        phi1, phi2, shared = L.purify(cube, problem.t1.sig, problem.t2.sig)
        for arr in L.enumerate_arrangements(shared):
            delta = arr.to_cube()
            if per_arrangement(phi1 & delta, phi2 & delta, result):
                result.sat = True
                result.arrangement = arr
                return result
    return result


def combine_nelson_oppen(problem: CombinationProblem) -> CombineResult:
    """Both theories stably infinite: some arrangement satisfiable on both sides."""
    for t in (problem.t1, problem.t2):
        t.require_flag(STABLY_INFINITE)

    def check(a, b, res):
        return problem.t1.decide(a) and problem.t2.decide(b)

    return _run(problem, check)


def combine_gentle_cfs(problem: CombinationProblem) -> CombineResult:
    """First theory gentle, second with computable finite spectra."""
    problem.t1.require("gentle")
    problem.t2.require("contains_finite")
    t1, t2 = problem.t1, problem.t2

    def check(a, b, res):
        spec = t1.gentle(a)
        res.detail.append(f"spectrum1 {spec}")

        def probe(k):
            res.probes.append(k)
            return t2.contains_finite(b, k)

        def tail(k):
            return t2.decide(b & _distinct_fresh(k))

        return not intersect_empty_vs_cfs(spec, probe, tail)

    return _run(problem, check)


def combine_minmod_infdec(problem: CombinationProblem) -> CombineResult:
    """First theory smooth with a minimal model function, second infinitely decidable."""
    problem.t1.require_flag(SMOOTH)
    if problem.t1.minmod is None and not problem.t1.strong_witness:
        raise CapabilityError(f"theory {problem.t1.name} has no minmod capability")
    problem.t2.require("infinitely_decidable")
    t1, t2 = problem.t1, problem.t2

    def check(a, b, res):
        if not t1.decide(a):
            return False
        n = minmod_of(t1, a)
        res.detail.append(f"minmod1 {'ℵ0' if is_aleph0(n) else n}")
        if is_aleph0(n):
            return t2.infinitely_decidable(b)
        return t2.decide(b & _distinct_fresh(int(n)))

    return _run(problem, check)


def combine_both_gentle(problem: CombinationProblem) -> CombineResult:
    """Both theories gentle: the two spectra intersect."""
    problem.t1.require("gentle")
    problem.t2.require("gentle")

    def check(a, b, res):
        s1, s2 = problem.t1.gentle(a), problem.t2.gentle(b)
        res.detail.append(f"spectra {s1} {s2}")
        return not intersect_empty(s1, s2)

    return _run(problem, check)


ENGINES = {
    "no": combine_nelson_oppen,
    "gentle-cfs": combine_gentle_cfs,
    "minmod-infdec": combine_minmod_infdec,
    "both-gentle": combine_both_gentle,
}


def combine(engine: str, t1: TheoryHandle, t2: TheoryHandle, mixed: L.Formula) -> CombineResult:
    if engine not in ENGINES:
        raise TheoryCombError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")
    return ENGINES[engine](CombinationProblem(t1, t2, mixed))
