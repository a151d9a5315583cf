"""Recovering a hidden parameter table from a combined-satisfiability oracle.

The recovery loops only ever see the oracle, never the table: a decision
procedure for the combination would therefore compute the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import logic as L
from .errors import OutOfFamilyQuery, TheoryCombError
from .models import Membership, ModelFinder
from .theories.params import FRelation, FTable, GTable, OracleTables

FAMILIES = ("tf-teq", "tg-torb2", "tinf-tle", "tinf-tleorb")


@dataclass(frozen=True)
class CombinedOracle:
    ask: Callable[[L.Formula], bool]
    provenance: str  # "bruteforce", "analytic" or "engine"

    def __call__(self, phi: L.Formula) -> bool:
        return bool(self.ask(phi))


def fixpoint_query(m_pred: int, k: int) -> L.Cube:
    return L.conj(L.pred(m_pred), L.build_fixpoint_count(k, "s"))


def orbit_query(m_orbit: int, k: int) -> L.Formula:
    return L.And((L.orb(m_orbit), L.build_fixpoint_count(k, "s")))


def recover_f(oracle: CombinedOracle, upto: int) -> list:
    """f(n+1) = 1 iff P_{n+1} together with f1(n)+1 distinct fixpoints is satisfiable."""
    if upto < 1:
        raise ValueError("upto must be positive")
    bits = [1]
    ones = 1
    for n in range(1, upto):
        b = 1 if oracle(fixpoint_query(n + 1, ones + 1)) else 0
        bits.append(b)
        ones += b
    return bits


def recover_g(oracle: CombinedOracle, upto: int) -> list:
    """g(2n+1) = g(2n+2) = 1 iff orb_{n+1}(a) with g1(2n)+2 distinct fixpoints is satisfiable."""
    if upto < 4 or upto % 2:
        raise ValueError("upto must be an even integer >= 4")
    bits = [1, 0, 1, 0]
    n = 2
    while len(bits) < upto:
        b = 1 if oracle(orbit_query(n + 1, sum(bits) + 2)) else 0
        bits += [b, b]
        n += 1
    return bits


def probe_F_infinity(oracle: CombinedOracle, family: str, n: int) -> bool:
    """Whether F(n) is aleph_0, read off the satisfiability of P_n or orb_n(a)."""
    if family == "tle":
        return oracle(L.as_cube(L.pred(n)))
    if family == "tleorb":
        return oracle(L.orb(n))
    raise TheoryCombError(f"unknown probe family {family!r}")


# ---------------------------------------------------------------------------
# Query recognition for the analytic oracles


def _fixpoint_count(cube: L.Cube) -> Optional[int]:
    """k if the cube is exactly k pairwise-distinct variables that are fixpoints of s."""
    fix, diseq = [], set()
    for lit in cube.literals:
        a = lit.atom
        if not isinstance(a, L.Eq):
            return None
        if lit.positive and isinstance(a.lhs, L.App) and a.lhs.func == "s" and a.lhs.arg == a.rhs:
            if not isinstance(a.rhs, L.Var):
                return None
            fix.append(a.rhs.name)
        elif not lit.positive and isinstance(a.lhs, L.Var) and isinstance(a.rhs, L.Var):
            diseq.add(frozenset((a.lhs.name, a.rhs.name)))
        else:
            return None
    if len(set(fix)) != len(fix) or not fix:
        return None
    needed = {frozenset((x, y)) for i, x in enumerate(fix) for y in fix[i + 1:]}
    return len(fix) if diseq == needed else None


def _orbit_index(phi: L.Formula) -> Optional[int]:
    for n in range(1, 64):
        cand = L.orb(n)
        if cand == phi:
            return n
        if isinstance(phi, L.Cube) and len(phi) == 1 and n == 1 and L.as_cube(cand) == phi:
            return 1
    return None


def _split_pred_query(phi: L.Formula):
    if not L.is_cube_like(phi):
        return None
    cube = L.as_cube(phi)
    preds = [l for l in cube.literals if isinstance(l.atom, L.Pred)]
    rest = L.Cube(tuple(l for l in cube.literals if not isinstance(l.atom, L.Pred)))
    if len(preds) != 1 or not preds[0].positive:
        return None
    return preds[0].atom.index, rest


def make_analytic_oracle(family: str, params: OracleTables) -> CombinedOracle:
    """Answers in-family queries from the proved characterizations."""

    def reject(phi):
        raise OutOfFamilyQuery(f"{family}: not a query of this family: {L.to_text(phi)}")

    if family == "tf-teq":
        f: FTable = params.f

        def ask(phi):
            parts = _split_pred_query(phi)
            k = _fixpoint_count(parts[1]) if parts else None
            if k is None:
                reject(phi)
            return f.ones(parts[0]) >= k

    elif family == "tg-torb2":
        g: GTable = params.g

        def ask(phi):
            if not (isinstance(phi, L.And) and len(phi.args) == 2):
                reject(phi)
            m = _orbit_index(phi.args[0])
            k = _fixpoint_count(L.as_cube(phi.args[1])) if L.is_cube_like(phi.args[1]) else None
            if m is None or k is None:
                reject(phi)
            return g.ones(2 * m) >= k

    elif family == "tinf-tle":
        F: FRelation = params.F

        def ask(phi):
            parts = _split_pred_query(phi)
            if parts is None or len(parts[1]):
                reject(phi)
            return F.is_infinite(parts[0])

    elif family == "tinf-tleorb":
        F = params.F

        def ask(phi):
            n = _orbit_index(phi)
            if n is None:
                reject(phi)
            return F.is_infinite(n)

    else:
        raise TheoryCombError(f"unknown oracle family {family!r}; expected one of {', '.join(FAMILIES)}")
    return CombinedOracle(ask, "analytic")


def make_bruteforce_oracle(member: Membership, max_size: int, limit: Optional[int] = None) -> CombinedOracle:
    """Exhaustive search for a model of size <= max_size in the combined membership.

    Only sound for queries whose models are forced to have at most max_size elements.
    """
    finder = ModelFinder(member, limit=limit or max_size)

    def ask(phi):
        return any(finder.find(phi, member.sig, k) is not None for k in range(1, max_size + 1))

    return CombinedOracle(ask, "bruteforce")


def family_members(family: str, params: OracleTables) -> Membership:
    """Combined membership check for a reduction family (finite models only)."""
    from .theories.equality import teq_member
    from .theories.orbit import torb2_member
    from .theories.uf import fixpoint_member

    if family == "tf-teq":
        return fixpoint_member(params.f, "tf") & teq_member()
    if family == "tg-torb2":
        return fixpoint_member(params.g, "tg") & torb2_member()
    raise TheoryCombError(f"no brute-force membership for family {family!r}")
