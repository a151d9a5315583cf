"""Finite interpretations, evaluation, and exhaustive model search.

The search enumerates, for a fixed domain size k, constants and variable
assignments in restricted-growth order (isomorphism pruning) and, for each
assignment, all function tables at once as numpy vectors. A table for a unary
function over {0..k-1} is encoded as an integer whose base-k digits, most
significant first, are f(0), f(1), ..., f(k-1); increasing codes are therefore
lexicographic order on tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from . import logic as L
from .errors import LimitExceeded, TheoryCombError, UnknownSymbolError

DEFAULT_MAX_SIZE = 7
JOINT_TABLE_CAP = 1 << 24


# ---------------------------------------------------------------------------
# Interpretations and evaluation


@dataclass(frozen=True)
class FiniteInterpretation:
    size: int
    tables: Mapping[str, tuple] = field(default_factory=dict)
    consts: Mapping[str, int] = field(default_factory=dict)
    preds: Mapping[tuple, bool] = field(default_factory=dict)  # (family, index) -> value
    assign: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        k = self.size
        if k < 1:
            raise ValueError("domain size must be positive")
        for f, tab in self.tables.items():
            if len(tab) != k or any(not 0 <= v < k for v in tab):
                raise ValueError(f"table for {f} is not a function on a {k}-element domain")
        for name, v in list(self.consts.items()) + list(self.assign.items()):
            if not 0 <= v < k:
                raise ValueError(f"value of {name} outside the domain")

    def pred(self, family: str, index: int) -> bool:
        return bool(self.preds.get((family, index), False))

    def __str__(self) -> str:
        parts = [f"size {self.size}"]
        parts += [f"{c}={self.consts[c]}" for c in sorted(self.consts)]
        parts += [f"{f}: [{','.join(map(str, self.tables[f]))}]" for f in sorted(self.tables)]
        parts += [
            f"{fam}{i}={'true' if v else 'false'}" for (fam, i), v in sorted(self.preds.items())
        ]
        parts += [f"{x}={self.assign[x]}" for x in sorted(self.assign)]
        return "; ".join(parts)


def eval_term(interp: FiniteInterpretation, term: L.Term) -> int:
    if isinstance(term, L.App):
        if term.func not in interp.tables:
            raise UnknownSymbolError(term.func, "function not interpreted")
        return interp.tables[term.func][eval_term(interp, term.arg)]
    if isinstance(term, L.Const):
        if term.name not in interp.consts:
            raise UnknownSymbolError(term.name, "constant not interpreted")
        return interp.consts[term.name]
    if term.name not in interp.assign:
        raise UnknownSymbolError(term.name, "variable not assigned")
    return interp.assign[term.name]


def evaluate(interp: FiniteInterpretation, phi: L.Formula) -> bool:
    if isinstance(phi, L.Lit):
        atom = phi.atom
        if isinstance(atom, L.Eq):
            val = eval_term(interp, atom.lhs) == eval_term(interp, atom.rhs)
        else:
            val = interp.pred(atom.family, atom.index)
        return val == phi.positive
    if isinstance(phi, L.Cube):
        return all(evaluate(interp, l) for l in phi.literals)
    if isinstance(phi, L.And):
        return all(evaluate(interp, a) for a in phi.args)
    if isinstance(phi, L.Or):
        return any(evaluate(interp, a) for a in phi.args)
    if isinstance(phi, L.Not):
        return not evaluate(interp, phi.arg)
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Vectorized tables


def _powers(k: int) -> np.ndarray:
    return np.array([k ** (k - 1 - e) for e in range(k)], dtype=np.int64)


def encode_table(tab: Sequence[int]) -> int:
    k = len(tab)
    code = 0
    for v in tab:
        code = code * k + v
    return code


def decode_table(code: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        out.append(code % k)
        code //= k
    return tuple(reversed(out))


class TableView:
    """Read access to a vector of candidate tables of one function at size k."""

    def __init__(self, codes: np.ndarray, k: int):
        self.codes = codes
        self.k = k
        self._pow = _powers(k)

    def __len__(self) -> int:
        return len(self.codes)

    def col(self, e: int) -> np.ndarray:
        return (self.codes // self._pow[e]) % self.k

    def apply(self, vals) -> np.ndarray:
        return (self.codes // self._pow[vals]) % self.k


# ---------------------------------------------------------------------------
# Membership checks


@dataclass(frozen=True)
class TableCheck:
    """A constraint on one function table; ``fn(k, view, consts)`` returns a boolean mask."""

    func: str
    key: str
    fn: Callable


@dataclass(frozen=True)
class Membership:
    """Which finite interpretations over ``sig`` belong to a theory.

    ``size_check(k)`` and ``pred_check(k, preds)`` cover axioms about size and
    predicates; ``table_checks`` cover axioms about function tables. Predicates
    that are not listed in ``preds`` are false.
    """

    name: str
    sig: L.Signature
    size_check: Optional[Callable] = None
    pred_check: Optional[Callable] = None
    table_checks: tuple = ()

    def accepts(self, interp: FiniteInterpretation) -> bool:
        k = interp.size
        if self.size_check is not None and not self.size_check(k):
            return False
        if self.pred_check is not None and not self.pred_check(k, dict(interp.preds)):
            return False
        for chk in self.table_checks:
            view = TableView(np.array([encode_table(interp.tables[chk.func])], dtype=np.int64), k)
            if not bool(chk.fn(k, view, dict(interp.consts))[0]):
                return False
        return True

    def __and__(self, other: "Membership") -> "Membership":
        def both(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return lambda *args: a(*args) and b(*args)

        return Membership(
            f"{self.name}+{other.name}",
            self.sig | other.sig,
            both(self.size_check, other.size_check),
            both(self.pred_check, other.pred_check),
            self.table_checks + other.table_checks,
        )


def free_membership(sig: L.Signature, name: str = "free") -> Membership:
    """No axioms: every interpretation over ``sig`` qualifies."""
    return Membership(name, sig)


EQUALITY_LOGIC = free_membership(L.SIGMA_EMPTY, "equality")


def orbit_sizes(view: TableView, start: int) -> np.ndarray:
    """Size of the orbit of ``start`` under each candidate table."""
    k = view.k
    cur = np.full(len(view), start, dtype=np.int64)
    bits = np.left_shift(np.int64(1), cur)
    for _ in range(k - 1):
        cur = view.apply(cur)
        bits |= np.left_shift(np.int64(1), cur)
    return np.bitwise_count(bits).astype(np.int64)


def fixpoint_counts(view: TableView) -> np.ndarray:
    total = np.zeros(len(view), dtype=np.int64)
    for e in range(view.k):
        total += view.col(e) == e
    return total


# ---------------------------------------------------------------------------
# Search planning


def _resolve(term: L.Term, defs: dict) -> L.Term:
    if isinstance(term, L.App):
        return L.App(term.func, _resolve(term.arg, defs))
    if isinstance(term, L.Var) and term.name in defs:
        return _resolve(defs[term.name], defs)
    return term


def _funcs(term: L.Term) -> set:
    return set(L.term_funcs(term))


@dataclass
class _Plan:
    defs: dict  # derived variable -> resolved term
    base_vars: list
    scalar_lits: list  # (lhs, rhs, positive) with no function symbols
    groups: list  # list of (funcs tuple, literals)
    preds: dict  # (family, index) -> value
    consistent: bool
    derived_group: Optional[int]  # group that owns derived-variable coverage


def _plan(cube: L.Cube, sig: L.Signature, extra_vars: Sequence[str], surjective: bool) -> _Plan:
    preds: dict = {}
    consistent = True
    eqs = []
    for lit in cube.literals:
        if isinstance(lit.atom, L.Pred):
            key = (lit.atom.family, lit.atom.index)
            if preds.setdefault(key, lit.positive) != lit.positive:
                consistent = False
        else:
            eqs.append(lit)

    defs: dict = {}
    remaining = []
    for lit in eqs:
        a = lit.atom
        done = False
        if lit.positive:
            for v, other in ((a.lhs, a.rhs), (a.rhs, a.lhs)):
                if isinstance(v, L.Var) and v.name not in defs:
                    rhs = _resolve(other, defs)
                    if v.name not in L.term_vars(rhs):
                        defs[v.name] = rhs
                        done = True
                        break
        if not done:
            remaining.append(lit)
    # make every definition refer only to undefined variables
    changed = True
    while changed:
        changed = False
        for v, t in list(defs.items()):
            r = _resolve(t, defs)
            if r != t:
                defs[v] = r
                changed = True

    all_vars = list(L.vars_of(cube))
    for v in extra_vars:
        if v not in all_vars:
            all_vars.append(v)
    base_vars = [v for v in all_vars if v not in defs]

    scalar, func_lits = [], []
    for lit in remaining:
        lhs, rhs = _resolve(lit.atom.lhs, defs), _resolve(lit.atom.rhs, defs)
        fs = _funcs(lhs) | _funcs(rhs)
        (func_lits if fs else scalar).append((lhs, rhs, lit.positive, fs))

    # union-find over function symbols
    parent = {f: f for f in sorted(sig.functions)}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    def union(fs):
        fs = sorted(fs)
        for f in fs[1:]:
            ra, rb = find(fs[0]), find(f)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    for *_, fs in func_lits:
        union(fs)
    derived_funcs = set()
    for t in defs.values():
        derived_funcs |= _funcs(t)
    if surjective and derived_funcs:
        union(derived_funcs)
    roots = sorted({find(f) for f in parent})
    groups = []
    derived_group = None
    for r in roots:
        members = tuple(sorted(f for f in parent if find(f) == r))
        lits = [(l, rr, p) for l, rr, p, fs in func_lits if find(next(iter(fs))) == r]
        if surjective and derived_funcs and find(next(iter(derived_funcs))) == r:
            derived_group = len(groups)
        groups.append((members, lits))
    return _Plan(
        defs,
        base_vars,
        [(l, r, p) for l, r, p, _ in scalar],
        groups,
        preds,
        consistent,
        derived_group,
    )


def _group_vars(lits, defs: dict) -> set:
    """Base variables and constants the literals of a group read."""
    out: set = set()

    def walk(t):
        if isinstance(t, L.App):
            walk(t.arg)
        elif isinstance(t, L.Var) and t.name in defs:
            walk(defs[t.name])
        else:
            out.add(t.name)

    for lhs, rhs, _ in lits:
        walk(lhs)
        walk(rhs)
    return out


class _GroupSearch:
    """Vectorized evaluation over all joint tables of a group of functions."""

    def __init__(self, funcs: tuple, k: int, cand: np.ndarray):
        self.funcs = funcs
        self.k = k
        self.n = k**k
        self.cand = cand
        self._pow = _powers(k)
        self._cache: dict = {}
        self._values: dict = {}  # App term -> per-candidate values

    def table_codes(self, f: str) -> np.ndarray:
        if f not in self._cache:
            m = len(self.funcs)
            r = self.funcs.index(f)
            if m == 1:
                self._cache[f] = self.cand
            else:
                self._cache[f] = (self.cand // (self.n ** (m - 1 - r))) % self.n
        return self._cache[f]

    def term(self, term: L.Term, env: dict, defs: dict):
        if isinstance(term, L.App):
            if term not in self._values:
                v = self.term(term.arg, env, defs)
                self._values[term] = (self.table_codes(term.func) // self._pow[v]) % self.k
            return self._values[term]
        if isinstance(term, L.Var) and term.name in defs:
            return self.term(defs[term.name], env, defs)
        return env[term.name]

    def restrict(self, mask) -> None:
        if mask is True or (isinstance(mask, np.bool_) and mask):
            return
        if mask is False or (isinstance(mask, np.bool_) and not mask):
            mask = np.zeros(len(self.cand), dtype=bool)
        self.cand = self.cand[mask]
        # cached per-candidate arrays shrink with the candidates
        for store in (self._cache, self._values):
            for key, arr in store.items():
                if isinstance(arr, np.ndarray) and arr.shape == mask.shape:
                    store[key] = arr[mask]


class ModelFinder:
    """Exhaustive size-k search with cached membership masks."""

    def __init__(self, member: Membership, limit: int = DEFAULT_MAX_SIZE):
        self.member = member
        self.limit = limit
        self._mask_cache: dict = {}

    def _member_candidates(self, funcs: tuple, k: int, consts: dict) -> np.ndarray:
        checks = [c for c in self.member.table_checks if c.func in funcs]
        ckey = tuple(sorted(consts.items()))
        key = (funcs, k, tuple(c.key for c in checks), ckey)
        if key in self._mask_cache:
            return self._mask_cache[key]
        n = k**k
        m = len(funcs)
        total = n**m
        if total > JOINT_TABLE_CAP and m > 1:
            raise LimitExceeded(f"joint table space {total} for {funcs} at size {k} is too large")
        allc = np.arange(total, dtype=np.int64)
        mask = np.ones(total, dtype=bool)
        for c in checks:
            r = funcs.index(c.func)
            codes = allc if m == 1 else (allc // (n ** (m - 1 - r))) % n
            mask &= c.fn(k, TableView(codes, k), consts)
        out = allc if mask.all() else np.flatnonzero(mask).astype(np.int64)
        self._mask_cache[key] = out
        return out

    def find(
        self,
        phi: L.Formula,
        sig: L.Signature,
        k: int,
        *,
        prune: bool = True,
        surjective: bool = False,
        extra_vars: Sequence[str] = (),
    ) -> Optional[FiniteInterpretation]:
        if k < 1:
            raise ValueError("domain size must be positive")
        if k > self.limit:
            raise LimitExceeded(f"domain size {k} exceeds the search limit {self.limit}")
        sig = sig | self.member.sig
        L.check_signature(phi, sig)
        if self.member.size_check is not None and not self.member.size_check(k):
            return None
        cubes = [phi] if L.is_cube_like(phi) else L.to_dnf(phi)
        for cube in cubes:
            model = self._find_cube(L.as_cube(cube), sig, k, prune, surjective, extra_vars)
            if model is not None:
                return model
        return None

    @staticmethod
    def _assignments(names: list, k: int, prune: bool, scalar_lits: list):
        """Assignments of ``names`` in canonical order, pruned by the scalar literals."""
        pos = {v: i for i, v in enumerate(names)}
        due: list = [[] for _ in names]
        for l, r, p in scalar_lits:
            due[max(pos[l.name], pos[r.name])].append((pos[l.name], pos[r.name], p))
        n = len(names)
        vals = [0] * n

        def rec(i: int, mx: int):
            if i == n:
                yield dict(zip(names, vals))
                return
            top = min(mx + 2, k) if prune else k
            for v in range(top):
                vals[i] = v
                if all((vals[a] == vals[b]) == p for a, b, p in due[i]):
                    yield from rec(i + 1, max(mx, v))

        yield from rec(0, -1)

    def _find_cube(self, cube, sig, k, prune, surjective, extra_vars):
        plan = _plan(cube, sig, extra_vars, surjective)
        if not plan.consistent:
            return None
        if self.member.pred_check is not None and not self.member.pred_check(k, dict(plan.preds)):
            return None
        consts = sorted(sig.constants)
        names = consts + plan.base_vars
        plain_defs = [t for t in plan.defs.values() if not _funcs(t)]
        free_cache: dict = {}
        group_cache: dict = {}
        group_deps: dict = {}
        for env in self._assignments(names, k, prune, plan.scalar_lits):
            var_vals = {env[v] for v in plan.base_vars} | {env[t.name] for t in plain_defs}
            if surjective and plan.derived_group is None and len(var_vals) != k:
                continue
            cvals = {c: env[c] for c in consts}
            chosen = {}
            ok = True
            for gi, (funcs, lits) in enumerate(plan.groups):
                covering = surjective and gi == plan.derived_group
                if not lits and not covering:
                    key = (funcs, tuple(sorted(cvals.items())))
                    if key not in free_cache:
                        cand = self._member_candidates(funcs, k, cvals)
                        free_cache[key] = int(cand[0]) if len(cand) else None
                    code = free_cache[key]
                else:
                    deps = group_deps.setdefault(gi, _group_vars(lits, plan.defs) | set(consts))
                    key = (gi, tuple(sorted((v, env[v]) for v in deps if v in env)))
                    if covering:
                        key += (frozenset(var_vals),)
                    if key not in group_cache:
                        group_cache[key] = self._search_group(funcs, lits, k, env, cvals, plan, covering, var_vals)
                    code = group_cache[key]
                if code is None:
                    ok = False
                    break
                chosen[funcs] = code
            if not ok:
                continue
            return self._build(k, chosen, env, consts, plan)
        return None

    def _search_group(self, funcs, lits, k, env, cvals, plan, covering, var_vals):
        gs = _GroupSearch(funcs, k, self._member_candidates(funcs, k, cvals))
        for lhs, rhs, positive in lits:
            if not len(gs.cand):
                return None
            a = gs.term(lhs, env, plan.defs)
            b = gs.term(rhs, env, plan.defs)
            mask = a == b
            if not positive:
                mask = ~mask if isinstance(mask, np.ndarray) else (not mask)
            gs.restrict(mask)
        if covering and len(gs.cand):
            named = np.zeros((len(gs.cand), k), dtype=bool)
            for v in var_vals:
                named[:, v] = True
            for name in plan.defs:
                vals = np.broadcast_to(gs.term(L.Var(name), env, plan.defs), (len(gs.cand),))
                named[np.arange(len(gs.cand)), vals] = True
            gs.restrict(named.all(axis=1))
        return int(gs.cand[0]) if len(gs.cand) else None

    def _build(self, k, chosen, env, consts, plan) -> FiniteInterpretation:
        n = k**k
        tables = {}
        for funcs, code in chosen.items():
            m = len(funcs)
            for r, f in enumerate(funcs):
                tables[f] = decode_table((code // (n ** (m - 1 - r))) % n, k)
        interp = FiniteInterpretation(
            k, tables, {c: env[c] for c in consts}, dict(plan.preds), {v: env[v] for v in plan.base_vars}
        )
        assign = dict(interp.assign)
        for v, t in plan.defs.items():
            assign[v] = eval_term(interp, t)
        return FiniteInterpretation(k, tables, interp.consts, interp.preds, assign)


def find_model(
    phi: L.Formula,
    sig: L.Signature,
    k: int,
    member: Optional[Membership] = None,
    *,
    prune: bool = True,
    surjective: bool = False,
    extra_vars: Sequence[str] = (),
    limit: int = DEFAULT_MAX_SIZE,
) -> Optional[FiniteInterpretation]:
    """A size-k interpretation in ``member`` satisfying ``phi``, or None.

    With ``surjective`` the returned model has every element named by a
    variable of ``phi`` (or of ``extra_vars``).
    """
    member = member or free_membership(sig)
    return ModelFinder(member, limit).find(
        phi, sig, k, prune=prune, surjective=surjective, extra_vars=extra_vars
    )


def brute_spectrum(
    phi: L.Formula,
    member: Membership,
    max_k: int,
    sig: Optional[L.Signature] = None,
    limit: int = DEFAULT_MAX_SIZE,
    finder: Optional[ModelFinder] = None,
) -> frozenset:
    """Sizes in [1, max_k] at which ``phi`` has a model in ``member``."""
    if max_k > limit:
        raise LimitExceeded(f"size {max_k} exceeds the search limit {limit}")
    finder = finder or ModelFinder(member, limit)
    sig = sig or member.sig
    return frozenset(k for k in range(1, max_k + 1) if finder.find(phi, sig, k) is not None)


def _is_equality_literal(lit: L.Lit) -> bool:
    return isinstance(lit.atom, L.Eq) and all(
        isinstance(t, L.Var) for t in (lit.atom.lhs, lit.atom.rhs)
    )


def min_eq_model_size(phi: L.Formula) -> Optional[int]:
    """Smallest domain size of a pure-equality model of ``phi`` (None if unsatisfiable)."""
    cube = L.as_cube(phi)
    for lit in cube.literals:
        if not _is_equality_literal(lit):
            raise TheoryCombError(f"not an equality literal between variables: {L.to_text(lit)}")
    n = max(1, len(L.vars_of(cube)))
    finder = ModelFinder(EQUALITY_LOGIC, limit=max(n, DEFAULT_MAX_SIZE))
    for k in range(1, n + 1):
        if finder.find(cube, L.SIGMA_EMPTY, k) is not None:
            return k
    return None
