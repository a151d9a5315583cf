"""Theories over equality and the indexed predicates P_n: T_=, T_<=, T_inf,
T_inf^h and T_<=n."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .. import logic as L
from ..errors import TheoryCombError, UnsatisfiableInput
from ..models import Membership, min_eq_model_size
from ..spectra import ALEPH0, EMPTY, Spectrum
from ..theory import FINITE_MODEL_PROPERTY, SMOOTH, STABLY_INFINITE, TheoryHandle
from .params import FRelation, HTable


@dataclass(frozen=True)
class Split:
    """A cube separated into its equality part and its predicate part."""

    eqs: L.Cube
    positives: tuple  # sorted indices of positive P literals
    negatives: tuple
    consistent: bool  # no predicate with both polarities

    @property
    def min_size(self):
        return min_eq_model_size(self.eqs)


def split(cube: L.Cube) -> Split:
    eqs, pos, neg = [], set(), set()
    for lit in L.as_cube(cube).literals:
        if isinstance(lit.atom, L.Pred):
            (pos if lit.positive else neg).add(lit.atom.index)
        else:
            a = lit.atom
            if not (isinstance(a.lhs, L.Var) and isinstance(a.rhs, L.Var)):
                raise TheoryCombError(f"expected an equality between variables: {L.to_text(lit)}")
            eqs.append(lit)
    return Split(L.Cube(tuple(eqs)), tuple(sorted(pos)), tuple(sorted(neg)), not (pos & neg))


def _true_indices(preds: dict) -> list:
    return sorted(i for (fam, i), v in preds.items() if v and fam == "P")


# ---------------------------------------------------------------------------
# T_=


def teq_member() -> Membership:
    return Membership("teq", L.SIGMA_P, pred_check=lambda k, preds: all(k == i for i in _true_indices(preds)))


def teq_spectrum(cube: L.Cube) -> Spectrum:
    sp = split(cube)
    m = sp.min_size
    if m is None or not sp.consistent:
        return EMPTY
    if not sp.positives:
        return Spectrum.cofinite(range(1, m))
    if len(sp.positives) == 1:
        n = sp.positives[0]
        return Spectrum.finite([n]) if n >= m else EMPTY
    return EMPTY


def teq_witness(cube: L.Cube) -> L.Cube:
    sp = split(cube)
    if not sp.positives:
        w = L.fresh_var()
        return cube & L.Cube((L.eq(w, w),))
    return cube & L.build_distinct(L.fresh_vars(max(sp.positives)))


def teq_handle() -> TheoryHandle:
    from ..minmod import minmod_value

    h = TheoryHandle(
        "teq",
        L.SIGMA_P,
        teq_member(),
        decide=lambda c: not teq_spectrum(c).is_empty(),
        gentle=teq_spectrum,
        contains_finite=lambda c, k: k in teq_spectrum(c),
        witness=teq_witness,
        strong_witness=True,
        flags=frozenset({FINITE_MODEL_PROPERTY}),
    )
    return replace(h, minmod=lambda c: minmod_value(h, c))


# ---------------------------------------------------------------------------
# T_<=


def tle_member(F: FRelation) -> Membership:
    return Membership("tle", L.SIGMA_P, pred_check=lambda k, preds: all(F.geq(i, k) for i in _true_indices(preds)))


def tle_decide(cube: L.Cube, F: FRelation) -> bool:
    sp = split(cube)
    m = sp.min_size
    if m is None or not sp.consistent:
        return False
    return all(F.geq(n, m) for n in sp.positives)


def tle_contains_finite(cube: L.Cube, k: int, F: FRelation) -> bool:
    sp = split(cube)
    m = sp.min_size
    if m is None or not sp.consistent or k < m:
        return False
    return all(F.geq(n, k) for n in sp.positives)


def tle_handle(F: FRelation) -> TheoryHandle:
    return TheoryHandle(
        "tle",
        L.SIGMA_P,
        tle_member(F),
        decide=lambda c: tle_decide(c, F),
        contains_finite=lambda c, k: tle_contains_finite(c, k, F),
    )


# ---------------------------------------------------------------------------
# T_inf


def tinf_member() -> Membership:
    return Membership("tinf", L.SIGMA_EMPTY, size_check=lambda k: False)


def tinf_decide(cube: L.Cube) -> bool:
    return split(cube).min_size is not None


def tinf_minmod(cube: L.Cube):
    if not tinf_decide(cube):
        raise UnsatisfiableInput("minmod of an unsatisfiable cube")
    return ALEPH0


def tinf_handle() -> TheoryHandle:
    return TheoryHandle(
        "tinf",
        L.SIGMA_EMPTY,
        tinf_member(),
        decide=tinf_decide,
        minmod=tinf_minmod,
        infinitely_decidable=tinf_decide,
        spectrum=lambda c: Spectrum.infinity_only() if tinf_decide(c) else EMPTY,
        flags=frozenset({STABLY_INFINITE, SMOOTH}),
    )


# ---------------------------------------------------------------------------
# T_inf^h


def tinfh_member(h: HTable) -> Membership:
    def check(k, preds):
        true = _true_indices(preds)
        if 1 in true and (k != 1 or len(true) > 1):
            return False
        # P_n with h(n) = 1 and n >= 2 demands arbitrarily many elements
        return not any(i >= 2 and h(i) == 1 for i in true)

    return Membership("tinfh", L.SIGMA_P, pred_check=check)


def tinfh_decide(cube: L.Cube, h: HTable = None) -> bool:
    # h is deliberately unused: satisfiability does not depend on it
    sp = split(cube)
    m = sp.min_size
    if m is None or not sp.consistent:
        return False
    if 1 in sp.positives:
        return m == 1 and sp.positives == (1,)
    return True


def tinfh_infinitely_decidable(cube: L.Cube, h: HTable = None) -> bool:
    return tinfh_decide(cube, h) and 1 not in split(cube).positives


def tinfh_handle(h: HTable) -> TheoryHandle:
    return TheoryHandle(
        "tinfh",
        L.SIGMA_P,
        tinfh_member(h),
        decide=lambda c: tinfh_decide(c, h),
        infinitely_decidable=lambda c: tinfh_infinitely_decidable(c, h),
    )


# ---------------------------------------------------------------------------
# T_<=n


def tlen_member(n: int) -> Membership:
    return Membership(f"tlen:{n}", L.SIGMA_EMPTY, size_check=lambda k: k <= n)


def tlen_spectrum(cube: L.Cube, n: int) -> Spectrum:
    m = split(cube).min_size
    if m is None or m > n:
        return EMPTY
    return Spectrum.finite(range(m, n + 1))


def tlen_minmod(cube: L.Cube, n: int):
    spec = tlen_spectrum(cube, n)
    if spec.is_empty():
        raise UnsatisfiableInput("minmod of an unsatisfiable cube")
    return min(spec.members)


def tlen_handle(n: int) -> TheoryHandle:
    if n < 1:
        raise ValueError("T_<=n needs n >= 1")
    return TheoryHandle(
        f"tlen:{n}",
        L.SIGMA_EMPTY,
        tlen_member(n),
        decide=lambda c: not tlen_spectrum(c, n).is_empty(),
        gentle=lambda c: tlen_spectrum(c, n),
        contains_finite=lambda c, k: k in tlen_spectrum(c, n),
        minmod=lambda c: tlen_minmod(c, n),
        flags=frozenset({FINITE_MODEL_PROPERTY}),
    )
