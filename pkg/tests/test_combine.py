import pytest

from theorycomb import logic as L
from theorycomb.combine import ENGINES, combine
from theorycomb.errors import CapabilityError, TheoryCombError
from theorycomb.fuzz import PREDICATES, UNARY_S, CubeFuzzer
from theorycomb.spectra import ALEPH0
from theorycomb.theories import make_theory
from theorycomb.theories.equality import tinfh_handle
from theorycomb.theories.params import FRelation, HTable, OracleTables

x, y, z = (L.Var(n) for n in "xyz")
s = lambda term: L.App("s", term)

TF, TINF, TEQ, TORB2 = (make_theory(n) for n in ("tf", "tinf", "teq", "torb2"))
TLEN3 = make_theory("tlen:3")
TLE = make_theory("tle", OracleTables(F=FRelation({1: 1, 2: 2, 3: 1, 4: ALEPH0, 5: 2})))
TINFH = tinfh_handle(HTable([0, 1]))


def test_nelson_oppen_examples():
    assert combine("no", TF, TINF, L.conj(L.neq(s(x), x), L.neq(x, y))).sat
    assert not combine("no", TF, TINF, L.neq(x, x)).sat
    assert not combine("no", TF, TINF, L.conj(L.eq(x, y), L.neq(y, x))).sat


def test_gentle_cfs_examples():
    res = combine("gentle-cfs", TLEN3, TLE, L.conj(L.pred(5), L.neq(x, y)))
    assert res.sat and 2 in res.probes
    assert not combine("gentle-cfs", TLEN3, TLE, L.conj(L.pred(5), L.build_distinct([x, y, z]))).sat
    assert not combine("gentle-cfs", TLEN3, TLE, L.neq(x, x)).sat


def test_minmod_infdec_examples():
    assert combine("minmod-infdec", TINF, TINFH, L.conj(L.pred(4), L.neq(x, y))).sat
    assert not combine("minmod-infdec", TINF, TINFH, L.pred(1)).sat
    assert not combine("minmod-infdec", TINF, TINFH, L.neq(x, x)).sat


def test_both_gentle_examples():
    res = combine("both-gentle", TEQ, TORB2, L.And((L.as_cube(L.pred(3)), L.orb(2))))
    assert res.sat
    assert not combine("both-gentle", TEQ, TLEN3, L.pred(5)).sat
    assert not combine("both-gentle", TEQ, TLEN3, L.neq(x, x)).sat


def test_satisfying_arrangement_is_reported():
    a = L.Const("a")
    res = combine("both-gentle", TEQ, TORB2, L.conj(L.pred(2), L.eq(L.App("t", a), x), L.neq(x, y)))
    assert res.sat and str(res.arrangement) == "{{x}}"


def test_capability_errors():
    with pytest.raises(CapabilityError):
        combine("no", TEQ, TINF, L.TRUE)
    with pytest.raises(CapabilityError):
        combine("gentle-cfs", TINF, TLE, L.TRUE)
    with pytest.raises(CapabilityError):
        combine("minmod-infdec", TEQ, TINF, L.TRUE)
    with pytest.raises(CapabilityError):
        combine("both-gentle", TORB2, TLE, L.TRUE)
    with pytest.raises(TheoryCombError):
        combine("nosuch", TF, TINF, L.TRUE)


def test_overlapping_signatures_are_rejected():
    with pytest.raises(TheoryCombError, match="overlap"):
        combine("both-gentle", TEQ, TEQ, L.TRUE)


def test_engines_agree_where_both_apply():
    for c in CubeFuzzer(31).cubes(PREDICATES, 300):
        L.reset_fresh()
        assert combine("both-gentle", TLEN3, TEQ, c).sat == combine("gentle-cfs", TLEN3, TEQ, c).sat, L.to_text(c)


def test_probes_never_exceed_one_past_the_spectrum():
    for c in CubeFuzzer(32).cubes(PREDICATES, 300):
        res = combine("gentle-cfs", TLEN3, TLE, c)
        # every tlen:3 spectrum is a subset of {1,2,3}
        assert all(k <= 4 for k in res.probes)


@pytest.mark.parametrize(
    "engine, t1, t2, grammar",
    [
        ("no", TF, TINF, UNARY_S),
        ("both-gentle", TEQ, TLEN3, PREDICATES),
        ("gentle-cfs", TLEN3, TLE, PREDICATES),
        ("minmod-infdec", TINF, TINFH, PREDICATES),
    ],
    ids=lambda v: v if isinstance(v, str) else None,
)
def test_adding_a_literal_never_makes_unsat_sat(engine, t1, t2, grammar):
    fz = CubeFuzzer(33)
    for c in fz.cubes(grammar, 150):
        extended = c & L.Cube((fz.literal(grammar),))
        if not combine(engine, t1, t2, c).sat:
            assert not combine(engine, t1, t2, extended).sat, L.to_text(extended)


def test_all_engines_are_registered():
    assert set(ENGINES) == {"no", "gentle-cfs", "minmod-infdec", "both-gentle"}
