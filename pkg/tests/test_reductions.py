import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theorycomb import logic as L
from theorycomb.errors import OutOfFamilyQuery, TheoryCombError
from theorycomb.reductions import (
    CombinedOracle,
    family_members,
    fixpoint_query,
    make_analytic_oracle,
    make_bruteforce_oracle,
    orbit_query,
    probe_F_infinity,
    recover_f,
    recover_g,
)
from theorycomb.spectra import ALEPH0
from theorycomb.theories.params import FRelation, FTable, GTable, OracleTables, thue_morse_f

F8 = FTable((1, 0, 0, 1, 1, 1, 0, 0))
PARAMS = OracleTables(F8, GTable.from_f(F8, 12), FRelation({2: ALEPH0, 5: 2, 7: ALEPH0}))


def _recording(answer):
    seen = []

    def ask(phi):
        seen.append(phi)
        return answer(phi)

    return CombinedOracle(ask, "engine"), seen


def test_recover_f_examples():
    oracle, seen = _recording(lambda phi: True)
    assert recover_f(oracle, 1) == [1] and seen == []
    assert recover_f(make_analytic_oracle("tf-teq", PARAMS), 8) == list(F8.bits)


def test_recover_f_keeps_the_running_count():
    answers = iter([False, True])
    oracle, seen = _recording(lambda phi: next(answers))
    assert recover_f(oracle, 3) == [1, 0, 1]
    # f1(1) = 1 and f1(2) = 1, so both queries ask for two distinct fixpoints
    shape = [(q.literals[0].atom.index, sum(not l.positive for l in q)) for q in seen]
    assert shape == [(2, 1), (3, 1)]


def test_recover_f_with_brute_force():
    brute = make_bruteforce_oracle(family_members("tf-teq", PARAMS), 6)
    assert recover_f(brute, 6) == list(F8.bits[:6])


def test_recover_g_examples():
    oracle, _ = _recording(lambda phi: False)
    assert recover_g(oracle, 10) == [1, 0, 1, 0, 0, 0, 0, 0, 0, 0]
    assert recover_g(make_analytic_oracle("tg-torb2", PARAMS), 12) == list(PARAMS.g.bits)
    with pytest.raises(ValueError):
        recover_g(oracle, 5)
    with pytest.raises(ValueError):
        recover_f(oracle, 0)


@settings(max_examples=40)
@given(st.lists(st.booleans(), min_size=8, max_size=8), st.sampled_from([4, 6, 8, 12, 20]))
def test_recovered_g_always_validates(answers, upto):
    it = iter(answers * 3)
    bits = recover_g(CombinedOracle(lambda phi: next(it), "engine"), upto)
    assert bits[:4] == [1, 0, 1, 0] and len(bits) == upto
    assert all(bits[i] == bits[i + 1] for i in range(4, upto, 2))


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32])
def test_recover_f_round_trips_thue_morse(n):
    f = thue_morse_f(n)
    assert recover_f(make_analytic_oracle("tf-teq", OracleTables(f=f)), n) == list(f.bits)


def test_probe_examples():
    tle = make_analytic_oracle("tinf-tle", PARAMS)
    tleorb = make_analytic_oracle("tinf-tleorb", PARAMS)
    assert probe_F_infinity(tle, "tle", 2)
    assert not probe_F_infinity(tle, "tle", 5)
    for n in PARAMS.F.rows():
        assert probe_F_infinity(tleorb, "tleorb", n) == PARAMS.F.is_infinite(n)
    with pytest.raises(TheoryCombError):
        probe_F_infinity(tle, "other", 2)


def test_analytic_oracles_reject_other_queries():
    with pytest.raises(OutOfFamilyQuery):
        make_analytic_oracle("tf-teq", PARAMS)(L.as_cube(L.pred(3)))
    with pytest.raises(OutOfFamilyQuery):
        make_analytic_oracle("tg-torb2", PARAMS)(L.orb(2))
    with pytest.raises(OutOfFamilyQuery):
        make_analytic_oracle("tinf-tle", PARAMS)(L.conj(L.pred(2), L.neq(L.Var("x"), L.Var("y"))))
    with pytest.raises(OutOfFamilyQuery):
        make_analytic_oracle("tinf-tleorb", PARAMS)(L.as_cube(L.pred(2)))
    with pytest.raises(TheoryCombError):
        make_analytic_oracle("nosuch", PARAMS)


def test_analytic_tf_oracle_matches_brute_force():
    analytic = make_analytic_oracle("tf-teq", PARAMS)
    brute = make_bruteforce_oracle(family_members("tf-teq", PARAMS), 6)
    for m in range(1, 7):
        for k in range(1, m + 2):
            q = fixpoint_query(m, k)
            assert analytic(q) == brute(q) == (F8.ones(m) >= k), (m, k)


def test_analytic_tg_oracle_matches_brute_force():
    analytic = make_analytic_oracle("tg-torb2", PARAMS)
    brute = make_bruteforce_oracle(family_members("tg-torb2", PARAMS), 6)
    for m in range(2, 4):
        for k in range(1, 2 * m + 2):
            q = orbit_query(m, k)
            assert analytic(q) == brute(q), (m, k)


def test_family_members_rejects_infinite_families():
    with pytest.raises(TheoryCombError):
        family_members("tinf-tle", PARAMS)
