import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import slow_sat
from theorycomb import logic as L
from theorycomb.errors import LimitExceeded
from theorycomb.fuzz import ORBIT_SMALL, PREDICATES, UNARY_S, CubeFuzzer
from theorycomb.models import (
    EQUALITY_LOGIC,
    FiniteInterpretation,
    ModelFinder,
    brute_spectrum,
    decode_table,
    encode_table,
    eval_term,
    evaluate,
    find_model,
    free_membership,
    min_eq_model_size,
)
from theorycomb.theories.equality import teq_member, tle_member
from theorycomb.theories.orbit import torb2_member
from theorycomb.theories.params import default_tables
from theorycomb.theories.uf import tf_member

x, y, z = (L.Var(n) for n in "xyz")
a = L.Const("a")


def test_evaluate_examples():
    assert evaluate(FiniteInterpretation(1, {"t": (0,)}, {"a": 0}), L.orb(1))
    assert not evaluate(FiniteInterpretation(2, assign={"x": 0, "y": 1}), L.eq(x, y))
    assert evaluate(FiniteInterpretation(3, {"t": (1, 2, 0)}, {"a": 0}), L.orb(3))


def test_interpretation_validation():
    with pytest.raises(ValueError):
        FiniteInterpretation(2, {"t": (0, 2)})
    with pytest.raises(ValueError):
        FiniteInterpretation(2, assign={"x": 5})


def test_interpretation_text():
    m = FiniteInterpretation(2, {"t": (1, 0)}, {"a": 0}, {("P", 3): True}, {"x": 1})
    assert str(m) == "size 2; a=0; t: [1,0]; P3=true; x=1"
    assert eval_term(m, L.iterate("t", 3, a)) == 1


@given(st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_table_codes_round_trip(tab):
    assert decode_table(encode_table(tab), 5) == tuple(tab)


def test_table_codes_are_lexicographic():
    tabs = [decode_table(c, 3) for c in range(27)]
    assert tabs == sorted(tabs)


def test_find_model_examples():
    assert find_model(L.neq(x, y), L.SIGMA_EMPTY, 1) is None
    m = find_model(L.pred(2), L.SIGMA_P, 2, teq_member())
    assert m is not None and m.size == 2 and m.pred("P", 2)
    assert find_model(L.pred(2), L.SIGMA_P, 3, teq_member()) is None


def test_brute_spectrum_examples():
    assert brute_spectrum(L.TRUE, teq_member(), 6) == frozenset(range(1, 7))
    assert brute_spectrum(L.pred(3), teq_member(), 6) == {3}
    assert brute_spectrum(L.orb(2), torb2_member(), 6) == {2, 3, 4}


def test_min_eq_model_size_examples():
    assert min_eq_model_size(L.eq(x, y)) == 1
    assert min_eq_model_size(L.build_distinct([x, y, z])) == 3
    assert min_eq_model_size(L.conj(L.neq(x, y), L.neq(y, z))) == 2
    assert min_eq_model_size(L.conj(L.eq(x, y), L.neq(y, x))) is None


def test_search_limit():
    with pytest.raises(LimitExceeded):
        find_model(L.TRUE, L.SIGMA_EMPTY, 9, limit=7)


def test_first_model_is_canonical():
    m = find_model(L.neq(L.App("t", a), a), L.SIGMA_TA, 2)
    # constants first in restricted-growth order, then the smallest table
    assert m.consts == {"a": 0} and m.tables["t"] == (1, 0)


MEMBERS = [
    ("free_s", free_membership(L.SIGMA_S), UNARY_S),
    ("tf", tf_member(default_tables().f), UNARY_S),
    ("teq", teq_member(), PREDICATES),
    ("tle", tle_member(default_tables().F), PREDICATES),
    ("torb2", torb2_member(), ORBIT_SMALL),
]


@pytest.mark.parametrize("name, member, grammar", MEMBERS, ids=[m[0] for m in MEMBERS])
def test_vectorized_search_matches_slow_path(name, member, grammar):
    finder = ModelFinder(member, 3)
    for c in CubeFuzzer(7).cubes(grammar, 40):
        for k in (1, 2, 3):
            assert (finder.find(c, member.sig, k) is not None) == slow_sat(c, member, member.sig, k), (
                L.to_text(c),
                k,
            )


@pytest.mark.parametrize("name, member, grammar", MEMBERS, ids=[m[0] for m in MEMBERS])
def test_pruning_keeps_answers(name, member, grammar):
    finder = ModelFinder(member, 4)
    for c in CubeFuzzer(8).cubes(grammar, 60):
        for k in range(1, 5):
            pruned = finder.find(c, member.sig, k)
            plain = finder.find(c, member.sig, k, prune=False)
            assert (pruned is None) == (plain is None)


@pytest.mark.parametrize("name, member, grammar", MEMBERS, ids=[m[0] for m in MEMBERS])
def test_found_models_are_sound(name, member, grammar):
    finder = ModelFinder(member, 5)
    for c in CubeFuzzer(9).cubes(grammar, 60):
        for k in range(1, 6):
            m = finder.find(c, member.sig, k)
            if m is not None:
                assert m.size == k and evaluate(m, c) and member.accepts(m)


def test_general_formulas_use_their_disjuncts():
    phi = L.Or((L.as_cube(L.pred(3)), L.conj(L.pred(2), L.pred(3))))
    assert find_model(phi, L.SIGMA_P, 3, teq_member()) is not None
    assert find_model(L.orb(2), L.SIGMA_TA, 5, torb2_member()) is None


def test_surjective_models_name_every_element():
    member = torb2_member()
    finder = ModelFinder(member, 4)
    wit = L.conj(L.eq(z, a), L.eq(y, L.App("t", a)), L.eq(x, L.iterate("t", 2, a)), L.neq(a, L.App("t", a)))
    for k in range(1, 5):
        m = finder.find(wit, L.SIGMA_TA, k, surjective=True)
        if m is not None:
            assert set(m.assign.values()) == set(range(k))
    assert finder.find(wit, L.SIGMA_TA, 3, surjective=True) is not None
    assert finder.find(wit, L.SIGMA_TA, 4, surjective=True) is None
    assert finder.find(wit, L.SIGMA_TA, 4) is not None


def test_extra_variables_join_the_assignment():
    m = find_model(L.eq(x, x), L.SIGMA_EMPTY, 3, surjective=True, extra_vars=["u", "v"])
    assert m is not None and set(m.assign.values()) == {0, 1, 2}


SMALL_EQ = [x, y, z]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(SMALL_EQ), st.sampled_from(SMALL_EQ), st.booleans()), max_size=4))
def test_min_eq_model_size_is_least_spectrum_element(lits):
    cube = L.Cube(tuple(L.Lit(L.Eq(l, r), p) for l, r, p in lits))
    n = max(1, len(L.vars_of(cube)))
    spec = brute_spectrum(cube, EQUALITY_LOGIC, n)
    assert min_eq_model_size(cube) == (min(spec) if spec else None)


@st.composite
def interp_and_formula(draw):
    k = draw(st.integers(1, 3))
    m = FiniteInterpretation(
        k,
        {"t": tuple(draw(st.lists(st.integers(0, k - 1), min_size=k, max_size=k)))},
        {"a": draw(st.integers(0, k - 1))},
        {("P", i): draw(st.booleans()) for i in (1, 2)},
        {v: draw(st.integers(0, k - 1)) for v in "xy"},
    )
    terms = [x, y, a, L.App("t", x), L.App("t", a)]
    lit = st.one_of(
        st.builds(lambda l, r, p: L.Lit(L.Eq(l, r), p), st.sampled_from(terms), st.sampled_from(terms), st.booleans()),
        st.builds(L.pred, st.sampled_from([1, 2]), st.booleans()),
    )
    phi = draw(
        st.recursive(
            lit,
            lambda kids: st.one_of(
                kids.map(L.Not),
                st.lists(kids, min_size=1, max_size=3).map(lambda xs: L.And(tuple(xs))),
                st.lists(kids, min_size=1, max_size=3).map(lambda xs: L.Or(tuple(xs))),
            ),
            max_leaves=6,
        )
    )
    return m, phi


@given(interp_and_formula())
def test_evaluate_respects_boolean_structure(pair):
    m, phi = pair
    assert evaluate(m, L.Not(phi)) == (not evaluate(m, phi))
    assert evaluate(m, L.And((phi, L.Not(phi)))) is False
    assert evaluate(m, phi) == any(evaluate(m, c) for c in L.to_dnf(phi))
