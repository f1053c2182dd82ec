import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from test_syntax import rename_bound
from g1lc.calculus import Sequent, parse_sequent
from g1lc.cba import F, T, U, DPair, verify_laws
from g1lc.search import branch_to_semival, canonical_search, Refuted
from g1lc.syntax import (
    Abstract, And, Atom, Const, Exists0, Exists1, Forall0, Forall1, Not, Or, Signature, Var,
    eta, parse_abstract, parse_formula,
)
from g1lc.valuation import (
    BModel, CAInstance, DBModel, FormulaUniverse, SemiValuation, SequentUniverse, UniverseError,
    EvalError, bmodel_from_dbmodel, ca_instances, check_2CA, check_3CA, check_db_below_boolean,
    check_valuation_below_boolean, check_valuation_below_db, check_semival, direct_lab,
    eval_abstract, eval_db, girard_lab, hauptsatz_ver2,
    left, maehara_M, maehara_valuation, model_from_semival, model_from_semival_girard, right,
    soundness_check, tautology,
)

c, d = Const("c"), Const("d")
CD = Signature(frozenset({"c", "d"}), {}, {"R": 1})
tup = lambda p: (p.box, p.dia)


def fm(text):
    return parse_formula(text, CD, {})


def ab(text):
    return parse_abstract(text, CD, {})


def not_x():
    return Abstract(("x",), Not(Atom("X", (Var("x"),))))


# ------------------------------------------------------------- evaluation

def test_eval_singleton_existential():
    m = DBModel([c], {1: [(U,)]})
    assert eval_db(m, fm("EX X:1. X(c)")) == U


def test_eval_negation_and_conjunction_of_named_function():
    m = DBModel([c], {1: [(U,)]}, named={("A", 1): (U,)})
    assert eval_db(m, fm("~A(c)")) == U
    assert eval_db(m, fm("A(c) & ~A(c)")) == U


def test_eval_abstract_is_pointwise():
    m = DBModel([c, d], {}, named={("R", 1): (T, F)})
    assert eval_abstract(m, ab("\\x. ~R(x)")) == (F, T)


def test_eval_errors():
    m = DBModel([c], {1: [(U,)]})
    with pytest.raises(EvalError):
        eval_db(m, Atom("X", (Var("x"),)), env1={("X", 1): (U,)})
    with pytest.raises(EvalError):
        eval_db(m, fm("Q(c)"))
    with pytest.raises(ValueError):
        DBModel([], {})


closed_terms = st.sampled_from([Var("x"), Var("y"), c, d])
small_atoms = st.one_of(
    st.builds(lambda t: Atom("X", (t,)), closed_terms),
    st.builds(lambda t: Atom("Y", (t,)), closed_terms),
    st.builds(lambda t: Atom("R", (t,), True), closed_terms),
    st.just(Atom("P")),
)


def _grow(children):
    return st.one_of(
        st.builds(Not, children),
        st.builds(Or, children, children),
        st.builds(And, children, children),
        st.builds(Exists0, st.sampled_from("xy"), children),
        st.builds(Forall0, st.sampled_from("xy"), children),
        st.builds(lambda v, b: Exists1(v, 1, b), st.sampled_from("XY"), children),
        st.builds(lambda v, b: Forall1(v, 1, b), st.sampled_from("XY"), children),
    )


small_formulas = st.recursive(small_atoms, _grow, max_leaves=5)
pair = st.sampled_from([F, U, T])
unary_fn = st.tuples(pair, pair)


@given(small_formulas, st.lists(unary_fn, min_size=1, max_size=3), unary_fn, unary_fn, unary_fn, pair)
def test_eval_matches_oracle_and_respects_alpha(f, d1, x, y, r, p):
    env0 = {"x": c, "y": d}
    m = DBModel([c, d], {1: d1}, named={("X", 1): x, ("Y", 1): y, ("R", 1): r, ("P", 0): (p,)})
    val = eval_db(m, f, env0)
    as_dict = lambda fn: {("c",): tup(fn[0]), ("d",): tup(fn[1])}
    named = {("X", 1): as_dict(x), ("Y", 1): as_dict(y), ("R", 1): as_dict(r), ("P", 0): {(): tup(p)}}
    ref = oracles.eval_d2(f, ["c", "d"], {1: [as_dict(g) for g in m.D1[1]]}, named, {"x": "c", "y": "d"})
    assert tup(val) == ref
    assert eval_db(m, rename_bound(f), env0) == val


# ----------------------------------------------------------- comprehension

def test_3CA_holds_when_target_is_present():
    m = DBModel([c], {1: [(T,), (F,)]})
    assert check_3CA(m, [CAInstance(not_x(), ("X", 1))]).ok


def test_3CA_fails_without_the_needed_function():
    m = DBModel([c], {1: [(T,)]})
    rep = check_3CA(m, [CAInstance(not_x(), ("X", 1))])
    assert not rep.ok and rep.failures[0].condition == "3CA"


def test_3CA_failure_agrees_with_brute_force():
    # the needed alpha must sit below constant f in the information order
    assert [a for a in oracles.D2 if oracles.tri(a, (0, 0))] == [(0, 0), (0, 1)]
    for d1 in ([(T,)], [(T,), (U,)], [(U,)], [(F,), (T,)]):
        m = DBModel([c], {1: d1})
        expect = all(any(oracles.tri(tup(a[0]), oracles.neg(tup(b[0]))) for a in d1) for b in d1)
        assert check_3CA(m, [CAInstance(not_x(), ("X", 1))]).ok == expect


def test_CA_empty_universe():
    assert check_3CA(DBModel([c], {1: [(T,)]}), []).ok
    assert check_2CA(BModel([c], {1: [(T,)]}), []).ok


def test_2CA_needs_the_complement():
    assert not check_2CA(BModel([c], {1: [(T,)]}), [CAInstance(not_x(), ("X", 1))]).ok
    assert check_2CA(BModel([c], {1: [(T,), (F,)]}), [CAInstance(not_x(), ("X", 1))]).ok


def test_bmodel_rejects_non_diagonal_values():
    with pytest.raises(ValueError):
        BModel([c], {1: [(U,)]})


# -------------------------------------------------------- semi valuations

def p_and_q_branch():
    out = canonical_search(parse_sequent("=> P & Q"))
    assert isinstance(out, Refuted)
    return out.branch


def test_branch_valuation_of_failed_conjunction():
    v = branch_to_semival(p_and_q_branch())
    P, Q = Atom("P"), Atom("Q")
    assert v(And(P, Q)) == F
    assert {v(P), v(Q)} == {F, U}
    assert check_semival(v).ok


def test_negation_condition_can_fail():
    P = Atom("P")
    v = SemiValuation(FormulaUniverse.close([Not(P)]), {Not(P): T, P: T})
    rep = check_semival(v)
    assert [f.condition for f in rep.failures] == ["neg"]
    assert oracles.tri((1, 1), oracles.neg((1, 1))) is False


def test_everywhere_undetermined_passes():
    U_ = FormulaUniverse.close([fm("ALL X:1. ~X(c) | X(c)"), fm("EX x. R(x) & P")], [c, d],
                               {1: [ab("\\x. R(x)")]})
    v = SemiValuation(U_, {}, default=U)
    rep = check_semival(v)
    assert rep.ok and rep.checked == 2 * len(U_) - sum(isinstance(f, Atom) for f in U_)


def test_valuation_outside_universe():
    v = SemiValuation(FormulaUniverse.close([Atom("P")]), {}, default=U)
    with pytest.raises(UniverseError):
        v(Atom("Q"))


def test_valuation_json_roundtrip():
    v = branch_to_semival(p_and_q_branch())
    again = SemiValuation.from_json(json.loads(json.dumps(v.to_json())))
    assert dict(again.items()) == dict(v.items())


def test_universe_is_closed_under_instances():
    U_ = FormulaUniverse.close([fm("ALL X:1. EX x. X(x)")], [c], {1: [ab("\\x. R(x)"), eta("Y", 1)]})
    for f in U_:
        if isinstance(f, (Exists0, Forall0, Exists1, Forall1)):
            assert all(g in U_ for g in U_.instances(f))
    assert fm("R(c)") in U_ and Atom("Y", (c,)) in U_


# ------------------------------------------------------------ the two labs

def unary_universe(*seeds, pool=("\\x. R(x)",), terms=(c,)):
    return FormulaUniverse.close([fm(s) for s in seeds], terms, {1: [ab(t) for t in pool]})


def test_direct_model_everywhere_undetermined():
    v = SemiValuation(unary_universe("EX X:1. X(c)"), {}, default=U)
    tm = model_from_semival(v)
    T_ = ab("\\x. R(x)")
    assert set(tm.above[T_]) == {(F,), (T,)}
    assert len(tm.model.I[1]) == 2
    assert check_valuation_below_boolean(v, tm).ok


def test_direct_model_constant_true():
    U_ = unary_universe("EX X:1. X(c)")
    v = SemiValuation(U_, {fm("R(c)"): T}, default=U)
    tm = model_from_semival(v)
    assert tm.above[ab("\\x. R(x)")] == [(T,)]
    assert check_valuation_below_boolean(v, tm).ok and direct_lab(v).ok


def test_direct_model_needs_two_valued_input():
    from g1lc.cba import PowersetAlgebra
    v = SemiValuation(FormulaUniverse.close([Atom("P")]), {}, PowersetAlgebra({1}), default=None)
    with pytest.raises(ValueError):
        model_from_semival(v)


def test_girard_construction_on_branch_valuation():
    v = branch_to_semival(p_and_q_branch())
    gm = model_from_semival_girard(v)
    tm = bmodel_from_dbmodel(gm.model)
    assert check_valuation_below_db(v, gm).ok
    assert check_3CA(gm.model, ca_instances(v.universe)).ok
    assert check_db_below_boolean(gm.model, tm, v.universe).ok
    assert girard_lab(v).ok


UNIVERSES = {
    "so_excluded_middle": lambda: unary_universe("ALL X:1. ~X(c) | X(c)", pool=("\\x. R(x)", "\\x. ~R(x)")),
    "so_two_points": lambda: unary_universe("EX X:1. X(c) & ~X(d)", terms=(c, d)),
    "first_order": lambda: unary_universe("ALL x. R(x)", "EX x. ~R(x)", pool=(), terms=(c, d)),
    "nullary": lambda: FormulaUniverse.close([fm("EX X:0. X & P")], (), {0: [ab("\\. P"), ab("\\. ~P")]}),
    "parameter": lambda: unary_universe("ALL X:1. EX Y:1. Y(c) | ~X(c)", pool=("\\x. R(x)", "\\x. ~R(x)")),
}


@pytest.mark.parametrize("name", sorted(UNIVERSES))
def test_constructions_hold_for_every_semivaluation(name):
    U_ = UNIVERSES[name]()
    n = 0
    for table in oracles.general_semivaluations(U_.formulas, U_.instances):
        v = SemiValuation(U_, {f: DPair(*a) for f, a in table.items()})
        assert check_semival(v).ok
        assert girard_lab(v).ok, girard_lab(v).to_json()
        assert direct_lab(v).ok, direct_lab(v).to_json()
        n += 1
    assert n > 1


def test_tampered_valuation_is_rejected():
    U_ = UNIVERSES["so_excluded_middle"]()
    table = next(oracles.general_semivaluations(U_.formulas, U_.instances))
    table = {f: DPair(*a) for f, a in table.items()}
    table[fm("ALL X:1. ~X(c) | X(c)")] = T
    table[fm("R(c)")] = U
    table[fm("~R(c) | R(c)")] = F
    assert not check_semival(SemiValuation(U_, table)).ok


# ---------------------------------------------------------------- soundness

def test_identity_is_sound_under_any_valuation():
    P = Atom("P")
    U_ = FormulaUniverse.close([P])
    for a in (F, U, T):
        assert soundness_check(Sequent(frozenset({P}), frozenset({P})), SemiValuation(U_, {P: a}))


def test_unprovable_sequent_can_fail():
    P = Atom("P")
    assert not soundness_check(Sequent(frozenset(), frozenset({P})), SemiValuation(FormulaUniverse.close([P]), {P: F}))


def test_soundness_for_two_atom_tautologies():
    rng = random.Random(3)
    for _ in range(40):
        f = oracles.random_formula(rng, ["P", "Q"], 3)
        if not oracles.valid([], [f]):
            continue
        fu = FormulaUniverse(frozenset(oracles.subformulas(f)))
        for table in oracles.semivaluations(fu.formulas):
            v = SemiValuation(fu, {g: DPair(*a) for g, a in table.items()})
            assert soundness_check(Sequent(frozenset(), frozenset({f})), v)


def test_tautology_matches_oracle():
    for f in oracles.formulas(["P", "Q"], 2)[:300]:
        assert tautology(Sequent(frozenset(), frozenset({f}))) == oracles.valid([], [f])


# ---------------------------------------------------------------- Maehara

P, Q = Atom("P"), Atom("Q")


def test_maehara_membership():
    su = SequentUniverse.build([P])
    assert left(P) in maehara_M(su, right(P))
    for s in su.sequents:
        assert (s in maehara_M(su, s)) == oracles.valid(s.ant, s.suc)


def test_maehara_zero_is_M_of_empty_sequent():
    su = SequentUniverse.build([Not(P)])
    mv = maehara_valuation(su)
    assert mv.algebra.zero == mv.relation.M[Sequent()]
    assert mv.algebra.zero == {x for x in su.sequents if oracles.valid(x.ant, x.suc)}


@pytest.mark.parametrize("seed", [[P], [Not(P)], [Or(P, Not(P))], [And(P, Q)], [Or(P, Q)], [P, Q]])
def test_maehara_valuation_is_a_semivaluation(seed):
    mv = maehara_valuation(SequentUniverse.build(seed))
    assert check_semival(mv.valuation).ok
    assert verify_laws(mv.algebra).ok
    for a in mv.universe.formulas:
        assert mv.box(a) <= mv.dia(a)


def test_maehara_negation_inequality_by_brute_force():
    mv = maehara_valuation(SequentUniverse.build([Not(P)]))
    alg = mv.algebra
    X = mv.relation.X
    comp = [b for b in alg.elements if b & mv.box(P) == alg.zero and alg.sup([b, mv.box(P)]) == X]
    assert comp == [alg.comp(mv.box(P))]
    assert mv.dia(Not(P)) >= comp[0]


def test_maehara_relation_conditions():
    mv = maehara_valuation(SequentUniverse.build([Or(P, Not(P))]))
    assert mv.relation.is_valid()


def test_maehara_refuses_quantified_universe():
    with pytest.raises(UniverseError):
        SequentUniverse.build([fm("EX x. R(x)")])


@pytest.mark.parametrize("text", ["P => P", "=> P | ~P", "P & ~P =>", "P, ~P =>"])
def test_hauptsatz_ver2_on_universe_sequents(text):
    seq = parse_sequent(text)
    mv = maehara_valuation(SequentUniverse.build(seq.formulas()))
    assert hauptsatz_ver2(mv, seq).ok


def test_hauptsatz_ver2_needs_universe_members():
    mv = maehara_valuation(SequentUniverse.build([P]))
    with pytest.raises(UniverseError):
        hauptsatz_ver2(mv, parse_sequent("=> Q"))
