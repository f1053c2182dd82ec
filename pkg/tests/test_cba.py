import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from g1lc.cba import (
    F, T, TWO, U, ConditionViolated, DPair, PowersetAlgebra, RelationMap, TableAlgebra,
    all_relation_maps, build_relation_cba, closure, d_elements, d_inf_leq, d_inf_tri,
    d_lattice_check, d_leq, d_neg, d_sup_leq, d_sup_tri, d_tri, fixed_points,
    format_relation_file, little_m, monotone_checks, monotone_neg, parse_relation_file,
    verify_laws,
)

P12 = PowersetAlgebra({1, 2})
P123 = PowersetAlgebra({1, 2, 3})
fs = frozenset


# ------------------------------------------------------------------ D-pairs

def test_negation_in_d2():
    assert d_neg(T) == F and d_neg(F) == T and d_neg(U) == U


def test_negation_in_powerset_pairs():
    assert d_neg(DPair(fs({1}), fs({1, 2})), P12) == DPair(fs(), fs({2}))


def test_orders_in_d2():
    assert d_leq(F, U) and d_leq(U, T) and not d_leq(T, U)
    assert d_tri(U, F) and d_tri(U, T)
    assert not d_tri(T, F)


def test_sup_inf_under_truth_order():
    assert d_sup_leq([F, T]) == T and d_inf_leq([F, T]) == F
    assert d_sup_leq([U, F]) == U
    assert d_sup_leq([]) == F and d_inf_leq([]) == T


def test_sup_inf_under_information_order():
    r = d_sup_tri([U])
    assert (r.box, r.dia, r.in_db) == (0, 1, True)
    r = d_sup_tri([T, F])
    assert (r.box, r.dia) == (1, 0) and not r.in_db
    with pytest.raises(ValueError):
        r.as_pair()
    r = d_inf_tri([T, F])
    assert r.as_pair() == U


def test_no_information_upper_bound_for_t_and_f():
    # nothing in D2 sits above both t and f in the information order
    assert [c for c in d_elements() if d_tri(T, c) and d_tri(F, c)] == []


@pytest.mark.parametrize("alg", [TWO, P12, P123], ids=["2", "P12", "P123"])
def test_negation_properties(alg):
    els = d_elements(alg)
    for a in els:
        assert d_neg(d_neg(a, alg), alg) == a
        assert alg.leq(d_neg(a, alg).box, d_neg(a, alg).dia)
    for a, b in itertools.product(els, repeat=2):
        if d_leq(a, b, alg):
            assert d_leq(d_neg(b, alg), d_neg(a, alg), alg)
        assert monotone_neg(a, b, alg)


def test_monotonicity_examples():
    assert d_tri(U, T) and d_tri(d_neg(U), d_neg(T))
    assert monotone_checks(TWO, max_family=3) == []
    assert monotone_checks(P12, max_family=2) == []


@pytest.mark.parametrize("alg", [TWO, P12, P123], ids=["2", "P12", "P123"])
def test_pair_lattice_is_complete(alg):
    assert d_lattice_check(alg) == []


def test_pair_sup_matches_brute_force():
    els = d_elements(P12)
    leq = lambda a, b: d_leq(a, b, P12)
    for fam in itertools.combinations(els, 2):
        ubs = [u for u in els if all(leq(a, u) for a in fam)]
        least = [u for u in ubs if all(leq(u, v) for v in ubs)]
        assert least == [d_sup_leq(fam, P12)]


# ------------------------------------------------------- relation algebras

def rm_of(X, M):
    return RelationMap(fs(X), {x: fs(v) for x, v in M.items()})


def test_single_point_empty_relation():
    rm = rm_of({"x"}, {"x": ()})
    assert closure(rm, fs()) == fs() and closure(rm, {"x"}) == {"x"}
    alg = build_relation_cba(rm)
    assert sorted(map(sorted, alg.elements)) == [[], ["x"]]
    assert alg.zero == fs() and alg.one == {"x"} and alg.comp(fs()) == {"x"}
    assert little_m(rm, "x") == {"x"} == alg.comp(rm.M["x"])
    assert verify_laws(alg).ok


def test_total_relation_is_degenerate():
    rm = rm_of({1, 2}, {1: {1, 2}, 2: {1, 2}})
    alg = build_relation_cba(rm)
    assert list(alg.elements) == [fs({1, 2})]
    assert alg.zero == alg.one == {1, 2}
    for a in oracles.subsets({1, 2}):
        assert closure(rm, a) == {1, 2}
    assert little_m(rm, 1) == {1, 2} == alg.comp(fs({1, 2}))
    assert verify_laws(alg).ok


def test_asymmetric_relation_is_rejected():
    rm = rm_of({1, 2}, {1: {2}, 2: ()})
    with pytest.raises(ConditionViolated) as e:
        build_relation_cba(rm)
    assert e.value.condition == 2 and {e.value.x, e.value.y} == {1, 2}


def test_condition_one_is_checked():
    rm = rm_of({1, 2}, {1: {1}, 2: ()})
    with pytest.raises(ConditionViolated) as e:
        build_relation_cba(rm)
    assert e.value.condition == 1 and e.value.x == 1


def test_powerset_laws_pass():
    assert verify_laws(P12).ok and verify_laws(P123).ok and verify_laws(TWO).ok


def test_corrupted_complement_is_caught():
    bad = TableAlgebra(P12, comp={fs({1}): fs({1, 2})})
    rep = verify_laws(bad)
    first = rep.first_failure()
    assert not rep.ok and first.law == "a & -a = 0"
    assert first.witness == (fs({1}),)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    X = list(range(1, n + 1))
    ours = {tuple(sorted((x, tuple(sorted(v))) for x, v in rm.M.items())) for rm in all_relation_maps(X)}
    ref = {tuple(sorted((x, tuple(sorted(v))) for x, v in M.items())) for M in oracles.valid_maps(X)}
    assert ours == ref


def all_maps_upto(n):
    for k in range(1, n + 1):
        yield from all_relation_maps(range(1, k + 1))


@pytest.mark.parametrize("rm", list(all_maps_upto(3)), ids=lambda rm: format_relation_file(rm).replace("\n", ";"))
def test_relation_algebra_matches_definition(rm):
    alg = build_relation_cba(rm)
    X, M = set(rm.X), {x: set(v) for x, v in rm.M.items()}
    assert sorted(alg.elements, key=sorted) == sorted(oracles.carrier(X, M), key=sorted)
    assert sorted(fixed_points(rm), key=sorted) == sorted(alg.elements, key=sorted)
    assert alg.zero == {x for x in X if x in M[x]}
    for x in X:
        assert rm.M[x] in alg
    for a in oracles.subsets(X):
        c = closure(rm, a)
        assert c == oracles.closure(X, M, a)
        assert a <= c and closure(rm, c) == c
        for b in oracles.subsets(X):
            if a <= b:
                assert c <= closure(rm, b)
    for a, b in itertools.product(alg.elements, repeat=2):
        assert alg.sup([a, b]) == oracles.least_upper_bound(alg.elements, [a, b])
        assert alg.inf([a, b]) == a & b
    for a in alg.elements:
        comps = [b for b in alg.elements if a & b == alg.zero and alg.sup([a, b]) == alg.one]
        assert comps == [alg.comp(a)]
    for y in X:
        assert little_m(rm, y) == alg.comp(rm.M[y])
    assert verify_laws(alg).ok


@st.composite
def relation_maps(draw, n=4):
    X = list(range(n))
    edges = draw(st.sets(st.tuples(st.sampled_from(X), st.sampled_from(X))))
    M = {x: set() for x in X}
    for a, b in edges:
        if a != b:
            M[a].add(b)
            M[b].add(a)
    for x in draw(st.sets(st.sampled_from(X), max_size=1)):
        # a reflexive point must see everything, and symmetry then forces the rest
        M[x] = set(X)
        for y in X:
            M[y].add(x)
    for x in X:
        if x in M[x] and M[x] != set(X):
            M[x].discard(x)
    return RelationMap(fs(X), M)


@given(relation_maps())
def test_sampled_four_point_algebras_proven_identities(rm):
    if not rm.is_valid():
        return
    alg = build_relation_cba(rm)
    X, M = set(rm.X), {x: set(v) for x, v in rm.M.items()}
    assert sorted(alg.elements, key=sorted) == sorted(oracles.carrier(X, M), key=sorted)
    assert alg.zero == {x for x in X if x in M[x]}
    for y in X:
        assert little_m(rm, y) == alg.comp(rm.M[y])
    for a in alg.elements:
        assert a & alg.comp(a) == alg.zero
        assert alg.sup([a, alg.comp(a)]) == alg.one
        for x in X:
            if a <= rm.M[x]:
                assert x in alg.comp(a)
    for a, b in itertools.product(alg.elements, repeat=2):
        assert alg.sup([a, b]) == oracles.least_upper_bound(alg.elements, [a, b])


@given(relation_maps())
def test_sampled_four_point_algebras_pass_all_laws(rm):
    # Fails: see test_two_disjoint_edges_is_not_distributive.
    if not rm.is_valid():
        return
    assert verify_laws(build_relation_cba(rm)).ok


def test_two_disjoint_edges_is_not_distributive():
    rm = rm_of({0, 1, 2, 3}, {0: {1}, 1: {0}, 2: {3}, 3: {2}})
    alg = build_relation_cba(rm)
    assert sorted(map(sorted, alg.elements)) == [[], [0], [0, 1, 2, 3], [1], [2], [3]]
    a, b, c = fs({0}), fs({1}), fs({2})
    assert alg.meet(a, alg.join(b, c)) == a
    assert alg.join(alg.meet(a, b), alg.meet(a, c)) == fs()
    # {1}, {2} and {3} are all complements of {0}
    comps = [x for x in alg.elements if a & x == alg.zero and alg.join(a, x) == alg.one]
    assert sorted(map(sorted, comps)) == [[1], [2], [3]]
    laws = {r.law for r in verify_laws(alg).failures()}
    assert laws == {"meet distributes over join", "join distributes over meet",
                    "complement is the unique Boolean complement"}


def test_counterexample_counts():
    def failing(n):
        return sum(not verify_laws(build_relation_cba(rm)).ok for rm in all_relation_maps(range(n)))
    assert failing(3) == 0
    assert failing(4) == 15 and len(list(all_relation_maps(range(4)))) == 113


def test_relation_file_roundtrip():
    rm = rm_of({"a", "b", "c"}, {"a": {"b"}, "b": {"a"}, "c": ()})
    again = parse_relation_file(format_relation_file(rm))
    assert again == rm


def test_relation_file_errors():
    with pytest.raises(ValueError):
        parse_relation_file("M(a) = b\n")
    with pytest.raises(ValueError):
        parse_relation_file("X = a\nM(b) = a\n")
