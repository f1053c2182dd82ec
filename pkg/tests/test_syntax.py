import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, SIG, formulas
from oracles import canonical, free0, free1
from g1lc.syntax import (
    Abstract, And, ArityError, Atom, Const, Exists0, Exists1, Forall0, Forall1, Not, Or,
    ParseError, Signature, UnknownSymbol, Var, alpha_eq, eta, format_formula, parse_abstract,
    parse_formula, parse_header, subst_first, subst_second,
)

C = Signature(frozenset({"c", "d"}))


def X(*args):
    return Atom("X", tuple(args))


# ------------------------------------------------------------------ parsing

def test_parse_second_order_existential():
    f = parse_formula("EX X:1. X(c)", C)
    assert isinstance(f, Exists1) and f.var == "X" and f.arity == 1
    assert f.body == Atom("X", (Const("c"),))


def test_implication_is_sugar():
    assert parse_formula("A > B") == Or(Not(Atom("A")), Atom("B"))


def test_biconditional_is_sugar():
    a, b = Atom("A"), Atom("B")
    assert parse_formula("A <-> B") == And(Or(Not(a), b), Or(Not(b), a))


def test_declared_arity_is_enforced():
    sig, arities, _ = parse_header(["const c d", "pred X:1"])
    with pytest.raises(ArityError):
        parse_formula("X(c,d)", sig, arities)


def test_inconsistent_arity_in_one_formula():
    with pytest.raises(ArityError):
        parse_formula("X(c) & X(c,d)", C)


def test_unknown_function_symbol():
    with pytest.raises(UnknownSymbol):
        parse_formula("X(g(c))", C)


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_formula("X(c) & ", C)
    assert "position" in str(e.value)


def test_precedence():
    f = parse_formula("~A & B | C")
    assert f == Or(And(Not(Atom("A")), Atom("B")), Atom("C"))


# --------------------------------------------------------- substitution

def test_subst_first_under_unrelated_binder():
    f = Forall0("y", X(Var("x")))
    assert subst_first(f, "x", Const("c")) == Forall0("y", X(Const("c")))


def test_subst_first_identity():
    assert subst_first(X(Var("x")), "x", Var("x")) == X(Var("x"))


def test_subst_first_avoids_capture():
    f = Exists0("y", X(Var("x"), Var("y")))
    g = subst_first(f, "x", Var("y"))
    assert isinstance(g, Exists0) and g.var != "y"
    assert g.body == X(Var("y"), Var(g.var))
    assert free0(g) == {"y"}


def test_subst_second_renames_predicate():
    f = Forall0("x", X(Var("x")))
    out = subst_second(f, ("X", 1), Abstract(("y",), Atom("Y", (Var("y"),))))
    assert out == Forall0("x", Atom("Y", (Var("x"),)))


def test_subst_second_unused_parameter():
    T = Abstract(("x",), Exists0("z", Atom("Z", (Var("z"),))))
    assert subst_second(X(Const("c")), ("X", 1), T) == Exists0("z", Atom("Z", (Var("z"),)))


def test_subst_second_avoids_capture():
    f = Exists0("y", X(Var("y")))
    out = subst_second(f, ("X", 1), Abstract(("x",), Atom("Y", (Var("y"),))))
    assert isinstance(out, Exists0) and out.var != "y"
    assert out.body == Atom("Y", (Var("y"),))
    assert free0(out) == {"y"}


def test_subst_second_arity_mismatch():
    with pytest.raises(ArityError):
        subst_second(X(Const("c")), ("X", 1), eta("Y", 2))


def test_subst_second_second_order_capture():
    # the abstract mentions Y free; the binder ALL Y must be renamed
    f = Forall1("Y", 1, Or(X(Const("c")), Atom("Y", (Const("c"),))))
    out = subst_second(f, ("X", 1), Abstract(("x",), Atom("Y", (Var("x"),))))
    assert free1(out) == {("Y", 1)}
    assert out.var != "Y"


# ------------------------------------------------------- alpha-equivalence

def test_alpha_eq_examples():
    assert alpha_eq(Exists0("x", X(Var("x"))), Exists0("y", X(Var("y"))))
    assert not alpha_eq(Exists0("x", X(Var("x"))), Forall0("x", X(Var("x"))))
    assert alpha_eq(Forall1("X", 1, X(Const("c"))), Forall1("Y", 1, Atom("Y", (Const("c"),))))


def test_alpha_eq_respects_free_names():
    assert not alpha_eq(Exists0("x", X(Var("y"))), Exists0("y", X(Var("y"))))


def rename_bound(f, suffix="9"):
    """Alpha-variant: every binder gets a new name (generator names never end in 9)."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(rename_bound(f.body, suffix))
    if isinstance(f, (Or, And)):
        return type(f)(rename_bound(f.left, suffix), rename_bound(f.right, suffix))
    if isinstance(f, (Exists0, Forall0)):
        v = f.var + suffix
        return type(f)(v, subst_first(rename_bound(f.body, suffix), f.var, Var(v)))
    v = f.var + suffix
    body = subst_second(rename_bound(f.body, suffix), (f.var, f.arity), eta(v, f.arity))
    return type(f)(v, f.arity, body)


# -------------------------------------------------------------- properties

@given(formulas)
def test_print_parse_roundtrip(f):
    g = parse_formula(format_formula(f), SIG)
    assert alpha_eq(f, g)
    assert canonical(f) == canonical(g)


@given(formulas)
def test_alpha_eq_agrees_with_canonical_renaming(f):
    g = rename_bound(f)
    assert alpha_eq(f, g) and canonical(f) == canonical(g)


@given(formulas, formulas)
def test_alpha_eq_matches_oracle(f, g):
    assert alpha_eq(f, g) == (canonical(f) == canonical(g))


@given(formulas)
def test_identity_abstract_is_neutral(f):
    assert alpha_eq(subst_second(f, ("X", 1), eta("X", 1)), f)


abstracts = st.sampled_from([
    "\\x. R(x)", "\\x. X(x) & Y(x)", "\\x. EX y. E(x,y)", "\\x. ALL X:1. X(x) | Y(z)",
    "\\x. E(x,y) | P", "\\x. EX Y:1. Y(f(x)) & ~X(x)",
])


@given(formulas, abstracts)
def test_subst_second_free_variables(f, text):
    T = parse_abstract(text, SIG)
    out = subst_second(f, ("X", 1), T)
    tf0 = free0(T.body) - set(T.params)
    tf1 = free1(T.body)
    assert free0(out) <= free0(f) | tf0
    assert free1(out) <= (free1(f) - {("X", 1)}) | tf1


@given(formulas, abstracts)
def test_subst_second_commutes_with_alpha(f, text):
    T = parse_abstract(text, SIG)
    assert alpha_eq(subst_second(f, ("X", 1), T), subst_second(rename_bound(f), ("X", 1), T))


@given(formulas, st.sampled_from([Var("y"), Const("c"), Var("z")]))
def test_subst_first_commutes_with_alpha(f, t):
    assert alpha_eq(subst_first(f, "x", t), subst_first(rename_bound(f), "x", t))


@given(formulas, st.sampled_from([Var("y"), Var("z")]))
def test_subst_first_never_captures(f, t):
    out = subst_first(f, "x", t)
    expected = (free0(f) - {"x"}) | ({t.name} if "x" in free0(f) else set())
    assert free0(out) == expected


def test_corpus_formulas_roundtrip():
    from g1lc.calculus import load_proof, parse_sequent
    seen = 0
    for path in sorted(CORPUS.glob("*/*.json")):
        data = json.loads(path.read_text())
        proof, sig = load_proof(path.read_text())
        for _, node in proof.nodes():
            again = parse_sequent(str(node.conclusion), sig, {})
            assert again == node.conclusion
            seen += 1
        assert data["proof"]["conclusion"] == str(proof.conclusion)
    assert seen > 100
