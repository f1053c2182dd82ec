"""Semi valuations, D-pair and Boolean valued models, comprehension checks and
the valuation induced by cut-free provability.

Everything is finitized: the individual domain is an explicit pool of terms
and second-order quantifiers range over explicit pools of abstracts, so each
model-theoretic statement becomes an exhaustive check relative to a finite
universe of formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional

from .calculus import Sequent, signature_of
from .cba import (
    TWO, BoolAlg, DPair, RelationCBA, RelationMap, build_relation_cba, d_inf_leq,
    D2_NAMES, d_neg, d_sup_leq, d_tri, diag, fmt_pair, little_m,
)
from .syntax import (
    Abstract, And, App, Atom, Const, Exists0, Exists1, Forall0, Forall1, Formula, Not, Or,
    Signature, Term, Var, all_names, eta, free_preds, free_terms, free_vars1, fresh_name,
    iff, is_quantifier_free, parse_abstract, parse_formula, parse_term, subst_first, subst_second,
)


class UniverseError(ValueError):
    pass


class EvalError(ValueError):
    pass


class OracleFailure(RuntimeError):
    pass


# ------------------------------------------------------------ universes

def _unique(xs) -> tuple:
    seen, out = set(), []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


def abstract_subst(s: Abstract, var: tuple, t: Abstract) -> Abstract:
    """Substitute ``t`` for the free second-order variable ``var`` inside ``s``."""
    avoid = t.free_vars0() | set(s.params) | all_names(s.body)
    params, body = list(s.params), s.body
    for i, p in enumerate(params):
        if p in t.free_vars0():
            q = fresh_name(p, avoid)
            avoid.add(q)
            body = subst_first(body, p, Var(q))
            params[i] = q
    return Abstract(tuple(params), subst_second(body, var, t))


@dataclass(frozen=True)
class FormulaUniverse:
    """A finite formula set closed under subformulas and pool instantiation.

    ``terms`` stands in for the first-order terms and ``abstracts[n]`` for
    the n-ary abstracts.  Closure also adds ``G(t...)`` for every pool
    abstract ``\\x.G`` and ``P(t...)`` for every predicate head, so that the
    induced models can read off predicate values from the valuation.
    """

    formulas: frozenset
    terms: tuple = ()
    abstracts: Mapping = field(default_factory=dict)

    def __contains__(self, f):
        return f in self.formulas

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(sorted(self.formulas))

    def pool(self, n: int) -> tuple:
        return self.abstracts.get(n, ())

    def points(self, n: int) -> list:
        return list(itertools.product(self.terms, repeat=n))

    def instances(self, f: Formula) -> list:
        if isinstance(f, (Exists0, Forall0)):
            return [subst_first(f.body, f.var, t) for t in self.terms]
        if isinstance(f, (Exists1, Forall1)):
            return [subst_second(f.body, (f.var, f.arity), T) for T in self.pool(f.arity)]
        raise TypeError("not a quantifier")

    @classmethod
    def close(cls, seeds: Iterable[Formula], terms: Iterable[Term] = (),
              abstracts: Mapping | None = None, cap: int = 20000,
              add_free_terms: bool = True) -> "FormulaUniverse":
        seeds = list(seeds)
        terms = list(terms)
        if add_free_terms:
            for f in seeds:
                terms.extend(sorted(free_terms(f), key=str))
        abstracts = {n: _unique(ts) for n, ts in (abstracts or {}).items()}
        for n, ts in abstracts.items():
            for t in ts:
                if t.arity != n:
                    raise UniverseError(f"abstract {t} filed under arity {n}")
        shell = cls(frozenset(), _unique(terms), abstracts)
        out, heads = set(), set()
        todo = list(seeds)
        for n, ts in abstracts.items():
            for t in ts:
                todo.extend(t.apply(p) for p in shell.points(n))
        while todo:
            f = todo.pop()
            if f in out:
                continue
            out.add(f)
            if len(out) > cap:
                raise UniverseError(f"universe exceeds {cap} formulas")
            match f:
                case Atom(pred, args, const):
                    key = (pred, len(args), const)
                    if key not in heads:
                        heads.add(key)
                        for p in shell.points(len(args)):
                            todo.append(Atom(pred, p, const))
                case Not(b):
                    todo.append(b)
                case Or(a, b) | And(a, b):
                    todo += [a, b]
                case _:
                    todo += shell.instances(f)
        return cls(frozenset(out), shell.terms, abstracts)


# ------------------------------------------------------------ valuations

@dataclass
class SemiValuation:
    universe: FormulaUniverse
    table: dict
    algebra: BoolAlg = TWO
    default: Optional[DPair] = None

    def __call__(self, f: Formula) -> DPair:
        v = self.table.get(f)
        if v is not None:
            return v
        if f not in self.universe:
            raise UniverseError(f"{f} is outside the universe")
        if self.default is None:
            raise UniverseError(f"no value for {f}")
        return self.default

    def items(self):
        return [(f, self(f)) for f in self.universe]

    def to_json(self) -> dict:
        U = self.universe
        items = list(U.formulas) + list(U.terms) + [t for ts in U.abstracts.values() for t in ts]
        return {"algebra": self.algebra.name,
                "signature": signature_of(items).to_json(),
                "terms": [str(t) for t in U.terms],
                "abstracts": {str(n): [str(t) for t in ts] for n, ts in U.abstracts.items()},
                "table": [{"formula": str(f), "value": fmt_pair(v, self.algebra)}
                          for f, v in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SemiValuation":
        """Read a two-valued table back; values are ``t``, ``u`` or ``f``."""
        if data.get("algebra", TWO.name) != TWO.name:
            raise UniverseError("only tables over the two-element algebra can be read back")
        sig = Signature.from_json(data.get("signature"))
        names = {name: pair for pair, name in D2_NAMES.items()}
        terms = [parse_term(t, sig) for t in data.get("terms", ())]
        abstracts = {int(n): [parse_abstract(t, sig, {}) for t in ts]
                     for n, ts in data.get("abstracts", {}).items()}
        table = {}
        for row in data["table"]:
            if row["value"] not in names:
                raise UniverseError(f"unknown truth value {row['value']!r}")
            table[parse_formula(row["formula"], sig, {})] = names[row["value"]]
        universe = FormulaUniverse.close(table, terms, abstracts, add_free_terms=False)
        return cls(universe, table, TWO, default=None)


@dataclass
class Failure:
    condition: str
    formula: Formula
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.condition}: {self.formula}: {self.lhs} vs {self.rhs}"


@dataclass
class CheckSummary:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def record(self, ok: bool, *failure):
        self.checked += 1
        if not ok:
            self.failures.append(Failure(*failure))

    def to_json(self) -> dict:
        return {"check": self.name, "ok": self.ok, "checked": self.checked,
                "failures": [{"condition": f.condition, "formula": str(f.formula),
                              "lhs": str(f.lhs), "rhs": str(f.rhs)} for f in self.failures]}


def check_semival(v: SemiValuation) -> CheckSummary:
    """Check every defining inequality of a semi valuation on the universe."""
    alg, U = v.algebra, v.universe
    rep = CheckSummary("semi valuation")
    fmt = lambda a: fmt_pair(a, alg)
    for f in U:
        val = v(f)
        rep.record(alg.leq(val.box, val.dia), "pair", f, fmt(val), "box <= dia")
        match f:
            case Atom():
                continue
            case Not(b):
                rhs, cond = d_neg(v(b), alg), "neg"
            case Or(a, b):
                rhs, cond = d_sup_leq([v(a), v(b)], alg), "or"
            case And(a, b):
                rhs, cond = d_inf_leq([v(a), v(b)], alg), "and"
            case Exists0() | Exists1():
                rhs = d_sup_leq([v(g) for g in U.instances(f)], alg)
                cond = "ex0" if isinstance(f, Exists0) else "ex1"
            case _:
                rhs = d_inf_leq([v(g) for g in U.instances(f)], alg)
                cond = "all0" if isinstance(f, Forall0) else "all1"
        rep.record(d_tri(val, rhs, alg), cond, f, fmt(val), fmt(rhs))
    return rep


def soundness_check(seq: Sequent, v: SemiValuation) -> bool:
    """``inf box V(A) over the antecedent <= sup dia V(B) over the succedent``."""
    alg = v.algebra
    lhs = alg.inf([v(a).box for a in seq.ant])
    rhs = alg.sup([v(b).dia for b in seq.suc])
    return alg.leq(lhs, rhs)


# ---------------------------------------------------------------- models

class DBModel:
    """Individuals ``D0`` (terms) and, per arity, functions ``D0^n -> pairs``.

    A function is a tuple of pairs indexed by ``itertools.product(D0, repeat=n)``.
    ``named`` interprets free predicate heads ``(name, arity)``.
    """

    kind = "D-pair model"

    def __init__(self, D0: Iterable[Term], D1: Mapping[int, Iterable[tuple]],
                 algebra: BoolAlg = TWO, named: Mapping | None = None):
        self.D0 = _unique(D0)
        if not self.D0:
            raise ValueError("D0 must be nonempty")
        self.algebra = algebra
        self.D1 = {n: _unique(fs) for n, fs in D1.items()}
        self.named = dict(named or {})
        self._members = frozenset(self.D0)
        self._points, self._index = {}, {}

    def points(self, n: int) -> list:
        if n not in self._points:
            pts = list(itertools.product(self.D0, repeat=n))
            self._points[n] = pts
            self._index[n] = {p: i for i, p in enumerate(pts)}
        return self._points[n]

    def index(self, n: int, args: tuple) -> int:
        self.points(n)
        return self._index[n][args]

    def table(self, n: int, fn: Callable) -> tuple:
        return tuple(fn(p) for p in self.points(n))

    def fmt_fn(self, fn: tuple, n: int) -> str:
        return "{" + ", ".join(f"({','.join(map(str, p))})->{fmt_pair(v, self.algebra)}"
                               for p, v in zip(self.points(n), fn)) + "}"


class BModel(DBModel):
    """A model whose predicate values are all diagonal pairs ``(a, a)``."""

    kind = "Boolean model"

    def __init__(self, D0, I, algebra: BoolAlg = TWO, named=None):
        super().__init__(D0, I, algebra, named)
        for n, fs in self.D1.items():
            for fn in fs:
                if any(a.box != a.dia for a in fn):
                    raise ValueError(f"non-diagonal value in I({n})")

    @property
    def I(self):
        return self.D1


def eval_term(m: DBModel, t: Term, env0: Mapping) -> Term:
    match t:
        case Var(name):
            if name in env0:
                return env0[name]
            if t in m._members:
                return t
            raise EvalError(f"unbound individual variable {name}")
        case Const():
            if t in m._members:
                return t
            raise EvalError(f"constant {t} is not an individual of the model")
        case App(fn, args):
            val = App(fn, tuple(eval_term(m, a, env0) for a in args))
            if val in m._members:
                return val
            raise EvalError(f"term {val} is not an individual of the model")
    raise TypeError(t)


def eval_db(m: DBModel, f: Formula, env0: Mapping | None = None,
            env1: Mapping | None = None) -> DPair:
    """Value of ``f``: predicates from ``env1`` then ``m.named``; quantifiers range over the model."""
    env0, env1 = dict(env0 or {}), dict(env1 or {})
    alg = m.algebra

    def ev(g, e0, e1):
        match g:
            case Atom(pred, args, _):
                key = (pred, len(args))
                fn = e1.get(key)
                if fn is None:
                    fn = m.named.get(key)
                if fn is None:
                    raise EvalError(f"no interpretation for {pred}/{len(args)}")
                pt = tuple(eval_term(m, a, e0) for a in args)
                return fn[m.index(len(args), pt)]
            case Not(b):
                return d_neg(ev(b, e0, e1), alg)
            case Or(a, b):
                return d_sup_leq([ev(a, e0, e1), ev(b, e0, e1)], alg)
            case And(a, b):
                return d_inf_leq([ev(a, e0, e1), ev(b, e0, e1)], alg)
            case Exists0(v, b) | Forall0(v, b):
                vals = [ev(b, {**e0, v: d}, e1) for d in m.D0]
                return (d_sup_leq if isinstance(g, Exists0) else d_inf_leq)(vals, alg)
            case Exists1(v, n, b) | Forall1(v, n, b):
                vals = [ev(b, e0, {**e1, (v, n): fn}) for fn in m.D1.get(n, ())]
                return (d_sup_leq if isinstance(g, Exists1) else d_inf_leq)(vals, alg)
        raise TypeError(g)

    return ev(f, env0, env1)


def eval_abstract(m: DBModel, t: Abstract, env0: Mapping | None = None,
                  env1: Mapping | None = None) -> tuple:
    env0 = dict(env0 or {})
    return m.table(t.arity, lambda p: eval_db(m, t.body, {**env0, **dict(zip(t.params, p))}, env1))


def fn_tri(a: tuple, b: tuple, alg: BoolAlg = TWO) -> bool:
    return all(d_tri(x, y, alg) for x, y in zip(a, b))


# ------------------------------------------------------------- comprehension

@dataclass(frozen=True)
class CAInstance:
    """An abstract ``\\x.G`` with one distinguished parameter ``(X, k)``, or none."""

    abstract: Abstract
    param: Optional[tuple] = None

    def __str__(self):
        p = f" [{self.param[0]}:{self.param[1]}]" if self.param else ""
        return f"{self.abstract}{p}"


def ca_instances(universe: FormulaUniverse) -> list:
    """Comprehension instances the finite pools can support.

    Every pool abstract is an instance without parameter; a free second-order
    variable ``X`` of a pool abstract ``S`` is a parameter when substituting
    each pool abstract for ``X`` in ``S`` stays inside the pool.
    """
    out = []
    for n in sorted(universe.abstracts):
        pool = set(universe.pool(n))
        for s in universe.pool(n):
            out.append(CAInstance(s))
            for var in sorted(s.free_vars1()):
                k = var[1]
                if universe.pool(k) and all(abstract_subst(s, var, t) in pool for t in universe.pool(k)):
                    out.append(CAInstance(s, var))
    return out


def check_3CA(m: DBModel, instances: Iterable[CAInstance]) -> CheckSummary:
    rep = CheckSummary("3CA")
    for inst in instances:
        n = inst.abstract.arity
        betas = [None] if inst.param is None else list(m.D1.get(inst.param[1], ()))
        for beta in betas:
            env1 = {} if beta is None else {inst.param: beta}
            target = eval_abstract(m, inst.abstract, env1=env1)
            ok = any(fn_tri(alpha, target, m.algebra) for alpha in m.D1.get(n, ()))
            rep.record(ok, "3CA", inst.abstract.body,
                       "no alpha" if not ok else "alpha found", m.fmt_fn(target, n))
    return rep


def comprehension_formula(inst: CAInstance) -> Formula:
    """``ALL X. EX Y. ALL x. Y(x) <-> G(x, X)`` for the instance."""
    s = inst.abstract
    y = fresh_name("Y", all_names(s.body) | set(s.params))
    body = iff(Atom(y, tuple(Var(p) for p in s.params)), s.body)
    for p in reversed(s.params):
        body = Forall0(p, body)
    f = Exists1(y, s.arity, body)
    if inst.param is not None:
        f = Forall1(inst.param[0], inst.param[1], f)
    return f


def check_2CA(n: BModel, instances: Iterable[CAInstance]) -> CheckSummary:
    rep = CheckSummary("2CA")
    top = diag(n.algebra.one)
    for inst in instances:
        f = comprehension_formula(inst)
        val = eval_db(n, f)
        rep.record(val == top, "2CA", f, fmt_pair(val, n.algebra), fmt_pair(top, n.algebra))
    return rep


# ----------------------------------------------------------- constructions

def _domain(universe: FormulaUniverse) -> tuple:
    return universe.terms or (Const("o"),)


def _heads(universe: FormulaUniverse) -> set:
    return {(p, n, c) for f in universe for (p, n, c) in free_preds(f)}


def valuation_fn(v: SemiValuation, t: Abstract, D0: tuple) -> tuple:
    """``v(T)(t...) := v(G(t...))`` as a table over ``D0^n``."""
    return tuple(v(t.apply(p)) for p in itertools.product(D0, repeat=t.arity))


@dataclass
class GirardModel:
    model: DBModel
    alpha: dict  # abstract -> function

    def __iter__(self):
        return iter((self.model, self.alpha))


def model_from_semival_girard(v: SemiValuation) -> GirardModel:
    """D-pair model whose second-order domain is the set of valuation functions of pool abstracts."""
    U = v.universe
    D0 = _domain(U)
    alpha = {t: valuation_fn(v, t, D0) for n in U.abstracts for t in U.pool(n)}
    D1 = {n: [alpha[t] for t in U.pool(n)] for n in U.abstracts}
    named = {(p, n): valuation_fn(v, eta(p, n, c), D0) for p, n, c in _heads(U)}
    return GirardModel(DBModel(D0, D1, v.algebra, named), alpha)


def _box_choice(fn: tuple) -> tuple:
    return tuple(diag(a.box) for a in fn)


def _above(fn: tuple, alg: BoolAlg) -> list:
    """Every diagonal-valued function ``X`` with ``fn`` below ``X`` in the information order."""
    choices = [[diag(x) for x in alg.elements if alg.leq(a.box, x) and alg.leq(x, a.dia)] for a in fn]
    return [tuple(c) for c in itertools.product(*choices)]


@dataclass
class TakahashiModel:
    model: BModel
    above: dict  # D1 function (or abstract) -> list of I-functions above it

    def __iter__(self):
        return iter((self.model, self.above))


def bmodel_from_dbmodel(m: DBModel) -> TakahashiModel:
    """``I(alpha)`` = diagonal functions above ``alpha``; ``I(n)`` their union."""
    above = {}
    I = {}
    for n, fs in m.D1.items():
        acc = []
        for fn in fs:
            above[fn] = _above(fn, m.algebra)
            acc.extend(above[fn])
        I[n] = _unique(acc)
    named = {k: _box_choice(fn) for k, fn in m.named.items()}
    return TakahashiModel(BModel(m.D0, I, m.algebra, named), above)


def model_from_semival(v: SemiValuation) -> TakahashiModel:
    """Two-valued model directly from a three-valued semi valuation.

    ``I(T)`` = two-valued functions above ``v(T)``; the ``above`` map is keyed
    by abstract.  Free predicate heads take the box component of their value.
    """
    if v.algebra is not TWO:
        raise ValueError("the direct construction needs a three-valued (D2) valuation")
    U = v.universe
    D0 = _domain(U)
    above, I = {}, {}
    for n in U.abstracts:
        acc = []
        for t in U.pool(n):
            above[t] = _above(valuation_fn(v, t, D0), TWO)
            acc.extend(above[t])
        I[n] = _unique(acc)
    named = {(p, n): _box_choice(valuation_fn(v, eta(p, n, c), D0)) for p, n, c in _heads(U)}
    return TakahashiModel(BModel(D0, I, TWO, named), above)


def _params(f: Formula) -> list:
    return [None] + sorted(free_vars1(f))


def check_valuation_below_db(v: SemiValuation, gm: GirardModel) -> CheckSummary:
    """``V(F(T)) <| M(F(alpha))`` with ``alpha = V(T)``, whenever ``F(T)`` is in the universe."""
    rep = CheckSummary("valuation below D-pair model")
    U, m = v.universe, gm.model
    for c in U:
        for var in _params(c):
            if var is None:
                rep.record(d_tri(v(c), eval_db(m, c), v.algebra), "v <| M", c, v(c), eval_db(m, c))
                continue
            for t in U.pool(var[1]):
                inst = subst_second(c, var, t)
                if inst not in U:
                    continue
                rhs = eval_db(m, c, env1={var: gm.alpha[t]})
                rep.record(d_tri(v(inst), rhs, v.algebra), "v <| M", inst, v(inst), rhs)
    return rep


def check_db_below_boolean(m: DBModel, tm: TakahashiModel, universe: FormulaUniverse) -> CheckSummary:
    """``alpha <| X  implies  M(F(alpha)) <| N(F(X))``."""
    rep = CheckSummary("D-pair model below Boolean model")
    n = tm.model
    for c in universe:
        for var in _params(c):
            if var is None:
                a, b = eval_db(m, c), eval_db(n, c)
                rep.record(d_tri(a, b, m.algebra), "M <| N", c, a, b)
                continue
            for alpha in m.D1.get(var[1], ()):
                a = eval_db(m, c, env1={var: alpha})
                for x in tm.above[alpha]:
                    b = eval_db(n, c, env1={var: x})
                    rep.record(d_tri(a, b, m.algebra), "M <| N", c, a, b)
    return rep


def check_valuation_below_boolean(v: SemiValuation, tm: TakahashiModel) -> CheckSummary:
    """``v(T) <| X  implies  v(F(T)) <| N(F(X))``, whenever ``F(T)`` is in the universe."""
    rep = CheckSummary("valuation below two-valued model")
    U, n = v.universe, tm.model
    for c in U:
        for var in _params(c):
            if var is None:
                b = eval_db(n, c)
                rep.record(d_tri(v(c), b, TWO), "v <| N", c, v(c), b)
                continue
            for t in U.pool(var[1]):
                inst = subst_second(c, var, t)
                if inst not in U:
                    continue
                for x in tm.above[t]:
                    b = eval_db(n, c, env1={var: x})
                    rep.record(d_tri(v(inst), b, TWO), "v <| N", inst, v(inst), b)
    return rep


@dataclass
class LabReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def girard_lab(v: SemiValuation) -> LabReport:
    """Two-step construction with all four universe-restricted identities checked."""
    gm = model_from_semival_girard(v)
    tm = bmodel_from_dbmodel(gm.model)
    inst = ca_instances(v.universe)
    return LabReport([check_semival(v), check_valuation_below_db(v, gm),
                      check_3CA(gm.model, inst), check_db_below_boolean(gm.model, tm, v.universe),
                      check_2CA(tm.model, inst)])


def direct_lab(v: SemiValuation) -> LabReport:
    """One-step two-valued construction: the identities for ``v <| N`` and 2CA."""
    tm = model_from_semival(v)
    return LabReport([check_semival(v), check_valuation_below_boolean(v, tm),
                      check_2CA(tm.model, ca_instances(v.universe))])


# ------------------------------------------------------------ propositional

def _truth(f: Formula, env: Mapping) -> bool:
    match f:
        case Atom():
            return env[f]
        case Not(b):
            return not _truth(b, env)
        case Or(a, b):
            return _truth(a, env) or _truth(b, env)
        case And(a, b):
            return _truth(a, env) and _truth(b, env)
    raise UniverseError("truth tables need quantifier-free formulas")


def _atoms(f: Formula, acc: set):
    match f:
        case Atom():
            acc.add(f)
        case Not(b):
            _atoms(b, acc)
        case Or(a, b) | And(a, b):
            _atoms(a, acc)
            _atoms(b, acc)
        case _:
            raise UniverseError("truth tables need quantifier-free formulas")


def tautology(s: Sequent) -> bool:
    """Classical validity of a quantifier-free sequent, atoms read as propositional letters."""
    atoms = set()
    for f in s.formulas():
        _atoms(f, atoms)
    atoms = sorted(atoms)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        env = dict(zip(atoms, bits))
        if all(_truth(a, env) for a in s.ant) and not any(_truth(b, env) for b in s.suc):
            return False
    return True


# -------------------------------------------------------- provability algebra

def _subformulas(f: Formula) -> set:
    out = {f}
    match f:
        case Not(b):
            out |= _subformulas(b)
        case Or(a, b) | And(a, b):
            out |= _subformulas(a) | _subformulas(b)
    return out


def all_sequents(formulas: Iterable[Formula]) -> list:
    fs = sorted(formulas)
    out = []
    for sides in itertools.product((0, 1, 2, 3), repeat=len(fs)):
        ant = frozenset(f for f, s in zip(fs, sides) if s & 1)
        suc = frozenset(f for f, s in zip(fs, sides) if s & 2)
        out.append(Sequent(ant, suc))
    return out


@dataclass
class SequentUniverse:
    """A finite set ``S0`` of sequents over a quantifier-free formula universe, plus an oracle."""

    formulas: frozenset
    sequents: tuple
    oracle: Callable

    @classmethod
    def build(cls, formulas: Iterable[Formula], extra: Iterable[Sequent] = (),
              oracle: Callable | None = None, full_limit: int = 256) -> "SequentUniverse":
        formulas = list(formulas)
        for f in formulas:
            if not is_quantifier_free(f):
                raise UniverseError(
                    f"{f} is quantified: cut-free provability is not decidable there, "
                    "so the provability algebra is only built for quantifier-free universes")
        U = set()
        for f in formulas:
            U |= _subformulas(f)
        if 4 ** len(U) <= full_limit:
            S0 = all_sequents(U)
        else:
            S0 = [Sequent()] + [Sequent(frozenset(), frozenset({a})) for a in sorted(U)] \
                + [Sequent(frozenset({a}), frozenset()) for a in sorted(U)]
        S0 = list(_unique(S0 + list(extra)))
        if oracle is None:
            from .search import decide_cut_free
            oracle = decide_cut_free
        return cls(frozenset(U), tuple(S0), lru_cache(maxsize=None)(oracle))

    def provable(self, s: Sequent) -> bool:
        r = self.oracle(s)
        if r is None:
            raise OracleFailure(f"oracle could not decide {s}")
        return r


def maehara_M(su: SequentUniverse, s: Sequent) -> frozenset:
    """Members ``L => R`` of ``S0`` such that ``s`` merged with them is cut-free provable."""
    return frozenset(y for y in su.sequents if su.provable(s.merge(y)))


def maehara_relation(su: SequentUniverse) -> RelationMap:
    return RelationMap(frozenset(su.sequents), {x: maehara_M(su, x) for x in su.sequents})


@dataclass
class MaeharaValuation:
    universe: SequentUniverse
    relation: RelationMap
    algebra: RelationCBA
    valuation: SemiValuation

    def box(self, a: Formula) -> frozenset:
        return self.valuation(a).box

    def dia(self, a: Formula) -> frozenset:
        return self.valuation(a).dia


def right(a: Formula) -> Sequent:
    return Sequent(frozenset(), frozenset({a}))


def left(a: Formula) -> Sequent:
    return Sequent(frozenset({a}), frozenset())


def maehara_valuation(su: SequentUniverse) -> MaeharaValuation:
    """``dia V(A) = M(=> A)`` and ``box V(A) = m(A =>)`` over the induced algebra."""
    rm = maehara_relation(su)
    alg = build_relation_cba(rm)
    table = {a: DPair(little_m(rm, left(a)), rm.M[right(a)]) for a in su.formulas}
    fu = FormulaUniverse(su.formulas)
    return MaeharaValuation(su, rm, alg, SemiValuation(fu, table, alg))


def hauptsatz_ver2(mv: MaeharaValuation, seq: Sequent) -> CheckSummary:
    """Walk the valuation argument for one sequent that is provable with cut.

    Checks, in order: the soundness inequality, ``(G =>)`` in every
    ``box V(A)``, the sup of the ``dia V(B)`` inside ``M(=> D)``, membership
    ``(G =>) in M(=> D)``, and finally that the oracle proves the sequent.
    """
    rep = CheckSummary("provable with cut implies cut-free")
    su, rm, alg, v = mv.universe, mv.relation, mv.algebra, mv.valuation
    g_left = Sequent(seq.ant, frozenset())
    d_right = Sequent(frozenset(), seq.suc)
    if g_left not in rm.X or d_right not in rm.X:
        raise UniverseError(f"{g_left} and {d_right} must belong to the sequent universe")
    lhs = alg.inf([v(a).box for a in seq.ant])
    sup = alg.sup([v(b).dia for b in seq.suc])
    rep.record(lhs <= sup, "soundness", seq, len(lhs), len(sup))
    rep.record(all(g_left in v(a).box for a in seq.ant), "weakening", seq, "G=> in box V(A)", "")
    rep.record(sup <= rm.M[d_right], "sup inside M(=>D)", seq, len(sup), len(rm.M[d_right]))
    rep.record(g_left in rm.M[d_right], "membership", seq, str(g_left), "M(=>D)")
    rep.record(su.provable(seq), "oracle", seq, "cut-free provable", "")
    return rep
