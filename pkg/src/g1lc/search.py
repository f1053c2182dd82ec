"""Canonical cut-free proof search with fair scheduling and countermodel branches."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Union

from .calculus import (
    FULL, CheckOptions, Fragment, ProofTree, Rule, Sequent, check_proof,
)
from .cba import F as FALSE, T as TRUE, U as UNDET
from .syntax import (
    Abstract, And, Atom, Const, Exists0, Exists1, Forall0, Forall1, Formula, Not, Or,
    Signature, Term, Var, all_names, eta, free_preds, free_terms, subst_first, subst_second,
)


@dataclass(frozen=True)
class SearchConfig:
    term_pool: tuple = ()
    abstract_pool: Mapping = field(default_factory=dict)
    node_budget: int = 20000
    depth_budget: int = 400
    fragment: Fragment = FULL
    default_abstracts: bool = True

    def __post_init__(self):
        object.__setattr__(self, "term_pool", tuple(self.term_pool))
        object.__setattr__(self, "abstract_pool",
                           {int(n): tuple(ts) for n, ts in dict(self.abstract_pool).items()})
        if self.node_budget < 0 or self.depth_budget < 0:
            raise ValueError("budgets must be non-negative")


@dataclass(frozen=True)
class Branch:
    """A saturated open branch: formulas met in antecedents and in succedents."""

    ant: frozenset
    suc: frozenset
    terms: tuple = ()
    abstracts: Mapping = field(default_factory=dict)
    relative_to_pools: bool = False

    def __hash__(self):
        return hash((self.ant, self.suc, self.terms))


@dataclass(frozen=True)
class Proved:
    proof: ProofTree
    nodes: int = 0


@dataclass(frozen=True)
class Refuted:
    branch: Branch
    nodes: int = 0


@dataclass(frozen=True)
class Exhausted:
    reason: str
    nodes: int = 0


Outcome = Union[Proved, Refuted, Exhausted]

WEAK = {("suc", Exists0), ("ant", Forall0), ("suc", Exists1), ("ant", Forall1)}
STRONG = {("ant", Exists0), ("suc", Forall0), ("ant", Exists1), ("suc", Forall1)}
RULES = {
    ("ant", Not): Rule.L_NOT, ("suc", Not): Rule.R_NOT,
    ("ant", Or): Rule.L_OR, ("suc", Or): Rule.R_OR,
    ("ant", And): Rule.L_AND, ("suc", And): Rule.R_AND,
    ("ant", Exists0): Rule.L_EX0, ("suc", Exists0): Rule.R_EX0,
    ("ant", Forall0): Rule.L_ALL0, ("suc", Forall0): Rule.R_ALL0,
    ("ant", Exists1): Rule.L_EX1, ("suc", Exists1): Rule.R_EX1,
    ("ant", Forall1): Rule.L_ALL1, ("suc", Forall1): Rule.R_ALL1,
}


class _Budget(Exception):
    pass


class _State:
    def __init__(self):
        self.ant, self.suc = set(), set()
        self.terms, self.abstracts = [], {}
        self.agenda, self.parked = deque(), []
        self.depth = 0

    def copy(self) -> "_State":
        c = _State()
        c.ant, c.suc = set(self.ant), set(self.suc)
        c.terms = list(self.terms)
        c.abstracts = {n: list(ts) for n, ts in self.abstracts.items()}
        c.agenda, c.parked = deque(self.agenda), list(self.parked)
        c.depth = self.depth
        return c

    def sequent(self) -> Sequent:
        return Sequent(frozenset(self.ant), frozenset(self.suc))

    def closed(self) -> bool:
        return any(isinstance(f, Atom) for f in self.ant & self.suc)


class _Search:
    def __init__(self, s: Sequent, cfg: SearchConfig, sig: Signature):
        self.cfg, self.nodes = cfg, 0
        self.taken = set(sig.names())
        for f in s.formulas():
            self.taken |= all_names(f)
        for t in cfg.term_pool:
            self.taken |= all_names(Atom("_", (t,)))
        for ts in cfg.abstract_pool.values():
            for t in ts:
                self.taken |= all_names(t)
        self.counter = itertools.count(1)
        st = _State()
        for t in cfg.term_pool:
            self._add_term(st, t)
        for n, ts in sorted(cfg.abstract_pool.items()):
            for t in ts:
                self._add_abstract(st, n, t)
        if cfg.default_abstracts:
            heads = sorted({h for f in s.formulas() for h in free_preds(f)})
            for name, n, const in heads:
                self._add_abstract(st, n, eta(name, n, const))
        for f in sorted(s.ant):
            self._add(st, "ant", f)
        for f in sorted(s.suc):
            self._add(st, "suc", f)
        self.root = st

    # pools ------------------------------------------------------------
    def _unpark(self, st: _State):
        st.agenda.extend(st.parked)
        st.parked.clear()

    def _add_term(self, st: _State, t: Term):
        if t not in st.terms:
            st.terms.append(t)
            self._unpark(st)

    def _add_abstract(self, st: _State, n: int, t: Abstract):
        if self.cfg.fragment.kind == "first_order" or not self.cfg.fragment.admits(t):
            return
        pool = st.abstracts.setdefault(n, [])
        if t not in pool:
            pool.append(t)
            self._unpark(st)

    def _fresh(self, base: str) -> str:
        while True:
            name = f"{base}{next(self.counter)}"
            if name not in self.taken:
                self.taken.add(name)
                return name

    def _add(self, st: _State, side: str, f: Formula) -> bool:
        cedent = st.ant if side == "ant" else st.suc
        if f in cedent:
            return False
        cedent.add(f)
        for t in sorted(free_terms(f), key=str):
            self._add_term(st, t)
        if not isinstance(f, Atom):
            st.agenda.append((side, f, 0))
        return True

    def _witnesses(self, st: _State, f: Formula) -> list:
        if isinstance(f, (Exists0, Forall0)):
            if not st.terms:
                self._add_term(st, Const(self._fresh("o")))
            return st.terms
        if self.cfg.fragment.kind == "first_order":
            return []
        pool = st.abstracts.get(f.arity, [])
        if not pool:
            fresh = eta(self._fresh("O"), f.arity, const=True)
            if self.cfg.fragment.admits(fresh):
                self._add_abstract(st, f.arity, fresh)
            pool = st.abstracts.get(f.arity, [])
        return pool

    # exploration --------------------------------------------------------
    def _tick(self, st: _State):
        self.nodes += 1
        st.depth += 1
        if self.nodes > self.cfg.node_budget:
            raise _Budget("node budget")
        if st.depth > self.cfg.depth_budget:
            raise _Budget("depth budget")

    def explore(self, st: _State):
        segment = []
        while True:
            if st.closed():
                if self.cfg.node_budget == 0:
                    raise _Budget("node budget")
                tip = ProofTree(st.sequent(), Rule.INIT)
                break
            if not st.agenda:
                return None, self._branch(st)
            side, f, idx = st.agenda.popleft()
            kind = (side, type(f))
            rule = RULES[kind]
            cur = st.sequent()
            if kind in WEAK:
                pool = self._witnesses(st, f)
                if idx >= len(pool):
                    st.parked.append((side, f, idx))
                    continue
                w = pool[idx]
                st.agenda.append((side, f, idx + 1))
                if isinstance(f, (Exists0, Forall0)):
                    minor = subst_first(f.body, f.var, w)
                else:
                    minor = subst_second(f.body, (f.var, f.arity), w)
                if minor in (st.ant if side == "ant" else st.suc):
                    continue
                self._tick(st)
                self._add(st, side, minor)
                segment.append((cur, rule, dict(major=f, witness=w)))
            elif kind in STRONG:
                self._tick(st)
                if isinstance(f, (Exists0, Forall0)):
                    a = self._fresh("a")
                    minor = subst_first(f.body, f.var, Var(a))
                    self._add_term(st, Var(a))
                else:
                    a = self._fresh("Y")
                    minor = subst_second(f.body, (f.var, f.arity), eta(a, f.arity))
                    self._add_abstract(st, f.arity, eta(a, f.arity))
                self._add(st, side, minor)
                segment.append((cur, rule, dict(major=f, eigen=a)))
            elif rule in (Rule.L_NOT, Rule.R_NOT):
                other = "suc" if side == "ant" else "ant"
                if f.body in (st.ant if other == "ant" else st.suc):
                    continue
                self._tick(st)
                self._add(st, other, f.body)
                segment.append((cur, rule, dict(major=f)))
            elif rule in (Rule.L_AND, Rule.R_OR):
                for i, part in enumerate((f.left, f.right)):
                    if part in (st.ant if side == "ant" else st.suc):
                        continue
                    self._tick(st)
                    segment.append((st.sequent(), rule, dict(major=f, index=i)))
                    self._add(st, side, part)
            else:
                cedent = st.ant if side == "ant" else st.suc
                if f.left in cedent or f.right in cedent:
                    continue
                self._tick(st)
                kids = []
                for part in (f.left, f.right):
                    child = st.copy()
                    self._add(child, side, part)
                    proof, branch = self.explore(child)
                    if proof is None:
                        return None, branch
                    kids.append(proof)
                tip = ProofTree(cur, rule, tuple(kids), major=f)
                break
        for conc, rule, kw in reversed(segment):
            tip = ProofTree(conc, rule, (tip,), **kw)
        return tip, None

    def _branch(self, st: _State) -> Branch:
        relative = any(isinstance(f, Exists1) for f in st.suc) or \
            any(isinstance(f, Forall1) for f in st.ant)
        return Branch(frozenset(st.ant), frozenset(st.suc), tuple(st.terms),
                      {n: tuple(ts) for n, ts in st.abstracts.items()}, relative)


def canonical_search(s: Sequent, cfg: SearchConfig = SearchConfig(),
                     sig: Signature = Signature()) -> Outcome:
    """Fair Schütte-style search: a proof, a saturated open branch, or a tripped budget.

    The agenda is FIFO over ``(side, formula, witness index)``.  Weak
    quantifier tasks re-enqueue with the next witness and park once the
    pool is used up; any growth of a pool wakes parked tasks.  Eigenvariables
    are globally fresh, so every returned proof has the pure variable property.
    """
    search = _Search(s, cfg, sig)
    try:
        proof, branch = search.explore(search.root)
    except _Budget as exc:
        return Exhausted(str(exc), search.nodes)
    except RecursionError:
        return Exhausted("recursion depth", search.nodes)
    if proof is not None:
        return Proved(proof, search.nodes)
    return Refuted(branch, search.nodes)


def branch_to_semival(b: Branch):
    """``t`` on antecedent formulas, ``f`` on succedent formulas, ``u`` elsewhere."""
    from .valuation import FormulaUniverse, SemiValuation
    both = b.ant & b.suc
    if both:
        raise ValueError(f"branch is not open: {sorted(map(str, both))} on both sides")
    universe = FormulaUniverse.close(b.ant | b.suc, b.terms, b.abstracts, add_free_terms=False)
    table = {f: TRUE for f in b.ant}
    table.update({f: FALSE for f in b.suc})
    return SemiValuation(universe, table, default=UNDET)


@lru_cache(maxsize=None)
def decide_cut_free(s: Sequent) -> bool:
    """Cut-free provability of a quantifier-free sequent (a decision procedure there)."""
    if not s.is_quantifier_free():
        raise ValueError(f"decide_cut_free needs a quantifier-free sequent: {s}")
    out = canonical_search(s, SearchConfig(node_budget=10 ** 7, depth_budget=10 ** 6))
    if isinstance(out, Exhausted):
        raise RuntimeError(f"propositional search ran out of budget on {s}")
    return isinstance(out, Proved)


def propositional_oracle(s: Sequent) -> Optional[bool]:
    return decide_cut_free(s) if s.is_quantifier_free() else None


def search_oracle(cfg: SearchConfig = SearchConfig()):
    """``True`` when search proves the sequent within budget, otherwise unknown."""

    def oracle(s: Sequent) -> Optional[bool]:
        if cfg.node_budget == 0:
            return None
        if s.is_quantifier_free():
            return decide_cut_free(s)
        out = canonical_search(s, cfg)
        return True if isinstance(out, Proved) else None

    return oracle


class InvalidProof(ValueError):
    pass


def harvest_witnesses(p: ProofTree) -> tuple[list, dict]:
    terms, abstracts = [], {}
    for _, node in p.nodes():
        w = node.witness
        if isinstance(w, Abstract):
            pool = abstracts.setdefault(w.arity, [])
            if w not in pool:
                pool.append(w)
        elif w is not None and w not in terms:
            terms.append(w)
    return terms, abstracts


def hauptsatz_pipeline(p: ProofTree, cfg: SearchConfig = SearchConfig(),
                       sig: Signature = Signature(), harvest: bool = True) -> Outcome:
    """Check a proof that may use cut, then search its end-sequent without cut.

    Returns ``Proved`` or ``Exhausted``; a finished search without proof is
    reported as ``Exhausted`` too, since finite pools never settle
    second-order unprovability.
    """
    report = check_proof(p, CheckOptions(allow_cut=True, fragment=cfg.fragment))
    if not report.ok:
        raise InvalidProof(str(report.first()))
    if harvest:
        terms, abstracts = harvest_witnesses(p)
        pool = {n: list(ts) for n, ts in cfg.abstract_pool.items()}
        for n, ts in abstracts.items():
            pool.setdefault(n, [])
            pool[n] += [t for t in ts if t not in pool[n]]
        cfg = SearchConfig(tuple(cfg.term_pool) + tuple(t for t in terms if t not in cfg.term_pool),
                           pool, cfg.node_budget, cfg.depth_budget, cfg.fragment,
                           cfg.default_abstracts)
    out = canonical_search(p.conclusion, cfg, sig)
    if isinstance(out, Refuted):
        return Exhausted("search saturated without a proof", out.nodes)
    return out
