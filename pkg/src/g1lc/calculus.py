"""Sequents, the rules of G1LC, a local proof checker and sequent transforms."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Iterator, Optional, Union

from .syntax import (
    Abstract, And, App, Atom, Const, Exists0, Exists1, Forall0, Forall1, Formula,
    Not, Or, ParseError, Signature, Term, Var, all_names, eta, format_abstract,
    format_term, free_vars0, free_vars1, fresh_name, has_second_order_quantifier,
    parse_abstract, parse_formula, parse_header, parse_term, subst0, subst_first,
    subst_second,
)

EMPTY_SIG = Signature()


# ------------------------------------------------------------------ sequents

@dataclass(frozen=True, eq=False)
class Sequent:
    """``ant => suc`` with both cedents finite sets of formulas (mod alpha)."""

    ant: frozenset = frozenset()
    suc: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "ant", frozenset(self.ant))
        object.__setattr__(self, "suc", frozenset(self.suc))
        object.__setattr__(self, "_hash", hash((self.ant, self.suc)))

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.ant == other.ant and self.suc == other.suc

    def __hash__(self):
        return self._hash

    def __str__(self):
        left = ", ".join(str(f) for f in sorted(self.ant))
        right = ", ".join(str(f) for f in sorted(self.suc))
        return f"{left} => {right}".strip()

    def __repr__(self):
        return f"Sequent({self})"

    def formulas(self) -> frozenset:
        return self.ant | self.suc

    def add(self, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> "Sequent":
        return Sequent(self.ant | set(ant), self.suc | set(suc))

    def merge(self, other: "Sequent") -> "Sequent":
        return Sequent(self.ant | other.ant, self.suc | other.suc)

    def free_vars(self) -> set:
        return set().union(*(_free_vars(f) for f in self.formulas())) if self.formulas() else set()

    def is_quantifier_free(self) -> bool:
        from .syntax import is_quantifier_free
        return all(is_quantifier_free(f) for f in self.formulas())


def _free_vars(f: Formula) -> set:
    """Free variables tagged by sort: ``('0', x)`` or ``('1', X, n)``."""
    return {("0", x) for x in free_vars0(f)} | {("1", x, n) for x, n in free_vars1(f)}


def sequent(ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> Sequent:
    return Sequent(frozenset(ant), frozenset(suc))


def _split_top(text: str, sep: str) -> list:
    parts, depth, cur, i = [], 0, [], 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(sep, i):
            parts.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def parse_sequent(text: str, sig: Signature = EMPTY_SIG, arities: dict | None = None) -> Sequent:
    sides = _split_top(text, "=>")
    if len(sides) != 2:
        raise ParseError(f"a sequent needs exactly one '=>': {text!r}")
    arities = dict(arities or {})

    def cedent(side):
        side = side.strip()
        if not side:
            return frozenset()
        return frozenset(parse_formula(part, sig, arities) for part in _split_top(side, ","))

    return Sequent(cedent(sides[0]), cedent(sides[1]))


def read_sequent_file(text: str):
    """Header block followed by one sequent per line.  Returns ``(sig, [sequents])``."""
    sig, arities, lines = parse_header(text.splitlines())
    return sig, [parse_sequent(line, sig, arities) for line in lines]


# --------------------------------------------------------------------- rules

class Rule(enum.Enum):
    INIT = "Init"
    L_NOT = "L~"
    R_NOT = "R~"
    L_OR = "L|"
    R_OR = "R|"
    L_AND = "L&"
    R_AND = "R&"
    L_EX0 = "LEX0"
    R_EX0 = "REX0"
    L_ALL0 = "LALL0"
    R_ALL0 = "RALL0"
    L_EX1 = "LEX1"
    R_EX1 = "REX1"
    L_ALL1 = "LALL1"
    R_ALL1 = "RALL1"
    CUT = "Cut"

    @property
    def arity(self) -> int:
        if self is Rule.INIT:
            return 0
        return 2 if self in (Rule.L_OR, Rule.R_AND, Rule.CUT) else 1

    @property
    def left(self) -> bool:
        return self.value.startswith("L")


MAJOR_TYPE = {
    Rule.L_NOT: Not, Rule.R_NOT: Not, Rule.L_OR: Or, Rule.R_OR: Or,
    Rule.L_AND: And, Rule.R_AND: And,
    Rule.L_EX0: Exists0, Rule.R_EX0: Exists0, Rule.L_ALL0: Forall0, Rule.R_ALL0: Forall0,
    Rule.L_EX1: Exists1, Rule.R_EX1: Exists1, Rule.L_ALL1: Forall1, Rule.R_ALL1: Forall1,
}
EIGEN_RULES = {Rule.L_EX0, Rule.R_ALL0, Rule.L_EX1, Rule.R_ALL1}
WITNESS_RULES = {Rule.R_EX0, Rule.L_ALL0, Rule.R_EX1, Rule.L_ALL1}
SECOND_ORDER_RULES = {Rule.L_EX1, Rule.R_EX1, Rule.L_ALL1, Rule.R_ALL1}


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: Rule
    premises: tuple = ()
    major: Optional[Formula] = None
    index: Optional[int] = None
    witness: Union[Term, Abstract, None] = None
    eigen: Optional[str] = None
    cut: Optional[Formula] = None
    split: Optional[tuple] = None  # (gamma, delta, pi, theta)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        if self.split is not None:
            object.__setattr__(self, "split", tuple(frozenset(c) for c in self.split))

    def nodes(self) -> Iterator[tuple[tuple, "ProofTree"]]:
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.premises))):
                stack.append((path + (i,), node.premises[i]))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def has_cut(self) -> bool:
        return any(n.rule is Rule.CUT for _, n in self.nodes())


def instance(node: ProofTree) -> Formula:
    """The minor formula of a quantifier node, ``F(t)``, ``F(a)``, ``F(T)`` or ``F(Y)``."""
    f, rule = node.major, node.rule
    if rule in (Rule.L_EX0, Rule.R_ALL0):
        return subst_first(f.body, f.var, Var(node.eigen))
    if rule in (Rule.R_EX0, Rule.L_ALL0):
        return subst_first(f.body, f.var, node.witness)
    if rule in (Rule.L_EX1, Rule.R_ALL1):
        return subst_second(f.body, (f.var, f.arity), eta(node.eigen, f.arity))
    return subst_second(f.body, (f.var, f.arity), node.witness)


def minor_formulas(node: ProofTree) -> list[tuple[str, Formula]]:
    """``(side, formula)`` pairs: where each minor formula sits in the premises."""
    r, f = node.rule, node.major
    match r:
        case Rule.L_NOT:
            return [("suc", f.body)]
        case Rule.R_NOT:
            return [("ant", f.body)]
        case Rule.L_OR:
            return [("ant", f.left), ("ant", f.right)]
        case Rule.R_AND:
            return [("suc", f.left), ("suc", f.right)]
        case Rule.R_OR:
            return [("suc", (f.left, f.right)[node.index])]
        case Rule.L_AND:
            return [("ant", (f.left, f.right)[node.index])]
        case Rule.INIT | Rule.CUT:
            return []
    return [("ant" if r.left else "suc", instance(node))]


def schema_premises(node: ProofTree) -> list[Sequent]:
    """Premises the rule schema demands for this conclusion and instantiation."""
    s, r = node.conclusion, node.rule
    if r is Rule.INIT:
        return []
    if r is Rule.CUT:
        g, d, p, t = node.split
        return [Sequent(g, d | {node.cut}), Sequent(p | {node.cut}, t)]
    out = []
    for side, m in minor_formulas(node):
        out.append(s.add(ant=[m]) if side == "ant" else s.add(suc=[m]))
    return out


# ------------------------------------------------------------------ checking

class ErrorCode(str, enum.Enum):
    WRONG_PREMISE = "WrongPremise"
    NOT_ATOMIC_AXIOM = "NotAtomicAxiom"
    EIGENVARIABLE_OCCURS_BELOW = "EigenvariableOccursBelow"
    ARITY_MISMATCH = "ArityMismatch"
    CUT_FORBIDDEN = "CutForbidden"
    WITNESS_OUTSIDE_FRAGMENT = "WitnessOutsideFragment"


@dataclass(frozen=True)
class Fragment:
    kind: str = "full"  # full | pi1 | bc | first_order
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("full", "pi1", "bc", "first_order"):
            raise ValueError(f"unknown fragment {self.kind!r}")
        if self.kind == "pi1" and self.n < 1:
            raise ValueError("Pi1(n) needs n >= 1")

    def __str__(self):
        return f"pi1:{self.n}" if self.kind == "pi1" else self.kind

    @classmethod
    def parse(cls, text: str) -> "Fragment":
        text = text.strip().lower()
        if text.startswith("pi1"):
            _, _, n = text.partition(":")
            return cls("pi1", int(n or 1))
        return cls(text.replace("-", "_"))

    def admits(self, witness: Abstract) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "first_order":
            return False
        if self.kind == "bc":
            return is_bc_abstract(witness)
        return classify_abstract(witness, self.n)


FULL = Fragment()


@dataclass(frozen=True)
class CheckOptions:
    allow_cut: bool = False
    fragment: Fragment = FULL


@dataclass(frozen=True)
class CheckError:
    code: ErrorCode
    path: tuple
    message: str

    def __str__(self):
        where = "/".join(map(str, self.path)) or "root"
        return f"{self.code.value} at {where}: {self.message}"


@dataclass
class CheckReport:
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.ok

    def codes(self) -> list:
        return [e.code for e in self.errors]

    def first(self) -> Optional[CheckError]:
        return self.errors[0] if self.errors else None


def check_proof(p: ProofTree, opts: CheckOptions = CheckOptions()) -> CheckReport:
    report = CheckReport()
    for path, node in p.nodes():
        err = check_node(node, opts)
        if err is not None:
            code, msg = err
            report.errors.append(CheckError(code, path, msg))
    return report


def check_node(node: ProofTree, opts: CheckOptions):
    """Check one inference locally; returns ``None`` or ``(code, message)``."""
    s, r = node.conclusion, node.rule
    W = ErrorCode.WRONG_PREMISE
    if len(node.premises) != r.arity:
        return W, f"{r.value} needs {r.arity} premises, got {len(node.premises)}"
    if r is Rule.INIT:
        if not any(isinstance(f, Atom) for f in s.ant & s.suc):
            return ErrorCode.NOT_ATOMIC_AXIOM, f"no atomic formula on both sides of {s}"
        return None
    if r is Rule.CUT:
        if not opts.allow_cut:
            return ErrorCode.CUT_FORBIDDEN, "cut is not allowed"
        if node.cut is None or node.split is None:
            return W, "cut node needs a cut formula and a cedent split"
        g, d, pi, t = node.split
        if Sequent(g | pi, d | t) != s:
            return W, "cut split does not reassemble the conclusion"
    else:
        f = node.major
        if f is None or not isinstance(f, MAJOR_TYPE[r]):
            return W, f"{r.value} needs a major formula of type {MAJOR_TYPE[r].__name__}"
        if f not in (s.ant if r.left else s.suc):
            return W, f"major formula {f} is not in the {'antecedent' if r.left else 'succedent'}"
        if r in (Rule.R_OR, Rule.L_AND) and node.index not in (0, 1):
            return W, f"{r.value} needs index 0 or 1"
        if r in EIGEN_RULES:
            if not node.eigen:
                return W, f"{r.value} needs an eigenvariable"
            if r in SECOND_ORDER_RULES:
                tag = ("1", node.eigen, f.arity)
            else:
                tag = ("0", node.eigen)
            if tag in s.free_vars():
                return ErrorCode.EIGENVARIABLE_OCCURS_BELOW, \
                    f"eigenvariable {node.eigen} occurs free in {s}"
        if r in WITNESS_RULES:
            if r in SECOND_ORDER_RULES:
                if not isinstance(node.witness, Abstract):
                    return W, f"{r.value} needs an abstract witness"
                if node.witness.arity != f.arity:
                    return ErrorCode.ARITY_MISMATCH, \
                        f"witness {format_abstract(node.witness)} has arity " \
                        f"{node.witness.arity}, quantifier needs {f.arity}"
            elif not isinstance(node.witness, (Var, Const, App)):
                return W, f"{r.value} needs a term witness"
        if r in SECOND_ORDER_RULES:
            fr = opts.fragment
            if fr.kind == "first_order":
                return ErrorCode.WITNESS_OUTSIDE_FRAGMENT, \
                    f"{r.value} is not a rule of the first-order fragment"
            if r in WITNESS_RULES and not fr.admits(node.witness):
                return ErrorCode.WITNESS_OUTSIDE_FRAGMENT, \
                    f"witness {format_abstract(node.witness)} is not in fragment {fr}"
    expected = schema_premises(node)
    for i, (want, got) in enumerate(zip(expected, node.premises)):
        if got.conclusion != want:
            return W, f"premise {i} is {got.conclusion}, schema gives {want}"
    return None


# ----------------------------------------------------------- classification

@dataclass(frozen=True)
class Classification:
    is_first_order: bool
    is_sigma01: bool
    is_pi01: bool
    is_pi1: bool


def signed_quantifiers(s: Sequent) -> set:
    """``(kind, polarity)`` for every quantifier occurrence; succedent is positive."""
    out = set()

    def walk(f, pol):
        match f:
            case Atom():
                return
            case Not(b):
                walk(b, -pol)
            case Or(a, b) | And(a, b):
                walk(a, pol)
                walk(b, pol)
            case _:
                kind = {Exists0: "E0", Forall0: "A0", Exists1: "E1", Forall1: "A1"}[type(f)]
                out.add((kind, pol))
                walk(f.body, pol)

    for f in s.ant:
        walk(f, -1)
    for f in s.suc:
        walk(f, +1)
    return out


def classify_sequent(s: Sequent) -> Classification:
    q = signed_quantifiers(s)
    first = not any(k in ("E1", "A1") for k, _ in q)
    sigma = first and ("E0", -1) not in q and ("A0", +1) not in q
    pi0 = first and ("E0", +1) not in q and ("A0", -1) not in q
    pi1 = ("A1", -1) not in q and ("E1", +1) not in q
    return Classification(first, sigma, pi0, pi1)


def classify_abstract(t: Abstract, n: int) -> bool:
    """Is the body a Pi^1_n formula: alternating second-order blocks led by ALL?

    Missing leading blocks count as vacuous quantifiers, so a first-order
    body is in every Pi^1_n and an EX-led body with k blocks needs n >= k + 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f = t.body
    blocks, lead, prev = 0, None, None
    while isinstance(f, (Exists1, Forall1)):
        kind = type(f)
        if kind is not prev:
            blocks += 1
            lead = lead or kind
            prev = kind
        f = f.body
    if has_second_order_quantifier(f):
        return False
    need = blocks + (1 if lead is Exists1 else 0)
    return need <= n


def is_bc_abstract(t: Abstract) -> bool:
    """Witness of the BC fragment: a bare variable or predicate constant."""
    b = t.body
    return isinstance(b, Atom) and b.args == tuple(Var(p) for p in t.params) \
        and b.pred not in t.params


# --------------------------------------------------------------- transforms

class FragmentError(ValueError):
    pass


def _erase(f: Formula) -> Formula:
    match f:
        case Atom():
            return f
        case Not(b):
            return Not(_erase(b))
        case Or(a, b):
            return Or(_erase(a), _erase(b))
        case And(a, b):
            return And(_erase(a), _erase(b))
        case Exists0(v, b) | Forall0(v, b):
            return type(f)(v, _erase(b))
    return _erase(f.body)


def erase_second_order(s: Sequent) -> Sequent:
    if not classify_sequent(s).is_pi1:
        raise FragmentError(f"not a Pi1 sequent: {s}")
    return Sequent(frozenset(map(_erase, s.ant)), frozenset(map(_erase, s.suc)))


def nnf(f: Formula, neg: bool = False) -> Formula:
    match f:
        case Atom():
            return Not(f) if neg else f
        case Not(b):
            return nnf(b, not neg)
        case Or(a, b):
            return (And if neg else Or)(nnf(a, neg), nnf(b, neg))
        case And(a, b):
            return (Or if neg else And)(nnf(a, neg), nnf(b, neg))
        case Exists0(v, b):
            return (Forall0 if neg else Exists0)(v, nnf(b, neg))
        case Forall0(v, b):
            return (Exists0 if neg else Forall0)(v, nnf(b, neg))
        case Exists1(v, k, b):
            return (Forall1 if neg else Exists1)(v, k, nnf(b, neg))
        case Forall1(v, k, b):
            return (Exists1 if neg else Forall1)(v, k, nnf(b, neg))
    raise TypeError(f)


def _rename_apart(f: Formula, used: set) -> Formula:
    match f:
        case Atom():
            return f
        case Not(b):
            return Not(_rename_apart(b, used))
        case Or(a, b) | And(a, b):
            left = _rename_apart(a, used)
            return type(f)(left, _rename_apart(b, used))
        case Exists0(v, b) | Forall0(v, b):
            v2 = fresh_name(v, used)
            used.add(v2)
            if v2 != v:
                b = subst_first(b, v, Var(v2))
            return type(f)(v2, _rename_apart(b, used))
    raise FragmentError("prenexing is only defined for first-order formulas")


def prenex(f: Formula) -> tuple[list, Formula]:
    """Left-to-right quantifier extraction of an NNF formula with distinct binders."""
    match f:
        case Atom() | Not():
            return [], f
        case Or(a, b) | And(a, b):
            pa, ma = prenex(a)
            pb, mb = prenex(b)
            return pa + pb, type(f)(ma, mb)
        case Exists0(v, b) | Forall0(v, b):
            pre, m = prenex(b)
            return [(type(f), v)] + pre, m
    raise FragmentError("prenexing is only defined for first-order formulas")


def herbrand_nf(s: Sequent, sig: Signature = EMPTY_SIG) -> tuple[Sequent, Signature]:
    """``(=> H)`` with ``H`` a Sigma^0_1 Herbrand normal form of ``/\\ant > \\/suc``.

    Normalization: NNF, binders renamed apart, prenex by left-to-right
    extraction, then each universal replaced by a fresh function of the
    existentials to its left (a fresh constant when there are none).
    """
    if not classify_sequent(s).is_first_order:
        raise FragmentError(f"not a first-order sequent: {s}")
    ant, suc = sorted(s.ant), sorted(s.suc)
    if not ant and not suc:
        return s, sig
    parts = []
    if ant:
        parts.append(Not(reduce(And, ant)))
    if suc:
        parts.append(reduce(Or, suc))
    f = reduce(Or, parts)
    free = {x for g in ant + suc for x in free_vars0(g)}
    f = _rename_apart(nnf(f), sig.names() | free)
    taken = sig.names() | set().union(*(all_names(g) for g in ant + suc))
    prefix, matrix = prenex(f)
    taken |= all_names(f)
    exs: list[str] = []
    new_funcs, new_consts = {}, set()
    sub = {}
    for q, v in prefix:
        if q is Exists0:
            exs.append(v)
            continue
        if exs:
            name = _fresh_symbol(("f", "g", "h"), taken)
            new_funcs[name] = len(exs)
            sub[v] = App(name, tuple(Var(x) for x in exs))
        else:
            name = _fresh_symbol(("c", "d", "e"), taken)
            new_consts.add(name)
            sub[v] = Const(name)
        taken.add(name)
    h = subst0(matrix, sub)
    for v in reversed(exs):
        h = Exists0(v, h)
    return Sequent(frozenset(), frozenset({h})), sig.extend(new_consts, new_funcs)


def _fresh_symbol(bases, taken) -> str:
    for b in bases:
        if b not in taken:
            return b
    i = 1
    while True:
        for b in bases:
            if f"{b}{i}" not in taken:
                return f"{b}{i}"
        i += 1


# ------------------------------------------------------ Mints normal forms

Oracle = Callable[[Sequent], Optional[bool]]


def is_reducible(node: ProofTree, oracle: Oracle) -> Optional[bool]:
    """Three-valued: ``None`` when the oracle cannot decide some minor formula."""
    minors = minor_formulas(node)
    if not minors:
        raise ValueError(f"{node.rule.value} has no minor formula")
    unknown = False
    for side, a in minors:
        query = Sequent(frozenset(), frozenset({a})) if side == "ant" else \
            Sequent(frozenset({a}), frozenset())
        verdict = oracle(query)
        if verdict is True:
            return True
        if verdict is None:
            unknown = True
    return None if unknown else False


def pure_variable(p: ProofTree) -> bool:
    nodes = list(p.nodes())
    end = p.conclusion.free_vars()
    eigen_at: dict = {}
    for path, node in nodes:
        if node.rule in EIGEN_RULES and node.eigen:
            if node.rule in SECOND_ORDER_RULES:
                tag = ("1", node.eigen, node.major.arity)
            else:
                tag = ("0", node.eigen)
            eigen_at.setdefault(tag, []).append(path)
    for path, node in nodes:
        if not path:
            continue
        for v in node.conclusion.free_vars() - end:
            sites = eigen_at.get(v, [])
            if len(sites) != 1:
                return False
            j = sites[0]
            if len(path) <= len(j) or path[:len(j)] != j:
                return False
    for v, sites in eigen_at.items():
        if len(sites) > 1:
            return False
    return True


def is_mints_normal(p: ProofTree, oracle: Oracle) -> Optional[bool]:
    if p.has_cut() or not pure_variable(p):
        return False
    unknown = False
    for _, node in p.nodes():
        if node.rule is Rule.INIT:
            continue
        r = is_reducible(node, oracle)
        if r is True:
            return False
        if r is None:
            unknown = True
    return None if unknown else True


# ------------------------------------------------------------ serialization

def _fmt_cedent(c) -> list:
    return [str(f) for f in sorted(c)]


def node_to_json(node: ProofTree) -> dict:
    out = {"rule": node.rule.value, "conclusion": str(node.conclusion)}
    if node.major is not None:
        out["major"] = str(node.major)
    if node.index is not None:
        out["index"] = node.index
    if node.witness is not None:
        w = node.witness
        out["witness"] = format_abstract(w) if isinstance(w, Abstract) else format_term(w)
    if node.eigen is not None:
        out["eigen"] = node.eigen
    if node.cut is not None:
        out["cut"] = str(node.cut)
    if node.split is not None:
        out["split"] = dict(zip(("gamma", "delta", "pi", "theta"), map(_fmt_cedent, node.split)))
    if node.premises:
        out["premises"] = [node_to_json(p) for p in node.premises]
    return out


def signature_of(items: Iterable, sig: Signature = EMPTY_SIG) -> Signature:
    """``sig`` extended by every constant, function and relation in formulas, abstracts or terms."""
    consts, funcs, rels = set(), {}, {}

    def term(t):
        if isinstance(t, Const):
            consts.add(t.name)
        elif isinstance(t, App):
            funcs[t.fn] = len(t.args)
            for a in t.args:
                term(a)

    def walk(f):
        match f:
            case Atom(pred, args, const):
                if const and pred != "=":
                    rels[pred] = len(args)
                for t in args:
                    term(t)
            case Not(b):
                walk(b)
            case Or(a, b) | And(a, b):
                walk(a)
                walk(b)
            case Var() | Const() | App():
                term(f)
            case _:
                walk(f.body)

    for item in items:
        walk(item)
    return sig.extend(consts, funcs, rels)


def proof_signature(p: ProofTree, sig: Signature = EMPTY_SIG) -> Signature:
    """``sig`` extended by every constant, function and relation the proof mentions."""
    items = []
    for _, node in p.nodes():
        items.extend(node.conclusion.formulas())
        if node.witness is not None:
            items.append(node.witness)
    return signature_of(items, sig)


def proof_to_json(p: ProofTree, sig: Signature = EMPTY_SIG) -> dict:
    return {"signature": proof_signature(p, sig).to_json(), "proof": node_to_json(p)}


def dump_proof(p: ProofTree, sig: Signature = EMPTY_SIG) -> str:
    return json.dumps(proof_to_json(p, sig), indent=1, ensure_ascii=False)


def node_from_json(data: dict, sig: Signature = EMPTY_SIG, arities: dict | None = None) -> ProofTree:
    arities = arities or {}

    def fm(text):
        return parse_formula(text, sig, dict(arities))

    def build(d):
        try:
            rule = Rule(d["rule"])
        except ValueError:
            raise ParseError(f"unknown rule {d['rule']!r}") from None
        witness = d.get("witness")
        if witness is not None:
            witness = parse_abstract(witness, sig, dict(arities)) if witness.lstrip().startswith("\\") \
                else parse_term(witness, sig)
        split = d.get("split")
        if split is not None:
            split = tuple(frozenset(fm(x) for x in split.get(k, ()))
                          for k in ("gamma", "delta", "pi", "theta"))
        return ProofTree(
            conclusion=parse_sequent(d["conclusion"], sig, arities),
            rule=rule,
            premises=tuple(build(x) for x in d.get("premises", ())),
            major=fm(d["major"]) if "major" in d else None,
            index=d.get("index"),
            witness=witness,
            eigen=d.get("eigen"),
            cut=fm(d["cut"]) if "cut" in d else None,
            split=split,
        )

    return build(data)


def proof_from_json(data: dict) -> tuple[ProofTree, Signature]:
    sig = Signature.from_json(data.get("signature"))
    arities = dict(data.get("predicates", {}))
    return node_from_json(data["proof"], sig, arities), sig


def load_proof(text: str) -> tuple[ProofTree, Signature]:
    return proof_from_json(json.loads(text))


def format_proof(p: ProofTree, indent: str = "") -> str:
    """Indented tree, conclusion first."""
    extra = []
    if p.major is not None:
        extra.append(f"major={p.major}")
    if p.index is not None:
        extra.append(f"i={p.index}")
    if p.witness is not None:
        extra.append(f"witness={p.witness}")
    if p.eigen is not None:
        extra.append(f"eigen={p.eigen}")
    if p.cut is not None:
        extra.append(f"cut={p.cut}")
    head = f"{indent}{p.conclusion}    [{p.rule.value}{' ' + ', '.join(extra) if extra else ''}]"
    return "\n".join([head] + [format_proof(q, indent + "  ") for q in p.premises])
