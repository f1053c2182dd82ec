"""Second-order syntax: terms, formulas, abstracts.

Formulas compare equal (and hash equal) iff they are alpha-equivalent, so
plain Python sets of formulas behave as cedents "up to renaming of bound
variables".  Use :func:`same` for literal structural comparison.

The concrete ASCII grammar::

    F ::= F > F | F <-> F            (sugar, lowest, right-assoc)
        | F '|' F | F & F | ~F
        | EX x. F | ALL x. F         (first-order: lowercase binder)
        | EX X:n. F | ALL X:n. F     (second-order: uppercase binder)
        | P(t1,...,tn) | P | t = s | ( F )
    T ::= \\x1 ... xn. F              (abstract)

Quantifier bodies extend as far to the right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Union

__all__ = [
    "Signature", "Var", "Const", "App", "Term",
    "Formula", "Atom", "Not", "Or", "And",
    "Exists0", "Forall0", "Exists1", "Forall1", "Abstract",
    "ParseError", "ArityError", "UnknownSymbol",
    "parse_formula", "parse_abstract", "parse_term", "parse_header",
    "format_term", "format_formula", "format_abstract",
    "alpha_eq", "same", "subst0", "subst_first", "subst_second",
    "free_vars0", "free_vars1", "free_preds", "free_terms", "term_vars",
    "eta", "implies", "iff", "fresh_name", "all_names", "depth",
    "is_atomic", "is_quantifier_free", "has_second_order_quantifier",
]


# ---------------------------------------------------------------- signature

@dataclass(frozen=True)
class Signature:
    constants: frozenset = frozenset()
    functions: Mapping[str, int] = field(default_factory=dict)
    relations: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constants", frozenset(self.constants))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "relations", dict(self.relations))
        for kind, table in (("function", self.functions), ("relation", self.relations)):
            for name, n in table.items():
                if n < 1:
                    raise ValueError(f"{kind} symbol {name!r} needs arity >= 1, got {n}")
        c, f, r = set(self.constants), set(self.functions), set(self.relations)
        clash = (c & f) | (c & r) | (f & r)
        if clash:
            raise ValueError(f"symbol names used in two categories: {sorted(clash)}")

    def __hash__(self):
        return hash((self.constants, tuple(sorted(self.functions.items())),
                     tuple(sorted(self.relations.items()))))

    def extend(self, constants=(), functions=None, relations=None) -> "Signature":
        return Signature(self.constants | set(constants),
                         {**self.functions, **(functions or {})},
                         {**self.relations, **(relations or {})})

    def names(self) -> set:
        return set(self.constants) | set(self.functions) | set(self.relations)

    def to_json(self) -> dict:
        return {"constants": sorted(self.constants),
                "functions": dict(sorted(self.functions.items())),
                "relations": dict(sorted(self.relations.items()))}

    @classmethod
    def from_json(cls, data: Mapping | None) -> "Signature":
        data = data or {}
        return cls(frozenset(data.get("constants", ())),
                   dict(data.get("functions", {})), dict(data.get("relations", {})))


EMPTY = Signature()


# -------------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __str__(self):
        return format_term(self)


Term = Union[Var, Const, App]


def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def _term_subst(t: Term, m: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return m.get(t.name, t)
    if isinstance(t, App):
        return App(t.fn, tuple(_term_subst(a, m) for a in t.args))
    return t


def _term_key(t: Term, env: Mapping[str, int], depth: int):
    if isinstance(t, Var):
        if t.name in env:
            return ("b", depth - env[t.name])
        return ("v", t.name)
    if isinstance(t, Const):
        return ("c", t.name)
    return ("f", t.fn, tuple(_term_key(a, env, depth) for a in t.args))


def _subterms(t: Term):
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from _subterms(a)


# ----------------------------------------------------------------- formulas

class Formula:
    """Base class.  Equality and hashing are alpha-equivalence."""

    __slots__ = ()

    @cached_property
    def key(self):
        return _key(self, {}, {}, 0, 0)

    @cached_property
    def sort_key(self) -> str:
        return repr(self.key)

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return format_formula(self)

    def __repr__(self):
        return f"<{type(self).__name__} {format_formula(self)}>"


@dataclass(frozen=True, eq=False, repr=False)
class Atom(Formula):
    pred: str
    args: tuple = ()
    const: bool = False

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True, eq=False, repr=False)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Exists0(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Forall0(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Exists1(Formula):
    var: str
    arity: int
    body: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Forall1(Formula):
    var: str
    arity: int
    body: Formula


Q0 = (Exists0, Forall0)
Q1 = (Exists1, Forall1)


@dataclass(frozen=True, eq=False)
class Abstract:
    """``\\x1 ... xn. body``; n = 0 is allowed for nullary variables."""

    params: tuple
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.params)) != len(self.params):
            raise ValueError(f"abstract parameters must be distinct: {self.params}")

    @property
    def arity(self) -> int:
        return len(self.params)

    @cached_property
    def key(self):
        env = {p: i + 1 for i, p in enumerate(self.params)}
        return ("L", len(self.params), _key(self.body, env, {}, len(self.params), 0))

    def __eq__(self, other):
        if not isinstance(other, Abstract):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return format_abstract(self)

    def __repr__(self):
        return f"<Abstract {format_abstract(self)}>"

    def apply(self, args: Iterable[Term]) -> Formula:
        args = tuple(args)
        if len(args) != self.arity:
            raise ArityError(f"abstract of arity {self.arity} applied to {len(args)} terms")
        return subst0(self.body, dict(zip(self.params, args)))

    def free_vars0(self) -> set:
        return free_vars0(self.body) - set(self.params)

    def free_vars1(self) -> set:
        return free_vars1(self.body)


def _key(f: Formula, env0, env1, d0, d1):
    match f:
        case Atom(pred, args, const):
            if not const and (pred, len(args)) in env1:
                head = ("B", d1 - env1[(pred, len(args))], len(args))
            else:
                head = ("P", pred, len(args), const)
            return ("A", head, tuple(_term_key(t, env0, d0) for t in args))
        case Not(b):
            return ("~", _key(b, env0, env1, d0, d1))
        case Or(a, b):
            return ("|", _key(a, env0, env1, d0, d1), _key(b, env0, env1, d0, d1))
        case And(a, b):
            return ("&", _key(a, env0, env1, d0, d1), _key(b, env0, env1, d0, d1))
        case Exists0(v, b) | Forall0(v, b):
            tag = "E0" if isinstance(f, Exists0) else "A0"
            return (tag, _key(b, {**env0, v: d0 + 1}, env1, d0 + 1, d1))
        case Exists1(v, n, b) | Forall1(v, n, b):
            tag = "E1" if isinstance(f, Exists1) else "A1"
            return (tag, n, _key(b, env0, {**env1, (v, n): d1 + 1}, d0, d1 + 1))
    raise TypeError(f"not a formula: {f!r}")


def alpha_eq(f: Formula, g: Formula) -> bool:
    return f.key == g.key


def same(f, g) -> bool:
    """Literal equality, bound names included."""
    if type(f) is not type(g):
        return False
    match f:
        case Atom():
            return f.pred == g.pred and f.args == g.args and f.const == g.const
        case Not():
            return same(f.body, g.body)
        case Or() | And():
            return same(f.left, g.left) and same(f.right, g.right)
        case Exists0() | Forall0():
            return f.var == g.var and same(f.body, g.body)
        case Exists1() | Forall1():
            return f.var == g.var and f.arity == g.arity and same(f.body, g.body)
        case Abstract():
            return f.params == g.params and same(f.body, g.body)
    return f == g


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Or(Not(a), b), Or(Not(b), a))


def eta(name: str, arity: int, const: bool = False) -> Abstract:
    """The abstract ``\\x1..xn. X(x1,...,xn)``."""
    params = tuple(f"x{i + 1}" for i in range(arity))
    return Abstract(params, Atom(name, tuple(Var(p) for p in params), const))


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


def depth(f: Formula) -> int:
    match f:
        case Atom():
            return 0
        case Not(b):
            return 1 + depth(b)
        case Or(a, b) | And(a, b):
            return 1 + max(depth(a), depth(b))
        case _:
            return 1 + depth(f.body)


def is_quantifier_free(f: Formula) -> bool:
    match f:
        case Atom():
            return True
        case Not(b):
            return is_quantifier_free(b)
        case Or(a, b) | And(a, b):
            return is_quantifier_free(a) and is_quantifier_free(b)
    return False


def has_second_order_quantifier(f: Formula) -> bool:
    match f:
        case Atom():
            return False
        case Not(b) | Exists0(_, b) | Forall0(_, b):
            return has_second_order_quantifier(b)
        case Or(a, b) | And(a, b):
            return has_second_order_quantifier(a) or has_second_order_quantifier(b)
    return True


# ------------------------------------------------------------ free variables

def free_vars0(f: Formula) -> frozenset:
    return _fv(f)[0]


def free_vars1(f: Formula) -> frozenset:
    """Free second-order variables as ``(name, arity)`` pairs (constants excluded)."""
    return _fv(f)[1]


def _fv(f: Formula):
    cached = f.__dict__.get("_fv_cache")
    if cached is not None:
        return cached
    match f:
        case Atom(pred, args, const):
            v0 = frozenset().union(*(term_vars(t) for t in args)) if args else frozenset()
            v1 = frozenset() if const else frozenset({(pred, len(args))})
        case Not(b):
            v0, v1 = _fv(b)
        case Or(a, b) | And(a, b):
            a0, a1 = _fv(a)
            b0, b1 = _fv(b)
            v0, v1 = a0 | b0, a1 | b1
        case Exists0(v, b) | Forall0(v, b):
            b0, v1 = _fv(b)
            v0 = b0 - {v}
        case Exists1(v, n, b) | Forall1(v, n, b):
            v0, b1 = _fv(b)
            v1 = b1 - {(v, n)}
        case _:
            raise TypeError(f"not a formula: {f!r}")
    f.__dict__["_fv_cache"] = (v0, v1)
    return v0, v1


def free_preds(f: Formula) -> set:
    """Free predicate heads as ``(name, arity, const)`` triples."""
    out = set()

    def walk(g, bound):
        match g:
            case Atom(pred, args, const):
                if const or (pred, len(args)) not in bound:
                    out.add((pred, len(args), const))
            case Not(b) | Exists0(_, b) | Forall0(_, b):
                walk(b, bound)
            case Or(a, b) | And(a, b):
                walk(a, bound)
                walk(b, bound)
            case Exists1(v, n, b) | Forall1(v, n, b):
                walk(b, bound | {(v, n)})

    walk(f, frozenset())
    return out


def free_terms(f: Formula) -> set:
    """All subterms occurring in ``f`` that contain no bound variable."""
    out = set()

    def walk(g, bound):
        match g:
            case Atom(_, args):
                for t in args:
                    for s in _subterms(t):
                        if not (term_vars(s) & bound):
                            out.add(s)
            case Not(b) | Exists1(_, _, b) | Forall1(_, _, b):
                walk(b, bound)
            case Or(a, b) | And(a, b):
                walk(a, bound)
                walk(b, bound)
            case Exists0(v, b) | Forall0(v, b):
                walk(b, bound | {v})

    walk(f, frozenset())
    return out


def all_names(f) -> set:
    """Every identifier occurring anywhere in a formula or abstract."""
    out = set()

    def term(t):
        if isinstance(t, App):
            out.add(t.fn)
            for a in t.args:
                term(a)
        else:
            out.add(t.name)

    def walk(g):
        match g:
            case Abstract(params, body):
                out.update(params)
                walk(body)
            case Atom(pred, args):
                out.add(pred)
                for t in args:
                    term(t)
            case Not(b):
                walk(b)
            case Or(a, b) | And(a, b):
                walk(a)
                walk(b)
            case _:
                out.add(g.var)
                walk(g.body)

    walk(f)
    return out


def fresh_name(base: str, avoid) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


# ------------------------------------------------------------- substitution

def subst0(f: Formula, m: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    m = {k: v for k, v in m.items() if not (isinstance(v, Var) and v.name == k)}
    if not m:
        return f
    return _s0(f, m)


def _s0(f: Formula, m: Mapping[str, Term]) -> Formula:
    fv = free_vars0(f)
    m = {k: v for k, v in m.items() if k in fv}
    if not m:
        return f
    match f:
        case Atom(pred, args, const):
            return Atom(pred, tuple(_term_subst(t, m) for t in args), const)
        case Not(b):
            return Not(_s0(b, m))
        case Or(a, b):
            return Or(_s0(a, m), _s0(b, m))
        case And(a, b):
            return And(_s0(a, m), _s0(b, m))
        case Exists0(v, b) | Forall0(v, b):
            rng = set().union(*(term_vars(t) for t in m.values()))
            if v in rng:
                v2 = fresh_name(v, rng | free_vars0(b) | set(m) | all_names(b))
                b = _s0(b, {v: Var(v2)})
                v = v2
            return type(f)(v, _s0(b, m))
        case Exists1(v, n, b) | Forall1(v, n, b):
            return type(f)(v, n, _s0(b, m))
    raise TypeError(f"not a formula: {f!r}")


def subst_first(f: Formula, x: str, t: Term) -> Formula:
    return subst0(f, {x: t})


def subst_second(f: Formula, var, t: Abstract) -> Formula:
    """Replace each atom ``X(t1..tn)`` by the beta-reduced ``G(t1..tn)``.

    ``var`` is ``(name, arity)``; renames binders of ``f`` that would capture
    free variables of ``t``.
    """
    name, n = var
    if t.arity != n:
        raise ArityError(f"cannot substitute {t.arity}-ary abstract for {name}:{n}")
    return _s1(f, name, n, t, t.free_vars0(), t.free_vars1())


def _s1(f, name, n, t, fv0, fv1):
    if (name, n) not in free_vars1(f):
        return f
    match f:
        case Atom(_, args):
            return t.apply(args)
        case Not(b):
            return Not(_s1(b, name, n, t, fv0, fv1))
        case Or(a, b):
            return Or(_s1(a, name, n, t, fv0, fv1), _s1(b, name, n, t, fv0, fv1))
        case And(a, b):
            return And(_s1(a, name, n, t, fv0, fv1), _s1(b, name, n, t, fv0, fv1))
        case Exists0(v, b) | Forall0(v, b):
            if v in fv0:
                v2 = fresh_name(v, fv0 | all_names(b) | all_names(t))
                b = _s0(b, {v: Var(v2)})
                v = v2
            return type(f)(v, _s1(b, name, n, t, fv0, fv1))
        case Exists1(v, k, b) | Forall1(v, k, b):
            if (v, k) in fv1:
                names = {x for x, _ in fv1} | all_names(b) | all_names(t) | {name}
                v2 = fresh_name(v, names)
                b = _s1(b, v, k, eta(v2, k), frozenset(), frozenset({(v2, k)}))
                v = v2
            return type(f)(v, k, _s1(b, name, n, t, fv0, fv1))
    raise TypeError(f"not a formula: {f!r}")


# ----------------------------------------------------------------- printing

def format_term(t: Term) -> str:
    if isinstance(t, App):
        return f"{t.fn}({','.join(format_term(a) for a in t.args)})"
    return t.name


_PREC = {Or: 1, And: 2}


def format_formula(f: Formula) -> str:
    match f:
        case Atom(pred, args):
            if pred == "=" and len(args) == 2:
                return f"{format_term(args[0])} = {format_term(args[1])}"
            if not args:
                return pred
            return f"{pred}({','.join(format_term(a) for a in args)})"
        case Not(b):
            inner = format_formula(b)
            if isinstance(b, (Or, And)) or _is_quant(b) or (isinstance(b, Atom) and b.pred == "="):
                inner = f"({inner})"
            return "~" + inner
        case Or(a, b) | And(a, b):
            op = " | " if isinstance(f, Or) else " & "
            p = _PREC[type(f)]
            left = format_formula(a)
            right = format_formula(b)
            if _is_quant(a) or (type(a) in _PREC and _PREC[type(a)] < p):
                left = f"({left})"
            if _is_quant(b) or (type(b) in _PREC and _PREC[type(b)] <= p):
                right = f"({right})"
            return left + op + right
        case Exists0(v, b) | Forall0(v, b):
            q = "EX" if isinstance(f, Exists0) else "ALL"
            return f"{q} {v}. {format_formula(b)}"
        case Exists1(v, n, b) | Forall1(v, n, b):
            q = "EX" if isinstance(f, Exists1) else "ALL"
            return f"{q} {v}:{n}. {format_formula(b)}"
    raise TypeError(f"not a formula: {f!r}")


def _is_quant(f) -> bool:
    return isinstance(f, (Exists0, Forall0, Exists1, Forall1))


def format_abstract(t: Abstract) -> str:
    ps = " ".join(t.params)
    return f"\\{ps}. {format_formula(t.body)}" if ps else f"\\. {format_formula(t.body)}"


# ------------------------------------------------------------------ parsing

class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


class ArityError(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(<->|=>|[()~&|>,.:=\\])|([A-Za-z0-9_][A-Za-z0-9_']*))")
_IDENT = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*")
KEYWORDS = {"EX", "ALL"}


def _tokenize(text: str):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        toks.append((m.group(1) or m.group(2), start))
        pos = m.end()
    toks.append(("<eof>", len(text)))
    return toks


def _is_upper(name: str) -> bool:
    stripped = name.lstrip("_")
    return bool(stripped) and stripped[0].isupper()


class _Parser:
    def __init__(self, text, sig: Signature, arities: dict | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.arities = arities if arities is not None else {}
        self.scope1: list[list] = []  # [name, arity or None]
        self.scope0: list[str] = []

    # token helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def ident(self):
        tok, pos = self.toks[self.i]
        if not _IDENT.fullmatch(tok) or tok in KEYWORDS:
            raise ParseError(f"expected identifier, found {tok!r}", pos)
        self.i += 1
        return tok

    def end(self):
        if self.peek() != "<eof>":
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())

    # grammar
    def formula(self) -> Formula:
        left = self.disj()
        if self.peek() == ">":
            self.take()
            return implies(left, self.formula())
        if self.peek() == "<->":
            self.take()
            return iff(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok in KEYWORDS:
            return self.quantifier()
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        return self.atomic()

    def quantifier(self):
        q = self.take()
        pos = self.pos()
        v = self.ident()
        if self.peek() == ":" or _is_upper(v):
            if v in self.sig.names():
                raise ParseError(f"cannot bind signature symbol {v!r}", pos)
            arity = None
            if self.peek() == ":":
                self.take()
                arity = self._int()
            self.take(".")
            entry = [v, arity]
            self.scope1.append(entry)
            try:
                body = self.formula()
            finally:
                self.scope1.pop()
            n = entry[1] if entry[1] is not None else 0
            return (Exists1 if q == "EX" else Forall1)(v, n, body)
        if v in self.sig.names():
            raise ParseError(f"cannot bind signature symbol {v!r}", pos)
        self.take(".")
        self.scope0.append(v)
        try:
            body = self.formula()
        finally:
            self.scope0.pop()
        return (Exists0 if q == "EX" else Forall0)(v, body)

    def _int(self):
        tok, pos = self.toks[self.i]
        if not tok.isdigit():
            raise ParseError(f"expected arity, found {tok!r}", pos)
        self.i += 1
        return int(tok)

    def atomic(self):
        start = self.i
        pos = self.pos()
        name = self.ident()
        args = ()
        if self.peek() == "(" and name not in self.sig.functions:
            args = self.term_args()
        if self.peek() == "=" or name in self.sig.functions or name in self.sig.constants:
            self.i = start
            lhs = self.term()
            self.take("=")
            rhs = self.term()
            return Atom("=", (lhs, rhs), True)
        return self.make_atom(name, args, pos)

    def make_atom(self, name, args, pos):
        n = len(args)
        if name in self.sig.relations:
            if self.sig.relations[name] != n:
                raise ArityError(f"relation {name} has arity {self.sig.relations[name]}, used with {n}", pos)
            return Atom(name, args, True)
        for entry in reversed(self.scope1):
            if entry[0] == name:
                if entry[1] is None:
                    entry[1] = n
                elif entry[1] != n:
                    raise ArityError(f"{name} is bound with arity {entry[1]}, used with {n}", pos)
                return Atom(name, args)
        known = self.arities.get(name)
        if known is None:
            self.arities[name] = n
        elif known != n:
            raise ArityError(f"{name} has arity {known}, used with {n}", pos)
        return Atom(name, args)

    def term_args(self):
        self.take("(")
        if self.peek() == ")":
            self.take()
            return ()
        args = [self.term()]
        while self.peek() == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self) -> Term:
        pos = self.pos()
        name = self.ident()
        if name in self.sig.functions:
            args = self.term_args() if self.peek() == "(" else ()
            if len(args) != self.sig.functions[name]:
                raise ArityError(f"function {name} has arity {self.sig.functions[name]}, "
                                 f"applied to {len(args)}", pos)
            return App(name, args)
        if self.peek() == "(":
            raise UnknownSymbol(f"unknown function symbol {name!r}", pos)
        if name in self.sig.relations:
            raise UnknownSymbol(f"relation symbol {name!r} used as a term", pos)
        if name in self.sig.constants:
            return Const(name)
        return Var(name)

    def abstract(self) -> Abstract:
        self.take("\\")
        params = []
        while self.peek() != ".":
            params.append(self.ident())
        self.take(".")
        if len(set(params)) != len(params):
            raise ParseError("abstract parameters must be distinct", self.pos())
        self.scope0.extend(params)
        body = self.formula()
        return Abstract(tuple(params), body)


def parse_formula(text: str, sig: Signature = EMPTY, arities: dict | None = None) -> Formula:
    """Parse one formula.

    ``arities`` maps free second-order variable names to arities; it is
    consulted and extended in place, so passing one dict across several calls
    keeps arities consistent (as in a sequent).
    """
    p = _Parser(text, sig, arities)
    f = p.formula()
    p.end()
    return f


def parse_abstract(text: str, sig: Signature = EMPTY, arities: dict | None = None) -> Abstract:
    p = _Parser(text, sig, arities)
    t = p.abstract()
    p.end()
    return t


def parse_term(text: str, sig: Signature = EMPTY) -> Term:
    p = _Parser(text, sig, None)
    t = p.term()
    p.end()
    return t


_HEADER = re.compile(r"^\s*(const|func|rel|pred)\b(.*)$")


def parse_header(lines: Iterable[str]):
    """Split signature declarations off a text block.

    Header lines are ``const a b``, ``func f:1``, ``rel R:2`` and
    ``pred X:1`` (arity of a free second-order variable).  ``#`` starts a
    comment.  Returns ``(signature, arities, payload_lines)``.
    """
    consts, funcs, rels, arities = set(), {}, {}, {}
    payload = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if not m:
            payload.append(line)
            continue
        kind, rest = m.group(1), m.group(2).replace(",", " ").split()
        for item in rest:
            if kind == "const":
                consts.add(item)
                continue
            name, _, n = item.partition(":")
            if not n.isdigit():
                raise ParseError(f"declaration {item!r} needs an arity, e.g. {name}:1")
            {"func": funcs, "rel": rels, "pred": arities}[kind][name] = int(n)
    return Signature(frozenset(consts), funcs, rels), arities, payload
