"""Finite complete Boolean algebras, truth-value pairs, and algebras induced by relation maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Mapping, Optional


# ------------------------------------------------------------------ algebras

class BoolAlg:
    """A finite Boolean algebra given by its carrier and operations.

    Subclasses override ``leq``, ``join``, ``meet`` and ``comp``; ``sup`` and
    ``inf`` fold the binary operations, which is exact on a finite carrier.
    """

    name = "B"

    def __init__(self, elements: Iterable, zero, one):
        self.elements = tuple(elements)
        self._members = frozenset(self.elements)
        self.zero = zero
        self.one = one

    def __repr__(self):
        return f"<{self.name}: {len(self.elements)} elements>"

    def __contains__(self, a):
        return a in self._members

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def join(self, a, b):
        raise NotImplementedError

    def meet(self, a, b):
        raise NotImplementedError

    def comp(self, a):
        raise NotImplementedError

    def sup(self, family: Iterable):
        return reduce(self.join, family, self.zero)

    def inf(self, family: Iterable):
        return reduce(self.meet, family, self.one)

    def fmt(self, a) -> str:
        return str(a)


class TwoAlgebra(BoolAlg):
    """The two-element algebra on ``{0, 1}``."""

    name = "2"

    def __init__(self):
        super().__init__((0, 1), 0, 1)

    def leq(self, a, b):
        return a <= b

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b

    def comp(self, a):
        return 1 - a


TWO = TwoAlgebra()


def _sort_key(x):
    return (type(x).__name__, x) if isinstance(x, (int, str)) else (type(x).__name__, repr(x))


def fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s, key=_sort_key)) + "}"


def all_subsets(xs: Iterable) -> list:
    xs = sorted(xs, key=_sort_key)
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


class PowersetAlgebra(BoolAlg):
    """All subsets of a finite set, ordered by inclusion."""

    def __init__(self, base: Iterable):
        self.base = frozenset(base)
        self.name = f"P{fmt_set(self.base)}"
        super().__init__(all_subsets(self.base), frozenset(), self.base)

    def leq(self, a, b):
        return a <= b

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b

    def comp(self, a):
        return self.base - a

    def fmt(self, a):
        return fmt_set(a)


class TableAlgebra(BoolAlg):
    """Wraps an algebra and overrides some operation values; used for mutation tests."""

    def __init__(self, base: BoolAlg, comp: Mapping | None = None,
                 join: Mapping | None = None, meet: Mapping | None = None):
        self.base = base
        self.name = f"{base.name}*"
        self._comp, self._join, self._meet = dict(comp or {}), dict(join or {}), dict(meet or {})
        super().__init__(base.elements, base.zero, base.one)

    def leq(self, a, b):
        return self.base.leq(a, b)

    def join(self, a, b):
        return self._join.get((a, b), self.base.join(a, b))

    def meet(self, a, b):
        return self._meet.get((a, b), self.base.meet(a, b))

    def comp(self, a):
        return self._comp.get(a, self.base.comp(a))

    def fmt(self, a):
        return self.base.fmt(a)


# ------------------------------------------------------------ D-pairs

@dataclass(frozen=True)
class DPair:
    """``(box, dia)``: degree of truth and degree of non-falsity, ``box <= dia``."""

    box: Any
    dia: Any

    def __iter__(self):
        return iter((self.box, self.dia))


@dataclass(frozen=True)
class RawPair:
    box: Any
    dia: Any
    in_db: bool

    def as_pair(self) -> DPair:
        if not self.in_db:
            raise ValueError(f"({self.box}, {self.dia}) is not a D-pair")
        return DPair(self.box, self.dia)


F = DPair(0, 0)
U = DPair(0, 1)
T = DPair(1, 1)
D2_NAMES = {F: "f", U: "u", T: "t"}


def fmt_pair(a: DPair, alg: BoolAlg = TWO) -> str:
    if alg is TWO and a in D2_NAMES:
        return D2_NAMES[a]
    return f"({alg.fmt(a.box)},{alg.fmt(a.dia)})"


def is_dpair(a, alg: BoolAlg = TWO) -> bool:
    return alg.leq(a.box, a.dia)


def d_elements(alg: BoolAlg = TWO) -> list:
    return [DPair(a, b) for a in alg.elements for b in alg.elements if alg.leq(a, b)]


def diag(a) -> DPair:
    return DPair(a, a)


def d_neg(a: DPair, alg: BoolAlg = TWO) -> DPair:
    return DPair(alg.comp(a.dia), alg.comp(a.box))


def d_leq(a: DPair, b: DPair, alg: BoolAlg = TWO) -> bool:
    return alg.leq(a.box, b.box) and alg.leq(a.dia, b.dia)


def d_tri(a: DPair, b: DPair, alg: BoolAlg = TWO) -> bool:
    """Information order: ``a`` is at most as determinate as ``b``."""
    return alg.leq(a.box, b.box) and alg.leq(b.dia, a.dia)


def d_sup_leq(family: Iterable[DPair], alg: BoolAlg = TWO) -> DPair:
    family = list(family)
    return DPair(alg.sup(a.box for a in family), alg.sup(a.dia for a in family))


def d_inf_leq(family: Iterable[DPair], alg: BoolAlg = TWO) -> DPair:
    family = list(family)
    return DPair(alg.inf(a.box for a in family), alg.inf(a.dia for a in family))


def d_sup_tri(family: Iterable[DPair], alg: BoolAlg = TWO) -> RawPair:
    family = list(family)
    box, dia = alg.sup(a.box for a in family), alg.inf(a.dia for a in family)
    return RawPair(box, dia, alg.leq(box, dia))


def d_inf_tri(family: Iterable[DPair], alg: BoolAlg = TWO) -> RawPair:
    family = list(family)
    box, dia = alg.inf(a.box for a in family), alg.sup(a.dia for a in family)
    return RawPair(box, dia, alg.leq(box, dia))


def families(elements, max_size: int) -> Iterable[tuple]:
    for r in range(max_size + 1):
        yield from itertools.combinations(elements, r)


def monotone_neg(a: DPair, b: DPair, alg: BoolAlg = TWO) -> bool:
    return not d_tri(a, b, alg) or d_tri(d_neg(a, alg), d_neg(b, alg), alg)


def monotone_family(fa, fb, alg: BoolAlg = TWO) -> bool:
    """If every member of each family is matched in the information order, sup and inf are too."""
    fa, fb = list(fa), list(fb)
    covers = all(any(d_tri(a, b, alg) for a in fa) for b in fb) and \
        all(any(d_tri(a, b, alg) for b in fb) for a in fa)
    if not covers:
        return True
    return d_tri(d_sup_leq(fa, alg), d_sup_leq(fb, alg), alg) and \
        d_tri(d_inf_leq(fa, alg), d_inf_leq(fb, alg), alg)


def monotone_checks(alg: BoolAlg = TWO, max_family: int = 2) -> list:
    """Every counterexample to monotonicity of negation, sup and inf; empty when all hold."""
    els = d_elements(alg)
    bad = [("neg", a, b) for a in els for b in els if not monotone_neg(a, b, alg)]
    fams = list(families(els, max_family))
    bad += [("family", fa, fb) for fa in fams for fb in fams if not monotone_family(fa, fb, alg)]
    return bad


def lattice_check(elements: list, leq: Callable, sup: Callable, inf: Callable,
                  fams: Iterable) -> list:
    """Compare ``sup``/``inf`` against brute-force least upper / greatest lower bounds."""
    bad = []
    for fam in fams:
        fam = list(fam)
        ubs = [e for e in elements if all(leq(a, e) for a in fam)]
        lubs = [e for e in ubs if all(leq(e, u) for u in ubs)]
        s = sup(fam)
        if lubs != [s]:
            bad.append(("sup", tuple(fam), s, tuple(lubs)))
        lbs = [e for e in elements if all(leq(e, a) for a in fam)]
        glbs = [e for e in lbs if all(leq(l, e) for l in lbs)]
        i = inf(fam)
        if glbs != [i]:
            bad.append(("inf", tuple(fam), i, tuple(glbs)))
    return bad


def completeness_families(elements: list, exhaustive_limit: int = 12, max_size: int = 3,
                          samples: int = 500, seed: int = 0) -> list:
    """All subfamilies when the carrier is small, else all of size <= max_size plus a seeded sample."""
    if len(elements) <= exhaustive_limit:
        return [c for r in range(len(elements) + 1) for c in itertools.combinations(elements, r)]
    out = list(families(elements, max_size))
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(max_size + 1, len(elements))
        out.append(tuple(rng.sample(elements, k)))
    return out


def d_lattice_check(alg: BoolAlg = TWO, **kw) -> list:
    els = d_elements(alg)
    return lattice_check(els, lambda a, b: d_leq(a, b, alg),
                         lambda f: d_sup_leq(f, alg), lambda f: d_inf_leq(f, alg),
                         completeness_families(els, **kw))


# ------------------------------------------------------- relation algebras

class ConditionViolated(ValueError):
    def __init__(self, condition: int, x, y=None):
        self.condition, self.x, self.y = condition, x, y
        if condition == 1:
            msg = f"condition (1) fails at {x}: x in M(x) must hold exactly when M(x) = X"
        else:
            msg = f"condition (2) fails at ({x}, {y}): {x} in M({y}) but {y} not in M({x})"
        super().__init__(msg)


@dataclass(frozen=True)
class RelationMap:
    X: frozenset
    M: Mapping

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(self.X))
        object.__setattr__(self, "M", {x: frozenset(self.M.get(x, ())) for x in self.X})

    def __hash__(self):
        return hash((self.X, tuple(sorted(((x, tuple(sorted(v, key=_sort_key)))
                                           for x, v in self.M.items()), key=lambda p: _sort_key(p[0])))))

    @property
    def _bits(self):
        """Bitmask view: element order, element -> bit, and ``M`` as masks."""
        cached = self.__dict__.get("_bits_cache")
        if cached is None:
            order = sorted(self.X, key=_sort_key)
            bit = {x: 1 << i for i, x in enumerate(order)}
            masks = [sum(bit[y] for y in self.M[x]) for x in order]
            cached = (order, bit, masks, {})
            object.__setattr__(self, "_bits_cache", cached)
        return cached

    def mask(self, alpha) -> int:
        _, bit, _, memo = self._bits
        m = memo.get(alpha) if isinstance(alpha, frozenset) else None
        if m is None:
            m = sum(bit[x] for x in alpha)
        return m

    def unmask(self, m: int) -> frozenset:
        order, _, _, memo = self._bits
        out = memo.get(m)
        if out is None:
            out = frozenset(x for i, x in enumerate(order) if m >> i & 1)
            memo[m] = out
            memo[out] = m
        return out

    def violation(self) -> Optional[ConditionViolated]:
        if not self.X:
            return ConditionViolated(1, None)
        for x in sorted(self.X, key=_sort_key):
            extra = self.M[x] - self.X
            if extra:
                raise ValueError(f"M({x}) mentions {fmt_set(extra)} outside X")
            if (x in self.M[x]) != (self.M[x] == self.X):
                return ConditionViolated(1, x)
        for x in sorted(self.X, key=_sort_key):
            for y in sorted(self.X, key=_sort_key):
                if x in self.M[y] and y not in self.M[x]:
                    return ConditionViolated(2, x, y)
        return None

    def validate(self) -> "RelationMap":
        err = self.violation()
        if err is not None:
            raise err
        return self

    def is_valid(self) -> bool:
        return self.violation() is None


def closure(rm: RelationMap, alpha: Iterable) -> frozenset:
    """Intersection of the ``M(x)`` containing ``alpha``; the empty intersection is ``X``."""
    order, _, masks, _ = rm._bits
    a = rm.mask(alpha)
    out = (1 << len(order)) - 1
    for m in masks:
        if a & ~m == 0:
            out &= m
    return rm.unmask(out)


def little_m(rm: RelationMap, y) -> frozenset:
    order, bit, masks, _ = rm._bits
    out = (1 << len(order)) - 1
    for m in masks:
        if m & bit[y]:
            out &= m
    return rm.unmask(out)


def fixed_points(rm: RelationMap) -> list:
    """Carrier by filtering every subset of ``X`` through the closure fixed-point condition."""
    return [a for a in all_subsets(rm.X) if closure(rm, a) == a]


def intersection_closure(rm: RelationMap) -> list:
    """Carrier as all intersections of subfamilies of ``{M(x)}``; same set as ``fixed_points``."""
    found = {rm.X}
    for x in sorted(rm.X, key=_sort_key):
        found |= {m & rm.M[x] for m in found}
    return sorted(found, key=lambda s: (len(s), sorted(map(_sort_key, s))))


class RelationCBA(BoolAlg):
    """The algebra of closure-fixed subsets of ``X`` induced by a relation map."""

    def __init__(self, rm: RelationMap):
        self.rm = rm.validate()
        self.name = f"B_X(|X|={len(rm.X)})"
        carrier = intersection_closure(rm)
        zero = frozenset(x for x in rm.X if x in rm.M[x])
        super().__init__(carrier, zero, rm.X)

    def leq(self, a, b):
        return a <= b

    def join(self, a, b):
        return closure(self.rm, a | b)

    def meet(self, a, b):
        return a & b

    def sup(self, family):
        return closure(self.rm, frozenset().union(*family) if family else frozenset())

    def inf(self, family):
        return reduce(frozenset.intersection, family, self.rm.X)

    def comp(self, a):
        order, bit, masks, _ = self.rm._bits
        out = (1 << len(order)) - 1
        for i, x in enumerate(order):
            if x in a:
                out &= masks[i]
        return self.rm.unmask(out)

    def fmt(self, a):
        return fmt_set(a)


def build_relation_cba(rm: RelationMap) -> RelationCBA:
    return RelationCBA(rm)


def all_relation_maps(X: Iterable) -> Iterable[RelationMap]:
    """Every map ``X -> P(X)`` satisfying both conditions, in a fixed order.

    Condition (2) makes ``M`` a symmetric relation, and condition (1) forces a
    reflexive point to be related to everything; both are enforced while
    choosing the relation edge by edge.
    """
    X = sorted(X, key=_sort_key)
    pairs = [(X[i], X[j]) for i in range(len(X)) for j in range(i, len(X))]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        M = {x: set() for x in X}
        for (x, y), on in zip(pairs, bits):
            if on:
                M[x].add(y)
                M[y].add(x)
        rm = RelationMap(frozenset(X), M)
        if rm.is_valid():
            yield rm


def parse_relation_file(text: str) -> RelationMap:
    """Lines ``X = a b c`` and ``M(a) = b c``; ``#`` starts a comment."""
    X, M = None, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, eq, rhs = line.partition("=")
        if not eq:
            raise ValueError(f"line {lineno}: expected '='")
        lhs, items = lhs.strip(), rhs.split()
        if lhs == "X":
            X = items
        elif lhs.startswith("M(") and lhs.endswith(")"):
            M[lhs[2:-1].strip()] = items
        else:
            raise ValueError(f"line {lineno}: unknown left-hand side {lhs!r}")
    if X is None:
        raise ValueError("missing 'X = ...' line")
    unknown = set(M) - set(X)
    if unknown:
        raise ValueError(f"M given for elements outside X: {sorted(unknown)}")
    return RelationMap(frozenset(X), M)


def format_relation_file(rm: RelationMap) -> str:
    X = sorted(rm.X, key=_sort_key)
    lines = ["X = " + " ".join(map(str, X))]
    lines += [f"M({x}) = " + " ".join(map(str, sorted(rm.M[x], key=_sort_key))) for x in X]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ law checking

@dataclass
class LawResult:
    law: str
    passed: bool
    witness: Any = None

    def to_json(self) -> dict:
        return {"law": self.law, "passed": self.passed,
                "witness": None if self.witness is None else repr(self.witness)}


@dataclass
class LawReport:
    algebra: str
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def first_failure(self) -> Optional[LawResult]:
        bad = self.failures()
        return bad[0] if bad else None

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "ok": self.ok,
                "results": [r.to_json() for r in self.results]}


def _law(report: LawReport, name: str, cases: Iterable, pred: Callable):
    for case in cases:
        if not pred(*case):
            report.results.append(LawResult(name, False, case))
            return
    report.results.append(LawResult(name, True))


def verify_laws(alg: BoolAlg, exhaustive_limit: int = 12, seed: int = 0) -> LawReport:
    """Check the Boolean-algebra axioms and completeness by brute force over the carrier.

    For an algebra induced by a relation map, the construction-specific
    identities are checked as well (zero, meets, complement, the
    complement-of-M identity and the ``m(y)`` identity).
    """
    els = list(alg.elements)
    eq = lambda a, b: a == b
    one = [(a,) for a in els]
    two = [(a, b) for a in els for b in els]
    three = [(a, b, c) for a in els for b in els for c in els]
    leq, j, m, c = alg.leq, alg.join, alg.meet, alg.comp
    rep = LawReport(alg.name)
    _law(rep, "carrier closed", [(a, b) for a, b in two],
         lambda a, b: j(a, b) in alg and m(a, b) in alg and c(a) in alg)
    _law(rep, "reflexive", one, lambda a: leq(a, a))
    _law(rep, "antisymmetric", two, lambda a, b: not (leq(a, b) and leq(b, a)) or a == b)
    _law(rep, "transitive", three, lambda a, b, c_: not (leq(a, b) and leq(b, c_)) or leq(a, c_))
    _law(rep, "bounds", one, lambda a: leq(alg.zero, a) and leq(a, alg.one))
    _law(rep, "join commutative", two, lambda a, b: eq(j(a, b), j(b, a)))
    _law(rep, "meet commutative", two, lambda a, b: eq(m(a, b), m(b, a)))
    _law(rep, "join associative", three, lambda a, b, d: eq(j(j(a, b), d), j(a, j(b, d))))
    _law(rep, "meet associative", three, lambda a, b, d: eq(m(m(a, b), d), m(a, m(b, d))))
    _law(rep, "absorption", two, lambda a, b: eq(j(a, m(a, b)), a) and eq(m(a, j(a, b)), a))
    _law(rep, "meet distributes over join", three,
         lambda a, b, d: eq(m(a, j(b, d)), j(m(a, b), m(a, d))))
    _law(rep, "join distributes over meet", three,
         lambda a, b, d: eq(j(a, m(b, d)), m(j(a, b), j(a, d))))
    _law(rep, "a & -a = 0", one, lambda a: eq(m(a, c(a)), alg.zero))
    _law(rep, "sup{a,-a} = 1", one, lambda a: eq(j(a, c(a)), alg.one))
    _law(rep, "de Morgan", two,
         lambda a, b: eq(c(j(a, b)), m(c(a), c(b))) and eq(c(m(a, b)), j(c(a), c(b))))
    _law(rep, "complement involutive", one, lambda a: eq(c(c(a)), a))
    fams = completeness_families(els, exhaustive_limit=exhaustive_limit, seed=seed)
    bad = lattice_check(els, leq, lambda f: alg.sup(list(f)), lambda f: alg.inf(list(f)), fams)
    rep.results.append(LawResult("complete (sup/inf are least/greatest bounds)", not bad,
                                 bad[0] if bad else None))
    if isinstance(alg, RelationCBA):
        _relation_laws(alg, rep, seed)
    return rep


def _subset_sample(rm: RelationMap, exhaustive_upto: int, samples: int, seed: int) -> list:
    if len(rm.X) <= exhaustive_upto:
        return all_subsets(rm.X)
    xs = sorted(rm.X, key=_sort_key)
    rng = random.Random(seed)
    out = [frozenset(), rm.X] + [rm.M[x] for x in xs]
    out += [frozenset(x for x in xs if rng.random() < 0.5) for _ in range(samples)]
    return out


def _relation_laws(alg: RelationCBA, rep: LawReport, seed: int = 0):
    """Identities specific to relation-induced algebras.

    Checks that quantify over arbitrary subsets of ``X`` are exhaustive up to
    ``|X| = 10`` and use a seeded sample beyond that.
    """
    rm, X = alg.rm, sorted(alg.rm.X, key=_sort_key)
    els = list(alg.elements)
    carrier = set(els)
    subsets = _subset_sample(rm, 10, 300, seed)
    _law(rep, "carrier = closure fixed points",
         ((a,) for a in subsets), lambda a: (closure(rm, a) == a) == (a in carrier))
    if len(rm.X) <= 10:
        _law(rep, "carrier size = number of fixed points", [()],
             lambda: len(carrier) == sum(1 for a in subsets if closure(rm, a) == a))
    _law(rep, "every M(x) in carrier", [(x,) for x in X], lambda x: rm.M[x] in carrier)
    _law(rep, "zero = {x : x in M(x)} = meet of all M(y)", [()],
         lambda: alg.zero == frozenset(x for x in X if x in rm.M[x])
         == reduce(frozenset.intersection, (rm.M[y] for y in X), rm.X)
         and alg.zero in carrier)
    fams = completeness_families(els, seed=seed)
    _law(rep, "inf is intersection", ((f,) for f in fams),
         lambda f: alg.inf(list(f)) == reduce(frozenset.intersection, f, rm.X))
    _law(rep, "complement = meet of M(x) over x in a", [(a,) for a in els],
         lambda a: alg.comp(a) == reduce(frozenset.intersection, (rm.M[x] for x in a), rm.X))
    _law(rep, "complement is the unique Boolean complement", [(a,) for a in els],
         lambda a: [b for b in els if a & b == alg.zero and alg.join(a, b) == rm.X] == [alg.comp(a)])
    _law(rep, "a <= M(x) implies x in -a", ((a, x) for a in els for x in X),
         lambda a, x: not a <= rm.M[x] or x in alg.comp(a))
    _law(rep, "m(y) = -M(y)", [(y,) for y in X],
         lambda y: little_m(rm, y) == alg.comp(rm.M[y]))
    small = subsets if len(rm.X) <= 5 else subsets[:60]
    _law(rep, "closure extensive, monotone, idempotent",
         ((a, b) for a in small for b in small),
         lambda a, b: a <= closure(rm, a) and closure(rm, closure(rm, a)) == closure(rm, a)
         and (not a <= b or closure(rm, a) <= closure(rm, b)))
