"""Regenerate the proof corpus: hand-built derivations, cut-bearing inputs and mutants.

Each derivation below is spelled out rule by rule.  The minor formula of
every step is written out by hand and the builder forms the premise by
adding it to the conclusion, so the kernel's own substitution code is never
used to produce a premise.  Run from anywhere: ``python corpus/make_corpus.py``.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

from g1lc.calculus import ProofTree, Rule, Sequent, dump_proof, parse_sequent
from g1lc.search import SearchConfig, Proved, canonical_search
from g1lc.syntax import parse_abstract, parse_formula, parse_header, parse_term

HERE = Path(__file__).resolve().parent


class Ctx:
    def __init__(self, *header):
        self.sig, self.arities, _ = parse_header(header)

    def f(self, text):
        return parse_formula(text, self.sig, dict(self.arities))

    def seq(self, text):
        return parse_sequent(text, self.sig, dict(self.arities))

    def witness(self, text):
        if text.lstrip().startswith("\\"):
            return parse_abstract(text, self.sig, dict(self.arities))
        return parse_term(text, self.sig)


# side on which a rule's minor formulas land
SIDE = {Rule.L_NOT: "suc", Rule.R_NOT: "ant"}


def step(rule, major=None, *kids, minor=None, index=None, witness=None, eigen=None,
         cut=None, split=None):
    """A tactic: given the conclusion, build the node and recurse into the premises."""
    rule = Rule(rule)

    def apply(cx: Ctx, concl: Sequent) -> ProofTree:
        side = SIDE.get(rule, "ant" if rule.left else "suc")
        if rule is Rule.INIT:
            prem = []
        elif rule is Rule.CUT:
            g, d, p, t = (frozenset(cx.f(x) for x in part) for part in split)
            c = cx.f(cut)
            prem = [Sequent(g, d | {c}), Sequent(p | {c}, t)]
        else:
            minors = minor if isinstance(minor, tuple) else (minor,)
            prem = [concl.add(**{side: [cx.f(m)]}) for m in minors]
        assert len(prem) == len(kids), (rule, len(prem), len(kids))
        return ProofTree(
            conclusion=concl, rule=rule,
            premises=tuple(k(cx, s) for k, s in zip(kids, prem)),
            major=cx.f(major) if major else None, index=index,
            witness=cx.witness(witness) if witness else None, eigen=eigen,
            cut=cx.f(cut) if cut else None,
            split=None if split is None else tuple(frozenset(cx.f(x) for x in part) for part in split),
        )

    return apply


def searched():
    """Close a premise by cut-free search (used only above hand-placed cuts)."""

    def apply(cx: Ctx, concl: Sequent) -> ProofTree:
        out = canonical_search(concl, SearchConfig(), cx.sig)
        assert isinstance(out, Proved), concl
        return out.proof

    return apply


INIT = step("Init")

# ALL X:1. (X(0) & ALL y. (X(y) > X(S(y)))) > X(t), the natural-number predicate
NAT = "ALL X:1. ~(X(0) & ALL y. ~X(y) | X(S(y))) | X({t})"
HYP = "Y(0) & ALL y. ~Y(y) | Y(S(y))"

VALID = {
    "init_atomic": (("const c", "pred X:1"), "X(c) => X(c)", INIT),
    "excluded_middle": ((), "=> P | ~P",
        step("R|", "P | ~P", step("R~", "~P", step("R|", "P | ~P", INIT, minor="P", index=0),
                                  minor="P"), minor="~P", index=1)),
    "second_order_excluded_middle": (("const c",), "=> ALL X:1. ~X(c) | X(c)",
        step("RALL1", "ALL X:1. ~X(c) | X(c)",
             step("R|", "~Y(c) | Y(c)",
                  step("R|", "~Y(c) | Y(c)",
                       step("R~", "~Y(c)", INIT, minor="Y(c)"),
                       minor="Y(c)", index=1),
                  minor="~Y(c)", index=0),
             minor="~Y(c) | Y(c)", eigen="Y")),
    "abstract_witness_rex1": (("const c", "rel R:1 S:1"), "R(c) & S(c) => EX X:1. X(c)",
        step("REX1", "EX X:1. X(c)",
             step("R&", "R(c) & S(c)",
                  step("L&", "R(c) & S(c)", INIT, minor="R(c)", index=0),
                  step("L&", "R(c) & S(c)", INIT, minor="S(c)", index=1),
                  minor=("R(c)", "S(c)")),
             minor="R(c) & S(c)", witness="\\x. R(x) & S(x)")),
    "comprehension_lall1": (("const c", "rel R:1"), "ALL X:1. X(c) => R(c)",
        step("LALL1", "ALL X:1. X(c)", INIT, minor="R(c)", witness="\\x. R(x)")),
    "negated_witness_lall1": (("const c", "rel R:1"), "ALL X:1. X(c) => ~R(c)",
        step("LALL1", "ALL X:1. X(c)",
             step("R~", "~R(c)", step("L~", "~R(c)", INIT, minor="R(c)"), minor="R(c)"),
             minor="~R(c)", witness="\\x. ~R(x)")),
    "contradiction_lex1": (("const c",), "EX X:1. X(c) & ~X(c) =>",
        step("LEX1", "EX X:1. X(c) & ~X(c)",
             step("L&", "Y(c) & ~Y(c)",
                  step("L&", "Y(c) & ~Y(c)", step("L~", "~Y(c)", INIT, minor="Y(c)"),
                       minor="~Y(c)", index=1),
                  minor="Y(c)", index=0),
             minor="Y(c) & ~Y(c)", eigen="Y")),
    "first_order_witness": (("rel R:1",), "ALL x. R(x) => EX y. R(y)",
        step("LALL0", "ALL x. R(x)",
             step("REX0", "EX y. R(y)", INIT, minor="R(a)", witness="a"),
             minor="R(a)", witness="a")),
    "first_order_eigen": (("rel R:1 Q:1",), "ALL x. R(x) & Q(x) => ALL x. R(x)",
        step("RALL0", "ALL x. R(x)",
             step("LALL0", "ALL x. R(x) & Q(x)",
                  step("L&", "R(a) & Q(a)", INIT, minor="R(a)", index=0),
                  minor="R(a) & Q(a)", witness="a"),
             minor="R(a)", eigen="a")),
    "nat_zero": (("const 0", "func S:1"), "=> " + NAT.format(t="0"),
        step("RALL1", NAT.format(t="0"),
             step("R|", f"~({HYP}) | Y(0)",
                  step("R~", f"~({HYP})",
                       step("L&", HYP,
                            step("R|", f"~({HYP}) | Y(0)", INIT, minor="Y(0)", index=1),
                            minor="Y(0)", index=0),
                       minor=HYP),
                  minor=f"~({HYP})", index=0),
             minor=f"~({HYP}) | Y(0)", eigen="Y")),
    "nat_successor": (("const 0", "func S:1"),
                      f"{NAT.format(t='a')} => {NAT.format(t='S(a)')}",
        step("RALL1", NAT.format(t="S(a)"),
          step("R|", f"~({HYP}) | Y(S(a))",
            step("R~", f"~({HYP})",
              step("R|", f"~({HYP}) | Y(S(a))",
                step("LALL1", NAT.format(t="a"),
                  step("L|", f"~({HYP}) | Y(a)",
                    # the hypothesis is needed again, now on the right
                    step("L~", f"~({HYP})",
                      step("R&", HYP,
                        step("L&", HYP, INIT, minor="Y(0)", index=0),
                        step("L&", HYP,
                          step("RALL0", "ALL y. ~Y(y) | Y(S(y))",
                            step("LALL0", "ALL y. ~Y(y) | Y(S(y))",
                              step("L|", "~Y(b) | Y(S(b))",
                                step("L~", "~Y(b)",
                                  step("R|", "~Y(b) | Y(S(b))",
                                    step("R~", "~Y(b)", INIT, minor="Y(b)"),
                                    minor="~Y(b)", index=0),
                                  minor="Y(b)"),
                                step("R|", "~Y(b) | Y(S(b))", INIT, minor="Y(S(b))", index=1),
                                minor=("~Y(b)", "Y(S(b))")),
                              minor="~Y(b) | Y(S(b))", witness="b"),
                            minor="~Y(b) | Y(S(b))", eigen="b"),
                          minor="ALL y. ~Y(y) | Y(S(y))", index=1),
                        minor=("Y(0)", "ALL y. ~Y(y) | Y(S(y))")),
                      minor=HYP),
                    # from Y(a) and the step clause at a
                    step("L&", HYP,
                      step("LALL0", "ALL y. ~Y(y) | Y(S(y))",
                        step("L|", "~Y(a) | Y(S(a))",
                          step("L~", "~Y(a)", INIT, minor="Y(a)"),
                          INIT,
                          minor=("~Y(a)", "Y(S(a))")),
                        minor="~Y(a) | Y(S(a))", witness="a"),
                      minor="ALL y. ~Y(y) | Y(S(y))", index=1),
                    minor=(f"~({HYP})", "Y(a)")),
                  minor=f"~({HYP}) | Y(a)", witness="\\x. Y(x)"),
                minor="Y(S(a))", index=1),
              minor=HYP),
            minor=f"~({HYP})", index=0),
          minor=f"~({HYP}) | Y(S(a))", eigen="Y")),
    "identity_second_order": ((), "ALL X:0. ~X | X, Q => Q",
        # the shape whose two inferences are both reducible (A is P | ~P)
        step("LALL1", "ALL X:0. ~X | X",
             step("L|", "~(P | ~P) | (P | ~P)",
                  step("L~", "~(P | ~P)", INIT, minor="P | ~P"),
                  INIT,
                  minor=("~(P | ~P)", "P | ~P")),
             minor="~(P | ~P) | (P | ~P)", witness="\\. P | ~P")),
}

# cut-bearing inputs: cut placed by hand, premises closed by search
CUTS = {
    "cut_em_on_p": ((), "=> P | ~P", "P"),
    "cut_em_on_q": ((), "=> P | ~P", "Q"),
    "cut_identity": ((), "P => P", "P & P"),
    "cut_or_comm": ((), "P | Q => Q | P", "Q | P"),
    "cut_and_elim": ((), "P & Q => Q", "Q & P"),
    "cut_demorgan": ((), "~(P | Q) => ~P & ~Q", "~P"),
    "cut_double_neg": ((), "~~P => P", "P | ~P"),
    "cut_peirce": ((), "=> ((P > Q) > P) > P", "P"),
    "cut_second_order_em": (("const c",), "=> ALL X:1. ~X(c) | X(c)", "ALL X:1. ~X(c) | X(c)"),
    "cut_second_order_inst": (("const c", "rel R:1"), "ALL X:1. X(c) => R(c)", "R(c)"),
    "cut_second_order_ex": (("const c", "rel R:1"), "R(c) => EX X:1. X(c)", "EX X:1. X(c)"),
}


def cut_proof(cx: Ctx, seq: Sequent, c: str) -> ProofTree:
    g, d = sorted(map(str, seq.ant)), sorted(map(str, seq.suc))
    tac = step("Cut", None, searched(), searched(), cut=c, split=(g, d, g, d))
    return tac(cx, seq)


def _swap(p: ProofTree, path: tuple, **changes) -> ProofTree:
    if not path:
        return replace(p, **changes)
    kids = list(p.premises)
    kids[path[0]] = _swap(kids[path[0]], path[1:], **changes)
    return replace(p, premises=tuple(kids))


def _find(p: ProofTree, pred) -> tuple:
    return next(path for path, node in p.nodes() if pred(node))


def mutants(valid: dict) -> dict:
    """One corruption per entry, each aimed at a specific error code."""
    out = {}
    hdr = {k: h for k, (h, _) in valid.items()}
    pf = {k: p for k, (_, p) in valid.items()}

    # eigenvariable clashes with the lower sequent
    p = pf["nat_successor"]
    out["mut_eigen_clash"] = (hdr["nat_successor"], "EigenvariableOccursBelow", "full",
                              _swap(p, _find(p, lambda n: n.eigen == "b"), eigen="a"))
    cx = Ctx(*hdr["first_order_eigen"])
    p = pf["first_order_eigen"]
    out["mut_eigen_in_end_sequent"] = (hdr["first_order_eigen"], "EigenvariableOccursBelow", "full",
                                       _swap(p, (), conclusion=p.conclusion.add(ant=[cx.f("R(a)")])))
    cx = Ctx(*hdr["second_order_excluded_middle"], "pred Y:1")
    p = pf["second_order_excluded_middle"]
    out["mut_eigen_clash_so"] = (hdr["second_order_excluded_middle"], "EigenvariableOccursBelow",
                                 "full", _swap(p, (), conclusion=p.conclusion.add(ant=[cx.f("Y(c)")])))
    # wrong minor formulas
    cx = Ctx(*hdr["abstract_witness_rex1"])
    out["mut_wrong_witness"] = (hdr["abstract_witness_rex1"], "WrongPremise", "full",
                                _swap(pf["abstract_witness_rex1"], (),
                                      witness=cx.witness("\\x. S(x) & R(x)")))
    out["mut_wrong_index"] = ((), "WrongPremise", "full", _swap(pf["excluded_middle"], (), index=0))
    out["mut_wrong_term"] = (hdr["first_order_witness"], "WrongPremise", "full",
                             _swap(pf["first_order_witness"], (0,), witness=parse_term("b")))
    p = pf["nat_zero"]
    kid = p.premises[0].conclusion
    out["mut_dropped_major"] = (hdr["nat_zero"], "WrongPremise", "full",
                                _swap(p, (0,), conclusion=Sequent(kid.ant, kid.suc - {p.major})))
    # an axiom on a compound formula
    out["mut_nonatomic_init"] = ((), "NotAtomicAxiom", "full",
                                 ProofTree(parse_sequent("P | Q => P | Q"), Rule.INIT))
    # cut without permission
    out["mut_forbidden_cut"] = ((), "CutForbidden", "full",
                                cut_proof(Ctx(), parse_sequent("=> P | ~P"), "P"))
    # witnesses outside the declared fragment
    out["mut_fragment_bc"] = (hdr["abstract_witness_rex1"], "WitnessOutsideFragment", "bc",
                              pf["abstract_witness_rex1"])
    hdr_c = hdr["comprehension_lall1"]
    cx = Ctx(*hdr_c)
    tac = step("LALL1", "ALL X:1. X(c)",
               step("LEX1", "EX Z:1. Z(c) & R(c)",
                    step("L&", "W(c) & R(c)", INIT, minor="R(c)", index=1),
                    minor="W(c) & R(c)", eigen="W"),
               minor="EX Z:1. Z(c) & R(c)", witness="\\x. EX Z:1. Z(x) & R(x)")
    out["mut_fragment_pi1"] = (hdr_c, "WitnessOutsideFragment", "pi1:1",
                               tac(cx, cx.seq("ALL X:1. X(c) => R(c)")))
    out["mut_fragment_first_order"] = (hdr["second_order_excluded_middle"], "WitnessOutsideFragment",
                                       "first_order", pf["second_order_excluded_middle"])
    # witness arity differs from the quantifier's
    out["mut_arity"] = (hdr_c, "ArityMismatch", "full",
                        _swap(pf["comprehension_lall1"], (), witness=cx.witness("\\x y. R(x)")))
    return out


def main():
    proofs = HERE / "proofs"
    cuts = HERE / "cut"
    bad = HERE / "mutants"
    for d in (proofs, cuts, bad):
        d.mkdir(exist_ok=True)
        for old in d.glob("*.json"):
            old.unlink()
    entries = []
    built = {}
    for name, (header, seq, tac) in VALID.items():
        cx = Ctx(*header)
        p = tac(cx, cx.seq(seq))
        built[name] = (header, p)
        (proofs / f"{name}.json").write_text(dump_proof(p, cx.sig) + "\n")
        entries.append({"name": name, "proof": f"proofs/{name}.json", "expect": "ok",
                        "fragment": "full"})
    for name, (header, seq, c) in CUTS.items():
        cx = Ctx(*header)
        p = cut_proof(cx, cx.seq(seq), c)
        (cuts / f"{name}.json").write_text(dump_proof(p, cx.sig) + "\n")
        entries.append({"name": name, "proof": f"cut/{name}.json", "expect": "ok",
                        "allow_cut": True, "fragment": "full"})
    for name, (header, code, fragment, p) in mutants(built).items():
        cx = Ctx(*header)
        (bad / f"{name}.json").write_text(dump_proof(p, cx.sig) + "\n")
        entries.append({"name": name, "proof": f"mutants/{name}.json", "expect": code,
                        "fragment": fragment})
    searches = [
        ("search_em", "=> P | ~P", "proved"),
        ("search_open", "P => Q", "refuted"),
        ("search_conj", "=> P & Q", "refuted"),
        ("search_so_em", "=> ALL X:1. ~X(c) | X(c)", "proved"),
        ("search_so_ex", "EX X:1. X(c) =>", "refuted"),
    ]
    for name, seq, expect in searches:
        entries.append({"name": name, "sequent": seq, "header": ["const c"], "expect": expect})
    entries.append({"name": "search_budget", "sequent": "=> P | ~P", "expect": "exhausted",
                    "node_budget": 0})
    (HERE / "manifest.json").write_text(json.dumps({"entries": entries}, indent=1) + "\n")
    print(f"{len(VALID)} proofs, {len(CUTS)} cut proofs, {len(entries)} manifest entries")


if __name__ == "__main__":
    main()
