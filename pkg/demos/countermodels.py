"""From a failed proof search to a two-valued countermodel.

Search either closes every branch or saturates one.  The saturated branch
gives a three-valued semi valuation (t on the left, f on the right, u
elsewhere), and the one-step construction turns that into a two-valued model
with comprehension, restricted to the finite universe the branch explored.
"""

from g1lc.calculus import parse_sequent
from g1lc.search import Proved, SearchConfig, branch_to_semival, canonical_search
from g1lc.syntax import Signature
from g1lc.valuation import check_semival, direct_lab, model_from_semival, soundness_check

SIG = Signature(frozenset({"c", "d"}), {}, {"R": 1})


def run(text):
    s = parse_sequent(text, SIG)
    out = canonical_search(s, SearchConfig(node_budget=5000), SIG)
    print(f"\n{s}")
    if isinstance(out, Proved):
        print(f"  proved, {out.proof.size()} nodes")
        return
    b = out.branch
    v = branch_to_semival(b)
    tag = " (relative to the pools)" if b.relative_to_pools else ""
    print(f"  open branch after {out.nodes} nodes{tag}")
    for f, val in v.items():
        if val.box == val.dia:
            print(f"    V({f}) = {'t' if val.box else 'f'}")
    print("  semi valuation conditions:", check_semival(v).ok)
    print("  soundness inequality holds:", soundness_check(s, v))
    model = model_from_semival(v).model
    for (name, n), fn in sorted(model.named.items()):
        print(f"    {name} := {model.fmt_fn(fn, n)}")
    for c in direct_lab(v).checks:
        print(f"  {c.name}: {'ok' if c.ok else 'FAIL'} over {c.checked} instances")


def main():
    for text in ["=> P | ~P", "P => Q", "=> (P > Q) > Q", "EX x. R(x) => R(c)",
                 "=> EX X:1. X(c) & ~X(d)", "R(c) => EX X:1. X(c) & ~R(c)"]:
        run(text)


if __name__ == "__main__":
    main()
