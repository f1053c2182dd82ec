"""Reducible inferences in a second-order identity proof.

The proof instantiates ALL X:0. ~X | X with the abstract P | ~P.  The minor
formula of that inference is provable on its own, so the inference is
reducible, and the same holds for the disjunction step below it.  The proof
is cut-free, but P shows up above the end sequent without being an
eigenvariable, so the pure variable condition fails as well.
"""

from pathlib import Path

from g1lc.calculus import format_proof, is_mints_normal, is_reducible, load_proof, pure_variable
from g1lc.search import SearchConfig, search_oracle

PROOF = Path(__file__).resolve().parents[1] / "corpus" / "proofs" / "identity_second_order.json"


def main():
    p, _ = load_proof(PROOF.read_text())
    print(format_proof(p))
    oracle = search_oracle(SearchConfig(node_budget=2000))
    for path, node in p.nodes():
        if node.premises and node.rule.value != "Cut":
            where = "/".join(map(str, path)) or "root"
            print(f"{where:6} {node.rule.value:6} reducible: {is_reducible(node, oracle)}")
    print("pure variable condition:", pure_variable(p))
    print("Mints normal:", is_mints_normal(p, oracle))


if __name__ == "__main__":
    main()
