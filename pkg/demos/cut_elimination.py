"""Two routes to cut-free proofs.

The first is operational: check a proof that uses cut, then search its end
sequent without cut.  The second is the provability algebra: sequents over a
small propositional universe form a Boolean algebra in which each formula gets
a value, and every sequent provable with cut lands inside the cut-free
provability relation.
"""

from pathlib import Path

from g1lc.calculus import CheckOptions, check_proof, format_proof, load_proof
from g1lc.search import Proved, hauptsatz_pipeline
from g1lc.syntax import parse_formula
from g1lc.valuation import (
    SequentUniverse, all_sequents, check_semival, hauptsatz_ver2, maehara_valuation, tautology,
)

CUT = Path(__file__).resolve().parents[1] / "corpus" / "cut"


def pipeline():
    for name in ["cut_peirce.json", "cut_second_order_em.json"]:
        p, sig = load_proof((CUT / name).read_text())
        print(f"\ninput ({p.size()} nodes, with cut):")
        print(format_proof(p, "  "))
        out = hauptsatz_pipeline(p, sig=sig)
        assert isinstance(out, Proved)
        ok = check_proof(out.proof, CheckOptions(allow_cut=False)).ok
        print(f"cut-free ({out.proof.size()} nodes, kernel accepts: {ok}):")
        print(format_proof(out.proof, "  "))


def provability_algebra():
    for text in ["P | ~P", "~(P & Q)"]:
        su = SequentUniverse.build([parse_formula(text)])
        mv = maehara_valuation(su)
        print(f"\nuniverse of {text}: {len(su.sequents)} sequents, algebra of {len(mv.algebra.elements)} elements")
        for a in sorted(su.formulas):
            print(f"  V({a}): box has {len(mv.box(a))} sequents, dia has {len(mv.dia(a))}")
        print("  semi valuation:", check_semival(mv.valuation).ok)
        seqs = [s for s in all_sequents(su.formulas) if tautology(s)]
        ok = all(hauptsatz_ver2(mv, s).ok for s in seqs)
        print(f"  {len(seqs)} sequents provable with cut, all cut-free provable: {ok}")


if __name__ == "__main__":
    pipeline()
    provability_algebra()
