"""Complete Boolean algebras from symmetric relations, and where the construction breaks.

A map M: X -> P(X) that is symmetric (x in M(y) iff y in M(x)) and whose
reflexive points see everything induces the family of closure-fixed subsets
of X.  For |X| <= 3 every such family is a Boolean algebra; at |X| = 4 the
first non-distributive ones appear.
"""

from g1lc.cba import RelationMap, all_relation_maps, build_relation_cba, little_m, verify_laws


def show(a):
    return "{" + ",".join(map(str, sorted(a))) + "}"


def main():
    print("A path 1 - 2 - 3:")
    rm = RelationMap(frozenset({1, 2, 3}), {1: frozenset({2}), 2: frozenset({1, 3}), 3: frozenset({2})})
    alg = build_relation_cba(rm)
    print("  carrier:", " ".join(show(a) for a in alg.elements))
    for a in alg.elements:
        print(f"  -{show(a)} = {show(alg.comp(a))}")
    print("  complement of M(y) is m(y):",
          all(little_m(rm, y) == alg.comp(rm.M[y]) for y in rm.X))
    print("  all laws hold:", verify_laws(alg).ok)

    for n in (3, 4, 5):
        maps = list(all_relation_maps(range(n)))
        bad = [rm for rm in maps if not verify_laws(build_relation_cba(rm)).ok]
        print(f"|X| = {n}: {len(maps)} admissible maps, {len(bad)} fail the Boolean laws")

    print("\nThe smallest failure, two disjoint edges 0-1 and 2-3:")
    rm = RelationMap(frozenset(range(4)), {0: frozenset({1}), 1: frozenset({0}),
                                           2: frozenset({3}), 3: frozenset({2})})
    alg = build_relation_cba(rm)
    print("  carrier:", " ".join(show(a) for a in alg.elements))
    a, b, c = frozenset({0}), frozenset({1}), frozenset({2})
    print(f"  {show(a)} & ({show(b)} | {show(c)}) = {show(alg.meet(a, alg.join(b, c)))}")
    print(f"  ({show(a)} & {show(b)}) | ({show(a)} & {show(c)}) = "
          f"{show(alg.join(alg.meet(a, b), alg.meet(a, c)))}")
    for r in verify_laws(alg).failures():
        print(f"  fails: {r.law}, witness {tuple(map(show, r.witness))}")
    print("  a & -a = 0 and a | -a = 1 still hold, so this is an ortholattice that is not distributive.")


if __name__ == "__main__":
    main()
