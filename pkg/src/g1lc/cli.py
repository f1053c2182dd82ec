"""Command-line front end: ``g1lc <command> ...``.

Exit codes are fixed: 0 ok, 1 logical failure, 2 budget exhausted,
3 input error.  Every command prints a human-readable report, or one JSON
document with ``--json``.  Artifacts written by one command are valid input
to the command that consumes them.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import calculus, cba, search, valuation
from .calculus import (
    CheckOptions, Fragment, Rule, Sequent, classify_sequent, dump_proof, erase_second_order,
    herbrand_nf, load_proof, parse_sequent,
)
from .syntax import (
    ParseError, Signature, format_formula, parse_abstract, parse_formula, parse_header, parse_term,
)

OK, FAIL, BUDGET, INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False))
    else:
        print(text)


def _write(path: str | None, content: str):
    if path:
        Path(path).write_text(content + "\n", encoding="utf-8")


def _sequents(args) -> tuple[Signature, dict, list]:
    if args.expr is not None:
        sig, arities, _ = parse_header(args.header or [])
        return sig, arities, [parse_sequent(e, sig, dict(arities)) for e in args.expr]
    if args.file is None:
        raise InputError("give a sequent file or --expr")
    text = _read(args.file)
    sig, arities, lines = parse_header(text.splitlines())
    return sig, arities, [parse_sequent(line, sig, dict(arities)) for line in lines]


# ------------------------------------------------------------------ config

def load_config(args, sig: Signature, arities: dict) -> search.SearchConfig:
    """Merge a JSON config file with command-line flags (flags win)."""
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(_read(args.config))
        except json.JSONDecodeError as exc:
            raise InputError(f"config {args.config}: {exc}") from None
    terms = list(data.get("term_pool", [])) + list(args.term or [])
    abstracts = {}
    for n, ts in data.get("abstract_pool", {}).items():
        abstracts.setdefault(int(n), []).extend(ts)
    for t in args.abstract or []:
        a = parse_abstract(t, sig, dict(arities))
        abstracts.setdefault(a.arity, []).append(t)
    pool = {n: [parse_abstract(t, sig, dict(arities)) for t in ts] for n, ts in abstracts.items()}
    for n, ts in pool.items():
        for t in ts:
            if t.arity != n:
                raise InputError(f"abstract {t} listed under arity {n}")
    node_budget = args.node_budget if args.node_budget is not None else data.get("node_budget", 20000)
    depth_budget = args.depth_budget if args.depth_budget is not None else data.get("depth_budget", 400)
    fragment = args.fragment or data.get("fragment", "full")
    return search.SearchConfig(
        term_pool=[parse_term(t, sig) for t in terms],
        abstract_pool=pool,
        node_budget=int(node_budget),
        depth_budget=int(depth_budget),
        fragment=Fragment.parse(fragment),
    )


def _pool_flags(p):
    p.add_argument("--config", help="JSON file with term_pool, abstract_pool, node_budget, "
                                     "depth_budget, fragment")
    p.add_argument("--term", action="append", help="add a term to the witness pool")
    p.add_argument("--abstract", action="append", help="add an abstract such as '\\x. R(x)'")
    p.add_argument("--node-budget", type=int)
    p.add_argument("--depth-budget", type=int)
    p.add_argument("--fragment", help="full, pi1:N, bc or first_order")


def _sequent_source(p):
    p.add_argument("file", nargs="?", help="header block plus one sequent per line ('-' for stdin)")
    p.add_argument("-e", "--expr", action="append", help="inline sequent such as 'P => P | Q'")
    p.add_argument("--header", action="append",
                   help="declaration used with --expr, e.g. 'const c' or 'rel R:1'")


# ---------------------------------------------------------------- commands

def cmd_parse(args) -> int:
    """Parse formulas or sequents and print them back in canonical form."""
    if args.expr:
        sig, arities, _ = parse_header(args.header or [])
        lines = args.expr
    else:
        if args.file is None:
            raise InputError("give a file or --expr")
        sig, arities, lines = parse_header(_read(args.file).splitlines())
    out = []
    for line in lines:
        if "=>" in line:
            out.append(str(parse_sequent(line, sig, dict(arities))))
        else:
            out.append(format_formula(parse_formula(line, sig, dict(arities))))
    _emit(args, {"parsed": out}, "\n".join(out))
    return OK


def cmd_check(args) -> int:
    proof, _ = load_proof(_read(args.proof))
    opts = CheckOptions(allow_cut=args.allow_cut, fragment=Fragment.parse(args.fragment))
    report = calculus.check_proof(proof, opts)
    payload = {"ok": report.ok, "nodes": proof.size(),
               "errors": [{"code": e.code.value, "path": list(e.path), "message": e.message}
                          for e in report.errors]}
    if report.ok:
        text = f"ok: {proof.conclusion} ({proof.size()} nodes)"
    else:
        text = "\n".join(["rejected"] + [f"  {e}" for e in report.errors])
    _emit(args, payload, text)
    return OK if report.ok else FAIL


def _outcome_json(out, sig: Signature) -> dict:
    if isinstance(out, search.Proved):
        return {"outcome": "proved", "nodes": out.nodes, **calculus.proof_to_json(out.proof, sig)}
    if isinstance(out, search.Refuted):
        b = out.branch
        v = search.branch_to_semival(b)
        return {"outcome": "refuted", "nodes": out.nodes,
                "branch": {"antecedent": sorted(map(str, b.ant)),
                           "succedent": sorted(map(str, b.suc)),
                           "relative_to_pools": b.relative_to_pools},
                "valuation": v.to_json()}
    return {"outcome": "exhausted", "nodes": out.nodes, "reason": out.reason}


def _outcome_code(out) -> int:
    return {search.Proved: OK, search.Refuted: FAIL, search.Exhausted: BUDGET}[type(out)]


def cmd_search(args) -> int:
    sig, arities, seqs = _sequents(args)
    cfg = load_config(args, sig, arities)
    results, lines, code = [], [], OK
    for s in seqs:
        out = search.canonical_search(s, cfg, sig)
        results.append(_outcome_json(out, sig))
        code = max(code, _outcome_code(out))
        if isinstance(out, search.Proved):
            lines.append(f"proved {s} ({out.proof.size()} nodes)")
            if args.tree:
                lines.append(calculus.format_proof(out.proof, "  "))
        elif isinstance(out, search.Refuted):
            tag = " (relative to the witness pools)" if out.branch.relative_to_pools else ""
            lines.append(f"refuted {s}{tag}")
            for row in results[-1]["valuation"]["table"]:
                lines.append(f"  V({row['formula']}) = {row['value']}")
        else:
            lines.append(f"exhausted {s}: {out.reason}")
    if args.out:
        if len(results) != 1:
            raise InputError("--out needs exactly one sequent")
        _write(args.out, json.dumps(results[0], indent=1, ensure_ascii=False))
    _emit(args, results[0] if len(results) == 1 else {"results": results}, "\n".join(lines))
    return code


def _cba_one(rm: cba.RelationMap, verify: bool, seed: int) -> tuple[dict, list]:
    alg = cba.build_relation_cba(rm)
    show = lambda a: sorted(map(str, a))
    payload = {"X": show(rm.X), "carrier": [show(a) for a in alg.elements],
               "zero": show(alg.zero), "one": show(alg.one),
               "complement": [{"of": show(a), "is": show(alg.comp(a))} for a in alg.elements],
               "m": {str(y): show(cba.little_m(rm, y)) for y in sorted(rm.X, key=str)}}
    lines = [f"carrier ({len(alg.elements)} elements): "
             + " ".join(cba.fmt_set(a) for a in alg.elements),
             f"0 = {cba.fmt_set(alg.zero)}, 1 = {cba.fmt_set(alg.one)}"]
    if verify:
        rep = cba.verify_laws(alg, seed=seed)
        payload["laws"] = rep.to_json()
        bad = rep.failures()
        lines.append(f"laws: {len(rep.results) - len(bad)}/{len(rep.results)} pass")
        lines += [f"  FAIL {r.law}: {r.witness!r}" for r in bad]
    return payload, lines


def cmd_cba(args) -> int:
    if args.enumerate is not None:
        maps = list(cba.all_relation_maps(range(1, args.enumerate + 1)))
        if args.out:
            d = Path(args.out)
            d.mkdir(parents=True, exist_ok=True)
            for i, rm in enumerate(maps):
                (d / f"rel{args.enumerate}_{i:03d}.rel").write_text(cba.format_relation_file(rm))
            print(f"wrote {len(maps)} relation files to {d}")
            return OK
        sources = [(f"#{i}", rm) for i, rm in enumerate(maps)]
    else:
        if args.path is None:
            raise InputError("give a relation file, a directory or --enumerate N")
        p = Path(args.path)
        files = sorted(p.glob("*.rel")) if p.is_dir() else [p]
        sources = []
        for f in files:
            try:
                sources.append((str(f), cba.parse_relation_file(_read(str(f)))))
            except ValueError as exc:
                raise InputError(f"{f}: {exc}") from None
    results, lines, failed = [], [], 0
    for name, rm in sources:
        err = rm.violation()
        if err is not None:
            failed += 1
            results.append({"source": name, "ok": False, "condition": err.condition,
                            "witnesses": [str(w) for w in (err.x, err.y) if w is not None],
                            "message": str(err)})
            lines.append(f"{name}: ConditionViolated({err.condition}): {err}")
            continue
        payload, text = _cba_one(rm, args.verify or len(sources) > 1, args.seed)
        ok = payload.get("laws", {}).get("ok", True)
        failed += not ok
        results.append({"source": name, "ok": ok, **payload})
        if len(sources) == 1:
            lines += text
        else:
            lines.append(f"{name}: {'pass' if ok else 'FAIL'} ({len(payload['carrier'])} elements)")
    if len(sources) > 1:
        lines.append(f"summary: {len(sources) - failed}/{len(sources)} pass")
    _emit(args, results[0] if len(results) == 1 else
          {"results": results, "passed": len(sources) - failed, "total": len(sources)},
          "\n".join(lines))
    return FAIL if failed else OK


def cmd_semival(args) -> int:
    try:
        data = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if "valuation" in data:
        data = data["valuation"]
    if "table" not in data:
        raise InputError("expected a valuation table or a refuted search report")
    v = valuation.SemiValuation.from_json(data)
    checks = [valuation.check_semival(v)]
    if args.lab in ("girard", "all"):
        checks += valuation.girard_lab(v).checks[1:]
    if args.lab in ("direct", "all"):
        checks += valuation.direct_lab(v).checks[1:]
    ok = all(c.ok for c in checks)
    lines = []
    for c in checks:
        lines.append(f"{c.name}: {'pass' if c.ok else 'FAIL'} ({c.checked} instances)")
        lines += [f"  {f}" for f in c.failures]
    _emit(args, {"ok": ok, "checks": [c.to_json() for c in checks]}, "\n".join(lines))
    return OK if ok else FAIL


def _universe_formulas(text: str) -> list:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        sig = Signature.from_json(data.get("signature"))
        return [parse_formula(f, sig, {}) for f in data["universe"]]
    sig, arities, lines = parse_header(text.splitlines())
    return [parse_formula(line, sig, dict(arities)) for line in lines]


def cmd_maehara(args) -> int:
    formulas = _universe_formulas(_read(args.file))
    try:
        su = valuation.SequentUniverse.build(formulas)
    except valuation.UniverseError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return INPUT
    mv = valuation.maehara_valuation(su)
    rep = valuation.check_semival(mv.valuation)
    checks = [rep]
    tested = 0
    if args.ver2:
        ver2 = valuation.CheckSummary("provable with cut implies cut-free")
        for s in valuation.all_sequents(su.formulas):
            sides = (Sequent(s.ant, frozenset()), Sequent(frozenset(), s.suc))
            if all(x in mv.relation.X for x in sides) and valuation.tautology(s):
                tested += 1
                r = valuation.hauptsatz_ver2(mv, s)
                ver2.checked += r.checked
                ver2.failures += r.failures
        checks.append(ver2)
    alg = mv.algebra
    table = [{"formula": str(a), "box": sorted(map(str, mv.box(a))), "dia": sorted(map(str, mv.dia(a)))}
             for a in sorted(su.formulas)]
    items = list(su.formulas)
    payload = {"universe": [str(a) for a in sorted(su.formulas)],
               "signature": calculus.signature_of(items).to_json(),
               "sequents": len(su.sequents), "algebra_size": len(alg.elements),
               "table": table, "checks": [c.to_json() for c in checks]}
    lines = [f"universe: {', '.join(payload['universe'])}",
             f"|S0| = {len(su.sequents)}, |B| = {len(alg.elements)}"]
    for row in table:
        lines.append(f"  V({row['formula']}) = (|box| {len(row['box'])}, |dia| {len(row['dia'])})")
    for c in checks:
        lines.append(f"{c.name}: {'pass' if c.ok else 'FAIL'} ({c.checked} instances)")
        lines += [f"  {f}" for f in c.failures]
    if args.ver2:
        lines.append(f"sequents provable with cut: {tested}")
    _write(args.out, json.dumps(payload, indent=1, ensure_ascii=False))
    _emit(args, payload, "\n".join(lines))
    return OK if all(c.ok for c in checks) else FAIL


def cmd_hauptsatz(args) -> int:
    proof, sig = load_proof(_read(args.proof))
    cfg = load_config(args, sig, {})
    try:
        out = search.hauptsatz_pipeline(proof, cfg, sig)
    except search.InvalidProof as exc:
        print(f"input proof rejected: {exc}", file=sys.stderr)
        return FAIL
    if isinstance(out, search.Proved):
        text = dump_proof(out.proof, sig)
        _write(args.out, text)
        if args.json or not args.out:
            print(text)
        else:
            print(f"cut-free proof of {proof.conclusion} ({out.proof.size()} nodes) -> {args.out}")
        return OK
    _emit(args, {"outcome": "exhausted", "reason": out.reason, "nodes": out.nodes},
          f"exhausted: {out.reason}")
    return BUDGET


def cmd_mints(args) -> int:
    proof, _ = load_proof(_read(args.proof))
    if args.oracle == "propositional":
        oracle = search.propositional_oracle
    else:
        cfg = search.SearchConfig(node_budget=args.budget)
        oracle = search.search_oracle(cfg)
    nodes = []
    for path, node in proof.nodes():
        if node.rule in (Rule.INIT, Rule.CUT):
            continue
        r = calculus.is_reducible(node, oracle)
        nodes.append({"path": list(path), "rule": node.rule.value,
                      "reducible": "unknown" if r is None else r})
    pure = calculus.pure_variable(proof)
    normal = calculus.is_mints_normal(proof, oracle)
    verdict = "unknown" if normal is None else normal
    payload = {"cut_free": not proof.has_cut(), "pure_variable": pure,
               "mints_normal": verdict, "nodes": nodes}
    lines = [f"cut free: {not proof.has_cut()}", f"pure variable: {pure}"]
    lines += [f"  {'/'.join(map(str, n['path'])) or 'root'} {n['rule']}: reducible={n['reducible']}"
              for n in nodes]
    lines.append(f"Mints normal: {verdict}")
    _emit(args, payload, "\n".join(lines))
    return OK if normal is True else (BUDGET if normal is None else FAIL)


def cmd_classify(args) -> int:
    sig, _, seqs = _sequents(args)
    results, lines = [], []
    for s in seqs:
        c = classify_sequent(s)
        row = {"sequent": str(s), "first_order": c.is_first_order, "sigma01": c.is_sigma01,
               "pi01": c.is_pi01, "pi1": c.is_pi1}
        line = f"{s}: " + ", ".join(f"{k}={row[k]}" for k in ("first_order", "sigma01", "pi01", "pi1"))
        if args.erase:
            try:
                row["erased"] = str(erase_second_order(s))
                line += f"\n  erased: {row['erased']}"
            except calculus.FragmentError as exc:
                row["erased"] = None
                line += f"\n  erased: not applicable ({exc})"
        if args.herbrand:
            try:
                h, hs = herbrand_nf(s, sig)
                row["herbrand"] = str(h)
                row["signature"] = hs.to_json()
                line += f"\n  herbrand: {h}"
            except calculus.FragmentError as exc:
                row["herbrand"] = None
                line += f"\n  herbrand: not applicable ({exc})"
        results.append(row)
        lines.append(line)
    _emit(args, {"results": results}, "\n".join(lines))
    return OK


VERDICTS = {"ok", "proved", "refuted", "exhausted"} | {c.value for c in calculus.ErrorCode}


def cmd_corpus(args) -> int:
    """Run a manifest of proofs and sequents against their expected verdicts."""
    manifest = Path(args.manifest)
    try:
        entries = json.loads(_read(str(manifest)))
    except json.JSONDecodeError as exc:
        raise InputError(f"{manifest}: {exc}") from None
    if isinstance(entries, dict):
        entries = entries["entries"]
    names = [e["name"] for e in entries]
    if len(set(names)) != len(names):
        raise InputError("corpus entry names must be unique")
    base = manifest.parent
    lines, rows, failed = [], [], 0
    for e in entries:
        expect = e["expect"]
        if expect not in VERDICTS:
            raise InputError(f"{e['name']}: unknown verdict {expect!r}")
        if "proof" in e:
            proof, _ = load_proof(_read(str(base / e["proof"])))
            opts = CheckOptions(allow_cut=e.get("allow_cut", False),
                                fragment=Fragment.parse(e.get("fragment", "full")))
            rep = calculus.check_proof(proof, opts)
            got = "ok" if rep.ok else rep.first().code.value
        else:
            sig, arities, _ = parse_header(e.get("header", []))
            s = parse_sequent(e["sequent"], sig, dict(arities))
            ns = argparse.Namespace(config=None, term=e.get("terms"), abstract=e.get("abstracts"),
                                    node_budget=e.get("node_budget"), depth_budget=None,
                                    fragment=e.get("fragment"))
            out = search.canonical_search(s, load_config(ns, sig, arities), sig)
            got = type(out).__name__.lower()
        ok = got == expect
        failed += not ok
        rows.append({"name": e["name"], "expect": expect, "got": got, "ok": ok})
        lines.append(f"{'PASS' if ok else 'FAIL'} {e['name']}: expected {expect}, got {got}")
    lines.append(f"summary: {len(entries) - failed}/{len(entries)} as expected")
    _emit(args, {"results": rows, "passed": len(entries) - failed, "total": len(entries)},
          "\n".join(lines))
    return FAIL if failed else OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g1lc", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="print one JSON document")
    ap.add_argument("--seed", type=int, default=0, help="seed for every sampled check")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and pretty-print formulas or sequents")
    p.add_argument("file", nargs="?")
    p.add_argument("-e", "--expr", action="append")
    p.add_argument("--header", action="append")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("proof")
    p.add_argument("--allow-cut", action="store_true")
    p.add_argument("--fragment", default="full")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="cut-free proof search")
    _sequent_source(p)
    _pool_flags(p)
    p.add_argument("-o", "--out", help="write the proof or branch report here")
    p.add_argument("--tree", action="store_true", help="print found proofs as trees")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cba", help="algebra induced by a relation map")
    p.add_argument("path", nargs="?", help="relation file or directory of *.rel files")
    p.add_argument("--verify", action="store_true", help="run the law checks")
    p.add_argument("--enumerate", type=int, metavar="N",
                   help="all valid maps over N elements (verified, or written with --out)")
    p.add_argument("--out", help="directory for --enumerate")
    p.set_defaults(func=cmd_cba)

    p = sub.add_parser("semival", help="check a two-valued semi valuation table")
    p.add_argument("file", help="valuation JSON or a refuted search report")
    p.add_argument("--lab", choices=("none", "girard", "direct", "all"), default="none",
                   help="also build the models and check their identities")
    p.set_defaults(func=cmd_semival)

    p = sub.add_parser("maehara", help="provability-induced valuation on a propositional universe")
    p.add_argument("file", help="header plus one formula per line, or a previous maehara dump")
    p.add_argument("--ver2", action="store_true",
                   help="check that every valid universe sequent is cut-free provable")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_maehara)

    p = sub.add_parser("hauptsatz", help="turn a proof with cuts into a cut-free proof")
    p.add_argument("proof")
    _pool_flags(p)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_hauptsatz)

    p = sub.add_parser("mints", help="pure variable, reducibility and Mints normality")
    p.add_argument("proof")
    p.add_argument("--oracle", choices=("propositional", "search"), default="search")
    p.add_argument("--budget", type=int, default=2000, help="node budget of the search oracle")
    p.set_defaults(func=cmd_mints)

    p = sub.add_parser("classify", help="sequent classes, erasure and Herbrand form")
    _sequent_source(p)
    p.add_argument("--erase", action="store_true")
    p.add_argument("--herbrand", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("corpus", help="run a regression manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except (InputError, ParseError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
