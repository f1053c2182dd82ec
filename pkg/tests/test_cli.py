import json

import pytest

import oracles
from conftest import CORPUS
from g1lc.cli import main

OK, FAIL, BUDGET, INPUT = 0, 1, 2, 3


def run(capsys, *argv):
    code = main(["--json", *map(str, argv)])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_check_valid_proof(capsys):
    code, rep = run(capsys, "check", CORPUS / "proofs" / "init_atomic.json")
    assert code == OK and rep["ok"]


def test_check_cut_needs_flag(capsys):
    path = CORPUS / "cut" / "cut_em_on_p.json"
    code, rep = run(capsys, "check", path)
    assert code == FAIL and rep["errors"][0]["code"] == "CutForbidden"
    assert run(capsys, "check", path, "--allow-cut")[0] == OK


def test_check_mutants_are_rejected_precisely(capsys):
    entries = json.loads((CORPUS / "manifest.json").read_text())["entries"]
    proofs = [e for e in entries if "proof" in e]
    good = [e for e in proofs if e["expect"] == "ok"]
    bad = [e for e in proofs if e["expect"] != "ok"]
    assert len(good) >= 10 and len(bad) >= 10
    for e in proofs:
        argv = ["check", CORPUS / e["proof"], "--fragment", e.get("fragment", "full")]
        if e.get("allow_cut"):
            argv.append("--allow-cut")
        code, rep = run(capsys, *argv)
        if e["expect"] == "ok":
            assert code == OK, e["name"]
        else:
            assert code == FAIL and rep["errors"][0]["code"] == e["expect"], e["name"]


def test_search_proof_is_accepted_by_check(capsys, tmp_path):
    out = tmp_path / "em.json"
    code, rep = run(capsys, "search", "-e", "=> P | ~P", "-o", out)
    assert code == OK and rep["outcome"] == "proved"
    assert run(capsys, "check", out)[0] == OK


def test_search_refutation_report_feeds_semival(capsys, tmp_path):
    out = tmp_path / "pq.json"
    code, rep = run(capsys, "search", "-e", "P => Q", "-o", out)
    assert code == FAIL and rep["outcome"] == "refuted"
    values = {r["formula"]: r["value"] for r in rep["valuation"]["table"]}
    assert values == {"P": "t", "Q": "f"}
    code, rep = run(capsys, "semival", out, "--lab", "all")
    assert code == OK and rep["ok"]


def test_search_zero_budget(capsys):
    code, rep = run(capsys, "search", "-e", "=> P | ~P", "--node-budget", "0")
    assert code == BUDGET and rep["outcome"] == "exhausted"


def test_search_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"abstract_pool": {"1": ["\\x. R(x)"]}, "node_budget": 500}))
    code, rep = run(capsys, "search", "--header", "const c", "--header", "rel R:1",
                    "-e", "R(c) => EX X:1. X(c)", "--config", cfg)
    assert code == OK and rep["outcome"] == "proved"


def test_cba_single_point(capsys, tmp_path):
    f = tmp_path / "one.rel"
    f.write_text("X = x\nM(x) =\n")
    code, rep = run(capsys, "cba", f, "--verify")
    assert code == OK and len(rep["carrier"]) == 2 and rep["laws"]["ok"]


def test_cba_condition_violation(capsys, tmp_path):
    f = tmp_path / "bad.rel"
    f.write_text("X = a b\nM(a) = b\nM(b) =\n")
    code, rep = run(capsys, "cba", f)
    assert code == FAIL and rep["condition"] == 2 and sorted(rep["witnesses"]) == ["a", "b"]


def test_cba_enumeration_directory(capsys, tmp_path):
    for n in (1, 2, 3):
        assert main(["cba", "--enumerate", str(n), "--out", str(tmp_path)]) == OK
    capsys.readouterr()
    code, rep = run(capsys, "cba", tmp_path, "--verify")
    expected = sum(len(list(oracles.valid_maps(range(n)))) for n in (1, 2, 3))
    assert code == OK and rep["passed"] == rep["total"] == expected


def test_cba_four_points_reports_the_failures(capsys):
    code, rep = run(capsys, "cba", "--enumerate", "4", "--verify")
    assert code == FAIL and rep["total"] == 113 and rep["passed"] == 113 - 15


def test_maehara_universe_and_roundtrip(capsys, tmp_path):
    u = tmp_path / "u.txt"
    u.write_text("P\n~P\n")
    dump = tmp_path / "dump.json"
    code, rep = run(capsys, "maehara", u, "--ver2", "-o", dump)
    assert code == OK and all(c["ok"] for c in rep["checks"])
    code, again = run(capsys, "maehara", dump)
    assert code == OK and again["table"] == rep["table"]


def test_maehara_refuses_quantifiers(capsys, tmp_path):
    u = tmp_path / "q.txt"
    u.write_text("const c\nrel R:1\n\nEX x. R(x)\n")
    assert main(["maehara", str(u)]) == INPUT
    assert "quantified" in capsys.readouterr().err


def test_hauptsatz_output_is_checked(capsys, tmp_path):
    out = tmp_path / "cf.json"
    assert main(["hauptsatz", str(CORPUS / "cut" / "cut_peirce.json"), "-o", str(out)]) == OK
    capsys.readouterr()
    code, rep = run(capsys, "check", out)
    assert code == OK and rep["ok"]


def test_hauptsatz_rejects_a_bad_proof(capsys):
    assert main(["hauptsatz", str(CORPUS / "mutants" / "mut_wrong_witness.json")]) == FAIL


def test_mints_on_corpus_proof(capsys):
    code, rep = run(capsys, "mints", CORPUS / "proofs" / "identity_second_order.json")
    assert code == FAIL and rep["mints_normal"] is False and rep["cut_free"]


def test_classify(capsys):
    code, rep = run(capsys, "classify", "-e", "=> ALL X:1. X(c) | ~X(c)", "--header", "const c",
                    "--erase")
    assert code == OK and rep["results"][0]["pi1"]


def test_parse(capsys):
    code, rep = run(capsys, "parse", "-e", "A > B")
    assert code == OK and rep["parsed"] == ["~A | B"]


def test_corpus_manifest(capsys):
    code, rep = run(capsys, "corpus", CORPUS / "manifest.json")
    assert code == OK and rep["passed"] == rep["total"]


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent.json"],
    ["parse", "-e", "X(c) & "],
    ["search", "-e", "P =>", "--fragment", "nonsense"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == INPUT
