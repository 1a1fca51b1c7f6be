import dataclasses
import json

import pytest

from chaincenter import cli
from chaincenter.cli import EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main, parse_group_spec, parse_moduli


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_dicyclic2(capsys):
    code, r = run_json(capsys, "analyze", "--group", "named dicyclic 2")
    assert code == EXIT_OK
    assert r["chain_group"]["invariant_factors"] == [2]
    assert len(set(r["chain_group"]["classes"].values())) == 2
    assert r["center"]["center_invariants"] == [2]
    assert r["verification"]["ok"]


def test_analyze_cyclic6(capsys):
    code, r = run_json(capsys, "analyze", "--group", '{"type": "named", "name": "cyclic", "params": [6]}')
    assert code == EXIT_OK and r["chain_group"]["invariant_factors"] == [6]


def test_analyze_ising(capsys, fixtures_dir):
    code, r = run_json(capsys, "analyze", "--fusion", str(fixtures_dir / "ising.json"))
    assert code == EXIT_OK
    assert r["chain_group"]["invariant_factors"] == [2]
    assert r["center"] is None
    status = {x["statement"]: x["status"] for x in r["verification"]["results"]}
    assert status["theorem_main"] == status["prop_C0"] == "n/a"
    assert status["lemma_kernel"] == status["definition_equivalence"] == "pass"


def test_analyze_broken_file_is_an_input_error(capsys, fixtures_dir):
    code, r = run_json(capsys, "analyze", "--fusion", str(fixtures_dir / "ising_drop_eps.json"))
    assert code == EXIT_INPUT
    assert r["error"]["module"] == "fusion"
    assert r["error"]["witness"]["violations"]


def test_analyze_text_output(capsys):
    assert main(["analyze", "--group", "dihedral:4", "--moduli", "2,3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "invariant factors [2]" in out and "verification: ok" in out
    assert "factorization_m4" not in out


@pytest.mark.parametrize("argv", [
    ["analyze", "--group", "nonsense 3"],
    ["analyze", "--group", "{not json"],
    ["analyze", "--group", "symmetric 7", "--order-bound", "100"],
    ["analyze", "--fusion", "/nonexistent/ring.json"],
    ["analyze", "--group", "cyclic 3", "--moduli", "0..3"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["analyze", "--group", "cyclic 3", "--moduli", "x..y"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["analyze"])


def test_parsers():
    assert parse_moduli("2..5") == (2, 3, 4, 5)
    assert parse_moduli("3,7") == (3, 7)
    assert parse_group_spec("dicyclic(2)") == {"type": "named", "name": "dicyclic", "params": [2]}
    spec = parse_group_spec("dihedral:4 x cyclic:3")
    assert spec["type"] == "product" and len(spec["factors"]) == 2
    assert parse_group_spec("klein4")["params"] == []


def test_permutation_spec_file(capsys, fixtures_dir):
    code, r = run_json(capsys, "analyze", "--group", str(fixtures_dir / "q8_permutation.json"))
    assert code == EXIT_OK and r["order"] == 8 and r["chain_group"]["invariant_factors"] == [2]


def test_verify_all_bound_1_is_empty(capsys):
    code, r = run_json(capsys, "verify-all", "--max-order", "1", "--workers", "1")
    assert code == EXIT_OK
    assert r["entries"] == [] and r["dq_pairs"] == []


def test_verify_all_small_bound(capsys):
    code, r = run_json(capsys, "verify-all", "--max-order", "16", "--workers", "1")
    assert code == EXIT_OK
    assert r["summary"]["fail"] == r["summary"]["error"] == 0
    assert [(p["l"], p["dihedral"], p["dicyclic"]) for p in r["dq_pairs"]] == [(1, [2], [2]), (2, [2], [2])]


def test_verify_all_parallel_matches_inline(capsys):
    _, inline = run_json(capsys, "verify-all", "--max-order", "12", "--workers", "1")
    _, pooled = run_json(capsys, "verify-all", "--max-order", "12", "--workers", "2")
    assert inline == pooled


def test_verify_all_with_injected_broken_table(capsys, tmp_path, fixtures_dir):
    broken = json.loads((fixtures_dir / "ising_drop_eps.json").read_text())
    catalog = [{"type": "named", "name": "cyclic", "params": [3]},
               {"name": "broken", "fusion": broken},
               {"name": "ising", "fusion": json.loads((fixtures_dir / "ising.json").read_text())}]
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(catalog))
    code, r = run_json(capsys, "verify-all", "--catalog", str(path), "--workers", "1")
    assert code != EXIT_OK
    by_entry = {e["entry"]: e for e in r["entries"]}
    assert by_entry["cyclic(3)"]["status"] == "pass"
    assert by_entry["ising"]["status"] == "pass"
    assert by_entry["broken"]["status"] == "error"
    assert by_entry["broken"]["error"]["witness"]["violations"]


def test_verify_all_reports_statement_failure(capsys, monkeypatch):
    real = cli.analyze_group

    def corrupted(*args, **kwargs):
        A = real(*args, **kwargs)
        chars = list(A.restriction.characters)
        chars.reverse()  # the trivial irrep no longer maps to the trivial character
        A.restriction = dataclasses.replace(A.restriction, characters=tuple(chars))
        return A

    monkeypatch.setattr(cli, "analyze_group", corrupted)
    code, r = run_json(capsys, "verify-all", "--max-order", "8", "--workers", "1")
    assert code == EXIT_FAILURE
    failed = [e for e in r["entries"] if e["status"] == "fail"]
    assert failed and all(e["error"]["witness"]["results"] for e in failed)


@pytest.mark.parametrize("levels, stabilized", [(5, True), (1, None), (20, True)])
def test_su2(capsys, levels, stabilized):
    code, r = run_json(capsys, "su2", "--levels", str(levels))
    assert code == EXIT_OK
    assert r["invariant_factors"] == [2] and r["stabilized"] is stabilized
    assert all(lv["invariant_factors"] == [2] for lv in r["levels"])
    assert len(r["levels"]) == levels


def test_su2_rejects_zero_levels(capsys):
    assert main(["su2", "--levels", "0"]) == EXIT_INPUT


def test_catalog_list(capsys):
    code, rows = run_json(capsys, "catalog", "--list")
    assert code == EXIT_OK
    assert len([r for r in rows if r["order"] <= 512]) >= 40
    assert main(["catalog", "--list"]) == EXIT_OK
    assert "dicyclic(2)" in capsys.readouterr().out


def test_cache_hits_are_byte_identical(capsys, tmp_path, monkeypatch):
    argv = ["analyze", "--group", "sl23 x cyclic:2", "--format", "json"]
    main(argv)
    cold = capsys.readouterr().out
    monkeypatch.setenv("CHAINCENTER_CACHE_DIR", str(tmp_path))
    main(argv)
    first = capsys.readouterr().out
    assert len(list(tmp_path.glob("*.json"))) == 1
    main(argv)
    warm = capsys.readouterr().out
    assert cold == first == warm


def test_corrupt_cache_entry_is_recomputed(capsys, tmp_path):
    argv = ["analyze", "--group", "dicyclic 3", "--format", "json", "--cache-dir", str(tmp_path)]
    main(argv)
    good = capsys.readouterr().out
    entry = next(tmp_path.glob("*.json"))
    data = json.loads(entry.read_text())
    data["table"]["values"][1][1] += 1
    entry.write_text(json.dumps(data))
    main(argv)
    assert capsys.readouterr().out == good
