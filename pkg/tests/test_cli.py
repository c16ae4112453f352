import json

import pytest

from ualg.cli import main

BO = "data/paper_BO.alg"


@pytest.fixture(autouse=True)
def _run_from_repo_root(monkeypatch, data_dir):
    monkeypatch.chdir(data_dir.parent)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check(capsys):
    code, out, _ = run(capsys, "check", BO)
    assert code == 0
    assert "B: 2 elements, 5 operations" in out
    assert "O: 4 elements, 5 operations" in out


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "nonexistent.alg")
    assert code == 2
    assert "file not found" in err


def test_check_parse_error(tmp_path, capsys, data_dir):
    bad = data_dir.parent / "bad_tmp.alg"
    bad.write_text("algebra A\nelements a\nop f/2 = a a a\nend\n")
    try:
        code, _, err = run(capsys, "check", str(bad))
        assert code == 2
        assert "line 3" in err
    finally:
        bad.unlink()


def test_eval(capsys):
    code, out, _ = run(
        capsys, "eval", BO, "--algebra", "O",
        "--term", "not(and(x, y))", "--bind", "x=o2,y=o4",
    )
    assert code == 0
    assert out.strip() == "o3"


def test_satisfies_pass_and_fail(capsys):
    code, out, _ = run(capsys, "satisfies", BO, "preset:boolean-algebra", "--algebra", "O")
    assert code == 0
    assert "variety member" in out
    code, out, _ = run(capsys, "satisfies", BO, "preset:group", "--algebra", "Z2")
    assert code == 2  # wrong signature: usage-class error, not a verdict
    code, out, _ = run(capsys, "satisfies", "data/small.alg", "preset:group",
                       "--algebra", "Z2")
    assert code == 0


def test_satisfies_false_verdict(capsys, data_dir):
    code, out, _ = run(capsys, "satisfies", "data/small.alg", "preset:lattice",
                       "--algebra", "L2")
    assert code == 0
    # missing symbols are a usage-class error (2); a genuine equation
    # failure on a well-typed algebra is a false verdict (1)
    code, _, _ = run(capsys, "satisfies", "data/small.alg", "preset:boolean-algebra",
                     "--algebra", "L2")
    assert code == 2
    bad = data_dir.parent / "bad_lattice_tmp.alg"
    bad.write_text(
        "algebra N2\nelements d0 d1\n"
        "op and/2 = d0 d0 d0 d1\nop or/2 = d0 d0 d1 d1\nend\n"
    )
    try:
        code, out, _ = run(capsys, "satisfies", str(bad), "preset:lattice")
        assert code == 1
        assert "not a member" in out
    finally:
        bad.unlink()


def test_satisfies_equation_file(capsys):
    code, out, _ = run(capsys, "satisfies", BO, "data/presets/boolean.eq",
                       "--algebra", "B")
    assert code == 0


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", BO, "--algebra", "O", "--elements", "o2")
    assert code == 0
    assert "generated: o1 o2 o3 o4" in out


def test_clone(capsys):
    code, out, _ = run(capsys, "--json", "clone", "data/small.alg",
                       "--algebra", "L2", "--arity", "2")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["members"]) == 4
    assert payload["complete"]


def test_homs_and_counts(capsys):
    code, out, _ = run(capsys, "--json", "homs", BO, "--algebras", "B,O")
    assert code == 0
    assert json.loads(out)["homomorphisms"] == [{"b1": "o1", "b2": "o4"}]
    code, out, _ = run(capsys, "homs", BO, "--algebras", "B,O", "--count")
    assert code == 0 and out.strip() == "1"


def test_iso_verdicts(capsys):
    code, _, _ = run(capsys, "iso", BO, "--algebras", "B,B")
    assert code == 0
    code, out, _ = run(capsys, "iso", BO, "--algebras", "B,O")
    assert code == 1
    assert "not isomorphic" in out


def test_retracts(capsys):
    code, out, _ = run(capsys, "retracts", "data/small.alg", "--algebra", "L2",
                       "--image", "d0")
    assert code == 0
    code, out, _ = run(capsys, "retracts", BO, "--algebra", "O",
                       "--image", "o1,o4")
    assert code in (0, 1)


def test_reduct(capsys):
    code, out, _ = run(capsys, "reduct", BO, "--algebra", "O", "--keep", "and,or",
                       "--name", "Olat")
    assert code == 0
    assert out.startswith("algebra Olat")
    assert "op not/1" not in out


def test_product_bytes_match_golden_layout(capsys):
    code, out, _ = run(capsys, "--json", "product", BO, "--algebras", "B,O",
                       "--elements", "s,t,u,v,w,x,y,z")
    assert code == 0
    payload = json.loads(out)
    assert "elements s t u v w x y z" in payload["algebra"]
    assert payload["relabel"]["x"] == ["b2", "o2"]
    assert payload["projections"][0]["map"]["v"] == "b1"
    assert payload["projections"][1]["map"]["v"] == "o4"


def test_free_retract(capsys):
    code, out, _ = run(capsys, "--json", "free-retract", "--gens", "1",
                       "--bound", "8", "--image-bound", "3")
    assert code == 1
    payload = json.loads(out)
    assert payload["found"] is None
    assert payload["transcript"]
    code, _, _ = run(capsys, "free-retract", "--gens", "1", "--bound", "3",
                     "--image-bound", "3")
    assert code == 0


def test_rp_commands(capsys):
    code, out, _ = run(capsys, "--json", "rp", "adjoin", BO, "--algebra", "B",
                       "--gen", "per b1 b2")
    assert code == 0
    assert len(json.loads(out)["members"]) == 4
    code, _, _ = run(capsys, "rp", "retract", BO, "--algebra", "B",
                     "--gen", "per b1 b2", "--index", "2")
    assert code == 0
    code, out, _ = run(capsys, "rp", "preserve", BO, "preset:boolean-algebra",
                       "--algebra", "B", "--gen", "per b1 b2")
    assert code == 0


def test_usage_error_exit_code(capsys):
    assert main(["homs", BO, "--algebras", "B"]) == 2
    capsys.readouterr()
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_json_byte_stability_across_runs_and_workers(capsys):
    outputs = set()
    for workers in ("1", "2", "8"):
        for _ in range(2):
            code, out, _ = run(capsys, "--json", "--workers", workers,
                               "satisfies", BO, "preset:boolean-algebra",
                               "--algebra", "O")
            assert code == 0
            outputs.add(out)
    assert len(outputs) == 1
