"""Command-line interface: verbs, exit codes, report determinism."""

import json

import jsonschema

from quadosc.cli import main
from quadosc.report import SCHEMA, VerificationReport
from quadosc.operators import IdentityRecord


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_state_creation_repr(capsys):
    code, out, _ = run(capsys, "state", "--k", "0", "--n", "1", "--m", "1")
    assert code == 0
    assert out.strip() == "-2*g*C+"


def test_state_json(capsys):
    code, out, _ = run(capsys, "state", "--k", "0", "--n", "1", "--m", "0", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["creation"] == [{"word": [1, 0, 0], "coeff": "4*g^2"}]


def test_state_invalid_label(capsys):
    code, _, err = run(capsys, "state", "--k", "0", "--n", "1", "--m", "5")
    assert code == 2
    assert "outside the block" in err


def test_commutator_verb(capsys):
    code, out, _ = run(capsys, "commutator", "[H,Q+] - 4*lam*Q+")
    assert code == 0
    assert out.strip() == "0"


def test_commutator_syntax_error(capsys):
    code, _, err = run(capsys, "commutator", "[H,")
    assert code == 2
    assert "position" in err


def test_inner_verb(capsys):
    code, out, _ = run(capsys, "inner", "C+", "B+")
    assert code == 0
    assert out.strip() == "-2*g"
    code, out, _ = run(capsys, "inner", "Q+", "Q+")
    assert out.strip() == "24*lam^2"


def test_tabulate_n(capsys):
    code, out, _ = run(capsys, "tabulate", "--what", "N", "--max-k", "1", "--max-n", "1")
    assert code == 0
    assert "8*lam*g^2" in out


def test_tabulate_csv(tmp_path, capsys):
    path = tmp_path / "ab.csv"
    code, out, _ = run(capsys, "tabulate", "--what", "ab", "--max-n", "2",
                       "--csv", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,p,q,a,b"
    assert any(line.startswith("1,0,0,1,-2*g") for line in lines)


def test_verify_single_suite_and_schema(tmp_path, capsys):
    path = tmp_path / "ladder.json"
    code, out, _ = run(capsys, "verify", "--suite", "ladder", "--json", str(path))
    assert code == 0
    assert "ladder" in out
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["summary"]["failed"] == 0
    assert all(rec["ms"] == 0 for rec in doc["records"])


def test_verify_reports_are_byte_identical(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--suite", "integrals", "--json", str(p1))
    run(capsys, "verify", "--suite", "integrals", "--json", str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_verify_timing_opt_in(tmp_path, capsys):
    path = tmp_path / "t.json"
    run(capsys, "verify", "--suite", "ladder", "--json", str(path), "--timing")
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert any(rec["ms"] > 0 for rec in doc["records"])


def test_report_merge(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "verify", "--suite", "ladder", "--json", str(a))
    run(capsys, "verify", "--suite", "integrals", "--json", str(b))
    out_path = tmp_path / "merged.json"
    code, out, _ = run(capsys, "report", "--merge", "--out", str(out_path),
                       str(a), str(b))
    assert code == 0
    doc = json.loads(out_path.read_text())
    jsonschema.validate(doc, SCHEMA)
    suites = {rec["suite"] for rec in doc["records"]}
    assert suites == {"ladder", "integrals"}


def test_report_merge_failed_records_exit_one(tmp_path, capsys):
    bad = VerificationReport("custom")
    bad.add("custom", [IdentityRecord("custom/x", "synthetic", "failed", "1")])
    src = tmp_path / "bad.json"
    bad.write_json(str(src))
    out_path = tmp_path / "merged.json"
    code, _, _ = run(capsys, "report", "--merge", "--out", str(out_path), str(src))
    assert code == 1


def test_published_schema_file_matches():
    import importlib.resources as res
    with res.files("quadosc").joinpath("report_schema.json").open() as fh:
        on_disk = json.load(fh)
    assert on_disk == SCHEMA


def test_usage_error_exit_code(capsys):
    assert main(["verify", "--suite", "nonsense"]) == 2
    assert main(["tabulate"]) == 2


def test_exit_code_contract_on_failure(monkeypatch, capsys):
    from quadosc import cli as climod

    def fake(args):
        return [("fake", [IdentityRecord("fake/one", "synthetic", "failed", "residual")])]

    monkeypatch.setattr(climod, "_run_suite", fake)
    code, out, _ = run(capsys, "verify", "--suite", "ladder")
    assert code == 1
    assert "FAILED fake/one" in out
