import json

import jsonschema
import pytest

from etakit.cli.router import EXIT_ERROR, EXIT_FAILED_CHECKS, EXIT_OK, main
from etakit.models.report import RunReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eta_family(capsys):
    code, out, _ = run(capsys, "eta", "--family", "n=1", "inv=tau")
    assert code == EXIT_OK
    assert "eta: [0, -1, 0, 1]" in out
    assert "matches_closed_form=true" in out


def test_eta_file_matches_family(capsys, corpus_dir):
    code, out, _ = run(capsys, "eta", "--file", str(corpus_dir / "K1_tau.lvq"))
    assert code == EXIT_OK
    assert "eta: [0, -1, 0, 1]" in out
    assert "vanishes_at_1=true" in out


def test_eta_file_by_corpus_name(capsys):
    code, out, _ = run(capsys, "eta", "--file", "K1_sigma.lvq")
    assert code == EXIT_OK
    assert "eta: [-6, 3, 2, -3, 1]" in out


def test_eta_table(capsys):
    code, out, _ = run(capsys, "eta", "--table", "--max-n", "3")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["n", "involution", "eta_tilde", "eta", "degree", "distinct"]
    assert len(lines) == 7
    assert all(line.split("\t")[-1] == "true" for line in lines[1:])


def test_json_and_text_carry_the_same_payload(capsys):
    _, text, _ = run(capsys, "eta", "--family", "n=2", "inv=sigma")
    code, out, _ = run(capsys, "--json", "eta", "--family", "n=2", "inv=sigma")
    assert code == EXIT_OK
    report = RunReport.model_validate_json(out)
    assert report.ok
    assert report.command == ["--json", "eta", "--family", "n=2", "inv=sigma"]
    bracket = report.payload["eta_bracket"]
    assert f"eta: [{', '.join(str(a) for a in bracket)}]" in text


def test_reports_are_deterministic(capsys):
    outputs = []
    for _ in range(2):
        _, out, _ = run(capsys, "--json", "verify", "oracle", "--file", "K1_tau.lvq")
        outputs.append(RunReport.model_validate_json(out).comparable())
    assert outputs[0] == outputs[1]
    assert "wall_time_ms" not in outputs[0]


def test_input_digests(capsys, corpus_dir):
    from etakit.core.digest import digest_file

    _, out, _ = run(capsys, "--json", "eta", "--file", str(corpus_dir / "K2_tau.lvq"))
    report = RunReport.model_validate_json(out)
    assert report.inputs == {str(corpus_dir / "K2_tau.lvq"): digest_file(corpus_dir / "K2_tau.lvq")}


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--file", "K2_sigma.lvq", "--depth", "6")
    assert code == EXIT_OK
    assert "verdict: match" in out
    assert "depth: 6" in out


def test_verify_oracle_depth_too_small(capsys):
    code, _, err = run(capsys, "verify", "oracle", "--file", "K2_sigma.lvq", "--depth", "2")
    assert code == EXIT_ERROR
    assert "depth 2" in err


def test_verify_oracle_mismatch_fails(capsys, tmp_path, corpus_dir):
    text = (corpus_dir / "K1_tau.lvq").read_text()
    flipped = tmp_path / "flipped.lvq"
    flipped.write_text(text.replace("crossing + over a1 under a0", "crossing - over a1 under a0"))
    code, out, _ = run(capsys, "verify", "oracle", "--file", str(flipped))
    assert code == EXIT_FAILED_CHECKS
    assert "verdict: mismatch" in out
    assert "mismatches: [-1, 1]" in out


def test_verify_pi1_family(capsys):
    code, out, _ = run(capsys, "verify", "pi1", "--family", "m=1", "n=1")
    assert code == EXIT_OK
    assert "H1: trivial; trivial: certified" in out


def test_verify_pi1_soundness_control(capsys):
    code, out, _ = run(capsys, "verify", "pi1", "--file", "binary_icosahedral.pres")
    assert code == EXIT_FAILED_CHECKS
    assert "H1: trivial; trivial: inconclusive" in out


def test_verify_pi1_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ETAKIT_BUDGET", "1")
    code, out, _ = run(capsys, "--json", "verify", "pi1", "--file", "W11.pres")
    assert code == EXIT_FAILED_CHECKS
    report = RunReport.model_validate_json(out)
    assert report.payload["status"] == "inconclusive"
    assert report.payload["reason"] == "move budget exhausted"


def test_verify_pi1_template_unavailable(capsys):
    code, _, err = run(capsys, "verify", "pi1", "--family", "m=5", "n=1")
    assert code == EXIT_ERROR
    assert "W(5,1)" in err


def test_lk(capsys):
    code, out, _ = run(capsys, "lk", "--file", "W11_surgery.diag")
    assert code == EXIT_OK
    assert "lk(X, Y) = 1" in out
    assert "writhe(X) = 2" in out

    code, out, _ = run(capsys, "lk", "--file", "K1_tau_axis.diag", "--components", "O", "L")
    assert code == EXIT_OK
    assert out.strip() == "lk(O, L) = 0"


def test_corpus_flag(capsys, tmp_path, corpus_dir):
    (tmp_path / "mine.lvq").write_text((corpus_dir / "K3_tau.lvq").read_text())
    code, out, _ = run(capsys, "--corpus", str(tmp_path), "eta", "--file", "mine.lvq")
    assert code == EXIT_OK
    assert "source: mine" in out

    code, _, err = run(capsys, "--corpus", str(tmp_path), "eta", "--file", "K1_tau.lvq")
    assert code == EXIT_ERROR
    assert "file not found" in err


@pytest.mark.parametrize("argv", [
    ["eta", "--family", "n=0", "inv=tau"],
    ["eta", "--family", "n=1", "inv=rho"],
    ["eta", "--family", "n=1"],
    ["eta", "--file", "no_such_file.lvq"],
    ["lk", "--file", "W11_surgery.diag", "--components", "X", "Q"],
])
def test_bad_input_exits_with_error(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert out == ""
    assert "etakit: error:" in err


def test_logs_are_json_on_stderr(capsys):
    code, _, err = run(capsys, "--log-level", "info", "eta", "--family", "n=1", "inv=tau")
    assert code == EXIT_OK
    records = [json.loads(line) for line in err.strip().splitlines()]
    timing = [r for r in records if r.get("command") == "eta"]
    assert timing and "status=ok" in timing[-1]["message"]


def test_eta_prime_is_marked_intermediate(capsys):
    _, text, _ = run(capsys, "eta", "--family", "n=2", "inv=sigma")
    assert "(intermediate)" in text
    _, out, _ = run(capsys, "--json", "eta", "--family", "n=2", "inv=sigma")
    assert json.loads(out)["payload"]["intermediate"] == ["eta_prime_bracket"]


def test_schema_command(capsys):
    code, out, _ = run(capsys, "schema")
    assert code == EXIT_OK
    schema = json.loads(out)
    assert schema["title"] == "RunReport"
    assert "command" in schema["required"]


@pytest.mark.parametrize("argv", [
    ["eta", "--family", "n=3", "inv=tau"],
    ["eta", "--table", "--max-n", "2"],
    ["verify", "oracle", "--file", "K1_sigma.lvq"],
    ["verify", "pi1", "--family", "m=1", "n=1"],
    ["lk", "--file", "W11_surgery.diag"],
])
def test_json_reports_validate_against_the_schema(capsys, argv):
    _, out, _ = run(capsys, "schema")
    schema = json.loads(out)
    _, out, _ = run(capsys, "--json", *argv)
    jsonschema.validate(json.loads(out), schema)


def test_schema_rejects_malformed_reports(capsys):
    _, out, _ = run(capsys, "schema")
    schema = json.loads(out)
    _, out, _ = run(capsys, "--json", "lk", "--file", "W11_surgery.diag")
    report = json.loads(out)

    missing = {k: v for k, v in report.items() if k != "command"}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(missing, schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({**report, "extra": 1}, schema)
