import json
import logging

import pytest

from etakit.core.config import get_settings
from etakit.core.digest import digest_file, digest_text
from etakit.core.exceptions import ConsistencyError, EtakitError
from etakit.core.logging import JSONFormatter
from etakit.core.middleware import timed_command
from etakit.models.eta import Involution
from etakit.models.report import RunReport
from etakit.services.corpus import CorpusService


def test_settings_defaults_and_environment(monkeypatch):
    settings = get_settings()
    assert settings.ETAKIT_BUDGET == 10000
    assert settings.ETAKIT_LENGTH_GROWTH == 4
    assert settings.ETAKIT_ORACLE_MARGIN == 2

    monkeypatch.setenv("ETAKIT_BUDGET", "77")
    assert get_settings().ETAKIT_BUDGET == 10000
    get_settings.cache_clear()
    assert get_settings().ETAKIT_BUDGET == 77


def test_json_formatter():
    record = logging.LogRecord("etakit.test", logging.INFO, __file__, 10, "hello %s", ("there",), None)
    record.command = "eta"
    data = json.loads(JSONFormatter().format(record))
    assert data["message"] == "hello there"
    assert data["level"] == "INFO"
    assert data["command"] == "eta"
    assert "exception" not in data


def test_timed_command_logs_outcome(caplog):
    with caplog.at_level(logging.INFO, logger="etakit.core.middleware"):
        with timed_command("lk") as timing:
            pass
        with pytest.raises(EtakitError):
            with timed_command("eta"):
                raise EtakitError("boom")
    assert timing["wall_time_ms"] >= 0
    messages = [r.getMessage() for r in caplog.records]
    assert any(m.startswith("command=lk status=ok") for m in messages)
    assert any(m.startswith("command=eta status=error") for m in messages)


def test_digests(tmp_path):
    path = tmp_path / "x.txt"
    path.write_bytes(b"abc")
    expected = "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    assert digest_file(path) == expected
    assert digest_text("abc") == expected


def test_run_report_ok_and_comparable():
    report = RunReport(command=["eta"], checks={"a": True, "b": False})
    assert not report.ok
    timed = report.timed(12.5)
    assert timed.wall_time_ms == 12.5
    assert timed.comparable() == report.comparable()
    assert "wall_time_ms" not in report.comparable()
    assert RunReport(command=["lk"]).ok


def test_corpus_family_params(corpus):
    params = corpus.family_params("K12_sigma.lvq")
    assert params.n == 12
    assert params.involution == Involution.SIGMA
    assert corpus.family_params("W11.pres") is None


def test_corpus_resolve(corpus, corpus_dir):
    assert corpus.resolve("K1_tau.lvq") == corpus_dir / "K1_tau.lvq"
    assert corpus.resolve(corpus_dir / "W11.pres") == corpus_dir / "W11.pres"
    with pytest.raises(EtakitError):
        corpus.resolve("missing.lvq")


def test_corpus_root_falls_back_to_repository(monkeypatch, corpus_dir):
    monkeypatch.setenv("ETAKIT_CORPUS", "/nonexistent/corpus")
    get_settings.cache_clear()
    assert CorpusService().root == corpus_dir.resolve()


def test_bad_template_file(tmp_path):
    (tmp_path / "w_templates.json").write_text('{"handle": "x1"}')
    with pytest.raises(ConsistencyError):
        CorpusService(tmp_path).load_w_template()


def test_w_template(corpus):
    template = corpus.load_w_template()
    assert template.max_twists == 3
    assert template.regions["m"].component == "Y"
    assert template.framing_arcs == {"X": "x3", "Y": "y3"}
