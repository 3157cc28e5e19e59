import json
import logging

import settings
from config_loader import EngineOptions, load_engine_options, load_log_settings
from core.logger import log_report, setup_logging


def test_defaults_come_from_settings(monkeypatch):
    for name in ("MAX_T", "MAX_E", "MAX_PATH_LEN", "RELABEL_SEARCH_CAP"):
        monkeypatch.delenv("COMBGRAFT_" + name, raising=False)
    options = load_engine_options()
    assert options == EngineOptions(settings.max_t, settings.max_e, settings.max_path_len,
                                    settings.relabel_search_cap)


def test_environment_then_overrides(monkeypatch):
    monkeypatch.setenv("COMBGRAFT_MAX_T", "8")
    monkeypatch.setenv("COMBGRAFT_MAX_E", "9")
    options = load_engine_options({"max_edges": 4, "max_path_len": None})
    assert options.max_terminals == 8
    assert options.max_edges == 4
    assert options.max_path_len == settings.max_path_len


def test_malformed_environment_falls_back(monkeypatch, caplog):
    monkeypatch.setenv("COMBGRAFT_MAX_T", "lots")
    monkeypatch.setenv("COMBGRAFT_MAX_E", "-1")
    with caplog.at_level(logging.ERROR):
        options = load_engine_options()
    assert options.max_terminals == settings.max_t
    assert options.max_edges == settings.max_e
    assert "not an integer" in caplog.text


def test_log_settings(monkeypatch):
    monkeypatch.setenv("COMBGRAFT_LOG_LEVEL", "debug")
    monkeypatch.setenv("COMBGRAFT_LOG_FILE", "")
    assert load_log_settings() == ("DEBUG", None)
    monkeypatch.setenv("COMBGRAFT_LOG_LEVEL", "chatty")
    assert load_log_settings()[0] == "WARNING"


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "logs" / "combgraft.log"
    report_logger = setup_logging("INFO", str(log_file))
    assert report_logger.name == "combgraft.reports"
    report_logger.info("hello journal")
    assert "combgraft.reports - hello journal" in log_file.read_text(encoding="utf-8")
    setup_logging("WARNING")


def test_log_report_appends_and_survives_bad_files(tmp_path):
    path = tmp_path / "journal.json"
    log_report(str(path), ["nu"], {"nu": 1})
    log_report(str(path), ["nu"], {"nu": 2})
    records = json.loads(path.read_text(encoding="utf-8"))
    assert [r["report"]["nu"] for r in records] == [1, 2]
    assert set(records[0]) == {"timestamp", "command", "report"}
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    log_report(str(broken), ["nu"], {"nu": 3})
    assert broken.read_text(encoding="utf-8") == "{not json"
