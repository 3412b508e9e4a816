import argparse

import pytest

from hnp_knot.config.loader import build_run_config, load_config, parse_mats
from hnp_knot.errors import InputError


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "order_cap: ${TEST_KNOT_CAP:5000}\n"
        "concurrency: 3\n"
        "methods:\n"
        "  - ${TEST_KNOT_METHOD:classifier}\n"
        "output_dir: ${TEST_KNOT_OUT:}\n",
        encoding="utf-8",
    )
    return path


def test_load_config_uses_placeholder_defaults(config_file, monkeypatch):
    monkeypatch.delenv("TEST_KNOT_CAP", raising=False)
    monkeypatch.delenv("TEST_KNOT_METHOD", raising=False)
    monkeypatch.delenv("TEST_KNOT_OUT", raising=False)
    config = load_config(str(config_file))
    assert config["order_cap"] == "5000"
    assert config["methods"] == ["classifier"]
    assert config["output_dir"] == ""
    assert config["concurrency"] == 3


def test_load_config_reads_the_environment(config_file, monkeypatch):
    monkeypatch.setenv("TEST_KNOT_CAP", "42")
    monkeypatch.setenv("TEST_KNOT_METHOD", "cohomology")
    config = load_config(str(config_file))
    assert config["order_cap"] == "42"
    assert config["methods"] == ["cohomology"]


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


def test_parse_mats():
    assert parse_mats("") == []
    assert parse_mats(None) == []
    assert parse_mats("[[1,1],[0,1]],[[0,-1],[1,0]]") == [[[1, 1], [0, 1]], [[0, -1], [1, 0]]]
    assert parse_mats("[[[1,1],[0,1]]]") == [[[1, 1], [0, 1]]]


def test_parse_mats_errors():
    with pytest.raises(InputError) as excinfo:
        parse_mats("[[1,1],[0,1]")
    assert excinfo.value.location.startswith("--mats:")
    with pytest.raises(InputError) as excinfo:
        parse_mats("[[1,1],[0,1]],[[1,2,3],[0,1]]")
    assert excinfo.value.location == "--mats[1]"


def _args(**kwargs):
    defaults = {"command": "sha", "input": None, "name": None, "jobs": None, "method": None, "mats": None, "out": None}
    defaults.update(kwargs)
    return argparse.Namespace(**defaults)


def test_flags_override_the_file(config_file, monkeypatch):
    monkeypatch.delenv("KNOT_CAP", raising=False)
    monkeypatch.delenv("TEST_KNOT_CAP", raising=False)
    monkeypatch.delenv("TEST_KNOT_METHOD", raising=False)
    config = load_config(str(config_file))
    run = build_run_config(config, _args(jobs=5, method="both", input="cases.json"))
    assert run.order_cap == 5000
    assert run.concurrency == 5
    assert run.methods == ["classifier", "cohomology"]
    assert run.input_path == "cases.json"
    assert run.output_dir is None

    defaults = build_run_config(config, _args())
    assert defaults.concurrency == 3
    assert defaults.methods == ["classifier"]


def test_cap_from_the_environment(monkeypatch):
    monkeypatch.setenv("KNOT_CAP", "123")
    run = build_run_config({"order_cap": 9}, _args(command="zoo", name="P'n", mats="[[1,1],[0,1]]"))
    assert run.order_cap == 123
    assert run.mats == [[[1, 1], [0, 1]]]


def test_invalid_settings_name_the_field(monkeypatch):
    monkeypatch.delenv("KNOT_CAP", raising=False)
    with pytest.raises(InputError) as excinfo:
        build_run_config({}, _args(jobs=0))
    assert excinfo.value.location == "concurrency"
