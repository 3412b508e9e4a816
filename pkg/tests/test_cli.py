import asyncio
import json

import pandas as pd
import pytest

from hnp_knot import run
from hnp_knot.evaluation import _case, rows_to_frame, run_suite
from hnp_knot.groups.zoo import build_P, build_Pprime
from hnp_knot.orchestrator.decision import KnotDecider
from hnp_knot.schemas.models import InputDocument, RunConfig, VerifyRow


@pytest.fixture
def no_config(tmp_path):
    return ["--config", str(tmp_path / "missing.yaml")]


def _document(G, label):
    return {"group": {"degree": G.degree, "generators": [list(g.images) for g in G.generators]}, "label": label}


def _write(tmp_path, payload, name="cases.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_zoo_prints_a_literal(no_config, capsys):
    assert run.main(no_config + ["zoo", "P'n", "--p", "3", "--n", "2"]) == run.EXIT_TRIVIAL
    summary = json.loads(capsys.readouterr().out)
    assert summary["order"] == 27
    assert summary["exponent"] == 3
    assert summary["transitive"]
    assert summary["literal"]["degree"] == 9


def test_exit_codes_follow_the_decision(no_config, tmp_path):
    nontrivial = _write(tmp_path, _document(build_Pprime(1, 3), "P'1"), "pprime1.json")
    trivial = _write(tmp_path, _document(build_P(1, 3), "C9"), "c9.json")
    assert run.main(no_config + ["sha", nontrivial]) == run.EXIT_NONTRIVIAL
    assert run.main(no_config + ["sha", trivial]) == run.EXIT_TRIVIAL


def test_named_construction(no_config):
    argv = ["h1pic", "--name", "semidirect-std", "--p", "3", "--mats", "[[1,1],[0,1]],[[0,-1],[1,0]]"]
    assert run.main(no_config + argv) == run.EXIT_NONTRIVIAL


def test_malformed_documents_exit_with_an_error(no_config, tmp_path, capsys):
    path = _write(tmp_path, [{"group": {"degree": "nine"}}])
    assert run.main(no_config + ["sha", path]) == run.EXIT_ERROR
    assert "[0].group" in capsys.readouterr().err
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert run.main(no_config + ["sha", str(broken)]) == run.EXIT_ERROR
    assert run.main(no_config + ["sha"]) == run.EXIT_ERROR


def test_outputs_are_written(no_config, tmp_path):
    out = tmp_path / "out"
    path = _write(tmp_path, [_document(build_Pprime(1, 3), "P'1"), _document(build_P(1, 3), "C9")])
    assert run.main(no_config + ["sha", path, "--out", str(out), "--jobs", "2"]) == run.EXIT_NONTRIVIAL
    manifest = json.loads((out / "run_manifest.json").read_text(encoding="utf-8"))
    assert manifest["total"] == 2
    assert manifest["successful"] == 2
    assert manifest["nontrivial"] == 1
    reports = sorted(p.name for p in (out / "reports").iterdir())
    assert len(reports) == 2
    assert reports[0].startswith("c9-")
    assert reports[1].startswith("pprime1-")


def test_failed_case_is_recorded(no_config, tmp_path):
    out = tmp_path / "out"
    bad = {"group": {"degree": 4, "generators": [[1, 0, 3, 2]]}, "label": "not transitive"}
    path = _write(tmp_path, [_document(build_P(1, 3), "C9"), bad])
    assert run.main(no_config + ["sha", path, "--out", str(out)]) == run.EXIT_ERROR
    manifest = json.loads((out / "run_manifest.json").read_text(encoding="utf-8"))
    assert manifest["successful"] == 1
    assert manifest["errors"][0]["case"] == "not transitive"
    assert manifest["errors"][0]["stage"] == "decision"


def test_verify_suite_writes_csv(no_config, tmp_path, capsys):
    csv_path = tmp_path / "drakokhrust.csv"
    assert run.main(no_config + ["verify", "drakokhrust", "--csv", str(csv_path)]) == run.EXIT_TRIVIAL
    assert "seconds" not in capsys.readouterr().out
    table = pd.read_csv(csv_path)
    assert table["passed"].all()
    assert "heisenberg-cover-p3" in set(table["case"])


def test_suite_tables():
    frame = rows_to_frame([VerifyRow(suite="s", case="c", expected="1", computed="2", passed=False)])
    assert list(frame.columns) == ["suite", "case", "expected", "computed", "passed", "seconds"]
    assert not frame["passed"].all()
    with pytest.raises(KeyError):
        run_suite("p7", RunConfig(command="verify"))


def test_unexpected_failure_does_not_abort_the_batch(monkeypatch):
    real = run.process_document

    async def flaky(*, document, decider, command):
        if document.label == "bad":
            raise ArithmeticError("inconsistent pieces")
        return await real(document=document, decider=decider, command=command)

    monkeypatch.setattr(run, "process_document", flaky)
    documents = [
        InputDocument.model_validate(_document(build_Pprime(1, 3), "bad")),
        InputDocument.model_validate(_document(build_P(1, 3), "C9")),
    ]
    results, manifest = asyncio.run(run.process_all_documents(documents, KnotDecider(), "sha", 2))
    assert results[0] is None
    assert results[1]["report"].is_trivial
    assert manifest.successful == 1
    assert manifest.finished_at is not None
    (error,) = manifest.errors
    assert (error.case, error.stage) == ("bad", "internal")
    assert error.message.startswith("ArithmeticError")


def test_unexpected_failure_becomes_a_failed_row():
    def broken():
        raise ValueError("no such lattice")

    row = _case("oracles", "broken", "[]", broken)
    assert not row.passed
    assert row.computed == "internal error: ValueError"
