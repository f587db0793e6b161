##
## command line
##

import glob
import json

import pytest

from config import QCenterConfig
from qcenter import QCenter
from report import ReportDocument

ONE_POINT = "0,0,1,1,0,0, 0,-1,0,0,0,0"
TWO_CENTERS = "0,0,1,0,0,-1, 0,-1,0,1,0,0"
TRIPLE_POINT = "0,0,0,0,2,0, 0,1,0,-1,0,1"
FOUR_NODES = "0,1,0,-1,0,0, 0,0,1,0,0,-1"
ZERO = ",".join(["0"] * 12)


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = QCenter(list(argv)).run()
    out, err = capsys.readouterr()
    return code, out, err


def test_version_and_help(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and QCenterConfig.VERSION in out
    code, out, _ = run(capsys, "-h")
    assert code == 0 and "classify" in out and "--jobs" in out
    code, out, _ = run(capsys)
    assert code == 0 and "Usage" in out


@pytest.mark.parametrize("argv", [
    ("solve", ONE_POINT),
    ("classify", ONE_POINT, "--format", "xml"),
    ("corpus", "--jobs", "many"),
    ("corpus", "--family", "cubic"),
    ("classify",),
    ("classify", ONE_POINT, "--colour"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == QCenterConfig.EXIT_INPUT_ERROR
    assert "❌" in err


def test_classify_json(capsys):
    code, out, err = run(capsys, "classify", ONE_POINT, "--format", "json")
    assert code == 0
    document = json.loads(out)
    entry = document["records"][0]["classification"]
    assert (entry["set_index"], entry["center_count"], entry["fired_rule"]) == ("M17", 1, "Thm9(ii)")
    assert document["schema_version"] == QCenterConfig.SCHEMA_VERSION
    assert "No error reported!" in err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", TWO_CENTERS)
    assert code == 0
    assert "set M1  m_f = 4  multiplicities r1 r1 r1 r1" in out
    assert "centers 2  rule Thm1(iii)" in out


def test_classify_with_oracle(capsys):
    code, out, _ = run(capsys, "classify", TRIPLE_POINT, "--oracle", "--format", "json", "--quiet")
    assert code == 0
    entry = json.loads(out)["records"][0]
    assert entry["classification"]["fired_rule"] == "Thm4"
    assert entry["oracle"]["center_count"] == 1
    assert entry["agreement"] is True


def test_classify_zero_record(capsys):
    code, out, _ = run(capsys, "classify", ZERO, "--format", "json", "--oracle")
    assert code == 0
    entry = json.loads(out)["records"][0]
    assert entry["classification"]["set_index"] == "M19"
    assert entry["classification"]["center_count"] == "not-applicable"
    assert any("degenerate" in note for note in entry["classification"]["diagnostics"])
    assert entry["oracle"] is None and entry["agreement"] is None


def test_parse_error(capsys, workdir):
    code, _, err = run(capsys, "classify", "0,0,1.5,0,0,0,0,0,0,0,0,0")
    assert code == QCenterConfig.EXIT_INPUT_ERROR
    assert "column 5" in err
    files = glob.glob(str(workdir / "qcenter_error_*.err"))
    assert len(files) == 1
    with open(files[0], encoding="utf-8") as handle:
        assert "floating-point" in handle.read()


def test_no_error_file(capsys, workdir):
    code, _, _ = run(capsys, "classify", "1,2,3", "--no-error-file")
    assert code == QCenterConfig.EXIT_INPUT_ERROR
    assert not glob.glob(str(workdir / "*.err"))


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "invariants", FOUR_NODES, "--format", "json")
    assert code == 0
    table = json.loads(out)["records"][0]["invariants"]
    assert len(table["A"]) == 26
    assert table["comitants"]["mu"] == "1/1"
    assert all(table["identities"].values())


def _write(workdir, name, lines):
    path = workdir / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_batch_of_worked_systems(capsys, workdir):
    path = _write(workdir, "worked.txt", ["# the four worked systems", TWO_CENTERS, "",
                                          TRIPLE_POINT, ONE_POINT, FOUR_NODES])
    code, out, _ = run(capsys, "batch", path, "--oracle", "--format", "json", "--quiet")
    assert code == 0
    document = ReportDocument.from_json(out)
    assert [e["classification"]["center_count"] for e in document.records] == [2, 1, 1, 0]
    assert [e["id"] for e in document.records] == ["line-2", "line-4", "line-5", "line-6"]
    assert document.disagreements == []


def test_batch_json_input(capsys, workdir):
    records = [{"id": "hamiltonian", "coefficients": TWO_CENTERS.replace(" ", "").split(",")},
               ["0", "0", "1", "1", "0", "0", "0", "-1", "0", "0", "0", "0"]]
    path = workdir / "records.json"
    path.write_text(json.dumps(records), encoding="utf-8")
    code, out, _ = run(capsys, "batch", str(path), "--format", "json", "--quiet")
    assert code == 0
    ids = [e["id"] for e in json.loads(out)["records"]]
    assert ids[0] == "hamiltonian"


def test_batch_json_record_with_scalar_coefficients(capsys, workdir):
    records = [{"id": "a", "coefficients": 5}, ONE_POINT.replace(" ", "").split(",")]
    path = workdir / "records.json"
    path.write_text(json.dumps(records), encoding="utf-8")
    code, out, _ = run(capsys, "batch", str(path))
    assert code == QCenterConfig.EXIT_FAILURE
    assert "'coefficients' must be a list" in out
    assert "Number of errors reported: 1" in out


def test_batch_with_malformed_line(capsys, workdir):
    path = _write(workdir, "broken.txt", ["# one bad record", ONE_POINT, "0,0,1,x,0,0,0,-1,0,0,0,0"])
    code, out, _ = run(capsys, "batch", path)
    assert code == QCenterConfig.EXIT_FAILURE
    assert "line 3" in out
    assert "Number of errors reported: 1" in out


def test_batch_missing_file(capsys):
    code, _, _ = run(capsys, "batch", "no-such-file.txt")
    assert code == QCenterConfig.EXIT_INPUT_ERROR


def test_batch_output_does_not_depend_on_jobs(capsys, workdir):
    path = _write(workdir, "worked.txt", [TWO_CENTERS, TRIPLE_POINT, ONE_POINT, FOUR_NODES, ZERO])
    _, serial, _ = run(capsys, "batch", path, "--oracle", "--format", "json", "--quiet", "--jobs", "1")
    _, parallel, _ = run(capsys, "batch", path, "--oracle", "--format", "json", "--quiet", "--jobs", "3")
    assert serial == parallel


def test_json_round_trip(capsys, workdir):
    path = _write(workdir, "worked.txt", [TWO_CENTERS, ONE_POINT])
    _, out, _ = run(capsys, "batch", path, "--oracle", "--invariants", "--format", "json", "--quiet")
    assert ReportDocument.from_json(out).to_json() == out.rstrip("\n")


def test_report_schema_version():
    with pytest.raises(ValueError):
        ReportDocument.from_json(json.dumps({"schema_version": 99, "records": []}))


def test_corpus(capsys, workdir):
    csv_path = str(workdir / "summary.csv")
    code, out, _ = run(capsys, "corpus", "--family", "hamiltonian", "--count", "3", "--seed", "0",
                       "--format", "json", "--quiet", "--csv", csv_path)
    assert code == 0
    document = json.loads(out)
    assert document["summary"]["systems"] == 3
    assert document["summary"]["disagreements"] == []
    assert document["summary"]["identity_failures"] == []
    assert all(e["family"] == "hamiltonian" for e in document["records"])
    with open(csv_path, encoding="utf-8") as handle:
        assert ";" in handle.readline()


def test_corpus_text_summary(capsys):
    code, out, _ = run(capsys, "corpus", "--family", "placed-points", "--count", "2", "--quiet")
    assert code == 0
    assert "Systems: 2" in out


def test_jobs_zero_uses_every_cpu(monkeypatch):
    monkeypatch.setattr(QCenterConfig, "default_jobs", staticmethod(lambda: 3))
    cli = QCenter(["corpus", "--jobs", "0"])
    cli._parse_arguments()
    assert cli.jobs == 3
