import io
import json

import pytest

from sflows.cli import run
from sflows.fixtures import fixture_text


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def bipyramid_file(tmp_path):
    p = tmp_path / "bipyramid.sc"
    p.write_text(fixture_text("bipyramid"))
    return str(p)


def test_count_ie(bipyramid_file):
    code, out, _ = call("count", "--complex", bipyramid_file, "--q", "5", "--method", "ie")
    data = json.loads(out)
    assert code == 0 and data["count"] == 12
    assert set(data) == {"complex", "q", "method", "count", "elapsed_ms"}


def test_count_all_runs_every_method():
    code, out, _ = call("count", "--complex", "bipyramid", "--q", "7", "--method", "all", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["counts"] == {"brute": 30, "incl-excl": 30, "tutte": 30}
    code, out, _ = call("count", "--complex", "klein", "--q", "4", "--method", "all", "--no-timing")
    data = json.loads(out)
    assert data["count"] == 1 and "tutte" in data["skipped"]


def test_method_disagreement(monkeypatch):
    import sflows.cli as cli
    from sflows.flows import FlowCount

    monkeypatch.setattr(cli, "inclusion_exclusion_count", lambda c, q, work_limit: FlowCount(q, 99, "incl-excl"))
    code, _, err = call("count", "--complex", "tetrahedron", "--q", "5", "--method", "all")
    assert code == 1 and json.loads(err)["error"] == "METHOD_DISAGREEMENT"


def test_poly(bipyramid_file):
    code, out, _ = call("poly", "--complex", bipyramid_file)
    data = json.loads(out)
    assert code == 0 and data["coefficients"] == [2, -3, 1] and data["degree"] == data["betti_top"] == 2


def test_classify_klein():
    code, out, _ = call("classify", "--complex", "klein")
    data = json.loads(out)
    assert data["closed"] is True and data["orientable"] is False
    assert {"pseudomanifold", "closed", "connected", "orientable", "betti_top", "proposition_flow_formula"} <= set(data)


def test_fit_json():
    code, out, _ = call("fit", "--complex", "klein", "--q-max", "13", "--no-timing")
    data = json.loads(out)
    assert data["period"] == 2 and data["constituents"] == [[1], [0]]
    assert data["samples_used"] == 12 and data["verified_points"] == 8


def test_tutte_records():
    code, out, _ = call("tutte", "--complex", "tetrahedron")
    recs = json.loads(out)["tutte"]
    assert recs[0] == {"x_deg": 0, "y_deg": 1, "coefficient": 1}
    assert [(r["x_deg"], r["y_deg"]) for r in recs] == [(0, 1), (1, 0), (2, 0), (3, 0)]


def test_enumerate_streams_lines():
    code, out, _ = call("enumerate", "--complex", "bipyramid", "--q", "3")
    assert out.splitlines() == ["1,2,1,1,1,2,1", "2,1,2,2,2,1,2"]


def test_verify():
    code, out, _ = call("verify", "--complex", "tetrahedron", "--q", "5", "--flow", "1,4,1,4")
    assert json.loads(out)["ok"] is True
    code, out, _ = call("verify", "--complex", "tetrahedron", "--q", "5", "--flow", "0,4,1,4")
    data = json.loads(out)
    assert data["ok"] is False and data["zero_facets"] == ["1-2-3"]


def test_matrix_dump_and_cone():
    code, out, _ = call("matrix", "--complex", "tetrahedron", "--dump-matrix")
    assert out.splitlines()[0] == "\t1-2-3\t1-2-4\t1-3-4\t2-3-4"
    code, out, _ = call("matrix", "--complex", "bipyramid", "--cone-vertex", "4", "--no-timing")
    data = json.loads(out)
    assert data["blocks"]["star"] == [0, 3] and data["cols"][:3] == ["1-2-4", "1-3-4", "2-3-4"]


def test_homology():
    code, out, _ = call("homology", "--complex", "klein", "--q", "2")
    data = json.loads(out)
    assert data["betti_top"] == 0 and data["H_top_mod_q"] == {"q": 2, "cycles": 2, "dimension": 1}


def test_table_output():
    code, out, _ = call("count", "--complex", "tetrahedron", "--q", "3", "--output", "table", "--no-timing")
    assert code == 0 and "count" in out and "2" in out


def test_byte_identical_without_timing():
    runs = [call("fit", "--complex", "bipyramid", "--no-timing")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    assert "elapsed_ms" not in runs[0]


def test_errors(tmp_path):
    bad = tmp_path / "bad.sc"
    bad.write_text("0 1 2\n0 1\n")
    code, _, err = call("count", "--complex", str(bad), "--q", "3")
    assert code == 1 and json.loads(err)["error"] == "MIXED_DIMENSION"
    code, _, err = call("count", "--complex", "tetrahedron")
    assert code == 2
    code, _, _ = call("count", "--complex", "tetrahedron", "--q", "3", "--method", "bogus")
    assert code == 2
    code, _, err = call("count", "--complex", "torus", "--q", "5", "--method", "brute", "--work-limit", "5")
    assert code == 1 and json.loads(err)["error"] == "WORK_LIMIT_EXCEEDED"


def test_env_precedence(monkeypatch):
    monkeypatch.setenv("SFLOWS_WORK_LIMIT", "5")
    code, _, err = call("count", "--complex", "torus", "--q", "5", "--method", "brute")
    assert code == 1
    code, out, _ = call("count", "--complex", "torus", "--q", "5", "--method", "brute", "--work-limit", "100000")
    assert code == 0 and json.loads(out)["count"] == 4
