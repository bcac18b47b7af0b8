import json

import pytest

from matchkit.cli import run
from matchkit.model import parse_graph, serialize_graph
from matchkit.service import handle_request

TRIANGLE_DOC = {
    "id": "tri",
    "caption": "",
    "symmetry": None,
    "vertices": [["0", "0"], ["1", "0"], ["0.5", "0.8660254037844386"]],
    "edges": [[0, 1], [0, 2], [1, 2]],
    "red_edges": [],
    "claimed_deviations": [],
}


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(TRIANGLE_DOC), encoding="utf-8")
    return str(path)


class TestVerifyCommand:
    def test_harborth_passes(self, capsys):
        assert run(["verify", "harborth_52"]) == 0
        out = capsys.readouterr().out
        assert "verdict: matchstick" in out

    def test_json_output(self, capsys):
        assert run(["verify", "harborth_52", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["is_matchstick"] is True

    def test_global_flag_before_subcommand(self, capsys):
        assert run(["--format", "json", "verify", "harborth_52"]) == 0
        assert json.loads(capsys.readouterr().out)["is_matchstick"] is True

    def test_near_matchstick_exits_1(self, capsys):
        assert run(["verify", "fig_50v_asym"]) == 1
        assert "near-matchstick" in capsys.readouterr().out

    def test_file_argument(self, triangle_file, capsys):
        code = run(["verify", triangle_file])
        assert code == 1  # degree 2, not 4-regular
        assert "degrees_ok: False" in capsys.readouterr().out

    def test_unknown_reference_exits_2(self, capsys):
        assert run(["verify", "no_such_graph"]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_file_exits_2(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert run(["verify", str(path)]) == 2

    def test_tolerance_override(self, capsys):
        assert run(["verify", "fig_50v_asym", "--unit-tol", "1e-15",
                    "--format", "json"]) == 1
        report = json.loads(capsys.readouterr().out)
        assert report["is_near_matchstick"] is False

    def test_matches_service_body(self, capsys):
        assert run(["verify", "harborth_52", "--format", "json"]) == 0
        cli_body = json.loads(capsys.readouterr().out)
        from matchkit import corpus
        service_body = handle_request(
            "POST", "/api/verify", {"graph": corpus.get_document("harborth_52")})
        assert cli_body == service_body


class TestReportCommands:
    def test_rigidity(self, capsys):
        assert run(["rigidity", "harborth_52", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["dof"] == 0

    def test_rigidity_unit_frame(self, capsys):
        assert run(["rigidity", "eps_27_left", "--unit-frame",
                    "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["dof"] == 3 and report["red_included"] is False

    def test_rigidity_precondition_exits_1(self, tmp_path, capsys):
        doc = dict(TRIANGLE_DOC, id="pair",
                   vertices=[["0", "0"], ["1", "0"]],
                   edges=[[0, 1]])
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert run(["rigidity", str(path)]) == 1

    def test_symmetry(self, capsys):
        assert run(["symmetry", "eps_42", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["label"] == "point"

    def test_frame(self, capsys):
        assert run(["frame", "fig_50v_asym", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["red_in_frame"] == []
        assert report["frame_triangles"]

    def test_relax_with_trace(self, triangle_file, tmp_path, capsys):
        trace = tmp_path / "trace.json"
        assert run(["relax", triangle_file, "--trace", str(trace),
                    "--format", "json"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["converged"] is True
        assert "trajectory" not in body  # only the trace file carries frames
        frames = json.loads(trace.read_text())["trajectory"]
        assert len(frames) == body["iterations"] + 1

    def test_relax_preserve_red_mode(self, capsys):
        assert run(["relax", "fig_50v_asym", "--mode", "preserve_red",
                    "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["max_unit_residual"] <= 1e-8

    def test_flex_stall_reported(self, tmp_path, capsys):
        doc = dict(TRIANGLE_DOC, id="rigid_red", red_edges=[[1, 2]])
        path = tmp_path / "rigid_red.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert run(["flex", str(path), "--format", "json"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["stalled"] is True and body["stages"] == []

    def test_flex_without_red_exits_1(self, triangle_file):
        assert run(["flex", triangle_file]) == 1


class TestCorpusCommands:
    def test_list(self, capsys):
        assert run(["corpus", "list"]) == 0
        out = capsys.readouterr().out
        assert "harborth_52" in out and "eps_42" in out

    def test_list_json(self, capsys):
        assert run(["corpus", "list", "--format", "json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 43

    def test_show_round_trips(self, capsys):
        assert run(["corpus", "show", "eps_27_left"]) == 0
        text = capsys.readouterr().out
        assert serialize_graph(parse_graph(text)) == text

    def test_show_unknown_exits_2(self, capsys):
        assert run(["corpus", "show", "nope"]) == 2


class TestExportSvg:
    def test_writes_file(self, tmp_path, capsys):
        out = tmp_path / "tri.svg"
        assert run(["export-svg", "harborth_52", "-o", str(out)]) == 0
        text = out.read_text(encoding="utf-8")
        assert text.count("<line") == 104
        assert text.count("<circle") == 52


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify"])  # missing graph argument
    assert exc.value.code == 2
