import json
import subprocess
import sys
import threading

import pytest

from cbakit.cli import main
from cbakit.reporting import canonical_text
from conftest import TOY_CSV


@pytest.fixture
def toy_csv(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(TOY_CSV, encoding="utf-8")
    return path


def rule_lines(text: str) -> list[str]:
    return [l for l in text.splitlines() if l and not l.startswith("#")]


class TestMineCommand:
    def test_golden_listing(self, toy_csv, tmp_path):
        out = tmp_path / "rules.txt"
        code = main(["mine", str(toy_csv), "--minsup", "0.15", "--minconf", "0.6", "-o", str(out)])
        assert code == 0
        lines = rule_lines(out.read_text())
        assert len(lines) == 8
        assert lines[0] == "IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=1"

    def test_impossible_thresholds_exit_zero(self, toy_csv, tmp_path):
        out = tmp_path / "rules.txt"
        code = main(["mine", str(toy_csv), "--minsup", "1.0", "--minconf", "1.0", "-o", str(out)])
        assert code == 0
        assert rule_lines(out.read_text()) == []

    def test_missing_dataset_exit_2(self, tmp_path, capsys):
        code = main(["mine", str(tmp_path / "absent.csv")])
        assert code == 2
        assert "absent.csv" in capsys.readouterr().err

    def test_bad_threshold_exit_2(self, toy_csv, capsys):
        assert main(["mine", str(toy_csv), "--minsup", "2.5"]) == 2

    def test_manifest_comment_is_json(self, toy_csv, tmp_path):
        out = tmp_path / "rules.txt"
        main(["mine", str(toy_csv), "-o", str(out)])
        (manifest_line,) = [
            l for l in out.read_text().splitlines() if l.startswith("# manifest: ")
        ]
        doc = json.loads(manifest_line[len("# manifest: "):])
        assert doc["command"] == "mine"
        assert doc["dataset"] == str(toy_csv)


class TestTrainPredictFlow:
    def test_round_trip(self, toy_csv, tmp_path):
        model = tmp_path / "model.txt"
        code = main(
            ["train", str(toy_csv), "--model", "cba-odm1", "--minsup", "0.15",
             "--minconf", "0.6", "-o", str(model)]
        )
        assert code == 0
        assert model.read_text().startswith("cbakit-model v1")

        rows = tmp_path / "rows.csv"
        rows.write_text("A,B\ne,p\ng,w\n", encoding="utf-8")
        out = tmp_path / "pred.csv"
        assert main(["predict", str(model), str(rows), "-o", str(out)]) == 0
        assert out.read_text() == "A,B,predicted\ne,p,y\ng,w,n\n"

    def test_tree_family_model(self, toy_csv, tmp_path):
        model = tmp_path / "tree.txt"
        assert main(["train", str(toy_csv), "--model", "tree", "--max-depth", "1", "-o", str(model)]) == 0
        assert "kind=tree" in model.read_text()
        rows = tmp_path / "rows.csv"
        rows.write_text("A,B\ng,w\n", encoding="utf-8")
        out = tmp_path / "pred.csv"
        assert main(["predict", str(model), str(rows), "-o", str(out)]) == 0
        assert out.read_text().splitlines()[1] == "g,w,n"

    def test_merge_report_flag(self, toy_csv, tmp_path):
        model = tmp_path / "model.txt"
        report = tmp_path / "merge.txt"
        code = main(
            ["train", str(toy_csv), "--model", "cba-odm2", "--minsup", "0.15",
             "--minconf", "0.6", "-o", str(model), "--merge-report", str(report)]
        )
        assert code == 0
        assert report.read_text().startswith("FALLBACK")

    def test_ragged_predict_input_exit_2(self, toy_csv, tmp_path, capsys):
        model = tmp_path / "model.txt"
        main(["train", str(toy_csv), "-o", str(model)])
        rows = tmp_path / "rows.csv"
        rows.write_text("A,B\ne\n", encoding="utf-8")
        assert main(["predict", str(model), str(rows)]) == 2
        assert "row 1" in capsys.readouterr().err

    def test_tampered_model_exit_2(self, toy_csv, tmp_path, capsys):
        model = tmp_path / "model.txt"
        main(["train", str(toy_csv), "-o", str(model)])
        model.write_text(model.read_text().replace("cbakit-model v1", "cbakit-model v2"))
        rows = tmp_path / "rows.csv"
        rows.write_text("A,B\ne,p\n", encoding="utf-8")
        assert main(["predict", str(model), str(rows)]) == 2


class TestEvalCommand:
    def test_byte_identical_reruns(self, toy_csv, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["eval", str(toy_csv), "--folds", "10", "--seed", "3", "--minsup", "0.15"]
        assert main(argv + ["-o", str(a)]) == 0
        assert main(argv + ["-o", str(b)]) == 0
        assert canonical_text(a.read_text()) == canonical_text(b.read_text())
        doc = json.loads(a.read_text())
        assert set(doc) >= {"manifest", "folds", "average_error", "average_accuracy", "rules_per_fold"}

    def test_too_many_folds_exit_2(self, toy_csv):
        assert main(["eval", str(toy_csv), "--folds", "11"]) == 2


class TestBenchCommand:
    def test_four_default_scenarios(self, toy_csv, tmp_path):
        out = tmp_path / "bench.json"
        code = main(["bench", str(toy_csv.parent), "--folds", "5", "-o", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert list(doc["results"]) == ["toy.csv"]
        assert set(doc["results"]["toy.csv"]["scenarios"]) == {
            "0.35/0.5",
            "0.15/0.5",
            "0.1/0.5",
            "0.05/0.5",
        }
        assert "groups" in doc

    def test_custom_scenarios_flag(self, toy_csv, tmp_path):
        out = tmp_path / "bench.json"
        code = main(
            ["bench", str(toy_csv.parent), "--folds", "5", "--scenarios", "0.2:0.6,0.1:0.6", "-o", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert set(doc["results"]["toy.csv"]["scenarios"]) == {"0.2/0.6", "0.1/0.6"}

    def test_empty_directory_exit_2(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main(["bench", str(empty)]) == 2


class TestInspectCommand:
    def test_inspect_stdout(self, toy_csv, capsys):
        assert main(["inspect", str(toy_csv)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["n_rows"] == 10


class TestSubprocessEntry:
    def test_module_invocation_exit_codes(self, toy_csv):
        ok = subprocess.run(
            [sys.executable, "-m", "cbakit.cli", "mine", str(toy_csv), "-o", "/dev/null"],
            capture_output=True,
        )
        assert ok.returncode == 0
        bad = subprocess.run(
            [sys.executable, "-m", "cbakit.cli", "mine", "/no/file.csv"], capture_output=True
        )
        assert bad.returncode == 2
        assert b"/no/file.csv" in bad.stderr


class TestRemoteMode:
    def test_cli_against_live_server(self, toy_csv, tmp_path):
        import uvicorn

        from cbakit.service.app import app

        config = uvicorn.Config(app, host="127.0.0.1", port=8765, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        import time

        for _ in range(100):
            if server.started:
                break
            time.sleep(0.05)
        try:
            out = tmp_path / "rules.txt"
            code = main(
                ["--server", "http://127.0.0.1:8765", "mine", str(toy_csv),
                 "--minsup", "0.15", "--minconf", "0.6", "-o", str(out)]
            )
            assert code == 0
            assert len(rule_lines(out.read_text())) == 8
            # input errors surface as exit 2 through HTTP as well
            bad = tmp_path / "bad.csv"
            bad.write_text("A,B,C\ne,p\n", encoding="utf-8")
            assert main(["--server", "http://127.0.0.1:8765", "mine", str(bad)]) == 2
        finally:
            server.should_exit = True
            thread.join(timeout=5)
