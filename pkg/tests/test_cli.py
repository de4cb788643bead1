import io
import json
import subprocess
import sys

import pytest

from binposet.cli import main
from binposet.construct import m_interval
from binposet.core import poset_from_json, poset_to_json, verify_binomial


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(out):
    table = {}
    for line in out.splitlines():
        key, _, value = line.partition("\t")
        table.setdefault(key, value)
    return table


@pytest.fixture
def cube_file(tmp_path, cube):
    path = tmp_path / "cube.json"
    path.write_text(poset_to_json(cube))
    return str(path)


@pytest.fixture
def butterfly_file(tmp_path, butterfly):
    path = tmp_path / "butterfly.json"
    path.write_text(poset_to_json(butterfly))
    return str(path)


class TestBuild:
    def test_string_to_stdout(self, capsys):
        code, out, _ = run(capsys, "build", "string", "--word", "1")
        assert code == 0
        p = poset_from_json(out)
        assert p.widths[:2] == (1, 2)

    def test_out_and_dot_files(self, capsys, tmp_path):
        out = tmp_path / "p.json"
        dot = tmp_path / "p.dot"
        code, _, _ = run(
            capsys, "build", "m-interval", "--m", "3",
            "--out", str(out), "--dot", str(dot),
        )
        assert code == 0
        assert poset_from_json(out.read_text()).widths == (1, 4, 4, 1)
        assert "rankdir=BT" in dot.read_text()

    def test_missing_argument(self, capsys):
        code, _, err = run(capsys, "build", "string")
        assert code == 2 and "--word" in err

    def test_construction_error(self, capsys):
        code, _, err = run(
            capsys, "build", "divisible", "--seq", "1,2,3", "--height", "3"
        )
        assert code == 2 and "multiple" in err

    def test_debruijn(self, capsys):
        code, out, _ = run(
            capsys, "build", "debruijn", "--m", "1", "--n", "2", "--height", "3"
        )
        assert code == 0
        assert poset_from_json(out).widths == (1, 2, 2, 2)


class TestVerify:
    def test_pass(self, capsys, cube_file):
        code, out, _ = run(capsys, "verify", cube_file)
        table = rows(out)
        assert code == 0
        assert table["ok"] == "true"
        assert table["atoms"] == "1,2,3"
        assert table["chains"] == "1,1,2,6"

    def test_fail(self, capsys, tmp_path, not_binomial):
        path = tmp_path / "bad.json"
        path.write_text(poset_to_json(not_binomial))
        code, out, err = run(capsys, "verify", str(path))
        assert code == 1
        assert rows(out)["ok"] == "false"
        assert "chains" in err

    def test_stdin(self, capsys, monkeypatch, cube):
        monkeypatch.setattr(sys, "stdin", io.StringIO(poset_to_json(cube)))
        code, out, _ = run(capsys, "verify", "-")
        assert code == 0 and rows(out)["ok"] == "true"

    def test_corrupt_json(self, capsys, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2 and err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", str(tmp_path / "absent.json"))
        assert code == 2 and "cannot read" in err


class TestClassify:
    def test_round_trip(self, capsys, tmp_path):
        out = tmp_path / "w.json"
        assert run(capsys, "build", "string", "--word", "12", "--out", str(out))[0] == 0
        code, text, _ = run(capsys, "classify", str(out))
        assert code == 0 and rows(text)["phi"] == "12"

    def test_unclassifiable(self, capsys, cube_file):
        code, out, err = run(capsys, "classify", cube_file)
        assert code == 1 and not out and err


class TestIntervals:
    def test_counts(self, capsys, tmp_path):
        src = tmp_path / "w.json"
        run(capsys, "build", "string", "--word", "1", "--out", str(src))
        code, out, _ = run(capsys, "intervals", str(src), "--length", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "length\t2"
        assert lines[1] == "classes\t1"
        class_lines = [l for l in lines if l.startswith("class\t")]
        assert len(class_lines) == 1
        assert len(class_lines[0].split("\t")) == 5

    def test_bad_length(self, capsys, cube_file):
        code, _, err = run(capsys, "intervals", cube_file, "--length", "9")
        assert code == 2 and err


class TestCheckSeq:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "check-seq", "1,2,6")
        assert code == 0 and rows(out)["ok"] == "true"

    def test_fail_with_witness(self, capsys):
        code, out, err = run(capsys, "check-seq", "1,2,3,3")
        table = rows(out)
        assert code == 1
        assert table["ok"] == "false"
        assert table["kind"] == "ratio"
        assert table["witness"] == "2,2"
        assert table["value"] == "9/2"
        assert "integer" in err

    def test_bad_horizon(self, capsys):
        code, _, err = run(capsys, "check-seq", "1,2", "--horizon", "9")
        assert code == 2 and "horizon" in err

    def test_unparseable(self, capsys):
        code, _, err = run(capsys, "check-seq", "bananas")
        assert code == 2 and err


class TestDecide:
    def test_realizable_with_witness(self, capsys, tmp_path):
        out = tmp_path / "w.json"
        code, text, _ = run(capsys, "decide", "1,3,4", "--out", str(out))
        table = rows(text)
        assert code == 0
        assert table["verdict"] == "realizable"
        assert table["recipe"] == "m_interval(3)"
        witness = poset_from_json(out.read_text())
        rep = verify_binomial(witness)
        assert rep.ok and rep.atoms.head == (1, 3, 4)

    def test_non_realizable(self, capsys):
        code, out, _ = run(capsys, "decide", "1,2,3,6")
        assert code == 1 and rows(out)["verdict"] == "non-realizable"

    def test_unknown(self, capsys):
        code, out, _ = run(capsys, "decide", "1,2,5")
        assert code == 3 and rows(out)["verdict"] == "unknown"


class TestSearchExtension:
    def test_found(self, capsys, tmp_path, butterfly_file):
        out = tmp_path / "ext.json"
        code, text, _ = run(
            capsys, "search-extension", butterfly_file,
            "--target", "1,2,2,2", "--out", str(out),
        )
        table = rows(text)
        assert code == 0
        assert table["verdict"] == "found"
        assert table["classes"] == "1"
        rep = verify_binomial(poset_from_json(out.read_text()))
        assert rep.ok and rep.atoms.head == (1, 2, 2, 2)

    def test_exhausted(self, capsys, tmp_path):
        base = tmp_path / "m3.json"
        base.write_text(poset_to_json(m_interval(3)))
        code, out, _ = run(
            capsys, "search-extension", str(base), "--target", "1,3,4,6"
        )
        assert code == 1 and rows(out)["verdict"] == "exhausted"

    def test_capped(self, capsys, butterfly_file):
        code, out, err = run(
            capsys, "search-extension", butterfly_file,
            "--target", "1,2,2,2", "--max-nodes", "1",
        )
        assert code == 3
        assert rows(out)["verdict"] == "capped"
        assert "budget" in err

    def test_target_mismatch(self, capsys, cube_file):
        code, _, err = run(
            capsys, "search-extension", cube_file, "--target", "1,2,4,8"
        )
        assert code == 2 and "do not match" in err


class TestExportDot:
    def test_stdout(self, capsys, cube_file):
        code, out, _ = run(capsys, "export-dot", cube_file)
        assert code == 0 and "rankdir=BT" in out


class TestTopLevel:
    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_entry_point(self):
        proc = subprocess.run(
            ["binposet", "check-seq", "1,1,2..."],
            capture_output=True, text=True, timeout=60,
        )
        assert proc.returncode == 0
        assert "ok\ttrue" in proc.stdout

    def test_module_invocation(self, tmp_path, cube):
        path = tmp_path / "cube.json"
        path.write_text(poset_to_json(cube))
        proc = subprocess.run(
            [sys.executable, "-m", "binposet.cli", "classify", str(path)],
            capture_output=True, text=True, timeout=60,
        )
        assert proc.returncode == 1
        assert proc.stderr.strip()
