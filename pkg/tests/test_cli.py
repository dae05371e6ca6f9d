import csv
import json

import pytest

from riverscape.cli import main
from riverscape.snapshots import load_json


def run(argv):
    return main([str(a) for a in argv])


class TestBuild:
    def test_river_snapshot(self, tmp_path, capsys):
        code = run(["build", "--group", "f2", "--landscape", "river",
                    "--radius", 6, "--out", tmp_path])
        assert code == 0
        out = capsys.readouterr().out
        assert "axioms: pass" in out
        doc = load_json(tmp_path / "snapshot.json")
        assert doc["schema"] == "riverscape.snapshot/1"
        assert doc["provenance"] == "river"
        assert len(doc["heights"]) == 2 * 3**6 - 1
        assert doc["heights"][0] == 1

    def test_ternary_reports_q_constants(self, tmp_path, capsys):
        code = run(["build", "--group", "z", "--landscape", "ternary",
                    "--radius", 1000, "--out", tmp_path])
        assert code == 0
        out = capsys.readouterr().out
        assert "Q[1]=1" in out
        assert "Q[2]=21" in out

    def test_radius_too_small_names_minimum(self, tmp_path, capsys):
        code = run(["build", "--group", "f2", "--landscape", "river",
                    "--radius", 0, "--out", tmp_path])
        assert code == 2
        assert "minimal radius is 2" in capsys.readouterr().err

    def test_unknown_group(self, tmp_path, capsys):
        assert run(["build", "--group", "wat", "--radius", 3,
                    "--out", tmp_path]) == 2

    def test_budget_exhausted(self, tmp_path):
        code = run(["build", "--group", "f2", "--radius", 10,
                    "--budget-vertices", 100, "--out", tmp_path])
        assert code == 3


class TestAmenability:
    def test_within_bounds(self, tmp_path, capsys):
        code = run(["amenability", "--group", "f2", "--radius", 5,
                    "--m-values", "2,4", "--out", tmp_path])
        assert code == 0
        with open(tmp_path / "defects.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["vertex", "generator", "m", "defect", "bound"]
        assert len(rows) > 1
        ms = {r[2] for r in rows[1:]}
        assert ms == {"2", "4"}

    def test_empty_m_list(self, tmp_path):
        code = run(["amenability", "--group", "f2", "--radius", 4,
                    "--out", tmp_path])
        assert code == 0
        with open(tmp_path / "defects.csv") as fh:
            assert len(list(csv.reader(fh))) == 1


@pytest.fixture(scope="module")
def bundle_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundle")
    code = run(["build", "--group", "f2", "--landscape", "river",
                "--radius", 8, "--label-prefix", 40, "--out", out])
    assert code == 0
    code = run(["paradoxicalize", "--group", "f2", "--landscape", "river",
                "--radius", 8, "--target-heights", "1", "--out", out])
    assert code == 0
    return out


class TestParadoxicalize:
    def test_bundle_written(self, bundle_dir):
        doc = load_json(bundle_dir / "certificates.json")
        assert doc["schema"] == "riverscape.bundle/1"
        assert len(doc["certificates"]) == 1
        assert doc["certificates"][0]["verification"]["pass"]
        assert doc["halted"] is None

    def test_no_targets_is_input_error(self, tmp_path, capsys):
        assert run(["paradoxicalize", "--group", "f2", "--radius", 6,
                    "--out", tmp_path]) == 2

    def test_targets_file(self, tmp_path, bundle_dir):
        doc = load_json(bundle_dir / "certificates.json")
        target = doc["certificates"][0]["target"]
        targets_file = tmp_path / "targets.json"
        targets_file.write_text(json.dumps([target]))
        code = run(["paradoxicalize", "--group", "f2", "--radius", 8,
                    "--targets", targets_file, "--out", tmp_path])
        assert code == 0


class TestCheck:
    def test_bundle_passes(self, bundle_dir, capsys):
        code = run([
            "check",
            "--snapshot", bundle_dir / "final_snapshot.json",
            "--certificate", bundle_dir / "certificates.json",
        ])
        assert code == 0
        assert "pass" in capsys.readouterr().out

    def test_tampered_translator_fails(self, bundle_dir, tmp_path, capsys):
        doc = load_json(bundle_dir / "certificates.json")
        doc["certificates"][0]["translators"][0] = [1, 2, 1, 2]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code = run(["check",
                    "--snapshot", bundle_dir / "final_snapshot.json",
                    "--certificate", bad])
        assert code == 1
        assert "clause" in capsys.readouterr().out

    def test_window_mismatch(self, bundle_dir, tmp_path):
        other = tmp_path / "other"
        assert run(["build", "--group", "f2", "--landscape", "river",
                    "--radius", 5, "--out", other]) == 0
        code = run(["check",
                    "--snapshot", other / "snapshot.json",
                    "--certificate", bundle_dir / "certificates.json"])
        assert code == 2

    def test_missing_file(self, bundle_dir):
        assert run(["check", "--snapshot", "/nonexistent.json",
                    "--certificate",
                    bundle_dir / "certificates.json"]) == 2
