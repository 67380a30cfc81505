"""Command line behavior: subcommands, exit codes, stable JSON."""

import json

from toric_exc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCatalogList:
    def test_text_table(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "list")
        assert code == 0
        assert "D1" in out and "S3-bundle" in out
        assert len([ln for ln in out.splitlines() if ln.strip()]) == 19  # header + 18 rows

    def test_json_shape(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "catalog", "list")
        payload = json.loads(out)
        assert len(payload["results"]["catalog"]) == 18


class TestThomsen:
    def test_d2_lists_eight_classes(self, capsys):
        code, out, _ = run_cli(capsys, "thomsen", "--variety", "D2")
        assert code == 0
        assert "8 distinct summand classes" in out

    def test_e1_emits_warning(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "thomsen", "--variety", "E1")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["results"]["summands"]) == 10
        assert any("omits" in w for w in payload["warnings"])

    def test_tiny_primes_fail_with_exit_1(self, capsys):
        code, out, _ = run_cli(capsys, "thomsen", "--variety", "D1",
                               "--prime", "2", "--prime", "31")
        assert code == 1
        assert "did NOT stabilize" in out

    def test_unknown_variety_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "thomsen", "--variety", "Q9")
        assert code == 2
        assert "unknown variety" in err


class TestCohomology:
    def test_structure_sheaf(self, capsys):
        code, out, _ = run_cli(capsys, "cohomology", "--variety", "D1", "--class", "0 0 0")
        assert code == 0
        assert "[1, 0, 0, 0]" in out

    def test_wrong_length_class_vector(self, capsys):
        code, _, err = run_cli(capsys, "cohomology", "--variety", "D1", "--class", "1 2")
        assert code == 2


class TestForbidden:
    def test_d1_eleven_sets(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "forbidden", "--variety", "D1")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["results"]["forbidden_sets"]) == 11

    def test_fan_file_input(self, capsys, tmp_path):
        from toric_exc.catalog import format_fan_file, get_record
        path = tmp_path / "d1.fan"
        path.write_text(format_fan_file(get_record("D1").fan))
        code, out, _ = run_cli(capsys, "--format", "json", "forbidden", "--fan-file", str(path))
        payload = json.loads(out)
        assert code == 0
        assert len(payload["results"]["forbidden_sets"]) == 11

    def test_invalid_fan_file(self, capsys, tmp_path):
        path = tmp_path / "bad.fan"
        path.write_text("dim 3\nrays\n1 0 0\ncones\n0\n")
        code, _, err = run_cli(capsys, "forbidden", "--fan-file", str(path))
        assert code == 2


class TestVerify:
    def test_d1_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--variety", "D1")
        assert code == 0
        assert "strongly exceptional: yes" in out
        assert "KoszulReduction" in out

    def test_variety_without_collection_needs_file(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--variety", "P3")
        assert code == 2
        assert "--collection" in err

    def test_explicit_collection_file(self, capsys, tmp_path):
        path = tmp_path / "coll.txt"
        path.write_text("# a failing two-term collection\n1 2 2\n0 0 0\n")
        code, out, _ = run_cli(capsys, "verify", "--variety", "D1", "--collection", str(path))
        assert code == 1
        assert "strongly exceptional: NO" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "verify", "--variety", "E4")
        payload = json.loads(out)
        assert code == 0
        assert payload["results"]["strongly_exceptional"] is True
        assert json.loads(json.dumps(payload)) == payload


class TestProveMainTheorem:
    def test_all_pass_and_deterministic(self, capsys, monkeypatch):
        code1, out1, _ = run_cli(capsys, "--format", "json", "prove-main-theorem")
        assert code1 == 0
        payload = json.loads(out1)
        assert payload["results"]["all_pass"] is True
        assert set(payload["results"]["varieties"]) == {"D1", "D2", "E1", "E2", "E4"}
        # byte-identical on rerun, independent of the worker cap
        monkeypatch.setenv("TORIC_EXC_THREADS", "2")
        code2, out2, _ = run_cli(capsys, "--format", "json", "prove-main-theorem")
        assert code2 == 0 and out2 == out1

    def test_text_mode_prints_pass_lines(self, capsys):
        code, out, _ = run_cli(capsys, "prove-main-theorem")
        assert code == 0
        for name in ("D1", "D2", "E1", "E2", "E4"):
            assert f"{name}: PASS" in out
