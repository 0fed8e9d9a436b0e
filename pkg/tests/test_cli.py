import json

import pytest
from click.testing import CliRunner

from app import cli
from generate_expect import write_expectations


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args))


class TestTable:
    def test_csv_reference_table(self, runner, reference_table):
        result = invoke(runner, "table", "--format", "csv")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert len(lines) == 10
        assert lines[0] == "k\\n," + ",".join(str(n) for n in range(1, 12))
        rows = {int(line.split(",")[0]): line.split(",")[1:] for line in lines[1:]}
        assert rows[2][10] == "752"
        assert rows[10][10] == "4322110"
        assert {k: [int(v) for v in row] for k, row in rows.items()} == reference_table

    def test_json_counts_are_strings(self, runner):
        result = invoke(runner, "table", "--kmin", "2", "--kmax", "3", "--nmax", "4", "--format", "json")
        document = json.loads(result.stdout)
        assert document["rows"][0] == {"k": 2, "values": ["2", "5", "10", "20"]}

    def test_cache_directory(self, runner, tmp_path, fresh_tables):
        result = invoke(runner, "table", "--kmax", "3", "--cache", str(tmp_path))
        assert result.exit_code == 0
        assert (tmp_path / "colored_k2.json").exists()
        assert (tmp_path / "colored_k3.json").exists()


class TestCount:
    def test_constrained(self, runner):
        result = invoke(runner, "count", "--k", "2", "--n", "3", "--forbid", "1", "--format", "json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["count"] == "5"

    def test_overlapping_profile_is_an_error(self, runner):
        result = invoke(runner, "count", "--k", "2", "--n", "3", "--forbid", "1", "--require", "1")
        assert result.exit_code == 2

    def test_capacity(self, runner, monkeypatch):
        from backend import config

        monkeypatch.setattr(config, "CAPACITY", 100)
        result = invoke(runner, "count", "--k", "2", "--n", "101")
        assert result.exit_code == 2


class TestScan:
    def test_conjecture_json(self, runner):
        result = invoke(runner, "scan", "conjecture", "--kmax", "10", "--nmax", "11", "--format", "json")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert [e["params"] for e in document["exceptions"]] == [{"k": 2, "n": 6, "m": 4}]
        outcome = document["exceptions"][0]["outcome"]
        assert outcome == {"relation": "StrictLess", "lhs": "1296", "rhs": "1300"}
        assert document["schema"] == 1

    def test_text_lists_discrepancy(self, runner):
        result = invoke(runner, "scan", "lemma-g", "--kmax", "3", "--amax", "6")
        assert result.exit_code == 0
        assert "DISCREPANCY" in result.stdout
        assert "found but not claimed: a=3, k=2" in result.stdout

    def test_expect_match_and_mismatch(self, runner, tmp_path):
        good = tmp_path / "good.json"
        good.write_text(json.dumps({"exceptions": [{"k": 2, "n": 6, "m": 4}]}))
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"exceptions": []}))
        args = ("scan", "conjecture", "--kmax", "3", "--nmax", "11")
        assert invoke(runner, *args, "--expect", str(good)).exit_code == 0
        assert invoke(runner, *args, "--expect", str(bad)).exit_code == 1

    def test_worker_count_does_not_change_output(self, runner):
        args = ("scan", "theorem2", "--kmax", "4", "--sum-max", "20", "--format", "json")
        serial = invoke(runner, *args, "--workers", "1")
        parallel = invoke(runner, *args, "--workers", "2")
        assert serial.exit_code == parallel.exit_code == 0
        assert serial.stdout == parallel.stdout

    def test_csv_rows(self, runner):
        result = invoke(runner, "scan", "theorem2", "--kmax", "3", "--sum-max", "10", "--format", "csv")
        lines = result.stdout.splitlines()
        assert lines[0] == "a,b,k,relation,lhs,rhs"
        assert "1,1,2,StrictLess,4,5" in lines
        assert len(lines) == 5

    def test_unknown_scan(self, runner):
        assert invoke(runner, "scan", "nope").exit_code == 2


class TestAudit:
    def test_json_report(self, runner):
        result = invoke(runner, "audit", "g", "--k", "2", "--a", "3", "--format", "json")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["injective"] is False
        assert document["variant"] == "color-preserving"
        assert document["collisions"][0]["mu"] == "1_2+1_2+1_2"

    def test_text_leads_with_collisions(self, runner):
        result = invoke(runner, "audit", "f", "--k", "2", "--c", "3", "--d", "1")
        assert result.stdout.startswith("collisions: 1")

    def test_expect_mismatch(self, runner, tmp_path):
        expect = tmp_path / "audit.json"
        expect.write_text(json.dumps({"injective": True}))
        result = invoke(runner, "audit", "g", "--k", "2", "--a", "3", "--expect", str(expect))
        assert result.exit_code == 1

    def test_missing_parameter(self, runner):
        assert invoke(runner, "audit", "f", "--k", "2", "--c", "3").exit_code == 2

    def test_scale_limit(self, runner):
        assert invoke(runner, "audit", "g", "--k", "2", "--a", "40").exit_code == 2


class TestMax:
    def test_both_modes_agree(self, runner):
        result = invoke(runner, "max", "--k", "2", "--n", "7", "--mode", "both", "--format", "json")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["value"] == "250"
        assert document["maximizers"] == [[3, 2, 2], [2, 2, 2, 1]]

    def test_n_zero_is_usage_error(self, runner):
        assert invoke(runner, "max", "--k", "2", "--n", "0").exit_code == 2


class TestVerify:
    def test_base(self, runner):
        result = invoke(runner, "verify", "base", "--format", "json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["holds"] is True

    def test_convolution(self, runner):
        result = invoke(runner, "verify", "convolution", "--k", "5", "--split", "2", "--nmax", "11")
        assert result.exit_code == 0
        assert "true" in result.stdout

    def test_bad_split(self, runner):
        result = invoke(runner, "verify", "convolution", "--k", "3", "--split", "5")
        assert result.exit_code == 2


class TestRanges:
    @pytest.mark.parametrize(
        "args",
        [
            ("table", "--nmin", "-2", "--nmax", "11"),
            ("table", "--kmin", "0"),
            ("table", "--kmax", "1"),
            ("table", "--nmax", "0"),
            ("scan", "theorem2", "--kmax", "1"),
            ("scan", "lemma-ab", "--sum-max", "1"),
            ("scan", "halving", "--smax", "3"),
            ("scan", "bo", "--kmax", "3"),
            ("scan", "theorem2", "--strong"),
            ("scan", "logconcave", "--mmax", "5"),
            ("verify", "base", "--kmin", "1"),
            ("verify", "convolution", "--k", "1"),
        ],
    )
    def test_empty_or_invalid_ranges_are_usage_errors(self, runner, args):
        result = invoke(runner, *args)
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_strong_log_concavity_takes_mmax(self, runner):
        result = invoke(runner, "scan", "logconcave", "--strong", "--nmax", "40", "--mmax", "5")
        assert result.exit_code == 0


class TestExpectationFiles:
    @pytest.mark.parametrize(
        "text",
        [
            '{"exceptions": [{"k": 2, "n": 6}]}',
            '{"exceptions": [{"k": 2, "n": 6, "m": 4, "x": 1}]}',
            "[1, 2]",
            "{}",
            '{"exceptions": [], "exceptons": []}',
            "not json",
        ],
    )
    def test_malformed_scan_expectation_exits_2(self, runner, tmp_path, text):
        expect = tmp_path / "expect.json"
        expect.write_text(text)
        result = invoke(runner, "scan", "conjecture", "--kmax", "3", "--nmax", "11", "--expect", str(expect))
        assert result.exit_code == 2

    def test_missing_file_exits_2(self, runner, tmp_path):
        result = invoke(runner, "max", "--k", "2", "--n", "4", "--expect", str(tmp_path / "absent.json"))
        assert result.exit_code == 2

    def test_audit_sizes_may_be_strings(self, runner, tmp_path):
        expect = tmp_path / "audit.json"
        expect.write_text(json.dumps({"domain_size": "10", "codomain_size": 10, "injective": False}))
        result = invoke(runner, "audit", "g", "--k", "2", "--a", "3", "--expect", str(expect))
        assert result.exit_code == 0

    def test_max_expectation(self, runner, tmp_path):
        expect = tmp_path / "max.json"
        expect.write_text(json.dumps({"value": "250", "maximizers": [[3, 2, 2], [2, 2, 2, 1]]}))
        assert invoke(runner, "max", "--k", "2", "--n", "7", "--expect", str(expect)).exit_code == 0
        expect.write_text(json.dumps({"value": 251}))
        assert invoke(runner, "max", "--k", "2", "--n", "7", "--expect", str(expect)).exit_code == 1


class TestGeneratedExpectations:
    def test_files_for_every_claimed_scan(self, tmp_path):
        written = {path.name for path in write_expectations(tmp_path)}
        assert {"theorem2.json", "conjecture.json", "logconcave.json", "logconcave-strong.json"} <= written
        assert json.loads((tmp_path / "conjecture.json").read_text()) == {
            "exceptions": [{"k": 2, "n": 6, "m": 4}]
        }

    def test_claimed_lists_drive_expect(self, runner, tmp_path):
        write_expectations(tmp_path)
        theorem2 = invoke(runner, "scan", "theorem2", "--kmax", "3", "--sum-max", "10",
                          "--expect", str(tmp_path / "theorem2.json"))
        assert theorem2.exit_code == 0
        lemma_g = invoke(runner, "scan", "lemma-g", "--kmax", "3", "--amax", "6",
                         "--expect", str(tmp_path / "lemma-g.json"))
        assert lemma_g.exit_code == 1
