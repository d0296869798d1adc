import json

import pytest

from coarsegroups import cli
from coarsegroups.cli import (
    ConfigError,
    main,
    parse_element,
    parse_group,
    parse_int_set,
    parse_metric,
)
from coarsegroups.scenarios import SCENARIOS, ScenarioEntry, ScenarioReport


class TestParsers:
    def test_groups(self):
        assert parse_group("Z").rank == 1
        assert parse_group("Z^3").rank == 3
        assert parse_group("Z/7").modulus == 7
        assert parse_group("heisenberg").kind == "heisenberg"
        assert parse_group("H").kind == "heisenberg"

    def test_bad_group(self):
        with pytest.raises(ConfigError):
            parse_group("SL2")
        with pytest.raises(ConfigError):
            parse_group("Z^x")

    def test_elements(self):
        H = parse_group("H")
        assert parse_element(H, "(1, 0, 1)") == (1, 0, 1)
        Z = parse_group("Z")
        assert parse_element(Z, "5") == (5,)
        C7 = parse_group("Z/7")
        assert parse_element(C7, "9") == 2
        assert parse_element(C7, "3 mod 7") == 3

    def test_bad_element(self):
        with pytest.raises(ConfigError):
            parse_element(parse_group("H"), "(1, 2)")
        with pytest.raises(ConfigError):
            parse_element(parse_group("Z/7"), "3 mod 5")

    def test_metrics(self):
        Z = parse_group("Z")
        assert parse_metric(Z, "word").spec is Z
        assert parse_metric(Z, "quotient:5").pseudo
        H = parse_group("H")
        assert not parse_metric(H, "maxentry").pseudo
        assert parse_metric(H, "entry12").pseudo

    def test_metric_group_mismatch(self):
        with pytest.raises(ConfigError):
            parse_metric(parse_group("Z"), "maxentry")
        with pytest.raises(ConfigError):
            parse_metric(parse_group("H"), "quotient:5")

    def test_int_sets(self):
        assert parse_int_set("{0, 10, 100}") == frozenset([(0,), (10,), (100,)])
        assert parse_int_set("evens:0..6") == frozenset([(0,), (2,), (4,), (6,)])
        with pytest.raises(ConfigError):
            parse_int_set("0,1,2")


class TestExitCodes:
    def test_passing_run_is_zero(self, capsys):
        assert main(["run", "rho_plus_demo", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_pass"] is True

    def test_failing_assertions_are_one(self, capsys, monkeypatch):
        def broken():
            report = ScenarioReport(name="broken", parameters={})
            report.check("always fails", 0, 1, "TRIVIAL")
            return report

        monkeypatch.setitem(SCENARIOS, "broken", ScenarioEntry(broken, ()))
        assert main(["run", "broken"]) == 1
        err = capsys.readouterr().err
        assert "FAIL: always fails" in err

    def test_unknown_scenario_is_two(self, capsys):
        assert main(["run", "does_not_exist"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_parameter_is_two(self, capsys):
        assert main(["run", "rho_plus_demo", "--param", "bogus=1"]) == 2

    def test_bad_parameter_value_is_two(self, capsys):
        assert main(["run", "rho_plus_demo", "--param", "truncation_radius=abc"]) == 2

    def test_missing_config_file_is_two(self, capsys):
        assert main(["run", "--config", "/no/such/file.json"]) == 2

    def test_malformed_config_is_two(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        assert main(["run", "--config", str(path)]) == 2

    def test_budget_exceeded_is_three(self, capsys, monkeypatch):
        monkeypatch.setenv("COARSE_BALL_CAP", "10")
        assert main(["run", "heisenberg_pseudometric"]) == 3
        assert "budget" in capsys.readouterr().err


class TestRun:
    def test_tsv_default_format(self, capsys):
        assert main(["run", "powers_of_ten"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("section\tkey\texpected\tobserved\tprovenance\tpass")

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        assert main(
            ["run", "rho_plus_demo", "--format", "json", "--output", str(path)]
        ) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(path.read_text())["scenario"] == "rho_plus_demo"

    def test_param_override(self, capsys):
        assert main(["run", "heisenberg_separation", "--param", "N=5"]) == 0
        out = capsys.readouterr().out
        assert "param\tN\t\t5" in out

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(
            json.dumps({"scenario": "heisenberg_separation", "parameters": {"N": 9}})
        )
        assert main(["run", "--config", str(path), "--param", "N=4"]) == 0
        assert "param\tN\t\t4" in capsys.readouterr().out

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"scenario": "rho_plus_demo", "extra": 1}))
        assert main(["run", "--config", str(path)]) == 2

    def test_byte_identical_reruns(self, capsys):
        main(["run", "smith_uniqueness_probe", "--format", "json"])
        first = capsys.readouterr().out
        main(["run", "smith_uniqueness_probe", "--format", "json"])
        assert capsys.readouterr().out == first


class TestList:
    def test_sorted_and_complete(self, capsys):
        assert main(["list"]) == 0
        lines = capsys.readouterr().out.splitlines()
        names = [line.split("(")[0] for line in lines]
        assert names == sorted(SCENARIOS)


class TestDistance:
    def test_word(self, capsys):
        assert main(["distance", "--group", "Z", "--metric", "word", "0", "5"]) == 0
        assert capsys.readouterr().out.strip() == "5"

    def test_quotient(self, capsys):
        assert main(
            ["distance", "--group", "Z", "--metric", "quotient:5", "0", "3"]
        ) == 0
        assert capsys.readouterr().out.strip() == "2"

    def test_maxentry(self, capsys):
        assert main(
            ["distance", "--group", "H", "--metric", "maxentry", "(7,0,1)", "(8,1,1)"]
        ) == 0
        assert capsys.readouterr().out.strip() == "1"


class TestMember:
    def test_member_with_cover(self, capsys):
        assert main(
            [
                "member",
                "--bornology", "geom:10,6",
                "--set", "{0,10,100}",
                "--depth", "1",
            ]
        ) == 0
        assert "member (cover indices: 1)" in capsys.readouterr().out

    def test_not_covered(self, capsys):
        assert main(
            [
                "member",
                "--bornology", "geom:10,6",
                "--set", "evens:0..50",
                "--depth", "3",
            ]
        ) == 0
        assert "not covered at depth 3" in capsys.readouterr().out

    def test_singleton_axiom(self, capsys):
        assert main(
            [
                "member",
                "--bornology", "geom:10,2",
                "--set", "{77}",
                "--depth", "1",
            ]
        ) == 0
        assert "singleton axiom" in capsys.readouterr().out

    def test_explicit_bornology(self, capsys):
        assert main(
            [
                "member",
                "--bornology", "explicit:{2,4}",
                "--set", "{2,4}",
                "--depth", "1",
            ]
        ) == 0
        assert "member" in capsys.readouterr().out
