"""
Tests for argstrength.py - the command-line interface.
"""

import json
from decimal import Decimal
from fractions import Fraction as F
from pathlib import Path

import pytest


@pytest.fixture(autouse=True)
def isolated(temp_config):
    """Keep the user's config out of the way and restore the console level afterwards."""
    from logger import CONSOLE_LEVEL, set_console_level

    yield
    set_console_level(CONSOLE_LEVEL)


def _ellsberg_files(fixtures_dir):
    return [str(fixtures_dir / f"ellsberg_a{i}.arg") for i in range(1, 5)]


def _run_json(capsys, argv):
    from argstrength import main

    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


class TestRoundHalfUp:
    """Tests for the decimal rendering"""

    @pytest.mark.parametrize("value,places,text", [
        (F(2211, 20000), 2, "0.11"),
        (F(4389, 20000), 2, "0.22"),
        (F(67, 200), 2, "0.34"),
        (F(1, 3), 4, "0.3333"),
        (F(2, 3), 4, "0.6667"),
        (F(0), 3, "0.000"),
        (F(1), 2, "1.00"),
        (F(1, 2), 0, "1"),
        (F(1, 3), 40, "0." + "3" * 40),
        (F(0), 40, "0." + "0" * 40),
        (F(1, 10 ** 10), 12, "0.000000000100"),
    ])
    def test_values(self, value, places, text):
        """Exact rationals round half up at the requested place"""
        from argstrength import round_half_up

        assert round_half_up(value, places) == text

    def test_within_half_ulp(self):
        """The printed decimal never differs from the exact value by more than half a unit"""
        from argstrength import round_half_up

        for n in range(0, 301):
            value = F(n, 300)
            for places in (0, 1, 2, 4, 29, 40):
                text = round_half_up(value, places)
                assert len(text.partition(".")[2]) == places
                printed = F(Decimal(text))
                assert abs(printed - value) <= F(1, 2 * 10 ** places)

    def test_places_beyond_decimal_context(self, fixtures_dir, capsys):
        """--places larger than the default decimal precision keeps every digit"""
        from argstrength import main

        assert main(["bounds", str(fixtures_dir / "modus_ponens.arg"), "--json", "--places", "35"]) == 0
        lower = json.loads(capsys.readouterr().out)["records"][0]["interval"]["lower"]
        assert lower == {"exact": "18/25", "decimal": "0.72" + "0" * 33}


class TestExitCodes:
    """Exit status: 0 success, 1 usage/parse/file error, 2 incoherent"""

    def test_check_coherent(self, fixtures_dir, capsys):
        """A coherent file exits 0"""
        from argstrength import main

        assert main(["check", str(fixtures_dir / "ellsberg_a2.arg")]) == 0
        assert capsys.readouterr().out.strip() == "A2: coherent"

    def test_check_incoherent(self, fixtures_dir, capsys):
        """An incoherent file exits 2"""
        from argstrength import main

        assert main(["check", str(fixtures_dir / "incoherent.arg")]) == 2
        assert "overfull urn: incoherent" in capsys.readouterr().out

    def test_parse_error(self, fixtures_dir, capsys):
        """A parse error exits 1 and names file, line and column"""
        from argstrength import main

        path = str(fixtures_dir / "unknown_atom.arg")
        assert main(["bounds", path]) == 1
        err = capsys.readouterr().err
        assert f"{path}:2:15: unknown atom 'B'" in err

    def test_missing_file(self, tmp_path, capsys):
        """An unreadable file exits 1"""
        from argstrength import main

        assert main(["check", str(tmp_path / "nowhere.arg")]) == 1
        assert "cannot read file" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["strength"],
        ["bounds", "--places", "many", "x.arg"],
        ["ellsberg", "--variant", "approximate"],
        ["predict", "1", "2", "3"],
        ["predict", "1", "2", "three", "4"],
    ])
    def test_usage_errors(self, argv, capsys):
        """Bad command lines exit 1 rather than argparse's 2"""
        from argstrength import main

        assert main(argv) == 1
        assert "usage error" in capsys.readouterr().err

    def test_strength_with_incoherent_file(self, fixtures_dir, capsys):
        """One incoherent argument aborts the whole run with 2"""
        from argstrength import main

        files = [str(fixtures_dir / "ellsberg_a1.arg"), str(fixtures_dir / "incoherent.arg")]
        assert main(["strength", *files]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "incoherent" in captured.err

    def test_atom_budget_flag(self, fixtures_dir, capsys):
        """--max-atoms below the vocabulary size is a parse error"""
        from argstrength import main

        assert main(["--max-atoms", "2", "check", str(fixtures_dir / "ellsberg_a1.arg")]) == 1
        assert "budget" in capsys.readouterr().err

    def test_incoherent_premises_error_exits_2(self, fixtures_dir, monkeypatch, capsys):
        """IncoherentPremisesError raised inside a command maps to exit 2"""
        import argstrength
        from coherence import propagate_bounds
        from dsl import parse_argument

        def propagate_directly(paths, settings):
            propagate_bounds(parse_argument(Path(paths[0]).read_text()))

        monkeypatch.setattr(argstrength, "analyze_files", propagate_directly)
        assert argstrength.main(["bounds", str(fixtures_dir / "incoherent.arg")]) == 2
        assert "incoherent" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        ["config", "places", "-1"],
        ["config", "max_atoms", "lots"],
        ["config", "variant", "approximate"],
        ["config", "places"],
    ])
    def test_config_rejects_bad_values(self, argv, capsys):
        """Invalid settings are refused with exit 1"""
        from argstrength import main

        assert main(argv) == 1
        assert "error" in capsys.readouterr().err


class TestConfigCommand:
    """Tests for the config command"""

    def test_show_defaults(self, capsys):
        """With no key the stored settings are listed"""
        from argstrength import main

        assert main(["config"]) == 0
        assert capsys.readouterr().out.splitlines() == ["max_atoms = 20", "places = 4", "variant = decimal"]

    def test_set_value_is_used_by_later_runs(self, capsys):
        """A stored setting becomes the default for the next command"""
        from argstrength import main
        from config import get_variant

        assert main(["config", "variant", "exact"]) == 0
        assert "variant = exact" in capsys.readouterr().out
        assert get_variant() == "exact"

        assert main(["ellsberg"]) == 0
        assert "exact variant" in capsys.readouterr().out

    def test_json(self, capsys):
        """--json lists key/value records"""
        from argstrength import main

        assert main(["config", "places", "2", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["command"] == "config"
        assert {"key": "places", "value": 2} in doc["records"]


class TestCommands:
    """Human-readable output of each command"""

    def test_bounds(self, fixtures_dir, capsys):
        """bounds prints the decimal and exact interval"""
        from argstrength import main

        assert main(["bounds", str(fixtures_dir / "modus_ponens.arg")]) == 0
        out = capsys.readouterr().out
        assert out.startswith("modus_ponens ")
        assert "[0.7200, 0.9200]" in out
        assert "exact [18/25, 23/25]" in out

    def test_bounds_with_witness(self, fixtures_dir, capsys):
        """--witness adds the attaining distributions"""
        from argstrength import main

        assert main(["bounds", "--witness", str(fixtures_dir / "ellsberg_a2.arg")]) == 0
        out = capsys.readouterr().out
        assert "lower witness:" in out
        assert "upper witness:" in out

    def test_strength_order(self, fixtures_dir, capsys):
        """strength over the four Ellsberg files prints the preference order"""
        from argstrength import main

        assert main(["strength", "--places", "2", *_ellsberg_files(fixtures_dir)]) == 0
        out = capsys.readouterr().out
        assert "s = 0.11 (2211/20000)" in out
        assert out.rstrip().endswith("order: A4 ≻ A1 ≻ A3 ≻ A2")

    def test_modus_ponens_strength(self, fixtures_dir, capsys):
        """[0.72, 0.92] scores (1 - 0.2) * 0.82 = 0.656"""
        code, document, _ = _run_json(capsys, ["strength", "--json", str(fixtures_dir / "modus_ponens.arg")])
        assert code == 0
        assert F(document["records"][0]["strength"]["value"]["exact"]) == F(656, 1000)
        assert "order" not in document

    def test_vacuous_conclusion(self, fixtures_dir, capsys):
        """A conclusion conditioned on a forced-zero event reports why it is [0, 1]"""
        from argstrength import main

        assert main(["strength", str(fixtures_dir / "vacuous.arg")]) == 0
        out = capsys.readouterr().out
        assert "s = 0.0000 (0)" in out
        assert "vacuous: conditioning event forced to zero" in out

        code, document, _ = _run_json(capsys, ["strength", "--json", str(fixtures_dir / "vacuous.arg")])
        record = document["records"][0]
        assert record["vacuous_reason"] == "conditioning event forced to zero"
        assert record["strength"]["value"]["exact"] == "0"

    def test_single_strength_has_no_order(self, fixtures_dir, capsys):
        """A single file has nothing to order"""
        from argstrength import main

        assert main(["strength", str(fixtures_dir / "ellsberg_a1.arg")]) == 0
        assert "order:" not in capsys.readouterr().out

    def test_rank(self, fixtures_dir, capsys):
        """rank always prints the order"""
        from argstrength import main

        assert main(["rank", *_ellsberg_files(fixtures_dir)]) == 0
        assert "order: A4 ≻ A1 ≻ A3 ≻ A2" in capsys.readouterr().out

    def test_check_zero_layer(self, fixtures_dir, capsys):
        """check reports the conditioning events forced to zero"""
        from argstrength import main

        assert main(["check", str(fixtures_dir / "zero_layer.arg")]) == 0
        out = capsys.readouterr().out
        assert "null antecedent: coherent" in out
        assert "zero layer 1: T" in out

    def test_zero_layer_bounds_are_vacuous(self, fixtures_dir, capsys):
        """With p(T) = 0 the modus ponens conclusion is [0, 1] with strength 0"""
        from argstrength import main

        code, document, _ = _run_json(capsys, ["strength", "--json", str(fixtures_dir / "zero_layer.arg")])
        assert code == 0
        record = document["records"][0]
        assert record["interval"]["lower"]["exact"] == "0"
        assert record["interval"]["upper"]["exact"] == "1"
        assert record["strength"]["value"]["exact"] == "0"
        assert record["coherence"]["zero_layers"] == [["T"]]

    @pytest.mark.parametrize("variant,values", [
        ("decimal", ["0.33", "0.11", "0.22", "0.67"]),
        ("exact", ["0.33", "0.11", "0.22", "0.67"]),
    ])
    def test_ellsberg(self, variant, values, capsys):
        """The table, the preferences and strategy E"""
        from argstrength import main

        assert main(["ellsberg", "--variant", variant, "--places", "2"]) == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        rows = [line for line in lines if line.startswith("Bet ")]
        assert [row.split()[-2] for row in rows] == values
        assert "preferences: Bet 1 ≻ Bet 2, Bet 4 ≻ Bet 3" in out
        assert lines[-1] == "strategy: E"

    def test_ellsberg_variant_from_config(self, capsys):
        """Without --variant the configured default is used"""
        from argstrength import main
        from config import set_variant

        set_variant("exact")
        code, document, _ = _run_json(capsys, ["ellsberg", "--json"])
        assert code == 0
        assert document["variant"] == "exact"
        assert [r["strength"]["value"]["exact"] for r in document["records"]] == ["1/3", "1/9", "2/9", "2/3"]

    def test_places_from_config(self, fixtures_dir, capsys):
        """--places overrides the configured precision, which overrides the default"""
        from argstrength import main
        from config import set_places

        set_places(1)
        code, document, _ = _run_json(capsys, ["bounds", "--json", str(fixtures_dir / "ellsberg_a2.arg")])
        assert document["records"][0]["interval"]["upper"]["decimal"] == "0.7"
        code, document, _ = _run_json(capsys, ["bounds", "--json", "--places", "3", str(fixtures_dir / "ellsberg_a2.arg")])
        assert document["records"][0]["interval"]["upper"]["decimal"] == "0.670"

    def test_predict(self, capsys):
        """Mean ratings predict the Ellsberg pattern"""
        from argstrength import main

        assert main(["predict", "5.20", "3.98", "5.77", "6.95"]) == 0
        out = capsys.readouterr().out
        assert "Bet 1 ≻ Bet 2, Bet 4 ≻ Bet 3" in out
        assert "strategy: E" in out

    def test_predict_json_tie(self, capsys):
        """Equal ratings are reported as a tie"""
        code, document, _ = _run_json(capsys, ["predict", "--json", "4", "4", "1/2", "3"])
        assert code == 0
        record = document["records"][0]
        assert record["choice12"] == "tie"
        assert record["choice34"] == "Bet 4"
        assert record["strategy"] == "Undetermined"

    def test_verbose_flag(self, fixtures_dir, capsys):
        """--verbose lowers the console level to DEBUG"""
        import logging

        from argstrength import main
        from logger import log

        assert main(["-v", "check", str(fixtures_dir / "ellsberg_a1.arg")]) == 0
        console = next(h for h in log.handlers if h.get_name() == "console")
        assert console.level == logging.DEBUG


class TestJsonOutput:
    """Machine-readable output"""

    def test_golden_strength(self, fixtures_dir, capsys):
        """strength --json matches the recorded document"""
        code, document, _ = _run_json(capsys, ["strength", "--json", "--places", "2", *_ellsberg_files(fixtures_dir)])
        assert code == 0
        for record in document["records"]:
            record["file"] = Path(record["file"]).name
        golden = json.loads((fixtures_dir / "strength_ellsberg.json").read_text(encoding="utf-8"))
        assert document == golden

    def test_byte_identical_runs(self, fixtures_dir, capsys):
        """Identical inputs give byte-identical output, witnesses included"""
        argv = ["rank", "--json", "--witness", *_ellsberg_files(fixtures_dir)]
        _, _, first = _run_json(capsys, argv)
        _, _, second = _run_json(capsys, argv)
        assert first == second

    def test_flags_before_or_after_subcommand(self, fixtures_dir, capsys):
        """Global flags work on either side of the subcommand"""
        path = str(fixtures_dir / "modus_ponens.arg")
        _, _, before = _run_json(capsys, ["--json", "--places", "3", "bounds", path])
        _, _, after = _run_json(capsys, ["bounds", path, "--json", "--places", "3"])
        assert before == after

    def test_witness_records(self, fixtures_dir, capsys):
        """Witness weights are complete distributions that attain the bounds"""
        code, document, _ = _run_json(capsys, ["bounds", "--json", "--witness", str(fixtures_dir / "ellsberg_a2.arg")])
        assert code == 0
        record = document["records"][0]
        for side, bound in (("lower", F(0)), ("upper", F(67, 100))):
            entries = record["witnesses"][side]
            assert sum(F(e["weight"]["exact"]) for e in entries) == 1
            black = sum(F(e["weight"]["exact"]) for e in entries if e["world"]["B"])
            assert black == bound

    def test_check_json(self, fixtures_dir, capsys):
        """check --json carries the verdict as the status"""
        code, document, _ = _run_json(capsys, ["check", "--json", str(fixtures_dir / "incoherent.arg")])
        assert code == 2
        assert document["command"] == "check"
        assert document["status"] == "incoherent"
        assert document["records"][0]["label"] == "overfull urn"

    def test_incoherent_json(self, fixtures_dir, capsys):
        """An aborted run still emits a document on stdout"""
        code, document, _ = _run_json(capsys, ["bounds", "--json", str(fixtures_dir / "incoherent.arg")])
        assert code == 2
        assert document["status"] == "incoherent"
        assert document["records"][0]["coherence"]["status"] == "incoherent"

    def test_ellsberg_json(self, capsys):
        """ellsberg --json lists the four bets with preferences and strategy"""
        code, document, _ = _run_json(capsys, ["ellsberg", "--json", "--variant", "decimal"])
        assert code == 0
        assert document["command"] == "ellsberg"
        assert [r["bet"] for r in document["records"]] == ["Bet 1", "Bet 2", "Bet 3", "Bet 4"]
        assert document["records"][2]["interval"]["upper"]["exact"] == "1"
        assert document["preferences"] == {"bet1_vs_bet2": "Bet 1", "bet3_vs_bet4": "Bet 4"}
        assert document["strategy"] == "E"
        assert document["order"] == [["A4"], ["A1"], ["A3"], ["A2"]]
