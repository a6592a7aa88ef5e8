"""
Integration tests - multiple components working together.
"""

from fractions import Fraction as F


class TestIntegration:
    """Integration tests - multiple components working together"""

    def test_full_strength_flow(self, fixtures_dir):
        """Parse files, propagate bounds, score and rank"""
        from coherence import analyze
        from dsl import parse_argument
        from strength import rank

        analyses = [
            analyze(parse_argument((fixtures_dir / f"ellsberg_a{i}.arg").read_text()))
            for i in range(1, 5)
        ]
        assert all(a.verdict.is_coherent for a in analyses)
        order = rank([(a.argument.label, a.interval) for a in analyses])
        assert order.labels() == [["A4"], ["A1"], ["A3"], ["A2"]]

    def test_rendered_scenario_reparses_to_same_bounds(self):
        """render -> parse -> propagate gives the table's intervals"""
        from coherence import propagate_bounds
        from dsl import parse_argument, render_argument
        from ellsberg import Variant, build_scenario, table1

        rows = table1(Variant.EXACT)
        for argument, row in zip(build_scenario(Variant.EXACT).arguments, rows):
            again = parse_argument(render_argument(argument))
            assert again == argument
            assert propagate_bounds(again) == row.interval

    def test_written_file_through_cli(self, temp_config, write_arg, capsys):
        """A document written to disk goes through the CLI like a fixture"""
        import json

        from argstrength import main
        from config import set_places

        set_places(2)
        path = write_arg("and_intro.arg", "atoms: A, B\npremise: P(A) = 0.7\npremise: P(B) = 0.6\nconclusion: P(A and B)\n")
        assert main(["bounds", "--json", path]) == 0
        document = json.loads(capsys.readouterr().out)
        record = document["records"][0]
        assert record["label"] == "and_intro"
        assert F(record["interval"]["lower"]["exact"]) == F(3, 10)
        assert F(record["interval"]["upper"]["exact"]) == F(3, 5)
        assert record["interval"]["upper"]["decimal"] == "0.60"
