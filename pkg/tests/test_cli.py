import json

import numpy as np
import pytest

from complexrank import coded_matrix_from_json_dict, encode_dataset, EncodeMode
from complexrank.cli import format_complex, main
from complexrank.dataset import cars_csv_path, cars_schema_path

CARS = str(cars_csv_path())
SCHEMA = str(cars_schema_path())


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFormatComplex:
    def test_real_values_drop_trailing_zeros(self):
        assert format_complex(2 + 0j) == "2"
        assert format_complex(-2 + 0j) == "-2"
        assert format_complex(2.5 + 0j) == "2.5"
        assert format_complex(0j) == "0"

    def test_complex_values_use_i_suffix(self):
        assert format_complex(-1 + 1.7320508j) == "-1+1.73i"
        assert format_complex(-1 - 1.7320508j) == "-1-1.73i"

    def test_negative_zero_normalized(self):
        assert format_complex(complex(-0.0, 0.0)) == "0"


class TestRankCommand:
    def test_text_output_pairs_value_with_rank(self, capsys):
        code, out, _ = run(
            capsys, ["rank", "--input", CARS, "--schema", SCHEMA, "--column", "Power"]
        )
        assert code == 0
        assert out.splitlines() == [
            "60\t1",
            "100\t4",
            "200\t8.5",
            "200\t8.5",
            "200\t8.5",
            "100\t4",
            "100\t4",
            "200\t8.5",
            "100\t4",
            "100\t4",
        ]

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys, ["rank", "--input", CARS, "--column", "Power", "--json"]
        )
        assert code == 0
        assert json.loads(out) == [1.0, 4.0, 8.5, 8.5, 8.5, 4.0, 4.0, 8.5, 4.0, 4.0]

    def test_schema_is_optional(self, capsys, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("x,note\n3,a\n1,b\n2,c\n")
        code, out, _ = run(capsys, ["rank", "--input", str(f), "--column", "x", "--json"])
        assert code == 0
        assert json.loads(out) == [3.0, 1.0, 2.0]

    def test_nominal_column_is_a_data_error(self, capsys):
        code, _, err = run(
            capsys, ["rank", "--input", CARS, "--schema", SCHEMA, "--column", "Color"]
        )
        assert code == 2
        assert "data error" in err and "Color" in err

    def test_unknown_column(self, capsys):
        code, _, err = run(capsys, ["rank", "--input", CARS, "--column", "Missing"])
        assert code == 2
        assert "Missing" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys, ["rank", "--input", str(tmp_path / "nope.csv"), "--column", "x"]
        )
        assert code == 2
        assert "data error" in err

    def test_output_flag_writes_json(self, capsys, tmp_path):
        out_file = tmp_path / "ranks.json"
        code, out, _ = run(
            capsys,
            ["rank", "--input", CARS, "--column", "Door", "--output", str(out_file)],
        )
        assert code == 0
        assert json.loads(out_file.read_text()) == [
            3.0, 3.0, 3.0, 3.0, 3.0, 7.0, 7.0, 7.0, 9.5, 9.5,
        ]


class TestEncodeCommand:
    def test_table_shows_coded_cells(self, capsys):
        code, out, _ = run(
            capsys, ["encode", "--input", CARS, "--schema", SCHEMA, "--table"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == [
            "Door", "Power", "Color", "Fuel", "Interior", "Wheel", "(decision)",
        ]
        assert lines[1].split() == ["2", "60", "2", "3", "3.5", "3.5", "Opel"]
        assert lines[2].split() == ["2", "100", "-2", "2", "3.5", "3.5", "Nissan"]
        assert lines[3].split() == ["2", "200", "-2", "3", "2.5", "2.5", "Ferrari"]

    def test_three_way_tie_prints_complex_cells(self, capsys, tmp_path):
        csv = tmp_path / "t.csv"
        csv.write_text("c,y\na,P\nb,P\nc,Q\n")
        schema = tmp_path / "t.schema.json"
        schema.write_text(
            json.dumps(
                {
                    "columns": [
                        {"name": "c", "role": "nominal"},
                        {"name": "y", "role": "decision"},
                    ]
                }
            )
        )
        code, out, _ = run(
            capsys,
            ["encode", "--input", str(csv), "--schema", str(schema), "--table",
             "--mode", "nominal"],
        )
        assert code == 0
        cells = [line.split()[0] for line in out.splitlines()[1:]]
        assert cells == ["1", "-0.5+0.87i", "-0.5-0.87i"]

    def test_default_json_round_trips_to_the_same_matrix(self, capsys, cars):
        code, out, _ = run(capsys, ["encode", "--input", CARS, "--schema", SCHEMA])
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "combined"
        matrix = coded_matrix_from_json_dict(doc)
        want = encode_dataset(cars, EncodeMode.COMBINED)
        assert matrix.columns == want.columns
        assert np.array_equal(matrix.data, want.data)
        assert matrix.decision == want.decision
        assert matrix.codebooks == want.codebooks

    def test_mode_with_no_matching_columns_is_a_data_error(self, capsys, tmp_path):
        csv = tmp_path / "n.csv"
        csv.write_text("x,y\n1,2\n3,4\n")
        schema = tmp_path / "n.schema.json"
        schema.write_text(
            json.dumps(
                {
                    "columns": [
                        {"name": "x", "role": "numeric"},
                        {"name": "y", "role": "numeric"},
                    ]
                }
            )
        )
        code, _, err = run(
            capsys,
            ["encode", "--input", str(csv), "--schema", str(schema), "--mode", "nominal"],
        )
        assert code == 2
        assert "nominal" in err

    def test_json_and_table_flags_conflict(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["encode", "--input", CARS, "--schema", SCHEMA, "--json", "--table"])
        assert exc.value.code == 1

    def test_missing_as_category_fills_blanks(self, capsys, tmp_path):
        csv = tmp_path / "m.csv"
        csv.write_text("c,y\na,P\n,P\na,Q\n")
        schema = tmp_path / "m.schema.json"
        schema.write_text(
            json.dumps(
                {
                    "columns": [
                        {"name": "c", "role": "nominal"},
                        {"name": "y", "role": "decision"},
                    ]
                }
            )
        )
        args = ["encode", "--input", str(csv), "--schema", str(schema), "--mode", "nominal"]
        code, _, err = run(capsys, args)
        assert code == 2 and "empty" in err
        code, out, _ = run(capsys, args + ["--missing-as-category", "unknown"])
        assert code == 0
        doc = json.loads(out)
        assert "unknown" in doc["codebooks"][0]["entries"]


class TestClusterCommand:
    def test_seed_zero_regression(self, capsys):
        code, out, _ = run(
            capsys,
            ["cluster", "--input", CARS, "--schema", SCHEMA, "--seed", "0", "--json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "combined"
        assert doc["k"] == 3
        assert doc["assignments"] == [2, 2, 0, 0, 2, 2, 2, 0, 2, 1]
        assert doc["inertia"] == pytest.approx(27.342603616529814, rel=1e-12)
        assert doc["iterations"] == 3
        assert doc["accuracy"] == pytest.approx(0.8)

    def test_text_output_lists_clusters_one_based(self, capsys):
        code, out, _ = run(
            capsys, ["cluster", "--input", CARS, "--schema", SCHEMA, "--seed", "0"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "assignments: 2 2 0 0 2 2 2 0 2 1"
        assert lines[1] == "cluster 0 (3 rows): 3 4 8"
        assert lines[2] == "cluster 1 (1 rows): 10"
        assert lines[3] == "cluster 2 (6 rows): 1 2 5 6 7 9"
        assert lines[4] == "inertia: 27.342604"
        assert lines[5] == "iterations: 3"
        assert lines[6] == "accuracy: 0.80"

    def test_explicit_k_overrides_label_count(self, capsys):
        code, out, _ = run(
            capsys,
            ["cluster", "--input", CARS, "--schema", SCHEMA, "--k", "2", "--json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["k"] == 2
        assert set(doc["assignments"]) == {0, 1}
        # two clusters cannot be matched injectively to three brands
        assert "accuracy" not in doc

    def test_k_above_label_count_still_scores(self, capsys):
        code, out, _ = run(
            capsys,
            ["cluster", "--input", CARS, "--schema", SCHEMA, "--k", "5", "--json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["k"] == 5
        assert 0.0 <= doc["accuracy"] <= 1.0

    def test_no_decision_and_no_k_is_a_usage_error(self, capsys, tmp_path):
        csv = tmp_path / "p.csv"
        csv.write_text("x\n1\n2\n9\n10\n")
        schema = tmp_path / "p.schema.json"
        schema.write_text(json.dumps({"columns": [{"name": "x", "role": "numeric"}]}))
        code, _, err = run(
            capsys, ["cluster", "--input", str(csv), "--schema", str(schema)]
        )
        assert code == 1
        assert "--k" in err

    def test_k_zero_is_rejected_by_the_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cluster", "--input", CARS, "--schema", SCHEMA, "--k", "0"])
        assert exc.value.code == 1

    def test_unknown_mode_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cluster", "--input", CARS, "--schema", SCHEMA, "--mode", "fourier"])
        assert exc.value.code == 1


class TestExperimentCommand:
    def test_defaults_run_the_bundled_dataset(self, capsys):
        code, out, _ = run(capsys, ["experiment"])
        assert code == 0
        assert "Numeric + ad hoc integer codes" in out
        assert "Coded nominal only" in out
        assert ">=90%" in out

    def test_master_seed_zero_table_regression(self, capsys):
        code, out, _ = run(capsys, ["experiment", "--seed", "0", "--repeats", "20"])
        assert code == 0
        lines = {line.split("  ")[0]: line for line in out.splitlines()}
        row = lines["Numeric + ad hoc integer codes"]
        assert row.split()[-6:] == ["4", "3", "7", "5", "1", "-"]
        row = lines["Coded nominal only"]
        assert row.split()[-6:] == ["-", "11", "2", "7", "-", "-"]

    def test_json_output_is_reproducible_byte_for_byte(self, capsys):
        args = ["experiment", "--json", "--seed", "3", "--repeats", "5"]
        code1, out1, _ = run(capsys, args)
        code2, out2, _ = run(capsys, args)
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["master_seed"] == 3
        assert [c["name"] for c in doc["conditions"]] == [
            "adhoc", "numeric", "nominal", "combined",
        ]

    def test_output_file_matches_stdout_json(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        args = [
            "experiment", "--json", "--repeats", "3", "--output", str(out_file),
        ]
        code, out, _ = run(capsys, args)
        assert code == 0
        assert out_file.read_text() == out

    def test_conditions_subset(self, capsys):
        code, out, _ = run(
            capsys,
            ["experiment", "--json", "--repeats", "2", "--conditions", "numeric,onehot"],
        )
        assert code == 0
        doc = json.loads(out)
        assert [c["name"] for c in doc["conditions"]] == ["numeric", "onehot"]

    def test_schema_without_decision_is_a_data_error(self, capsys, tmp_path):
        csv = tmp_path / "x.csv"
        csv.write_text("x\n1\n2\n")
        schema = tmp_path / "x.schema.json"
        schema.write_text(json.dumps({"columns": [{"name": "x", "role": "numeric"}]}))
        code, _, err = run(
            capsys, ["experiment", "--input", str(csv), "--schema", str(schema)]
        )
        assert code == 2
        assert "decision" in err

    def test_empty_conditions_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "--conditions", ","])
        assert exc.value.code == 1


class TestTopLevel:
    def test_no_subcommand_prints_usage(self, capsys):
        code = main([])
        captured = capsys.readouterr()
        assert code == 1
        assert "usage" in captured.err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["transmogrify"])
        assert exc.value.code == 1

    def test_entry_point_is_installed(self):
        import shutil

        assert shutil.which("complexrank") is not None
