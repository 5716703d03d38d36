import numpy as np
import pytest

from rebalance.cli import METHODS, build_parser, build_sampler, run_cli
from rebalance.cli_io import read_csv, write_csv
from rebalance.core import Dataset
from rebalance.exceptions import ParseError, ShapeError
from rebalance.synthgen import make_imbalanced


@pytest.fixture
def f1_csv(tmp_path, f1):
    path = tmp_path / "f1.csv"
    write_csv(f1, path)
    return path


@pytest.fixture
def gen_csv(tmp_path):
    path = tmp_path / "gen.csv"
    assert run_cli(["generate", "--n", "200", "--features", "3", "--weights", "0.2,0.8",
                    "--seed", "3", "-o", str(path)]) == 0
    return path


class TestCsv:
    def test_round_trip(self, f1_csv, f1):
        back = read_csv(f1_csv)
        assert back.equals(f1)

    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(50, 4)) * 10.0 ** rng.integers(-300, 300, size=(50, 4))
        d = Dataset(X, ["x", "y"] * 25)
        write_csv(d, tmp_path / "a.csv")
        assert read_csv(tmp_path / "a.csv").features.tobytes() == d.features.tobytes()

    def test_header(self, f1_csv):
        assert f1_csv.read_text().splitlines()[0] == "f0,label"

    def test_parse_error_location(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("f0,f1,label\n1,2,a\n3,4,b\n5,oops,a\n")
        with pytest.raises(ParseError) as exc:
            read_csv(path)
        assert (exc.value.row, exc.value.column) == (3, 2)
        assert "row 3, column 2" in str(exc.value)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ShapeError):
            read_csv(path)

    def test_ragged(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("f0,f1,label\n1,2,a\n3,b\n")
        with pytest.raises(ShapeError):
            read_csv(path)

    def test_labels_stay_tokens(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("f0,label\n1.0,007\n2.0,7\n")
        assert read_csv(path).labels.tolist() == ["007", "7"]


class TestCommands:
    def test_stats(self, f1_csv, capsys):
        assert run_cli(["stats", "-i", str(f1_csv)]) == 0
        assert capsys.readouterr().out.strip() == "minority=P n_min=2 n_maj=4 ratio=0.5"

    @pytest.mark.parametrize("method", METHODS)
    def test_resample_every_method(self, method, gen_csv, tmp_path):
        out = tmp_path / "out.csv"
        assert run_cli(["resample", "--method", method, "--seed", "1", "-i", str(gen_csv),
                        "-o", str(out)]) == 0
        assert read_csv(out).n_samples > 0

    def test_output_equals_api(self, gen_csv, tmp_path):
        out = tmp_path / "cli.csv"
        argv = ["resample", "--method", "smote", "--ratio", "auto", "--seed", "42",
                "-i", str(gen_csv), "-o", str(out)]
        assert run_cli(argv) == 0
        args = build_parser().parse_args(argv)
        api = build_sampler(args).fit_sample(read_csv(gen_csv))
        write_csv(api.dataset, tmp_path / "api.csv")
        assert out.read_bytes() == (tmp_path / "api.csv").read_bytes()

    def test_unknown_method(self, gen_csv, tmp_path, capsys):
        code = run_cli(["resample", "--method", "nearmiss9", "-i", str(gen_csv),
                        "-o", str(tmp_path / "x.csv")])
        assert code == 2
        assert "usage" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        ["resample", "--method", "smote", "--ratio", "2", "-i", "a", "-o", "b"],
        ["resample", "--method", "smote", "--seed", "-3", "-i", "a", "-o", "b"],
        ["generate", "--n", "10", "--features", "2", "--weights", "0.5", "-o", "x"],
        ["frobnicate"],
        [],
    ])
    def test_usage_errors(self, argv):
        assert run_cli(argv) == 2

    def test_data_error_exit_1(self, tmp_path, capsys):
        path = tmp_path / "one.csv"
        path.write_text("f0,label\n1.0,a\n2.0,a\n")
        assert run_cli(["stats", "-i", str(path)]) == 1
        err = capsys.readouterr().err
        assert err.count("\n") == 1 and "error" in err

    def test_missing_file_exit_1(self, tmp_path):
        assert run_cli(["stats", "-i", str(tmp_path / "nope.csv")]) == 1

    def test_generate_invalid_weights_exit_1(self, tmp_path):
        assert run_cli(["generate", "--n", "10", "--features", "2", "--weights", "0.7,0.3",
                        "-o", str(tmp_path / "g.csv")]) == 1

    @pytest.mark.parametrize("method,flag", [("easy", "--n-subsets"), ("cascade", "--max-iter")])
    def test_ensemble(self, method, flag, gen_csv, tmp_path):
        out = tmp_path / "ens"
        assert run_cli(["ensemble", "--method", method, flag, "3", "--seed", "2",
                        "-i", str(gen_csv), "--out-dir", str(out)]) == 0
        names = sorted(p.name for p in out.iterdir())
        assert names[0] == "subset_000.csv"
        assert 1 <= len(names) <= 3

    def test_generate_matches_api(self, gen_csv):
        api = make_imbalanced(200, 3, [0.2, 0.8], seed=3)
        assert read_csv(gen_csv).features.tobytes() == api.features.tobytes()

    def test_help(self):
        assert run_cli(["--help"]) == 0
