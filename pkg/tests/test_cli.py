"""CLI contract tests: golden outputs, CSV shape, exit codes."""

import pytest

from mkzmoments.cli import CSV_HEADER, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_linearity(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--r", "1", "--n", "5", "--x", "0.3")
        assert code == 0 and out.strip() == "0.3"

    def test_normalization(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--r", "0", "--n", "2", "--x", "0.9")
        assert code == 0 and out.strip() == "1"

    def test_second_moment_value(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--r", "2", "--n", "1", "--x", "0.5")
        assert code == 0 and out.strip().startswith("0.34657359")

    def test_fraction_input(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--r", "2", "--n", "1", "--x", "1/2")
        assert code == 0 and out.strip().startswith("0.34657359")

    def test_verbose_diagnostics_on_stderr(self, capsys):
        code, out, err = run_cli(
            capsys, "eval", "--r", "2", "--n", "4", "--x", "0.02", "-v"
        )
        assert code == 0
        assert "branch: series-oracle" in err
        assert "tail_bound" in err
        assert out.strip() and "branch" not in out

    def test_negative_x_requires_flag(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--r", "1", "--n", "2", "--x", "-0.5")
        assert code == 2 and "error:" in err
        code, out, _ = run_cli(
            capsys, "eval", "--r", "1", "--n", "2", "--x", "-0.5", "--allow-negative-x"
        )
        assert code == 0 and out.strip() == "-0.5"

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--r", "2", "--n", "1", "--x", "1.5")
        assert code == 2 and err.startswith("error:")

    def test_parse_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["eval", "--r", "not-a-number", "--n", "1", "--x", "0.5"])
        assert excinfo.value.code == 2


class TestExpr:
    @pytest.mark.parametrize("n", [1, 9, 17, 30])
    def test_linear_moment_prints_x(self, capsys, n):
        code, out, _ = run_cli(capsys, "expr", "--r", "1", "--n", str(n))
        assert code == 0 and out.strip() == "x"

    def test_constant(self, capsys):
        code, out, _ = run_cli(capsys, "expr", "--r", "0", "--n", "1")
        assert code == 0 and out.strip() == "1"

    def test_latex_contains_log(self, capsys):
        code, out, _ = run_cli(
            capsys, "expr", "--r", "2", "--n", "2", "--format", "latex"
        )
        assert code == 0 and "\\log(1-x)" in out

    def test_plain_term_order(self, capsys):
        code, out, _ = run_cli(capsys, "expr", "--r", "3", "--n", "2")
        assert code == 0
        text = out.strip()
        assert text.index("log(1-x)") < text.index("Li_2(x)") or "Li_2" not in text


class TestCompare:
    def test_header_and_exit(self, capsys):
        code, out, _ = run_cli(
            capsys, "compare", "--r-range", "0:2", "--n-range", "1:2",
            "--x-grid", "0.25,0.5",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == CSV_HEADER
        assert CSV_HEADER == "r,n,x,oracle,theorem,corollary,alkemade,max_dev,tail_bound"
        assert len(lines) == 1 + 3 * 2 * 2

    def test_r_zero_rows(self, capsys):
        _, out, _ = run_cli(
            capsys, "compare", "--r-range", "0:0", "--n-range", "2:2",
            "--x-grid", "0.3",
        )
        row = out.strip().splitlines()[1].split(",")
        assert row[4] == "1"  # theorem column exactly one
        assert row[5] == "" and row[6] == ""  # inapplicable representations

    def test_round_trip_is_byte_identical(self, capsys):
        _, out, _ = run_cli(
            capsys, "compare", "--r-range", "1:2", "--n-range", "1:3",
            "--x-grid", "0.1,0.55,0.9",
        )
        lines = out.strip().splitlines()
        for line in lines[1:]:
            cells = line.split(",")
            re_emitted = [cells[0], cells[1]] + [
                "" if c == "" else "%.17g" % float(c) for c in cells[2:]
            ]
            assert ",".join(re_emitted) == line

    def test_disagreement_exit_1(self, capsys):
        code, _, err = run_cli(
            capsys, "compare", "--r-range", "2:2", "--n-range", "1:1",
            "--x-grid", "0.5", "--fail-threshold", "1e-30",
        )
        assert code == 1 and "disagreement" in err

    def test_ordering_deterministic(self, capsys):
        _, out, _ = run_cli(
            capsys, "compare", "--r-range", "1:2", "--n-range", "1:2",
            "--x-grid", "0.7,0.2",
        )
        keys = []
        for line in out.strip().splitlines()[1:]:
            cells = line.split(",")
            keys.append((int(cells[0]), int(cells[1]), float(cells[2])))
        assert keys == sorted(keys)


class TestBench:
    def test_empty_range(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--n-max", "0", "--repeats", "1")
        assert code == 0
        assert len(out.strip().splitlines()) == 1  # header only

    def test_default_grid_shape_and_accuracy(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--n-max", "5", "--repeats", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1 + 5 * 3
        header = lines[0].split(",")
        dev_cols = [i for i, name in enumerate(header) if name.endswith("_dev")]
        for line in lines[1:]:
            cells = line.split(",")
            for i in dev_cols:
                assert cells[i] != "" and float(cells[i]) <= 1e-9
