"""Tests for pyqfim.cli."""
import io
import json
import math

import mock
import pytest

from pyqfim import cli, config
from pyqfim.statevec import dumps_state, ghz_state

TRIANGLE = "3; 1 2; 2 3; 3 1"
HYPEREDGE = "3; 1 2 3"


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys, *argv):
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestState:
    """Tests covering the state command."""

    def test_graph(self, capsys):
        """The triangle graph state has the CZ phase pattern."""
        data = _json(capsys, "state", "--graph", TRIANGLE)
        assert data["n_qubits"] == 3
        signs = [round(re * math.sqrt(8)) for re, _ in data["amplitudes"]]
        assert signs == [1, 1, 1, -1, 1, -1, -1, -1]

    def test_hypergraph(self, capsys):
        """Only |111> picks up a sign."""
        data = _json(capsys, "state", "--hypergraph", HYPEREDGE)
        signs = [round(re * math.sqrt(8)) for re, _ in data["amplitudes"]]
        assert signs == [1] * 7 + [-1]

    def test_ghz(self, capsys):
        """GHZ JSON matches the library state."""
        _, out, _ = _run(capsys, "state", "--ghz", "3")
        assert out == dumps_state(ghz_state(3)) + "\n"

    def test_edges(self, capsys):
        """--edges/--vertices is the same as --graph."""
        edges = _json(
            capsys, "state", "--edges", "1 2,2 3,3 1", "--vertices", "3"
        )
        assert edges == _json(capsys, "state", "--graph", TRIANGLE)

    def test_table(self, capsys):
        """Table format lists one basis state per line."""
        code, out, _ = _run(capsys, "state", "--ghz", "2", "--format", "table")
        assert code == 0
        assert out.splitlines() == [
            "00  0.707107 0",
            "01  0 0",
            "10  0 0",
            "11  0.707107 0",
        ]

    def test_terminal_defaults_to_table(self, capsys):
        """Without --format a terminal gets the table, a pipe gets JSON."""
        with mock.patch("sys.stdout.isatty", return_value=True):
            code, out, _ = _run(capsys, "state", "--ghz", "2")
        assert code == 0
        assert out.splitlines()[0] == "00  0.707107 0"
        data = _json(capsys, "state", "--ghz", "2")
        assert data["n_qubits"] == 2

    def test_out(self, capsys, tmp_path):
        """--out writes to a file and leaves stdout empty."""
        path = tmp_path / "ghz.json"
        code, out, _ = _run(capsys, "state", "--ghz", "3", "--out", str(path))
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["n_qubits"] == 3


class TestMetrics:
    """Tests covering the metrics and concurrence commands."""

    def test_graph(self, capsys):
        """The triangle graph state is at the Heisenberg limit."""
        data = _json(capsys, "metrics", "--graph", TRIANGLE)
        metrics = data["metrics"]
        assert metrics["chi2"] == pytest.approx(1 / 3, abs=1e-9)
        assert metrics["f_q"] == pytest.approx(9, abs=1e-9)
        assert metrics["v_f"] == pytest.approx(3, abs=1e-9)
        assert metrics["heisenberg_attained"]
        assert data["concurrence"]["total"] == pytest.approx(3, abs=1e-9)

    def test_hypergraph(self, capsys):
        """The hyperedge state gives the operator-path values."""
        data = _json(capsys, "metrics", "--hypergraph", HYPEREDGE)
        assert data["metrics"]["chi2"] == pytest.approx(0.5, abs=1e-9)
        assert data["metrics"]["f_q"] == pytest.approx(6, abs=1e-9)
        assert data["concurrence"]["total"] == pytest.approx(
            3 * math.sqrt(3) / 2, abs=1e-9
        )

    def test_product_params(self, capsys):
        """|000> from --params is separable with chi^2 = 1."""
        params = '{"alpha": 1, "beta": 0, "gamma": 0, "delta": 0}'
        data = _json(capsys, "metrics", "--params", params)
        assert data["metrics"]["chi2"] == pytest.approx(1.0, abs=1e-12)
        assert data["concurrence"]["total"] == 0

    def test_stdin_round_trip(self, capsys):
        """Piping the state JSON gives bit-identical metrics output."""
        _, state_json, _ = _run(capsys, "state", "--hypergraph", HYPEREDGE)
        _, inline, _ = _run(capsys, "metrics", "--hypergraph", HYPEREDGE)
        with mock.patch("sys.stdin", io.StringIO(state_json)):
            _, piped, _ = _run(capsys, "metrics", "--stdin")
        assert piped == inline

    def test_state_file(self, capsys, tmp_path):
        """--state-file reads the JSON format."""
        path = tmp_path / "state.json"
        path.write_text(dumps_state(ghz_state(3)))
        data = _json(capsys, "metrics", "--state-file", str(path))
        assert data["metrics"]["f_q"] == pytest.approx(9, abs=1e-9)

    def test_unnormalized_state(self, capsys, tmp_path):
        """A state off by more than 1e-6 in norm exits with 4."""
        path = tmp_path / "state.json"
        path.write_text(
            json.dumps({"n_qubits": 1, "amplitudes": [[1.0, 0.0], [0.1, 0]]})
        )
        code, out, err = _run(capsys, "metrics", "--state-file", str(path))
        assert code == 4
        assert out == ""
        assert "norm" in err

    def test_single_qubit(self, capsys):
        """One qubit has metrics but no concurrence."""
        state = json.dumps({"n_qubits": 1, "amplitudes": [[1, 0], [0, 0]]})
        with mock.patch("sys.stdin", io.StringIO(state)):
            data = _json(capsys, "metrics", "--stdin")
        assert data["concurrence"] is None
        assert data["metrics"]["chi2"] == pytest.approx(1.0)

    def test_no_sensitivity(self, capsys):
        """The singlet has chi2 null in JSON."""
        half = 1 / math.sqrt(2)
        amplitudes = [[0, 0], [half, 0], [-half, 0], [0, 0]]
        state = json.dumps({"n_qubits": 2, "amplitudes": amplitudes})
        with mock.patch("sys.stdin", io.StringIO(state)):
            data = _json(capsys, "metrics", "--stdin")
        assert data["metrics"]["chi2"] is None
        assert data["metrics"]["no_sensitivity"]

    def test_grid(self, capsys):
        """--grid adds the brute-force maximal variance."""
        data = _json(capsys, "metrics", "--ghz", "3", "--grid", "100000")
        assert data["metrics"]["brute_force_var_max"] == pytest.approx(
            data["metrics"]["var_max"], abs=1e-4
        )

    def test_table(self, capsys):
        """Table format rounds to six significant digits."""
        code, out, _ = _run(
            capsys, "metrics", "--graph", TRIANGLE, "--format", "table"
        )
        assert code == 0
        lines = dict(line.split(None, 1) for line in out.splitlines()[:3])
        assert lines["chi2"].strip() == "0.333333"

    def test_all_cuts(self, capsys):
        """--all-cuts lists the balanced cuts of four qubits."""
        data = _json(capsys, "concurrence", "--ghz", "4", "--all-cuts")
        assert len(data["cuts"]) == 7
        assert data["total"] == pytest.approx(7, abs=1e-9)


class TestExitCodes:
    """Tests covering the exit-code contract."""

    @pytest.mark.parametrize(
        "argv",
        (
            ("state", "--graph", "3; 1 4"),
            ("state", "--graph", HYPEREDGE),
            ("state", "--hypergraph", "3; 1 2 x"),
            ("state", "--ghz", "1"),
            ("state", "--params", "[1, 0]"),
            ("state", "--params", "{not json"),
            ("state", "--edges", "1 2"),
            ("state",),
            ("metrics", "--state-file", "/nonexistent/state.json"),
            ("sweep", "--preset", "table9"),
            ("sweep", "--vary", "delta"),
        ),
        ids=(
            "vertex-out-of-range",
            "graph-with-hyperedge",
            "malformed",
            "ghz-too-small",
            "params-not-object",
            "params-not-json",
            "edges-without-vertices",
            "no-source",
            "missing-file",
            "unknown-preset",
            "incomplete-sweep",
        ),
    )
    def test_usage_errors(self, capsys, argv):
        """Parse and usage errors exit with 2 and report on stderr."""
        code, out, err = _run(capsys, *argv)
        assert code == 2
        assert out == ""
        assert "error" in err

    def test_argparse_errors(self, capsys):
        """Unknown commands and reproduce targets exit with 2."""
        assert _run(capsys, "frobnicate")[0] == 2
        assert _run(capsys, "reproduce", "table9")[0] == 2

    def test_hypergraph_location(self, capsys):
        """Edge-list errors carry the line and column."""
        _, _, err = _run(capsys, "state", "--hypergraph", "3; 1 4")
        assert "line 1, column 6" in err

    def test_infeasible_params(self, capsys):
        """Parameters far from normalized exit with 3."""
        params = '{"alpha": 1, "beta": 1, "gamma": 0, "delta": 0}'
        assert _run(capsys, "state", "--params", params)[0] == 3

    def test_nan_state_file(self, capsys, tmp_path):
        """A NaN amplitude is an unnormalized input and exits with 4."""
        path = tmp_path / "state.json"
        path.write_text('{"n_qubits": 1, "amplitudes": [[NaN, 0], [0, 0]]}')
        code, out, err = _run(capsys, "metrics", "--state-file", str(path))
        assert code == 4
        assert out == ""
        assert "norm" in err

    def test_nan_params(self, capsys):
        """NaN parameters are infeasible and exit with 3."""
        params = '{"alpha": NaN, "beta": 0, "gamma": 0, "delta": 1}'
        assert _run(capsys, "metrics", "--params", params)[0] == 3

    def test_range_domain(self, capsys):
        """A sweep leaving the constraint exits with 3."""
        code, _, err = _run(
            capsys,
            "sweep",
            "--vary",
            "delta",
            "--start",
            "0",
            "--stop",
            "0.9",
            "--step",
            "0.1",
            "--dependent",
            "gamma",
            "--fixed",
            '{"alpha": -0.3535533905932738, "beta": 0.3535533905932738}',
            "--format",
            "csv",
        )
        assert code == 3
        assert "delta=0.9" in err


class TestSweepCommands:
    """Tests covering sweep and phase-sweep."""

    def test_csv(self, capsys):
        """CSV output starts with the mandatory header."""
        code, out, _ = _run(
            capsys,
            "sweep",
            "--preset",
            "table2a",
            "--step",
            "0.1",
            "--format",
            "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == (
            "varied_name,varied_value,dependent_name,dependent_value,chi2,f_q"
        )

    def test_concurrence_csv(self, capsys):
        """--concurrence appends the concurrence column."""
        code, out, _ = _run(
            capsys,
            "sweep",
            "--preset",
            "table2a",
            "--step",
            "0.1",
            "--concurrence",
            "--format",
            "csv",
        )
        assert code == 0
        assert out.splitlines()[0].endswith(",chi2,f_q,concurrence")

    def test_concurrence_json(self, capsys):
        """JSON rows gain concurrence and an ordering summary."""
        data = _json(
            capsys,
            "sweep",
            "--preset",
            "table1a",
            "--step",
            "0.1",
            "--concurrence",
        )
        assert all("concurrence" in row for row in data["rows"])
        order = data["concurrence_order"]
        assert order["count"] >= 0
        assert (order["first"] is None) == (order["count"] == 0)

    def test_json_extrema(self, capsys):
        """JSON output carries the refined minimum."""
        data = _json(
            capsys, "sweep", "--preset", "table2a", "--step", "0.001"
        )
        assert data["minimum"]["value"] == pytest.approx(
            math.sqrt(3 / 8), abs=1e-5
        )
        assert data["minimum"]["chi2"] == pytest.approx(1 / 3, abs=1e-9)
        assert data["maximum"]["boundary"]

    def test_custom_phase_sweep(self, capsys):
        """A phase sweep built from flags writes the phase columns."""
        code, out, _ = _run(
            capsys,
            "phase-sweep",
            "--phase",
            "mu",
            "--phase-stop",
            "3.2",
            "--phase-step",
            "1.6",
            "--vary",
            "delta",
            "--start",
            "0",
            "--stop",
            "0.7",
            "--step",
            "0.35",
            "--dependent",
            "gamma",
            "--fixed",
            '{"alpha": 0.5, "beta": 0.5}',
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("phase_name,phase_value,varied_name")
        assert len(lines) == 1 + 3 * 3

    def test_preset_phase_sweep(self, capsys):
        """Phase-sweep presets accept a coarser amplitude step."""
        data = _json(
            capsys,
            "phase-sweep",
            "--preset",
            "fig6_mu_nu0_eta0",
            "--step",
            "0.35",
            "--phase-step",
            "3.0",
        )
        assert data["phase_name"] == "mu"
        assert len(data["rows"]) == 3 * 3
        assert set(data["argmax"]) == {"phase", "value", "chi2"}


class TestReproduce:
    """Tests covering the reproduce command."""

    def test_table2(self, capsys):
        """Table 2 prints CSVs, then a summary; the minimum passes."""
        code, out, _ = _run(capsys, "reproduce", "table2", "--step", "0.001")
        assert code == 0
        assert out.startswith("# table2a\nvaried_name,")
        assert "# table2b\n" in out
        summary = [line for line in out.splitlines() if "table2a min" in line]
        assert len(summary) == 2
        assert all(line.endswith("PASS") for line in summary)

    def test_failing_verdicts_exit_zero(self, capsys):
        """Unreproducible published values are FAIL, but exit 0."""
        code, out, _ = _run(capsys, "reproduce", "table1", "--step", "0.01")
        assert code == 0
        assert "FAIL" in out
        assert "checks passed" in out.splitlines()[-1]

    def test_out_directory(self, capsys, tmp_path):
        """--out writes one CSV per sweep; stdout has only the summary."""
        code, out, _ = _run(
            capsys,
            "reproduce",
            "fig5",
            "--step",
            "0.01",
            "--out",
            str(tmp_path / "fig5"),
        )
        assert code == 0
        names = sorted(p.name for p in (tmp_path / "fig5").iterdir())
        assert names == ["fig5a.csv", "fig5b.csv", "fig5c.csv", "fig5d.csv"]
        assert not out.startswith("#")
        assert out.splitlines()[0].split()[0] == "check"
        graph = [
            line
            for line in out.splitlines()
            if line.split()[1:2] == ["graph"]
        ]
        assert len(graph) == 2
        assert all(line.endswith("PASS") for line in graph)


class TestConfigOption:
    """Tests covering --config."""

    def test_missing_config(self, capsys):
        """A missing --config file is a usage error."""
        assert _run(capsys, "--config", "/nonexistent.toml", "state")[0] == 2

    def test_config_step(self, capsys, tmp_path):
        """--config changes the default amplitude step."""
        path = tmp_path / "pyqfim.toml"
        path.write_text("[sweep]\namplitude_step = 0.1\n")
        with mock.patch.dict("os.environ", clear=False):
            code, out, _ = _run(
                capsys,
                "--config",
                str(path),
                "sweep",
                "--preset",
                "table2a",
                "--format",
                "csv",
            )
        config.default_config.cache_clear()
        assert code == 0
        assert len(out.splitlines()) == 1 + 9
