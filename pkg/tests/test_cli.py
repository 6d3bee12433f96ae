"""Tests for the command-line front end."""

import csv
import io
import json

import pytest

from contact_interactions import __version__
from contact_interactions.cli import IDENTICAL_COLUMNS
from contact_interactions.cli import SCATTER_COLUMNS
from contact_interactions.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


class TestScatterCommand:
    """Test the scatter command."""

    def test_single_delta_point(self, capsys):
        """scatter --delta 2 --k 1 gives one row with T = 0.5."""
        code, out, _ = run(capsys, "scatter", "--delta", "2", "--k", "1")
        assert code == 0
        assert out.splitlines()[0] == ",".join(SCATTER_COLUMNS)
        table = rows(out)
        assert len(table) == 1
        assert float(table[0]["T"]) == pytest.approx(0.5, abs=1e-12)

    def test_identity_matrix(self, capsys):
        """Identity transmits fully."""
        code, out, _ = run(capsys, "scatter", "--matrix", "1,0,0,1", "--k", "1")
        assert code == 0
        assert float(rows(out)[0]["T"]) == 1.0

    def test_epsilon_grid(self, capsys):
        """Fifty k-values, all unitary."""
        code, out, _ = run(capsys, "scatter", "--epsilon", "2", "--k-grid", "0.1:10:50")
        assert code == 0
        table = rows(out)
        assert len(table) == 50
        for row in table:
            assert float(row["T"]) + float(row["R"]) == pytest.approx(1.0, abs=1e-12)
        assert [float(row["k"]) for row in table] == sorted(float(row["k"]) for row in table)

    def test_json_output(self, capsys):
        """JSON carries the requested quantity."""
        code, out, _ = run(capsys, "scatter", "--delta", "2", "--k-grid", "0.5:2:4", "--quantity", "R", "--output", "json")
        assert code == 0
        document = json.loads(out)
        assert document["quantity"] == "R"
        assert len(document["k"]) == len(document["values"]) == 4

    def test_lf_line_endings(self, capsys):
        """CSV uses bare LF."""
        _, out, _ = run(capsys, "scatter", "--delta", "1", "--k-grid", "1:2:3")
        assert "\r" not in out
        assert out.endswith("\n")

    def test_deterministic(self, capsys):
        """Identical invocations give identical bytes."""
        argv = ("scatter", "--epsilon", "0.7", "--k-grid", "0.1:10:25", "--log")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_out_file(self, capsys, tmp_path):
        """--out writes the same bytes as stdout."""
        target = tmp_path / "sweep.csv"
        _, stdout_text, _ = run(capsys, "scatter", "--delta", "2", "--k-grid", "0.5:2:4")
        code, out, _ = run(capsys, "scatter", "--delta", "2", "--k-grid", "0.5:2:4", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_bytes() == stdout_text.encode("utf-8")

    def test_non_unimodular_matrix(self, capsys):
        """det != 1 exits with 2 and a one-line message."""
        code, out, err = run(capsys, "scatter", "--matrix", "1,1,1,1", "--k", "1")
        assert code == 2
        assert out == ""
        assert err.startswith("error:")
        assert len(err.strip().splitlines()) == 1

    def test_negative_wavenumber(self, capsys):
        """k <= 0 exits with 2."""
        code, out, _ = run(capsys, "scatter", "--delta", "2", "--k", "-1")
        assert code == 2
        assert out == ""

    def test_interaction_required(self):
        """One of --delta, --epsilon, --matrix is mandatory."""
        with pytest.raises(SystemExit) as exc_info:
            main(["scatter", "--k", "1"])
        assert exc_info.value.code == 2


class TestIdenticalCommand:
    """Test the identical-particle command."""

    def test_delta_bosons(self, capsys):
        """delta(2) at k = 1 gives C = -i."""
        code, out, _ = run(capsys, "identical", "--delta", "2", "--statistics", "boson", "--k", "1")
        assert code == 0
        assert out.splitlines()[0] == ",".join(IDENTICAL_COLUMNS)
        row = rows(out)[0]
        assert float(row["Re_C"]) == pytest.approx(0.0, abs=1e-12)
        assert float(row["Im_C"]) == pytest.approx(-1.0, abs=1e-12)

    def test_asymmetric_matrix(self, capsys):
        """t != s exits with 2."""
        code, _, err = run(capsys, "identical", "--matrix", "2,1,1,1", "--statistics", "boson", "--k", "1")
        assert code == 2
        assert "t = s" in err


class TestRegularizeCommand:
    """Test the regularize command."""

    def test_first_order(self, capsys):
        """(u=1, k=1) reports an order close to one."""
        code, out, _ = run(capsys, "regularize", "--u", "1", "--k", "1", "--a", "1e-2,1e-3,1e-4")
        assert code == 0
        report = json.loads(out)
        assert report["target"] == "epsilon"
        assert 0.8 <= report["fitted_order"] <= 1.2
        assert [point["a"] for point in report["points"]] == [1e-2, 1e-3, 1e-4]

    def test_log_grid(self, capsys):
        """--a-grid with --log sweeps downward."""
        code, out, _ = run(capsys, "regularize", "--u", "2", "--a-grid", "1e-5:1e-2:4", "--log")
        assert code == 0
        points = json.loads(out)["points"]
        assert points[0]["a"] == pytest.approx(1e-2)
        assert points[-1]["a"] == pytest.approx(1e-5)

    def test_empty_a_list(self, capsys):
        """An empty a-list exits with 2."""
        code, out, _ = run(capsys, "regularize", "--u", "1", "--a", "")
        assert code == 2
        assert out == ""

    def test_zero_strength(self, capsys):
        """u = 0 exits with 2 and says why."""
        code, _, err = run(capsys, "regularize", "--u", "0", "--a", "1e-2,1e-3,1e-4")
        assert code == 2
        assert "epsilon strength must be nonzero" in err

    def test_csv_output(self, capsys):
        """CSV lists a and error."""
        code, out, _ = run(capsys, "regularize", "--u", "1", "--a", "1e-2,1e-3,1e-4", "--output", "csv")
        assert code == 0
        assert out.splitlines()[0] == "a,error"
        assert len(rows(out)) == 3


class TestDecomposeCommand:
    """Test the decompose command."""

    def test_three_factors(self, capsys):
        """2,3,1,2 is delta(1) epsilon(1) delta(1)."""
        code, out, _ = run(capsys, "decompose", "2,3,1,2")
        assert code == 0
        document = json.loads(out)
        assert document["steps"] == [
            {"kind": "delta", "strength": 1.0},
            {"kind": "epsilon", "strength": 1.0},
            {"kind": "delta", "strength": 1.0},
        ]
        assert document["reconstruction_error"] < 1e-12

    def test_identity(self, capsys):
        """Identity gives six factors."""
        code, out, _ = run(capsys, "decompose", "1,0,0,1")
        assert code == 0
        document = json.loads(out)
        assert document["branch"] == "diagonal"
        assert len(document["steps"]) == 6
        assert document["reconstruction_error"] < 1e-12

    def test_negative_entries(self, capsys):
        """--matrix=... accepts a leading minus sign."""
        code, out, _ = run(capsys, "decompose", "--matrix=-2,-3,-1,-2")
        assert code == 0
        assert json.loads(out)["reconstruction_error"] < 1e-12

    def test_larger_strategy(self, capsys):
        """--strategy larger pivots on the larger off-diagonal."""
        code, out, _ = run(capsys, "decompose", "2,3,1,2", "--strategy", "larger")
        assert code == 0
        assert json.loads(out)["branch"] == "epsilon-delta-epsilon"

    def test_singular(self, capsys):
        """det = 0 exits with 2."""
        code, out, _ = run(capsys, "decompose", "1,1,1,1")
        assert code == 2
        assert out == ""


class TestDualityCommand:
    """Test the duality command."""

    def test_transmission(self, capsys):
        """tr mode agrees over the grid."""
        code, out, _ = run(capsys, "duality", "tr", "--v", "2", "--k-grid", "0.1:10:100")
        assert code == 0
        document = json.loads(out)
        assert document["max_dev"] < 1e-12
        assert document["passed"] is True
        assert document["k_count"] == 100

    def test_exchange(self, capsys):
        """exchange mode agrees over the grid."""
        code, out, _ = run(capsys, "duality", "exchange", "--v", "2", "--u", "2", "--k-grid", "0.1:10:100")
        assert code == 0
        assert json.loads(out)["max_dev"] < 1e-12

    def test_exchange_needs_related_strengths(self, capsys):
        """vu != 4 exits with 2."""
        code, out, _ = run(capsys, "duality", "exchange", "--v", "1", "--u", "1")
        assert code == 2
        assert out == ""

    def test_exchange_needs_u(self, capsys):
        """exchange mode without --u exits with 2."""
        code, _, _ = run(capsys, "duality", "exchange", "--v", "1")
        assert code == 2


class TestChainCommand:
    """Test the chain command."""

    def test_sites(self, capsys):
        """A single delta site matches the closed form."""
        code, out, _ = run(capsys, "chain", "--site", "delta:2@0.3", "--k", "1")
        assert code == 0
        assert float(rows(out)[0]["T"]) == pytest.approx(0.5, abs=1e-12)

    def test_sites_are_sorted(self, capsys):
        """Sites may be given in any order."""
        _, forward, _ = run(capsys, "chain", "--site", "delta:1@0", "--site", "epsilon:1@1", "--k", "1")
        _, backward, _ = run(capsys, "chain", "--site", "epsilon:1@1", "--site", "delta:1@0", "--k", "1")
        assert forward == backward

    def test_file(self, capsys, tmp_path):
        """--file loads a YAML chain."""
        path = tmp_path / "chain.yaml"
        path.write_text("interactions:\n  - {kind: delta, strength: 2.0, position: 0.0}\n", encoding="utf-8")
        code, out, _ = run(capsys, "chain", "--file", str(path), "--k", "1")
        assert code == 0
        assert float(rows(out)[0]["T"]) == pytest.approx(0.5, abs=1e-12)

    def test_missing_file(self, capsys, tmp_path):
        """An unreadable file exits with 2."""
        code, _, err = run(capsys, "chain", "--file", str(tmp_path / "absent.yaml"))
        assert code == 2
        assert "Cannot read" in err

    def test_realize_with_deltas(self, capsys):
        """A delta-only realization transmits close to the target matrix."""
        code, out, _ = run(capsys, "chain", "--realize", "2,3,1,2", "--b", "0.01", "--a", "0.001", "--k", "1")
        assert code == 0
        assert float(rows(out)[0]["T"]) == pytest.approx(0.2, abs=0.05)

    def test_realize_needs_spacing(self, capsys):
        """--realize without --b exits with 2."""
        code, _, _ = run(capsys, "chain", "--realize", "2,3,1,2")
        assert code == 2

    def test_requires_one_source(self, capsys):
        """Exactly one chain source is needed."""
        code, _, _ = run(capsys, "chain", "--k", "1")
        assert code == 2
        code, _, _ = run(capsys, "chain", "--site", "delta:1@0", "--realize", "2,3,1,2", "--b", "0.1")
        assert code == 2


class TestPackage:
    """Test package metadata."""

    def test_version(self):
        """Version is exported."""
        assert __version__ == "0.1.0"
