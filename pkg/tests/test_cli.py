import json
import subprocess
import sys

import numpy as np

from powergraph.cli import main

from conftest import write_table_file


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_z12(self, capsys):
        code, out, _ = run_cli(capsys, "info", "Z(12)")
        assert code == 0
        assert "order 12" in out
        assert "cyclic subgroups: 6" in out
        assert "totient sum: 12 (matches order)" in out

    def test_q8(self, capsys):
        code, out, _ = run_cli(capsys, "info", "Q(8)")
        assert code == 0
        assert "cyclic subgroups: 5" in out
        assert "2x1" in out  # exactly one involution

    def test_parse_error_exit_code(self, capsys):
        code, out, err = run_cli(capsys, "info", "Z(0)")
        assert code == 2
        assert "error" in err

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "info", "Z(12)", "--json")
        data = json.loads(out)
        assert data["order"] == 12
        assert data["cyclic_subgroups"] == 6
        assert data["totient_sum_matches_order"] is True


class TestDim:
    def test_z30(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "Z(30)")
        assert code == 0
        assert "dimension (formula): 23" in out

    def test_verify_match(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "Z(2)xZ(2)xZ(3)", "--verify")
        assert code == 0
        assert "dimension (formula): 5" in out
        assert "dimension (oracle): 5  MATCH" in out

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "Z(6)", "--json")
        data = json.loads(out)
        assert data["dim_formula"] == 4
        assert data["u_count"] == 3
        assert data["psi"]["member"] is False
        assert data["spec"] == "Z(6)"

    def test_oracle_budget_inconclusive_is_ok_exit(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "E(2,3)xZ(9)", "--verify",
                               "--budget-seconds", "60")
        # order 72 exceeds the oracle vertex cap: inconclusive, not a failure
        assert code == 0
        assert "inconclusive" in out


class TestGraph:
    def test_edge_listing(self, capsys):
        code, out, _ = run_cli(capsys, "graph", "Z(2)")
        assert code == 0
        assert "2 vertices, 1 edges" in out
        assert "e -- g" in out

    def test_dot_output(self, capsys, tmp_path):
        target = tmp_path / "z2.dot"
        code, out, _ = run_cli(capsys, "graph", "Z(2)", "--dot", str(target))
        assert code == 0
        text = target.read_text()
        assert text == 'graph power {\n  v0 [label="e"];\n  v1 [label="g"];\n  v0 -- v1;\n}\n'

    def test_orientation_json(self, capsys):
        code, out, _ = run_cli(capsys, "graph", "Z(4)", "--kind", "orientation", "--json")
        data = json.loads(out)
        assert data["arcs"] == [[1, 0], [1, 2], [2, 0], [3, 0], [3, 1], [3, 2]]

    def test_adjacency_json(self, capsys):
        code, out, _ = run_cli(capsys, "graph", "Z(6)", "--json")
        data = json.loads(out)
        assert data["n"] == 6
        assert len(data["edges"]) == 13

    def test_digraph_kind(self, capsys):
        code, out, _ = run_cli(capsys, "graph", "Z(4)", "--kind", "digraph", "--json")
        data = json.loads(out)
        # arcs from the generator: everything; from g^2: only the identity
        assert [a for a in data["arcs"] if a[0] == 1] == [[1, 0], [1, 2], [1, 3]]
        assert [a for a in data["arcs"] if a[0] == 2] == [[2, 0]]


class TestClasses:
    def test_z6_text(self, capsys):
        code, out, _ = run_cli(capsys, "classes", "Z(6)")
        assert code == 0
        assert "twin classes (3):" in out
        assert "resolving involutions:" in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "classes", "Q(8)", "--json")
        data = json.loads(out)
        assert len(data["twin_classes"]) == 4
        assert data["resolving_involutions"] == []


class TestIso:
    def test_not_isomorphic(self, capsys):
        code, out, _ = run_cli(capsys, "iso", "Z(4)", "Z(2)xZ(2)")
        assert code == 0
        assert "NOT isomorphic" in out

    def test_isomorphic_groups(self, capsys):
        code, out, _ = run_cli(capsys, "iso", "D(3)", "S(3)", "--verify")
        assert code == 0
        assert "isomorphic (poset criterion)" in out
        assert "agrees" in out

    def test_poset_shapes_differ(self, capsys):
        code, out, _ = run_cli(capsys, "iso", "E(3,2)", "Z(9)")
        assert code == 0
        assert "NOT isomorphic" in out


class TestVerify:
    def test_d6_all_pass(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "D(6)")
        assert code == 0
        assert "8/8 checks passed" in out
        assert "FAIL" not in out

    def test_complete_graph_note(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "Z(27)")
        assert code == 0
        assert "power graph is complete (K_27)" in out

    def test_bad_table_reports_axiom(self, capsys, tmp_path):
        table = np.array([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        table[2, 2] = 2  # breaks the latin/associativity structure
        path = write_table_file(tmp_path / "bad.tbl", table)
        code, out, err = run_cli(capsys, "verify", f"table:{path}")
        assert code == 2
        assert "error" in err


class TestCorpus:
    def test_small_corpus_all_match(self, capsys):
        code, out, _ = run_cli(capsys, "corpus", "--max-order", "12")
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln and not ln.startswith(("spec", "-"))]
        assert all("ok" in ln for ln in lines if "groups" not in ln)
        assert "0 failures" in out

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(capsys, "corpus", "--max-order", "8", "--json")
        rows = json.loads(out)
        assert all(r["oracle_status"] == "match" for r in rows)
        assert all(r["checks_passed"] == r["checks_total"] for r in rows)
        assert any(r["spec"] == "Q(8)" for r in rows)

    def test_report_artifacts(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "corpus", "--max-order", "6",
                                 "--report-dir", str(tmp_path))
        assert code == 0
        assert (tmp_path / "corpus.csv").exists()
        assert (tmp_path / "dimension_vs_order.png").exists()
        assert (tmp_path / "twin_class_compression.png").exists()
        header = (tmp_path / "corpus.csv").read_text().splitlines()[0]
        assert header.startswith("spec,order,u_count,w_count")


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "powergraph.cli", "dim", "Z(6)"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert "dimension (formula): 4" in result.stdout
