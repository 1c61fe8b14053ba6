"""Command-line interface: reports, exit codes, determinism."""

import json

import pytest

from disjointness.cli import main
from disjointness.codes import dumps_code_file
from disjointness.families import five_qubit, four_two_two, reed_muller


@pytest.fixture()
def five_qubit_file(tmp_path):
    inst = five_qubit()
    path = tmp_path / "five.qec"
    path.write_text(dumps_code_file(inst.code, inst.partition))
    return path


@pytest.fixture()
def c422_file(tmp_path):
    inst = four_two_two()
    path = tmp_path / "c422.qec"
    path.write_text(dumps_code_file(inst.code, inst.partition))
    return path


def test_analyze_five_qubit(five_qubit_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["analyze", str(five_qubit_file), "--json", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "5/3" in text
    report = json.loads(out.read_text())
    assert report["schema"] == 1
    assert report["metrics"]["disjointness"]["lo"] == "5/3"
    assert report["metrics"]["disjointness"]["exact"] is True
    assert report["bounds"][0]["theorem"] == "transversal"
    assert report["bounds"][0]["level"] == 2
    assert report["toffoli_excluded"] is True
    assert report["timings"] is None


def test_analyze_c422_c_table(c422_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["analyze", str(c422_file), "--c-max", "3", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    table = report["metrics"]["c_disjointness_per_class"]["1,0,0,0"]
    assert table["1"]["lo"] == "2"
    assert table["2"]["lo"] == "3/2"
    assert table["3"]["lo"] == "4/3"
    assert all(table[c]["exact"] for c in ("1", "2", "3"))


def test_analyze_deterministic_output(five_qubit_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", str(five_qubit_file), "--json", str(a), "--seed", "7"]) == 0
    assert main(["analyze", str(five_qubit_file), "--json", str(b), "--seed", "7"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_analyze_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.qec"
    bad.write_text("dim = 2\nn = 2\nstabilizer XQ\n")
    assert main(["analyze", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_analyze_budget_degraded_exit_code(five_qubit_file):
    assert main(["analyze", str(five_qubit_file), "--budget", "8"]) == 3


def test_analyze_partition_override(five_qubit_file, tmp_path, capsys):
    pfile = tmp_path / "parts.txt"
    pfile.write_text("partition 0 1 | 2 3 | 4\n")
    assert main(["analyze", str(five_qubit_file), "--partition", str(pfile)]) == 0
    assert "3 parts" in capsys.readouterr().out


def test_analyze_witness_file(five_qubit_file, tmp_path, capsys):
    inst = five_qubit()
    from disjointness.metrics import disjointness, dumps_witness_file, DisjointWitness

    s = disjointness(inst.code, inst.partition)
    ws = [
        DisjointWitness(lb, s.achieving_c, members)
        for lb, members in s.witnesses.items()
    ]
    wfile = tmp_path / "wit.txt"
    wfile.write_text(dumps_witness_file(ws))
    out = tmp_path / "r.json"
    code = main([
        "analyze", str(five_qubit_file), "--budget", "8",
        "--witness", str(wfile), "--json", str(out),
    ])
    assert code == 3  # still degraded, but with a certified lower bound
    report = json.loads(out.read_text())
    assert report["metrics"]["disjointness"]["lo"] == "5/3"
    assert report["metrics"]["disjointness"]["method"] == "witness-backed"


def test_family_emits_code_file(tmp_path, capsys):
    out = tmp_path / "steane.qec"
    assert main(["family", "reed-muller", "--D", "2", "-o", str(out)]) == 0
    from disjointness.codes import load_code_file

    code, _ = load_code_file(out)
    assert (code.n, code.k) == (7, 1)


def test_family_stdout(capsys):
    assert main(["family", "c422"]) == 0
    text = capsys.readouterr().out
    assert "stabilizer XXXX" in text and "stabilizer ZZZZ" in text


def test_family_analyze_five_qubit(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["family", "five-qubit", "--analyze", "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["metrics"]["disjointness"]["lo"] == "5/3"


def test_family_c105_rows_level_two(tmp_path):
    out = tmp_path / "r.json"
    code = main([
        "family", "c105", "--partition", "rows", "--analyze",
        "--verify-declared", "--json", str(out),
    ])
    assert code == 3  # declared/witness-backed values present
    report = json.loads(out.read_text())
    assert report["metrics"]["exhaustive"] is False
    assert report["metrics"]["disjointness"]["method"] == "witness-backed"
    assert report["bounds"][0]["level"] == 2


def test_family_missing_parameter(capsys):
    assert main(["family", "surface"]) == 2
    assert "--l" in capsys.readouterr().err


def test_family_shallow_and_permuting_flags(tmp_path):
    out = tmp_path / "r.json"
    code = main([
        "family", "five-qubit", "--analyze", "--shallow", "2", "1",
        "--permuting", "--multiblock", "2", "--json", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    theorems = {b["theorem"]: b["level"] for b in report["bounds"]}
    assert theorems["multiblock"] == 5
    assert theorems["permuting-single"] == 3
    assert "shallow" in theorems


def test_verify_subcommand(tmp_path, capsys):
    inst = reed_muller(2)
    code_file = tmp_path / "steane.qec"
    code_file.write_text(dumps_code_file(inst.code, inst.partition))
    circ_file = tmp_path / "h7.circ"
    circ_file.write_text("; ".join(f"gate {q} H" for q in range(7)) + "\n")
    assert main(["verify", str(code_file), str(circ_file)]) == 0
    text = capsys.readouterr().out
    assert "hierarchy level: 2" in text
    assert "bound consistency: ok" in text


def test_verify_not_logical(tmp_path, capsys):
    inst = reed_muller(2)
    code_file = tmp_path / "steane.qec"
    code_file.write_text(dumps_code_file(inst.code, inst.partition))
    circ_file = tmp_path / "t0.circ"
    circ_file.write_text("gate 0 T\n")
    assert main(["verify", str(code_file), str(circ_file)]) == 0
    assert "not-logical" in capsys.readouterr().out


def test_verify_oracle_flag(five_qubit_file):
    assert main([
        "analyze", str(five_qubit_file), "--verify-oracle", "--seed", "3"
    ]) == 0
