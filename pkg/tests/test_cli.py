import pytest

from app.main import run
from app.services.output_service import OutputService


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def z_values(out):
    return [record.z for record in OutputService.parse_json_lines(out)]


def table_z_column(out):
    header, *lines = out.splitlines()
    index = header.split().index("z")
    return [int(line.split()[index]) for line in lines]


# --- enumerate ---

def test_enumerate_seed13_json(capsys, golden):
    code, out, _ = invoke(capsys, "enumerate", "--gap", "7", "--seed", "13", "--count", "2", "--format", "json")
    assert code == 0
    assert out == golden("enumerate_gap7_seed13.jsonl")


def test_enumerate_stitched_csv(capsys, golden):
    code, out, _ = invoke(capsys, "enumerate", "--gap", "7", "--seed", "stitched", "--count", "2", "--format", "csv")
    assert code == 0
    assert out == golden("enumerate_gap7_stitched.csv")


def test_enumerate_stitched_default_format(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--gap", "7", "--seed", "stitched", "--count", "2")
    assert code == 0
    assert z_values(out) == [97, 17, 5, 13, 73]


def test_enumerate_seed17(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--seed", "17", "--count", "4")
    assert code == 0
    assert z_values(out) == [17, 97, 565, 3293]


def test_enumerate_cimmino(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--gap", "1", "--count", "3")
    assert code == 0
    assert z_values(out) == [5, 29, 169]


def test_enumerate_cimmino_stitched_skips_anchor(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--gap", "1", "--seed", "stitched", "--count", "2")
    assert code == 0
    records = OutputService.parse_json_lines(out)
    assert all(r.x * r.y != 0 for r in records)
    assert [r.k for r in records] == [-2, 1, 2]


def test_enumerate_large_terms_printed_in_full(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--count", "40", "--format", "csv")
    assert code == 0
    last = out.splitlines()[-1].split(",")
    assert "e" not in last[7] and len(last[7]) > 25


@pytest.mark.parametrize(
    "argv",
    [
        ("enumerate", "--gap", "7", "--seed", "19"),
        ("enumerate", "--gap", "3"),
        ("enumerate", "--count", "0"),
        ("enumerate", "--gap", "8"),
    ],
)
def test_enumerate_errors(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error:" in err


# --- verify ---

def test_verify_gap7(capsys):
    code, out, _ = invoke(capsys, "verify", "--gap", "7", "--z-max", "100000")
    assert code == 0
    assert out.strip() == "EQUAL (11 triples)"


def test_verify_cimmino_with_workers(capsys):
    code, out, _ = invoke(capsys, "verify", "--gap", "1", "--z-max", "1000000", "--workers", "4")
    assert code == 0
    assert out.strip() == "EQUAL (7 triples)"


def test_verify_empty_gap(capsys):
    code, out, _ = invoke(capsys, "verify", "--gap", "3", "--z-max", "1000")
    assert code == 0
    assert out.strip() == "EQUAL (0 triples)"


@pytest.mark.slow
def test_verify_ten_million(capsys):
    code, out, _ = invoke(capsys, "verify", "--gap", "7", "--z-max", "10000000")
    assert code == 0
    assert out.strip() == "EQUAL (16 triples)"


def test_verify_requires_z_max(capsys):
    code, _, _ = invoke(capsys, "verify", "--gap", "7")
    assert code == 2


# --- pell ---

def test_pell_seven(capsys):
    code, out, _ = invoke(capsys, "pell", "7")
    assert code == 0
    assert out.splitlines() == ["(1,2) norm -7 -> (5,12,13)", "(3,1) norm +7 -> (8,15,17)"]


def test_pell_one(capsys):
    code, out, _ = invoke(capsys, "pell", "1")
    assert code == 0
    assert out.splitlines() == ["(1,1) norm -1 -> (3,4,5)"]


def test_pell_three(capsys):
    code, out, _ = invoke(capsys, "pell", "3")
    assert code == 0
    assert out.strip() == "no solutions"


def test_pell_even(capsys):
    code, _, err = invoke(capsys, "pell", "8")
    assert code == 2
    assert "odd" in err


# --- predict ---

def test_predict_seed13(capsys):
    code, out, _ = invoke(capsys, "predict", "5", "13", "49")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("226/49 REJECT (a2=2693/49)")
    assert lines[1] == "6 ACCEPT"


def test_predict_seed17(capsys):
    code, out, _ = invoke(capsys, "predict", "5", "17", "49")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "6 ACCEPT"
    assert lines[1].startswith("386/49 REJECT (a2=6317/49)")


def test_predict_cimmino(capsys):
    code, out, _ = invoke(capsys, "predict", "1", "5", "1")
    assert code == 0
    assert out.splitlines() == ["6 ACCEPT", "34 ACCEPT-SUBSEQUENCE"]


def test_predict_closed_form(capsys):
    code, out, _ = invoke(capsys, "predict", "5", "13", "49", "--show-closed-form")
    assert code == 0
    assert "x+ = (113+72√2)/49" in out
    assert "x+ = 3+2√2, x- = 3-2√2, a = (10-1√2)/4, b = (10+1√2)/4" in out


def test_predict_without_candidates(capsys):
    code, out, _ = invoke(capsys, "predict", "1", "2", "1")
    assert code == 1
    assert out.strip() == "no candidates"


def test_predict_bad_seeds(capsys):
    code, _, _ = invoke(capsys, "predict", "13", "5", "49")
    assert code == 2


# --- table ---

@pytest.mark.parametrize(
    "argv, expected",
    [
        (("--gap", "7", "--seed", "13", "--from", "-4", "--to", "2"), [3293, 565, 97, 17, 5, 13, 73]),
        (("--gap", "7", "--seed", "17", "--from", "-4", "--to", "2"), [2477, 425, 73, 13, 5, 17, 97]),
        (("--gap", "1", "--from", "0", "--to", "3"), [1, 5, 29, 169]),
    ],
)
def test_table(capsys, argv, expected):
    code, out, _ = invoke(capsys, "table", *argv)
    assert code == 0
    assert table_z_column(out) == expected


def test_table_is_aligned(capsys):
    code, out, _ = invoke(capsys, "table", "--from", "-2", "--to", "2")
    assert code == 0
    lines = out.splitlines()
    assert len({len(line) for line in lines}) == 1
    assert lines[0].split() == ["k", "p", "q", "r", "s", "x", "y", "z", "d", "virtual"]


def test_table_and_enumerate_agree(capsys):
    _, table_out, _ = invoke(capsys, "table", "--seed", "17", "--from", "1", "--to", "5", "--format", "json")
    _, enum_out, _ = invoke(capsys, "enumerate", "--seed", "17", "--count", "5")
    assert table_out == enum_out


def test_table_reversed_range(capsys):
    code, _, err = invoke(capsys, "table", "--from", "3", "--to", "1")
    assert code == 2
    assert "error:" in err


def test_json_round_trip(capsys):
    _, out, _ = invoke(capsys, "table", "--from", "-5", "--to", "5", "--format", "json")
    records = OutputService.parse_json_lines(out)
    assert "".join(OutputService.json_lines(records)) == out


@pytest.mark.parametrize("workers", ["-1", "0"])
def test_verify_rejects_bad_workers(capsys, workers):
    code, out, err = invoke(capsys, "verify", "--gap", "7", "--z-max", "100", "--workers", workers)
    assert code == 2
    assert "MISMATCH" not in out
    assert "workers" in err


def test_predict_all_rejected(capsys):
    code, out, _ = invoke(capsys, "predict", "5", "7", "49")
    assert code == 1
    lines = out.splitlines()
    assert [line.split()[:2] for line in lines] == [["18/7", "REJECT"], ["22/7", "REJECT"]]


@pytest.mark.parametrize("name, value", [("TRIPLEGAP_ORACLE_WORKERS", "abc"), ("TRIPLEGAP_VALIDATION_HORIZON", "1")])
def test_invalid_settings(capsys, monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    code, out, err = invoke(capsys, "pell", "7")
    assert code == 2
    assert out == ""
    assert "invalid settings" in err
