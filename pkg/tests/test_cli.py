import json

import pytest

from gaussfactor import ReducedFraction, __version__
from gaussfactor.cli import main
from gaussfactor.export import parse_spectrum, parse_table


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_scan_rational_grid(capsys):
    code, out, _ = run(capsys, "scan", "91", "--s0", "10", "--xi", "1:3", "--m", "8")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "xi_num,xi_den,xi_real,re,im,mag2"
    assert out.endswith("\n") and "\r" not in out
    _, samples = parse_spectrum(out)
    assert len(samples) == 20
    peaks = [s.argument for s in samples if abs(s.magnitude_sq - 1) <= 1e-9]
    assert peaks == [ReducedFraction(13, 10), ReducedFraction(7, 5), ReducedFraction(13, 5)]


def test_scan_xi_real_has_17_significant_digits(capsys):
    _, out, _ = run(capsys, "scan", "91", "--s0", "10", "--xi", "1:3", "--m", "8")
    first = out.split("\n")[1].split(",")
    assert first[2] == format(1.1, ".17g") == "1.1000000000000001"


def test_scan_integer(capsys):
    code, out, _ = run(capsys, "scan", "91", "--integer", "--max", "20", "--m", "8")
    assert code == 0
    _, samples = parse_spectrum(out)
    assert [s.argument.numerator for s in samples] == list(range(2, 21))
    assert [s.argument.numerator for s in samples if s.magnitude_sq == 1.0] == [7, 13]


def test_scan_continuous_json_header(capsys):
    code, out, _ = run(capsys, "scan", "91", "--continuous", "--xi", "1:16", "--dm", "10", "--format", "json")
    assert code == 0
    header, samples = parse_spectrum(out)
    assert header["dm"] == 10.0 and header["variant"] == "continuous"
    assert header["version"] == __version__
    assert len(samples) == 1500
    assert all(s.magnitude_sq == s.magnitude_sq and s.magnitude_sq < 1 + 1e-9 for s in samples)


def test_scan_random_and_exponential(capsys):
    code, out, _ = run(capsys, "scan", "143", "--integer", "--variant", "random", "--m", "6", "--seed", "4", "--format", "json")
    assert code == 0
    header, samples = parse_spectrum(out)
    assert header["seed"] == 4 and header["m_max"] == 120
    assert samples[11 - 2].magnitude_sq == 1.0
    code, out, _ = run(capsys, "scan", "143", "--integer", "--variant", "exponential", "--j", "3", "--m", "6")
    assert code == 0


def test_scan_rejects_rational_random(capsys):
    code, _, err = run(capsys, "scan", "143", "--variant", "random")
    assert code == 2 and "integer" in err


def test_spectrum_round_trip_exact(capsys, tmp_path):
    for fmt in ("csv", "json"):
        path = tmp_path / f"s.{fmt}"
        assert main(["scan", "1763", "--s0", "7", "--m", "9", "--format", fmt, "-o", str(path)]) == 0
        _, samples = parse_spectrum(path.read_text())
        from gaussfactor.strategies import search_grid, evaluate_grid

        assert samples == evaluate_grid(1763, search_grid(1763, 7), 9)


def test_factor_commands(capsys):
    code, out, _ = run(capsys, "factor", "91", "--method", "rational", "--s0", "10")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["factors"] == [7, 13]
    assert doc["report"]["samples_evaluated"] > 0 and "wall_time_s" in doc["report"]
    code, out, _ = run(capsys, "factor", "97", "--method", "integer")
    assert code == 0 and json.loads(out)["report"]["factors"] == []
    code, out, _ = run(capsys, "factor", "4", "--method", "integer")
    assert code == 0 and json.loads(out)["report"]["factors"] == [2]


def test_factor_invalid_n(capsys):
    code, _, err = run(capsys, "factor", "1")
    assert code == 2 and "error" in err


def test_degeneracy_command(capsys):
    code, out, _ = run(capsys, "degeneracy", "21", "--smax", "21")
    doc = json.loads(out)
    assert code == 0
    assert {"value_num": 7, "value_den": 2, "D": 2} in doc["rows"]
    assert doc["report"]["factors"] == [3, 7]
    code, out, _ = run(capsys, "degeneracy", "13", "--smax", "13")
    assert json.loads(out)["report"]["factors"] == []
    code, out, _ = run(capsys, "degeneracy", "91", "--smax", "91")
    assert json.loads(out)["report"]["factors"] == [7, 13]
    code, out, err = run(capsys, "degeneracy", "21", "--format", "csv")
    assert out.startswith("value_num,value_den,D\n") and "factors: 3 7" in err


def test_ghost_command(capsys):
    code, out, _ = run(capsys, "ghost", "91", "--m", "1:8")
    _, rows = parse_table(out)
    assert code == 0 and len(rows) == 8
    assert rows[-1]["ghost_count"] == 0 and rows[0]["M"] == 1


def test_scaling_command(capsys):
    code, out, _ = run(capsys, "scaling", "--rule", "quartic", "--ns", "143,1763,10403")
    _, rows = parse_table(out)
    assert code == 0
    m_min = [r["M_min"] for r in rows]
    assert m_min == sorted(m_min)


def test_scaling_random_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path, jobs in zip(paths, ("1", "2")):
        assert main(["scaling", "--rule", "random", "--seed", "7", "--ns", "143,1763,10403", "-o", str(path), "--jobs", jobs]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_scaling_rejects_non_semiprime(capsys):
    code, _, err = run(capsys, "scaling", "--ns", "143,30")
    assert code == 2 and "semiprime" in err


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "scan", "91", "-o", str(tmp_path / "missing" / "x.csv"))
    assert code == 2 and "cannot write" in err


def test_output_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("GAUSSFACTOR_OUTPUT_DIR", str(tmp_path))
    assert main(["ghost", "91", "-o", "ghost.csv"]) == 0
    assert (tmp_path / "ghost.csv").read_text().startswith("M,max_nonfactor_mag,ghost_count\n")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "scan", "91", "--jobs", "-1")
    assert code == 2


def test_internal_error_exit_3(capsys, monkeypatch):
    import gaussfactor.cli as cli

    def boom(*a, **k):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "ghost_analysis", boom)
    code, _, _ = run(capsys, "ghost", "91")
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "143", "--s0", "5", "--m", "8"],
        ["scan", "143", "--integer", "--variant", "random", "--m", "6", "--format", "json"],
        ["ghost", "10403", "--m", "1:20"],
        ["degeneracy", "91", "--format", "json"],
    ],
)
def test_serial_and_parallel_outputs_identical(tmp_path, argv):
    outputs = []
    for jobs in ("1", "0", "4"):
        path = tmp_path / f"out{jobs}"
        assert main(argv + ["-o", str(path), "--jobs", jobs]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_factor_output_identical_apart_from_timing(tmp_path):
    docs = []
    for jobs in ("1", "4"):
        path = tmp_path / f"f{jobs}.json"
        assert main(["factor", "1763", "--s0", "5", "-o", str(path), "--jobs", jobs]) == 0
        doc = json.loads(path.read_text())
        doc["report"].pop("wall_time_s")
        docs.append(doc)
    assert docs[0] == docs[1]
