"""CLI commands: exit codes, report output, reproducibility, resume."""

from __future__ import annotations

import pytest

from conftest import HAMMING_7_4_BITS
from mindist import cli
from mindist.engine import parse_report
from mindist.gf2 import BitMatrix, format_matrix_text, parse_matrix_text


@pytest.fixture
def hamming_file(tmp_path):
    path = tmp_path / "hamming.txt"
    path.write_text(format_matrix_text(BitMatrix.from_bits(HAMMING_7_4_BITS)))
    return str(path)


def run(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# mindist


def test_mindist_hamming(hamming_file, capsys):
    code, out, _ = run(["mindist", "--in", hamming_file, "--algorithm", "stack",
                        "--quiet"], capsys)
    assert code == 0
    report = parse_report(out)
    assert report["distance"] == 3
    assert report["status"] == "exact"


def test_mindist_threads_deterministic(hamming_file, capsys):
    outputs = set()
    for threads in ("1", "8"):
        code, out, _ = run(["mindist", "--in", hamming_file, "--threads", threads,
                            "--quiet"], capsys)
        assert code == 0
        outputs.add(parse_report(out)["distance"])
    assert outputs == {3}


def test_mindist_writes_out_file(hamming_file, tmp_path, capsys):
    out_file = tmp_path / "report.txt"
    code, out, _ = run(["mindist", "--in", hamming_file, "--out", str(out_file),
                        "--quiet"], capsys)
    assert code == 0
    assert out_file.read_text() == out


def test_mindist_rank_deficient(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n110\n110\n")
    code, _, err = run(["mindist", "--in", str(bad), "--quiet"], capsys)
    assert code == cli.EXIT_RANK_DEFICIENT
    assert "rank" in err


def test_mindist_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n11\n110\n")
    code, _, err = run(["mindist", "--in", str(bad)], capsys)
    assert code == cli.EXIT_PARSE


def test_mindist_missing_file(capsys):
    code, _, _ = run(["mindist", "--in", "/nonexistent/x.txt"], capsys)
    assert code == cli.EXIT_PARSE


def test_mindist_budget_exceeded(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(40, 90, seed=1))
    code, _, err = run(["mindist", "--in", str(f), "--algorithm", "saved",
                        "--s", "5", "--budget-mb", "0", "--quiet"], capsys)
    assert code == cli.EXIT_BUDGET
    assert "budget" in err


def test_mindist_max_g_cap(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(14, 30, seed=29))
    code, out, err = run(["mindist", "--in", str(f), "--algorithm", "basic",
                          "--max-g", "1", "--quiet"], capsys)
    assert code == cli.EXIT_MAX_G
    assert parse_report(out)["status"] == "upper_bound_only"
    assert "upper bound" in err


def test_mindist_unroll_validation(hamming_file, capsys):
    code, _, err = run(["mindist", "--in", hamming_file, "--algorithm", "saved",
                        "--unroll", "2", "--quiet"], capsys)
    assert code == cli.EXIT_INVALID
    assert "saved-unrolled" in err


def test_mindist_progress_lines(hamming_file, capsys):
    _, _, err = run(["mindist", "--in", hamming_file, "--threads", "1"], capsys)
    assert "g=1" in err


def test_mindist_resume_roundtrip(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(14, 30, seed=29))
    report_file = tmp_path / "partial.txt"
    code, out, _ = run(["mindist", "--in", str(f), "--algorithm", "basic",
                        "--max-g", "1", "--out", str(report_file), "--quiet"], capsys)
    assert code == cli.EXIT_MAX_G
    capped_upper = parse_report(out)["distance"]
    code, out, _ = run(["mindist", "--in", str(f), "--algorithm", "basic",
                        "--resume", str(report_file), "--quiet"], capsys)
    assert code == 0
    final = parse_report(out)
    assert final["status"] == "exact"
    assert final["distance"] <= capped_upper
    # resumed run skipped round 1 entirely
    assert final["bounds_trace"][0][0] == 2


# ---------------------------------------------------------------------------
# brute


def test_brute_hamming(hamming_file, capsys):
    code, out, _ = run(["brute", "--in", hamming_file], capsys)
    assert code == 0
    assert "distance=3" in out


def test_brute_too_large(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(12, 20, seed=0))
    code, _, err = run(["brute", "--in", str(f), "--max-k", "10"], capsys)
    assert code == cli.EXIT_TOO_LARGE


# ---------------------------------------------------------------------------
# random


def test_random_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = run(["random", "--k", "4", "--n", "8", "--seed", "42",
                          "--out", str(path), "--quiet"], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    M = parse_matrix_text(a.read_text())
    assert (M.num_rows, M.num_cols) == (4, 8)
    from mindist.gf2 import matrix_rank

    assert matrix_rank(M) == 4  # identity block guarantees full rank


def test_random_different_seed_differs(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(["random", "--k", "6", "--n", "16", "--seed", "1", "--out", str(a)], capsys)
    run(["random", "--k", "6", "--n", "16", "--seed", "2", "--out", str(b)], capsys)
    assert a.read_bytes() != b.read_bytes()


def test_random_rejects_bad_dims(capsys):
    code, _, _ = run(["random", "--k", "5", "--n", "5", "--seed", "1"], capsys)
    assert code == cli.EXIT_INVALID


def test_random_stdout(capsys):
    code, out, _ = run(["random", "--k", "3", "--n", "7", "--seed", "5"], capsys)
    assert code == 0
    assert parse_matrix_text(out).num_rows == 3


# ---------------------------------------------------------------------------
# construct


def test_construct_extend_hamming(hamming_file, tmp_path, capsys):
    script = tmp_path / "extend.txt"
    script.write_text(f"matrix={hamming_file}\nextend\n")
    out_file = tmp_path / "ext.txt"
    code, out, _ = run(["construct", "--in", str(script), "--out", str(out_file)],
                       capsys)
    assert code == 0
    assert out.strip() == "[8,4]"
    M = parse_matrix_text(out_file.read_text())
    assert (M.num_rows, M.num_cols) == (4, 8)
    assert out_file.read_text().startswith("4 8\n")


def test_construct_non_unit_p(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("m=3\nf1=0\nf2=2,1,0\np=1,0\n")  # p = 1+x divides x^3-1
    code, _, err = run(["construct", "--in", str(script)], capsys)
    assert code == cli.EXIT_NOT_A_UNIT
    assert "invertible" in err


def test_construct_non_divisor(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("m=7\nf1=2,1,0\nf2=6,5,4,3,2,1,0\np=0\n")
    code, _, err = run(["construct", "--in", str(script)], capsys)
    assert code == cli.EXIT_NOT_A_DIVISOR


def test_construct_script_error_names_line(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("m=7\nwhat is this\n")
    code, _, err = run(["construct", "--in", str(script)], capsys)
    assert code == cli.EXIT_SCRIPT
    assert "line 2" in err


def test_construct_no_partial_output_on_error(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("m=3\nf1=0\nf2=2,1,0\np=1,0\n")
    out_file = tmp_path / "never.txt"
    code, _, _ = run(["construct", "--in", str(script), "--out", str(out_file)],
                     capsys)
    assert code != 0
    assert not out_file.exists()


# ---------------------------------------------------------------------------
# bench


def test_bench_reports_throughput(hamming_file, capsys):
    code, out, _ = run(["bench", "--in", hamming_file, "--algorithm", "basic",
                        "--quiet"], capsys)
    assert code == 0
    report = parse_report(out)
    assert report["combinations"] > 0
    assert "combos_per_sec" in report


def test_bench_counters_match_engine(tmp_path, capsys):
    from mindist.engine import EngineConfig, minimum_distance
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    M = random_systematic_matrix(10, 24, seed=3)
    f = tmp_path / "code.txt"
    write_matrix_file(str(f), M)
    code, out, _ = run(["bench", "--in", str(f), "--algorithm", "optimized",
                        "--quiet"], capsys)
    assert code == 0
    report = parse_report(out)
    rep = minimum_distance(M, EngineConfig(strategy="optimized"))
    assert report["combinations"] == rep.counters.combinations
    assert report["row_additions"] == rep.counters.row_additions
    assert report["distance"] == rep.distance


def test_bench_cap_is_not_an_error(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(14, 30, seed=29))
    code, out, _ = run(["bench", "--in", str(f), "--algorithm", "basic",
                        "--max-g", "1", "--quiet"], capsys)
    assert code == 0
    assert parse_report(out)["status"] == "upper_bound_only"


def test_bench_worker_counts_equal_combinations(tmp_path, capsys):
    from mindist.gf2 import random_systematic_matrix, write_matrix_file

    f = tmp_path / "code.txt"
    write_matrix_file(str(f), random_systematic_matrix(10, 24, seed=5))
    combos = set()
    for threads in ("1", "4"):
        code, out, _ = run(["bench", "--in", str(f), "--threads", threads,
                            "--quiet"], capsys)
        assert code == 0
        combos.add(parse_report(out)["combinations"])
    assert len(combos) == 1


def test_missing_in_flag(capsys):
    code, _, err = run(["mindist"], capsys)
    assert code == cli.EXIT_INVALID
