import csv
import io
import json

import pytest

from sporadic import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dim_example(capsys):
    code, out, _ = run(capsys, "dim", "--k", "3", "--genus", "0", "--regular-cusps", "6")
    assert code == 0
    assert out.splitlines()[0] == "1"


def test_dim_nonintegral_fails(capsys):
    code, out, _ = run(capsys, "dim", "--k", "3", "--genus", "0", "--regular-cusps", "1", "--irregular-cusps", "0")
    assert code == 1 and out.splitlines()[0] == "-3/2"


def test_trace_p7(capsys):
    code, out, _ = run(capsys, "trace", "--p", "7")
    assert code == 0
    assert "A 10" in out.splitlines()
    assert "inf 1  multiplicative" in out


def test_det_and_csv(capsys):
    code, out, _ = run(capsys, "det", "--p", "7", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"family": "det", "p": "7", "m": "", "r": "", "required": "49", "achieved": "49", "pass": "True"}]


def test_theorem1_records(capsys):
    code, out, _ = run(capsys, "theorem1", "--max-prime", "199", "--terms", "200", "--format", "records")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert len(recs) == 45 and all(r["pass"] for r in recs)
    assert set(recs[0]) == {"family", "p", "m", "r", "required", "achieved", "pass"}


def test_insufficient_terms_exit_2(capsys):
    code, _, err = run(capsys, "theorem1", "--max-prime", "199", "--terms", "150")
    assert code == 2
    assert "minimal sufficient N = 200" in err


@pytest.mark.parametrize("argv", [["bogus"], ["dim", "--k", "x"], ["dim", "--k", "4"], ["trace", "--p", "9"],
                                  ["theorem1", "--workers", "0"], ["trace", "--p", "5,7"]])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_config_file_and_flag_override(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# demo\nmax-prime = 31\nterms = 40\nformat = csv\n")
    code, out, _ = run(capsys, "theorem1", "--config", str(conf))
    assert code == 0 and out.startswith("family,p,")
    assert out.strip().splitlines()[-1].startswith("theorem1,31,")
    code, out, _ = run(capsys, "theorem1", "--config", str(conf), "--format", "text")
    assert code == 0 and out.startswith("== theorem1 ==")
    conf.write_text("colour = blue\n")
    assert run(capsys, "theorem1", "--config", str(conf))[0] == 2


def test_three_cover_exit_1(capsys):
    code, out, _ = run(capsys, "three-cover", "--max-prime", "19")
    assert code == 1
    assert "three-cover-piece" in out


def test_cache_status_and_clear(tmp_path, capsys):
    d = str(tmp_path / "c")
    assert run(capsys, "theorem1", "--max-prime", "31", "--cache-dir", d)[0] == 0
    code, out, _ = run(capsys, "cache", "status", "--cache-dir", d)
    assert code == 0 and "g N=32" in out
    assert run(capsys, "cache", "clear", "--cache-dir", d)[0] == 0
    code, out, _ = run(capsys, "cache", "status", "--cache-dir", d)
    assert "(empty)" in out


def test_unwritable_cache_dir(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "theorem1", "--max-prime", "31", "--cache-dir", str(blocker / "sub"))
    assert code == 2


def test_warm_run_skips_series_and_is_identical(tmp_path, capsys, monkeypatch):
    d = str(tmp_path / "c")
    code, cold, _ = run(capsys, "asd", "--p", "13", "--terms", "1600", "--cache-dir", d)
    assert code == 0

    def refuse(N):
        raise AssertionError("series rebuilt on a warm cache")

    monkeypatch.setitem(cli.SERIES_BUILDERS, "g", refuse)
    code, warm, _ = run(capsys, "asd", "--p", "13", "--terms", "1600", "--cache-dir", d)
    assert code == 0 and warm == cold


def test_output_independent_of_workers(capsys):
    base = run(capsys, "gamma", "--max-prime", "61", "--no-cache")
    par = run(capsys, "gamma", "--max-prime", "61", "--no-cache", "--workers", "3")
    assert base == par and base[0] == 0


def test_sequences_and_series(capsys):
    code, out, _ = run(capsys, "sequences", "--terms", "10")
    assert code == 0 and out.splitlines()[4] == "4 2394"
    code, out, _ = run(capsys, "series", "--name", "g", "--terms", "12")
    assert code == 0 and out.splitlines()[0] == "g 12 1" and "5 -9 8" in out


def test_search_small_box(tmp_path, capsys):
    hits = tmp_path / "hits.csv"
    code, out, _ = run(capsys, "search", "--box-a", "9:12", "--box-b", "3:4", "--box-c=-1:40",
                       "--depth", "20", "--hits-csv", str(hits))
    assert code == 0
    assert "(12,4,32)" in out
    assert hits.read_text().startswith("A,B,C,nondegenerate,depth")


def test_pf_check_and_twists(capsys):
    assert run(capsys, "pf-check", "--terms", "60")[0] == 0
    code, out, _ = run(capsys, "twists", "--max-prime", "60")
    assert code == 0 and "self-twist" in out and "cubic-inert" in out
