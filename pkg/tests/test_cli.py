import pytest

from gum2onto import fixtures_path
from gum2onto.cli import run

FIX = str(fixtures_path())


def files(path):
    return {p.name: p.read_bytes() for p in sorted(path.iterdir())}


def test_convert_fixtures(tmp_path):
    out = tmp_path / "onto"
    assert run(["convert", "--in", FIX, "--out", str(out)]) == 0
    written = files(out)
    assert len(written) == 13
    assert all(name.endswith(".conll") for name in written)


def test_convert_writes_traces(tmp_path):
    assert run(["convert", "--in", FIX, "--out", str(tmp_path / "o"),
                "--trace", str(tmp_path / "t")]) == 0
    trace = (tmp_path / "t" / "GUM_fiction_farm.trace.tsv").read_text()
    assert trace.startswith("STEP7\tadjust_chains_by_definiteness\tremove_edge\tcoref(farm_1->home)")
    assert "STEP8\tremove_singletons\tremove_markable\thome[4-4]" in trace


def test_convert_is_deterministic_and_parallel_safe(tmp_path):
    run(["convert", "--in", FIX, "--out", str(tmp_path / "a")])
    run(["convert", "--in", FIX, "--out", str(tmp_path / "b"), "--jobs", "2"])
    assert files(tmp_path / "a") == files(tmp_path / "b")


def test_partial_then_full_equals_direct(tmp_path):
    partial = tmp_path / "partial"
    assert run(["convert", "--in", FIX, "--out", str(partial), "--stop-after-step", "7",
                "--retain-singletons", "--format", "tsv"]) == 0
    assert "M\thome\t" in (partial / "GUM_fiction_farm.coref.tsv").read_text()
    run(["convert", "--in", str(partial), "--out", str(tmp_path / "again")])
    run(["convert", "--in", FIX, "--out", str(tmp_path / "direct")])
    assert files(tmp_path / "again") == files(tmp_path / "direct")


def test_score_identical_directories(tmp_path, capsys):
    out = tmp_path / "onto"
    run(["convert", "--in", FIX, "--out", str(out)])
    capsys.readouterr()
    tsv = tmp_path / "scores.tsv"
    assert run(["score", "--key", str(out), "--response", str(out), "--tsv", str(tsv)]) == 0
    table = capsys.readouterr().out
    last = table.splitlines()[-1].split()
    assert last[0] == "all" and last[10] == "100.0"
    assert "all\tconll\t-\t-\t100.00" in tsv.read_text()


def test_stats(tmp_path, capsys):
    tsv = tmp_path / "stats.tsv"
    assert run(["stats", "--in", FIX, "--tsv", str(tsv)]) == 0
    assert capsys.readouterr().out.splitlines()[-1].split()[:2] == ["Total", "13"]
    assert tsv.read_text().splitlines()[-1].startswith("Total\t13\t")
    assert run(["stats", "--in", FIX, "--pre-conversion", "--genre", "fiction"]) == 0


def test_validate_clean_and_dirty(tmp_path, capsys):
    assert run(["validate", "--in", FIX]) == 0
    (tmp_path / "GUM_poetry_x.dep.tsv").write_text(
        "1\tHi\thi\tINTJ\tUH\t0\troot\t_\t_\t_\n")
    (tmp_path / "GUM_poetry_x.coref.tsv").write_text("")
    assert run(["validate", "--in", str(tmp_path)]) == 1
    assert "genre" in capsys.readouterr().out


def test_missing_path_exits_2(tmp_path, capsys):
    missing = tmp_path / "nowhere"
    assert run(["convert", "--in", str(missing), "--out", str(tmp_path / "o")]) == 2
    assert str(missing) in capsys.readouterr().err
    assert run(["score", "--key", str(missing), "--response", str(missing)]) == 2


def test_parse_error_exits_2(tmp_path, capsys):
    (tmp_path / "GUM_news_x.dep.tsv").write_text("1\tHi\thi\tINTJ\tUH\tzz\troot\t_\t_\t_\n")
    (tmp_path / "GUM_news_x.coref.tsv").write_text("")
    assert run(["validate", "--in", str(tmp_path)]) == 2
    assert "line 1" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["convert", "--in", FIX],
    ["convert", "--in", FIX, "--out", "x", "--stop-after-step", "9"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    assert run(argv) == 2


def test_lexicon_env_override(tmp_path, monkeypatch):
    lex = tmp_path / "dets.txt"
    lex.write_text("the\na\n")
    monkeypatch.setenv("GUM2ONTO_DETERMINERS", str(lex))
    run(["convert", "--in", FIX, "--out", str(tmp_path / "o"),
         "--trace", str(tmp_path / "t")])
    trace = (tmp_path / "t" / "GUM_fiction_farm.trace.tsv").read_text()
    assert "home[4-4]" not in trace  # "a farm" now counts as definite, so home stays linked
