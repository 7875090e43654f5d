"""CLI surface: exit codes, machine-readable failure records, file flows."""

import json

import pytest

from oaforge.cli import main
from oaforge.fixtures import fixture_dir


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_fixture_ok(capsys):
    path = fixture_dir() / "oa20_2e8_5e1.txt"
    code, out = run(capsys, "verify", "oa", str(path), "--strength", "2")
    assert code == 0
    assert out.startswith("ok:")


def test_verify_mutated_fixture_names_failure(capsys, tmp_path):
    src = (fixture_dir() / "oa20_2e8_5e1.txt").read_text()
    lines = src.splitlines()
    header = next(i for i, l in enumerate(lines) if l.startswith("OA"))
    row = lines[header + 1].split()
    row[0] = "1" if row[0] == "0" else "0"
    lines[header + 1] = " ".join(row)
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")
    code, out = run(capsys, "verify", "oa", str(bad), "--strength", "2")
    assert code == 1
    records = [json.loads(line) for line in out.splitlines()]
    assert any(r["kind"] == "count-imbalance" and 0 in r["columns"]
               for r in records)
    assert all("tuple" in r for r in records if r["kind"] == "count-imbalance")


def test_construct_expand_verify_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "l.loa"
    code, _ = run(capsys, "construct", "sylvester2", "--n", "3", "--k", "7",
                  "--expand", "-o", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", "loa", str(out_file), "--strength", "2")
    assert code == 0 and "M=16" in out


def test_expand_cli_with_explicit_columns(capsys, tmp_path):
    src = fixture_dir() / "oa40_5e1_2e6.txt"
    out_file = tmp_path / "l40.loa"
    code, out = run(capsys, "expand", str(src), "--columns", "0,1,2,3",
                    "-o", str(out_file))
    assert code == 0 and out_file.exists()


def test_compose_juxtapose_cli(capsys, tmp_path):
    l16 = tmp_path / "l16.loa"
    l40 = tmp_path / "l40.loa"
    out_file = tmp_path / "l56.loa"
    assert run(capsys, "construct", "sylvester3", "--n", "3", "--k", "7",
               "--expand", "-o", str(l16))[0] == 0
    assert run(capsys, "expand", str(fixture_dir() / "oa40_5e1_2e6.txt"),
               "-o", str(l40))[0] == 0
    code, out = run(capsys, "compose", "juxtapose", str(l16), str(l40),
                    "-o", str(out_file))
    assert code == 0 and "LOA(56,7^1,2^6,3)" in out
    code, out = run(capsys, "verify", "loa", str(out_file), "--strength", "3")
    assert code == 0


def test_compose_kronecker_cli(capsys, tmp_path):
    a = tmp_path / "a.loa"
    out_file = tmp_path / "k.oa"
    assert run(capsys, "construct", "sylvester2", "--n", "2", "--k", "3",
               "--expand", "-o", str(a))[0] == 0
    code, out = run(capsys, "compose", "kronecker", str(a), str(a),
                    "-o", str(out_file))
    assert code == 0 and "OA(32,2^6,5)" in out


def test_theorem_cli(capsys, tmp_path):
    out_file = tmp_path / "t.oa"
    code, out = run(capsys, "theorem", "v1+v3-2", "--params", "v=4,k=5",
                    "-o", str(out_file))
    assert code == 0 and "OA(4096,4^8,4) verified" in out
    code, out = run(capsys, "verify", "oa", str(out_file), "--strength", "4")
    assert code == 0


def test_theorem_constraint_violation_is_usage_error(capsys):
    code, _ = run(capsys, "theorem", "doublev3-2", "--params", "v=6,k=5")
    assert code == 2


def test_chai2_cli_reports_verdict(capsys, tmp_path):
    code, out = run(capsys, "construct", "chai2", "--v", "4",
                    "-o", str(tmp_path / "c.oa"))
    assert code == 1
    assert "self-check verdict: NOT an OA" in out
    records = [json.loads(line) for line in out.splitlines()
               if line.startswith("{")]
    assert all(r["columns"] == [13, 17] for r in records)


def test_construct_linear_recipes_cli(capsys, tmp_path):
    code, out = run(capsys, "construct", "bush", "--q", "4", "--t", "3",
                    "--k", "6", "-o", str(tmp_path / "b.oa"))
    assert code == 0 and "OA(64,4^6,3)" in out
    code, out = run(capsys, "construct", "projective", "--q", "3", "--n", "2",
                    "--k", "4", "-o", str(tmp_path / "p.oa"))
    assert code == 0 and "OA(9,3^4,2)" in out
    code, out = run(capsys, "construct", "q4t3", "--q", "3", "--k", "10",
                    "-o", str(tmp_path / "q.oa"))
    assert code == 0 and "OA(81,3^10,3)" in out
    code, out = run(capsys, "construct", "q4t3", "--q", "3^1", "--k", "5",
                    "-o", str(tmp_path / "q2.oa"))
    assert code == 0  # --q accepts p^e form


def test_fixture_without_marked_comment_is_inferred(capsys, tmp_path):
    from oaforge.fixtures import FIXTURES, fixture_dir, fixtures_check

    for fx in FIXTURES:
        src = (fixture_dir() / f"{fx.name}.txt").read_text()
        if fx.name == "oa20_2e8_5e1":
            src = "\n".join(line for line in src.splitlines()
                            if not line.startswith("# marked")) + "\n"
        (tmp_path / f"{fx.name}.txt").write_text(src)
    report = fixtures_check(tmp_path, expand=False)
    assert report.ok
    by_name = {r.name: r for r in report.results}
    assert "inferred" in by_name["oa20_2e8_5e1"].details


def test_chai1_with_dm_file(capsys, tmp_path):
    from oaforge.diffmatrix import field_dm, write_dm

    dm_file = tmp_path / "d.dm"
    write_dm(field_dm(5, 4), dm_file)
    code, out = run(capsys, "construct", "chai1", "--v", "5",
                    "--dm-file", str(dm_file), "-o", str(tmp_path / "c.oa"))
    assert code == 0 and "OA(125,5^13,2)" in out


def test_search_dm_cli(capsys, tmp_path):
    code, out = run(capsys, "search", "dm", "--v", "5", "--k", "4",
                    "-o", str(tmp_path / "d.dm"))
    assert code == 0 and "found (5,4,1)" in out
    code, out = run(capsys, "verify", "dm", str(tmp_path / "d.dm"))
    assert code == 0
    code, out = run(capsys, "search", "dm", "--v", "3", "--k", "4")
    assert code == 0 and "proven" in out


def test_oracle_cli(capsys):
    path = fixture_dir() / "oa54_3e5_2e1.txt"
    code, out = run(capsys, "oracle", str(path), "--strength", "3")
    assert code == 0 and out.startswith("ok:")


def test_fixtures_cli(capsys):
    code, out = run(capsys, "fixtures", "--no-expand")
    assert code == 0
    assert out.count(": ok") == 8


def test_fixtures_empty_dir(capsys, tmp_path):
    code, out = run(capsys, "fixtures", "--dir", str(tmp_path))
    assert code == 1 and "no fixtures installed" in out


def test_catalog_listing(capsys):
    code, out = run(capsys, "catalog", "table5")
    assert code == 0
    assert out.count("table5 row") == 5


def test_catalog_run_cli_reports_honest_failure(capsys):
    # the 29-column family's self-check failure must surface as a nonzero exit
    code, out = run(capsys, "catalog", "table5", "--run")
    assert code == 1
    assert "failed:" in out and "(13, 17)" in out
    assert out.count("verified") == 4


def test_catalog_run_cli_theorems_subset(capsys):
    code, out = run(capsys, "catalog", "table6", "--run", "--budget", "1e6")
    assert code == 0
    assert "skipped(budget)" in out
    assert "unreconciled" in out


def test_compose_wrong_kind_file(capsys, tmp_path):
    path = fixture_dir() / "oa54_3e5_2e1.txt"
    code, out = run(capsys, "compose", "juxtapose", str(path), str(path),
                    "-o", str(tmp_path / "x.loa"))
    assert code == 1
    assert "large-set" in out


def test_theorem_without_output(capsys):
    code, out = run(capsys, "theorem", "tt-1n2-3", "--params",
                    "s=2,t=2,n=2,k1=3")
    assert code == 0 and "no output file requested" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.oa"
    bad.write_text("OA N=1 t=1 levels=2^2\n0 7\n")
    code, out = run(capsys, "verify", "oa", str(bad))
    assert code == 1
    record = json.loads(out.splitlines()[0])
    assert record["kind"] == "parse-error" and record["line"] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["construct", "nonsense"])
    assert err.value.code == 2


def test_global_flags_accepted_after_subcommand(capsys):
    path = fixture_dir() / "oa54_3e5_2e1.txt"
    code, out = run(capsys, "verify", "oa", str(path), "--strength", "3",
                    "--threads", "2", "--budget", "1e8")
    assert code == 0 and out.startswith("ok:")
    code, out = run(capsys, "search", "dm", "--v", "7", "--k", "4",
                    "--budget", "25")
    assert code == 1 and "budget exhausted" in out
