import subprocess
import sys

import pytest

from halfarc.cli import main
from halfarc.families import lex_cycle, praeger_xu, rose_window_6_5_4, wreath, x_rmn
from halfarc.formats import decode_graph6, encode_graph6, read_edge_list
from halfarc.verify import small_family_graphs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("#"))


def test_construct_edgelist_to_file(tmp_path, capsys):
    out = tmp_path / "x.txt"
    code, _, _ = run(capsys, "construct", "x:2,12,13", "--out", str(out))
    assert code == 0
    g = read_edge_list(out.read_text())
    assert g.n == 156 and g == x_rmn(2, 12, 13)


def test_construct_graph6(capsys):
    code, out, _ = run(capsys, "construct", "rw6", "--format", "graph6")
    assert code == 0
    assert decode_graph6(out.strip()) == rose_window_6_5_4()
    assert out.count("\n") == 1


@pytest.mark.parametrize("spec", ["x:3,3,4", "bogus", "px:9"])
def test_construct_bad_spec_exit_2(capsys, spec):
    code, out, err = run(capsys, "construct", spec)
    assert code == 2 and out == "" and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct"])
    assert exc.value.code == 2


def test_analyze_examples(capsys):
    code, out, err = run(capsys, "analyze", "wreath:6")
    rep = report(out)
    assert code == 0 and rep["aut_order"] == "768" and rep["at"] == "true"
    assert err.startswith("# ")
    rep = report(run(capsys, "analyze", "x:2,4,17")[1])
    assert (rep["hat"], rep["radius"], rep["tight"]) == ("true", "17", "true")
    assert report(run(capsys, "analyze", "x:2,3,7")[1])["hat"] == "false"


def test_analyze_key_order_and_determinism(capsys):
    first = run(capsys, "analyze", "x:2,12,13")[1]
    second = run(capsys, "analyze", "x:2,12,13")[1]
    assert first == second
    keys = [line.split("=")[0] for line in first.splitlines()]
    assert keys == ["input", "n", "edges", "regular", "vt", "et", "at", "hat", "aut_order",
                    "radius", "attachment", "tight"]


def test_analyze_file_input(tmp_path, capsys):
    f = tmp_path / "g.g6"
    f.write_text(encode_graph6(praeger_xu(5)) + "\n")
    rep = report(run(capsys, "analyze", str(f))[1])
    assert rep["aut_order"] == "320" and rep["n"] == "20"


def test_analyze_unreadable_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("3 5\n0 1\n")
    assert run(capsys, "analyze", str(f))[0] == 2


def test_analyze_big_guard(capsys):
    code, _, err = run(capsys, "analyze", "cycle:2001")
    assert code == 2 and "--big" in err


def test_cover_identity_voltages_disconnected(tmp_path, capsys):
    vf = tmp_path / "id.volt"
    vf.write_text("group 5\n")
    out_graph = tmp_path / "cover.g6"
    code, out, _ = run(capsys, "cover", "wreath:6", "--group", "5", "--voltages", str(vf),
                       "--round-trip", "--out", str(out_graph), "--format", "graph6")
    rep = report(out)
    assert code == 0
    assert rep["connected"] == "false" and rep["cover_n"] == "60"
    assert rep["regular_covering"] == "true" and rep["round_trip"] == "true"
    assert decode_graph6(out_graph.read_text().strip()).n == 60


def test_cover_with_voltages_and_analysis(tmp_path, capsys):
    vf = tmp_path / "c.volt"
    vf.write_text("group 3\n0 1 1\n")
    code, out, _ = run(capsys, "cover", "cycle:4", "--group", "3", "--voltages", str(vf), "--analyze")
    rep = report(out)
    assert code == 0 and rep["connected"] == "true" and rep["aut_order"] == "24"


def test_cover_group_mismatch_and_bad_file(tmp_path, capsys):
    vf = tmp_path / "c.volt"
    vf.write_text("group 3\n0 1 1\n")
    assert run(capsys, "cover", "wreath:6", "--group", "5", "--voltages", str(vf))[0] == 2
    vf.write_text("group 3\n0 3 1\n")
    assert run(capsys, "cover", "wreath:6", "--group", "3", "--voltages", str(vf))[0] == 2
    assert run(capsys, "cover", "wreath:6", "--group", "3")[0] == 2


def test_cover_search_is_seeded(capsys):
    a = run(capsys, "cover", "wreath:6", "--group", "5", "--search", "--seed", "0", "--tries", "5")
    b = run(capsys, "cover", "wreath:6", "--group", "5", "--search", "--seed", "0", "--tries", "5")
    assert a[0] == 0 and a[1] == b[1]
    lines = a[1].splitlines()
    assert lines[0] == "seed=0" and lines[-1] == "hat_covers=0"
    assert sum(line.startswith("try=") for line in lines) == 5


def test_cover_lift_hat_finds_hat_cover(tmp_path, capsys):
    prefix = tmp_path / "found"
    code, out, _ = run(capsys, "cover", "wreath:6", "--group", "7", "--lift-hat", "--tries", "4",
                       "--out", str(prefix))
    assert code == 0
    assert "hat_subgroup_order=24" in out and "hat=true aut_order=168" in out
    assert out.splitlines()[-1] == "hat_covers=1"
    saved = list(tmp_path.glob("found.*.volt"))
    assert len(saved) == 1 and saved[0].read_text().startswith("group 7\n")


def test_cover_disconnected_base(capsys):
    assert run(capsys, "cover", "cycle:3", "--group", "2", "--search")[0] == 0
    code, _, err = run(capsys, "cover", "x:3,3,4", "--group", "2", "--search")
    assert code == 2


def test_quotient_by_order(tmp_path, capsys):
    out_graph = tmp_path / "q.txt"
    code, out, _ = run(capsys, "quotient", "x:2,12,13", "--order", "13", "--out", str(out_graph))
    rep = report(out)
    assert code == 0
    assert rep["orbits"] == "12" and rep["orbit_sizes"] == "13" and rep["quotient_valency"] == "2"
    assert read_edge_list(out_graph.read_text()).n == 12


def test_quotient_by_generator_file(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("[3 4 5 0 1 2]\n")
    rep = report(run(capsys, "quotient", "cycle:6", "--gens", str(gens))[1])
    assert rep["orbits"] == "3" and rep["regular_covering"] == "true"
    gens.write_text("[1 0 2 3 4 5]\n")
    assert run(capsys, "quotient", "cycle:6", "--gens", str(gens))[0] == 2
    assert run(capsys, "quotient", "cycle:6", "--order", "4")[0] == 2
    assert run(capsys, "quotient", "cycle:6")[0] == 2


def test_quotient_no_element_of_order(capsys):
    code, out, _ = run(capsys, "quotient", "cycle:6", "--order", "5")
    assert code == 0 and "order_5_element=none" in out


def _census(tmp_path, lines):
    f = tmp_path / "census.g6"
    f.write_text("".join(line + "\n" for line in lines))
    return f


def test_census_small_family_graphs(tmp_path, capsys):
    f = _census(tmp_path, [encode_graph6(g) for _, g in small_family_graphs()])
    code, out, _ = run(capsys, "census", str(f))
    rows = out.splitlines()[1:-1]
    assert code == 0 and len(rows) == len(small_family_graphs())
    assert all(row.split()[5] == "false" for row in rows)
    assert out.splitlines()[-1].endswith("hat=0 errors=0")


def test_census_hat_row_and_bad_line(tmp_path, capsys):
    f = _census(tmp_path, [encode_graph6(x_rmn(2, 12, 13)), "not graph6!", encode_graph6(wreath(6))])
    code, out, _ = run(capsys, "census", str(f), "--jobs", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[1] == "0 156 true true false true 312"
    assert lines[2].startswith("1 error")
    assert lines[3] == "2 12 true true true false 768"
    assert lines[-1] == "# graphs=2 hat=1 errors=1"


def test_census_empty_file(tmp_path, capsys):
    f = _census(tmp_path, [])
    code, out, _ = run(capsys, "census", str(f))
    assert code == 0 and out.splitlines() == ["row n vt et at hat aut_order", "# graphs=0 hat=0 errors=0"]
    assert run(capsys, "census", str(tmp_path / "missing"))[0] == 2


def test_verify_failure_exit_code(monkeypatch, capsys):
    from halfarc import verify
    failing = verify.CriterionResult(99, "forced", False, "x", 0.0, 1.0)
    monkeypatch.setattr(verify, "run_all", lambda big=False: [failing])
    code, out, _ = run(capsys, "verify")
    assert code == 1 and out.startswith("[FAIL]")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "halfarc", "construct", "lex-cycle:3", "--format", "graph6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert decode_graph6(proc.stdout.strip()) == lex_cycle(3)
