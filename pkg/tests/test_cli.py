import json
import subprocess
import sys

import pytest

from sector_atlas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_mathieu(capsys):
    code, out, _ = run(capsys, "group", "mathieu:11")
    assert code == 0 and "sharply 4-transitive" in out and "order 7920" in out
    assert "stabilizer chain orders: 720 > 72 > 8 > 1" in out


def test_group_h7(capsys):
    code, out, _ = run(capsys, "group", "h:7")
    assert code == 0 and "Frobenius: kernel 7, complement 6" in out


def test_group_json(capsys):
    code, out, _ = run(capsys, "group", "psl2:7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 168 and data["transitivity"] == "2-transitive"
    assert data["primitive"] is True and data["frobenius"] is None


def test_group_parse_error(capsys):
    code, _, err = run(capsys, "group", "sym:1x")
    assert code == 2 and "error" in err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["graph", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_guard_exit_3(capsys):
    code, _, err = run(capsys, "fusion", "sym:17", "--hecke")
    assert code == 3 and "guard" in err


def test_graph_compare_fig9(capsys):
    code, out, err = run(capsys, "graph", "principal", "mathieu:11", "--compare", "fixture:Fig9")
    assert code == 0 and "isomorphic" in err and out.startswith("# principal(M11)")


def test_graph_family_is_fig3(capsys):
    code, _, _ = run(capsys, "graph", "family", "--m", "1,1,1", "--n", "2", "--compare", "fixture:Fig3")
    assert code == 0
    code, _, err = run(capsys, "graph", "family", "--m", "1,1,1", "--n", "1", "--compare", "fixture:Fig3")
    assert code == 1 and "NOT" in err


def test_graph_dual_fig6(capsys):
    code, _, _ = run(capsys, "graph", "dual", "mathieu:11", "--point", "0", "--subpoint", "1",
                     "--compare", "fixture:Fig6")
    assert code == 0


def test_graph_tilde_and_formats(capsys, tmp_path):
    code, _, _ = run(capsys, "graph", "tilde", "--m", "1", "--n", "2", "--compare", "fixture:E6_1")
    assert code == 0
    code, _, _ = run(capsys, "graph", "tilde", "m:9", "--compare", "fixture:Fig5")
    assert code == 0
    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "graph", "principal", "alt:5", "--format", "dot", "--out", str(target))
    assert code == 0 and out == "" and target.read_text().startswith("graph ")
    code, out, _ = run(capsys, "graph", "principal", "alt:5", "--format", "json")
    assert json.loads(out)["schema"] == "sector-atlas/graph/1"


def test_graph_errors(capsys):
    assert run(capsys, "graph", "family", "--m", "1,x", "--n", "1")[0] == 2
    assert run(capsys, "graph", "family", "--m", "2", "--n", "1")[0] == 2
    assert run(capsys, "graph", "principal")[0] == 2
    assert run(capsys, "graph", "dual", "sym:4", "--point", "0", "--subpoint", "0")[0] == 2
    assert run(capsys, "graph", "principal", "sym:4", "--compare", "fixture:Nope")[0] == 2


def test_fusion_check_series(capsys):
    code, out, _ = run(capsys, "fusion", "mathieu:11", "--hecke", "--check", "M-series")
    assert code == 0 and "M-series: 27/27 pass" in out
    code, out, _ = run(capsys, "fusion", "alt:6", "--hecke", "--check", "A-series")
    assert code == 0 and "A-series: 20/20 pass" in out


def test_fusion_expect_fail(capsys):
    code, out, _ = run(capsys, "fusion", "mathieu:11", "--hecke", "--check", "W-series", "--expect-fail")
    assert code == 0 and "26/26 fail as expected" in out and "report <pi pi, nu> = 0" in out
    code, _, err = run(capsys, "fusion", "mathieu:11", "--hecke", "--check", "W-series")
    assert code == 1 and "--expect-fail" in err


def test_fusion_wrong_ring_fails(capsys):
    code, out, _ = run(capsys, "fusion", "alt:5", "--hecke", "--check", "S4-series")
    assert code == 1


def test_fusion_ring_output(capsys):
    code, out, _ = run(capsys, "fusion", "sym:3", "--rep")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [1, 1, 2]
    code, out, _ = run(capsys, "fusion", "sym:3", "--hecke", "--format", "text")
    assert "global dimension 6" in out
    assert run(capsys, "fusion", "sym:3", "--check", "no-such")[0] == 2


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "frobenius", "--no-timings")
    data = json.loads(out)
    assert code == 0 and [c["number"] for c in data["criteria"]] == [3, 4]
    assert all("seconds" not in c for c in data["criteria"])
    code, out, _ = run(capsys, "verify", "--filter", "figures", "--format", "text")
    assert code == 0 and "3/3 criteria pass" in out
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--filter", "bogus")[0] == 2


def test_output_is_byte_identical(capsys):
    outs = {run(capsys, "graph", "principal", "mathieu:11", "--format", "dot")[1] for _ in range(2)}
    assert len(outs) == 1
    a = subprocess.run([sys.executable, "-m", "sector_atlas.cli", "group", "m:9"], capture_output=True)
    b = subprocess.run([sys.executable, "-m", "sector_atlas.cli", "group", "m:9"], capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_console_script_installed():
    r = subprocess.run(["sector-atlas", "group", "h:7"], capture_output=True, text=True)
    assert r.returncode == 0 and "Frobenius: kernel 7, complement 6" in r.stdout
