import re
import shutil
import subprocess
import sys

import pytest

from boxtw.cli import main
from boxtw.formats import parse_box, parse_graph, parse_td
from boxtw.graph import clique_number
from boxtw.treedec import validate_td

from conftest import FIXTURES


@pytest.fixture
def work(tmp_path):
    for p in FIXTURES.iterdir():
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidate:
    def test_valid(self, work, capsys):
        code, out, _ = run(capsys, "validate", work / "c4.gr", work / "c4.td")
        assert code == 0 and "width=2" in out

    def test_uncovered_edge(self, work, capsys):
        (work / "bad.td").write_text("s td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n")
        code, out, _ = run(capsys, "validate", work / "c4.gr", work / "bad.td")
        assert code == 1 and "T2" in out and "(1, 4)" in out

    def test_garbage(self, work, capsys):
        (work / "junk.gr").write_text("hello world\n")
        code, _, err = run(capsys, "validate", work / "junk.gr", work / "c4.td")
        assert code == 2 and "line 1" in err

    def test_missing_file(self, work, capsys):
        assert run(capsys, "validate", work / "nope.gr", work / "c4.td")[0] == 2


class TestBoxrep:
    STATUS = re.compile(r"^width=(\d+) dim=(\d+) n=(\d+) ms=[0-9.]+$", re.M)

    def test_c4_with_td(self, work, capsys):
        code, out, _ = run(capsys, "boxrep", work / "c4.gr", work / "c4.td", "--out", work / "c4.box")
        m = self.STATUS.search(out)
        assert code == 0 and m.groups() == ("2", "4", "4")
        assert parse_box((work / "c4.box").read_text()).d == 4
        assert run(capsys, "verify", work / "c4.gr", work / "c4.box")[0] == 0

    def test_p3_heuristic(self, work, capsys):
        (work / "p3.gr").write_text("p tw 3 2\n1 2\n2 3\n")
        code, out, _ = run(capsys, "boxrep", work / "p3.gr", "--out", work / "p3.box")
        assert code == 0 and self.STATUS.search(out).groups()[:2] == ("1", "3")

    @pytest.mark.parametrize("flag", [[], ["--pairwise"]])
    def test_self_verify_contract(self, work, capsys, flag):
        code, _, _ = run(capsys, "boxrep", work / "pk3_60.gr", work / "pk3_60.td", "--out", work / "o.box", *flag)
        assert code == 0
        assert run(capsys, "verify", work / "pk3_60.gr", work / "o.box")[0] == 0
        assert run(capsys, "verify", work / "pk3_60.gr", work / "o.box", "--sweep")[0] == 0

    def test_invalid_td(self, work, capsys):
        (work / "bad.td").write_text("s td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n")
        code, out, _ = run(capsys, "boxrep", work / "c4.gr", work / "bad.td")
        assert code == 1 and "invalid decomposition" in out

    def test_parse_error(self, work, capsys):
        (work / "junk.gr").write_text("p tw 2 1\n1 9\n")
        assert run(capsys, "boxrep", work / "junk.gr")[0] == 2

    def test_deterministic(self, work, capsys):
        for name in ("a.box", "b.box"):
            run(capsys, "boxrep", work / "chordal25.gr", "--strategy", "min-fill", "--seed", "3", "--out", work / name)
        assert (work / "a.box").read_bytes() == (work / "b.box").read_bytes()

    def test_no_temp_files_left(self, work, capsys):
        out_dir = work / "out"
        run(capsys, "boxrep", work / "c4.gr", "--out", out_dir / "x.box")
        assert [p.name for p in out_dir.iterdir()] == ["x.box"]


class TestVerify:
    def test_tampered(self, work, capsys):
        code, out, _ = run(capsys, "verify", work / "c4.gr", work / "c4_bad.box")
        assert code == 1
        assert out.splitlines() == ["missing 1 2", "missing 3 4"]

    def test_tamper_constructed(self, work, capsys):
        run(capsys, "boxrep", work / "c4.gr", work / "c4.td", "--out", work / "t.box")
        lines = (work / "t.box").read_text().splitlines()
        parts = lines[1].split()
        parts[-2:] = ["1000", "1001"]
        lines[1] = " ".join(parts)
        (work / "t.box").write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "verify", work / "c4.gr", work / "t.box")
        assert code == 1 and "missing 1" in out

    def test_wrong_n(self, work, capsys):
        assert run(capsys, "verify", work / "c4.gr", work / "octahedron.box")[0] == 2


class TestGen:
    def test_roberts(self, work, capsys):
        code, out, _ = run(capsys, "gen", "roberts", "3", "--out", work / "r")
        g = parse_graph((work / "r.gr").read_text())
        assert code == 0 and out.strip() == "n=6 m=12" and g.max_degree == 4

    def test_tightness(self, work, capsys):
        code, out, _ = run(capsys, "gen", "tightness", "4", "--out", work / "t")
        g = parse_graph((work / "t.gr").read_text())
        td = parse_td((work / "t.td").read_text())
        assert code == 0 and g.n == 20
        assert validate_td(g, td).ok and out.strip() == f"n=20 m={g.m} width={td.width}"

    def test_partial_ktree(self, work, capsys):
        code, out, _ = run(capsys, "gen", "partial-ktree", "1000", "5", "--seed", "1", "--out", work / "k")
        g = parse_graph((work / "k.gr").read_text())
        td = parse_td((work / "k.td").read_text())
        assert code == 0 and out.strip().endswith("width=5")
        assert validate_td(g, td).width == 5

    @pytest.mark.parametrize("family, params, files", [
        ("kpartite", ["2", "3"], [".gr"]),
        ("chordal", ["12"], [".gr"]),
        ("permutation", ["9"], [".gr", ".order"]),
        ("arcs", ["7", "20"], [".gr", ".arcs"]),
    ])
    def test_other_families(self, work, capsys, family, params, files):
        assert run(capsys, "gen", family, *params, "--out", work / "f")[0] == 0
        assert sorted(p.suffix for p in work.glob("f.*")) == sorted(files)

    def test_stdout(self, capsys):
        code, out, err = run(capsys, "gen", "roberts", "2")
        assert code == 0 and out == "p tw 4 4\n1 3\n1 4\n2 3\n2 4\n" and "n=4" in err

    @pytest.mark.parametrize("argv", [["roberts"], ["roberts", "x"], ["roberts", "0"], ["partial-ktree", "3", "3"], ["nope", "1"]])
    def test_bad_params(self, capsys, argv):
        assert run(capsys, "gen", *argv)[0] == 2

    def test_deterministic(self, work, capsys):
        run(capsys, "gen", "partial-ktree", "300", "4", "--seed", "7", "--out", work / "a")
        run(capsys, "gen", "partial-ktree", "300", "4", "--seed", "7", "--out", work / "b")
        assert (work / "a.gr").read_bytes() == (work / "b.gr").read_bytes()
        assert (work / "a.td").read_bytes() == (work / "b.td").read_bytes()


class TestClass:
    def test_chordal(self, work, capsys):
        code, out, _ = run(capsys, "class", "chordal", work / "chordal25.gr", "--out", work / "c.td")
        g = parse_graph((work / "chordal25.gr").read_text())
        omega = clique_number(g)
        assert code == 0 and f"width={omega - 1} " in out and f"bound={omega + 1}" in out
        assert validate_td(g, parse_td((work / "c.td").read_text())).ok

    def test_c4_not_chordal(self, work, capsys):
        code, out, _ = run(capsys, "class", "chordal", work / "c4.gr")
        assert code == 1 and "chordless cycle 1 2 3 4" in out

    def test_cocomp(self, work, capsys):
        code, out, _ = run(capsys, "class", "cocomp", work / "perm12.gr", work / "perm12.order")
        g = parse_graph((work / "perm12.gr").read_text())
        width = int(re.search(r"width=(\d+)", out).group(1))
        assert code == 0 and width <= 2 * g.max_degree - 1

    def test_circarc(self, work, capsys):
        code, out, _ = run(capsys, "class", "circarc", work / "arcs10.arcs")
        g = parse_graph((work / "arcs10.gr").read_text())
        width = int(re.search(r"width=(\d+)", out).group(1))
        assert code == 0 and width <= 2 * clique_number(g) - 1

    def test_caterpillar(self, work, capsys):
        code, out, _ = run(capsys, "class", "caterpillar", work / "p5.gr", work / "p5.cat")
        assert code == 0 and out.startswith("width=2 ") and "bound=6" in out

    def test_caterpillar_violation(self, work, capsys):
        (work / "long.gr").write_text("p tw 5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n")
        code, out, _ = run(capsys, "class", "caterpillar", work / "long.gr", work / "p5.cat")
        assert code == 1 and "(1, 5)" in out

    def test_wrong_arity(self, work, capsys):
        assert run(capsys, "class", "cocomp", work / "p5.gr")[0] == 2


class TestOracle:
    def test_c4_exact(self, work, capsys):
        code, out, _ = run(capsys, "oracle", work / "c4.gr", "--mode", "exact", "--out", work / "w.box")
        assert code == 0 and out.strip() == "boxicity=2"
        assert run(capsys, "verify", work / "c4.gr", work / "w.box")[0] == 0

    def test_k5_interval(self, work, capsys):
        (work / "k5.gr").write_text("p tw 5 10\n" + "".join(f"{u} {v}\n" for u in range(1, 6) for v in range(u + 1, 6)))
        code, out, _ = run(capsys, "oracle", work / "k5.gr", "--mode", "interval")
        assert code == 0 and out.startswith("interval=true")

    def test_n9_exact_limit(self, work, capsys):
        (work / "p9.gr").write_text("p tw 9 8\n" + "".join(f"{i} {i + 1}\n" for i in range(1, 9)))
        assert run(capsys, "oracle", work / "p9.gr", "--mode", "exact")[0] == 3

    def test_upper(self, work, capsys):
        code, out, _ = run(capsys, "oracle", work / "octahedron.gr", "--mode", "upper:3", "--out", work / "o.box")
        assert code == 0 and "boxicity<=3" in out
        assert parse_box((work / "o.box").read_text()).d == 3

    def test_upper_inconclusive(self, work, capsys):
        assert run(capsys, "oracle", work / "c4.gr", "--mode", "upper:1")[0] == 1

    def test_bad_mode(self, work, capsys):
        assert run(capsys, "oracle", work / "c4.gr", "--mode", "upper:x")[0] == 2
        assert run(capsys, "oracle", work / "c4.gr", "--mode", "wat")[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_console_entry_point(tmp_path):
    exe = shutil.which("boxtw")
    cmd = [exe] if exe else [sys.executable, "-m", "boxtw.cli"]
    res = subprocess.run([*cmd, "validate", str(FIXTURES / "c4.gr"), str(FIXTURES / "c4.td")], capture_output=True, text=True)
    assert res.returncode == 0 and "width=2" in res.stdout
