import io
import re
import subprocess
import sys

import pytest

from dualgroups.cli import main

A4 = """\
ambient = A 4
sigma s1 = a1..a2
sigma s2 = a3..a4
color D1  = s1:1  s2:0
color D2* = s1:1  s2:-1
color D3* = s1:-1 s2:1
color D4  = s1:0  s2:1
tau = 1 1
parent_sp = 2 3
"""

LINE = re.compile(r"^CHECK \S+ \S+ (PASS|FAIL)( .*)?$")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def a4_file(tmp_path):
    p = tmp_path / "an1.ss"
    p.write_text(A4)
    return str(p)


def report_lines(text):
    return [l for l in text.splitlines() if l.startswith(("CHECK", "SUMMARY"))]


def test_rootinfo():
    code, out = run("rootinfo", "--machine", "G2")
    assert code == 0
    assert "weyl_order=12" in out and "positive_roots=6" in out
    assert "highest_root=3 2" in out


def test_check_commands(a4_file):
    code, out = run("check", "luna", a4_file)
    assert code == 0
    lines = report_lines(out)
    assert lines[-1] == "SUMMARY 10/10"
    assert all(LINE.match(l) for l in lines[:-1])
    code, out = run("check", "wss", a4_file)
    assert code == 0


def test_failed_check_exits_one(tmp_path):
    p = tmp_path / "bad.ss"
    p.write_text(A4.replace("color D1  = s1:1", "color D1  = s1:2"))
    code, out = run("check", "luna", str(p))
    assert code == 1
    assert "FAIL" in out


def test_dualgroup(a4_file):
    code, out = run("dualgroup", "--machine", a4_file)
    assert code == 0
    assert "type=A2 torus_rank=0" in out


def test_quotient(a4_file):
    code, out = run("quotient", a4_file, "--v", "0,-1/2")
    assert code == 0
    assert "sigma s1 = 1 1 0 0" in out
    assert report_lines(out)[-1] == "SUMMARY 6/6"


def test_quotient_outside_cone(a4_file, capsys):
    code, _ = run("quotient", a4_file, "--v", "1,0")
    assert code == 2
    assert "positive" in capsys.readouterr().err


def test_functor_case_c():
    code, out = run("functor", "--y", "catalog:Dn", "--item", "1", "--n", "5", "--nu", "2")
    assert code == 0
    assert "case C" in out
    assert "CHECK Dn(1)[n=5,nu=2] case-C-bracket PASS" in out


def test_functor_with_catalog_x():
    code, out = run("functor", "--machine", "--y", "catalog:Cn", "--x", "catalog:Cn(4)", "--n", "4")
    assert code == 0
    assert not out.startswith("case")


def test_usage_errors(capsys):
    assert run("bogus")[0] == 2
    assert run("check", "wss", "/no/such/file.ss")[0] == 2
    assert run("functor", "--y", "catalog:Zz", "--item", "1")[0] == 2
    assert run("functor", "--y", "catalog:An", "--item", "1", "--n", "4")[0] == 2


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "broken.ss"
    p.write_text("ambient = A 3\nsigma s1 = 0 0 0\n")
    assert run("check", "wss", str(p))[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_paper_verify_entry():
    code, out = run("paper", "verify", "--entry", "G2(1)")
    assert code == 0
    assert all(LINE.match(l) for l in report_lines(out)[:-1])


def test_reports_are_deterministic():
    first = run("paper", "verify", "--nmax", "4")
    second = run("paper", "verify", "--nmax", "4")
    assert first == second
    assert first[0] == 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "dualgroups", "rootinfo", "--machine", "B3"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert "weyl_order=48" in p.stdout
