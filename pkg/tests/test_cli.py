import json
import subprocess
import sys

import pytest

from g2forms.cli import main

PHI0 = "127 + 347 + 567 + 135 - 146 - 236 - 245"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, code", [
    (["parse", "(0,0,12,13)"], 0),
    (["parse", "(0,0,12,13,24)"], 1),
    (["parse", "(0,0,12"], 2),
    (["closed-forms", "17", "--degree", "3"], 0),
    (["closed-forms", "17", "--degree", "9"], 2),
    (["closed-forms", "zz"], 2),
    (["classify", "123+456"], 0),
    (["classify", "1238"], 2),
    (["metric", PHI0], 0),
    (["metric", "123+456"], 1),
    (["verify-g2", "17", PHI0, "--coclosed"], 0),
    (["verify-g2", "37A", PHI0, "--coclosed"], 1),
    (["su3-reduce", "17", PHI0], 0),
    (["su3-reduce", "17", PHI0, "--x", "1"], 2),
    (["su3-reduce", "17", "123"], 1),
    (["halfflat-lift", "(0,0,0,0,0,0)", "--omega", "12+34+56", "--psi-minus", "136+145+235-246"], 0),
    (["halfflat-lift", "(0,0,0,0,12,13)", "--omega", "12+34+56", "--psi-minus", "136+145+235-246"], 1),
    (["obstruct", "g1"], 0),
    (["obstruct", "g6"], 0),
    (["obstruct", "g6", "--strict"], 1),
    (["obstruct", "g6", "--x", "5", "--y", "7"], 1),
    (["obstruct", "g6", "--x", "5", "--y", "6"], 0),
    (["obstruct", "g6", "--pairs"], 0),
    (["obstruct", "g2", "--probe", "7", "--samples", "500"], 0),
    (["obstruct", "17", "--probe", "1"], 2),
    (["block-proof", "l1"], 0),
    (["block-proof", "g1"], 2),
    (["nilsoliton", "17", "--f-basis"], 0),
    (["nilsoliton", "(0,12,13)"], 2),
    (["contact", "ex2"], 1),
    (["contact", "ex2", "--xi", "2*7"], 2),
    (["contact", "ex2", "--phi-scale", "1/8"], 2),
    (["contact", "ex2", "--phi=-167 - 237 + 457 - 124 - 135 - 256 + 346", "--phi-scale", "1/8", "--xi", "2*7"], 0),
    (["bryant"], 1),
    (["bryant", "17"], 2),
    (["catalog-verify", "--entry", "17"], 0),
    (["catalog-verify", "--entry", "g6"], 0),
    (["catalog-verify", "--entry", "g6", "--strict"], 1),
    (["catalog-verify", "--entry", "zz"], 2),
    (["paper-verify", "--entry", "17"], 0),
    (["nosuch"], 2),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_nilsoliton_output(capsys):
    code, out, _ = run(capsys, "nilsoliton", "17", "--f-basis")
    assert "lambda = -5/12" in out


def test_flag_lines(capsys):
    code, out, _ = run(capsys, "catalog-verify", "--entry", "ex2")
    assert code == 0
    assert any(line.startswith("FLAG ex2 g2-dual") for line in out.splitlines())


def test_records_format(capsys):
    code, out, _ = run(capsys, "catalog-verify", "--entry", "l2", "--format", "records")
    lines = out.splitlines()
    assert json.loads(lines[0])["summary"]["checks"] == len(lines) - 1
    assert all(json.loads(line)["entry"] == "l2" for line in lines[1:])


def test_full_run_exit_code(capsys):
    code, out, _ = run(capsys, "catalog-verify")
    assert out.startswith("# 216 checks:")
    assert code == (1 if "\nFAIL " in out else 0)


def test_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "parse", "(0,0,12")
    assert code == 2 and not out and "error" in err


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "g2forms", "parse", "(0,0,12)"], capture_output=True, text=True)
    assert p.returncode == 0 and "jacobi: pass" in p.stdout
