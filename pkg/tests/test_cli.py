import io
import json
import subprocess
import sys

import pytest

from ncpart.cli import build_parser, config_from_args, main, run
from ncpart.polys import ExactPoly


def call(*argv):
    cfg = config_from_args(build_parser().parse_args(list(argv)))
    out = io.StringIO()
    code = run(cfg, out)
    return code, out.getvalue()


def test_decomp_example():
    assert call("decomp", "--family", "B", "--n", "2", "--types", "B1,A1", "--flavor", "comb") == (0, "2\n")


def test_decomp_oracle_agrees():
    assert call("decomp-oracle", "--family", "D", "--n", "4", "--types", "A1,A2")[1] == \
        call("decomp", "--family", "D", "--n", "4", "--types", "A1,A2")[1]


def test_total_example():
    assert call("total", "--family", "D", "--n", "4", "--m", "1", "--l", "2") == (0, "50\n")


def test_chains_and_blocks():
    assert call("chains", "--family", "B", "--n", "3", "--m", "2", "--ranks", "1,2")[1] == "45\n"
    # one pair of blocks of size 4 and a zero block; the second element is free
    code, out = call("blocks", "--family", "B", "--n", "3", "--m", "2", "--ranks", "2,1", "--b", "0,1,0")
    assert (code, out) == (0, "6\n")
    code, out = call("blocks", "--family", "A", "--n", "4", "--m", "1", "--l", "2", "--b", "2,1,0,0")
    assert code == 0


def test_ranksel_factored():
    code, out = call("ranksel-exc", "--group", "E8", "--ranks", "4,2,1,1")
    assert out.strip() == "75*m^3*(4140*m - 583)"


def test_json_round_trip():
    code, out = call("ranksel-exc", "--group", "H3", "--ranks", "1,1,1", "--format", "json")
    data = json.loads(out)
    poly = ExactPoly.from_json(data["value"])
    assert poly.to_text() == data["value"]["text"]
    assert data["input"] == {"group": "H3", "ranks": [1, 1, 1]}


def test_csv_output():
    code, out = call("total", "--family", "B", "--n", "3", "--l", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "input,total multichain count"
    assert lines[1].endswith(",20")


def test_nabla():
    code, out = call("nabla", "--family", "A", "--n", "7", "--m", "3",
                     "--tuple", "(4,5,6);(3,6);(1,7);(1,2,6)")
    assert out.strip() == "{1,2,21}{3,19,20}{4,5,6}{7,17,18}{8,9,10,11,12,13,14,15,16}"


def test_expected_intervals_fraction_json():
    code, out = call("expected-intervals", "--family", "D", "--n", "4", "--m", "2", "--i", "2",
                     "--l", "2", "--format", "json")
    v = json.loads(out)["value"]
    assert v["denominator"] > 1


def test_fm_check():
    code, out = call("fm-check", "--n", "4", "--m", "1")
    assert code == 0 and out.startswith("ok")


def test_mtriangle():
    code, out = call("mtriangle", "--family", "A", "--n", "3")
    assert out.strip() == "x^2*y^2 - 3*x*y^2 + 3*x*y + 2*y^2 - 3*y + 1"


def test_errors_exit_2(capsys):
    assert main(["ranksel-exc", "--group", "X9", "--ranks", "1"]) == 2
    assert main(["chains", "--family", "B", "--n", "3", "--ranks", "1,1"]) == 2
    assert main(["nabla", "--family", "A", "--n", "3", "--m", "1", "--tuple", "(1,2)"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["total", "--family", "Q", "--n", "3", "--l", "2"])
    assert exc.value.code == 2


def test_verify_single_suite():
    code, out = call("verify", "fm", "intervals")
    assert code == 0
    assert "fm" in out and "PASS" in out


def test_unknown_suite(capsys):
    assert main(["verify", "nosuch"]) == 2


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "ncpart", "total", "--family", "A", "--n", "4", "--l", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "14\n"
