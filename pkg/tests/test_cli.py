import io
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import partitions, polynomials, rational_series, rationals
from wronski.cli import from_json, render, run
from wronski.exactmath import Polynomial, SymbolTable
from wronski.schurring import SchurExpansion
from wronski.series import DividedSeries

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "hseq_rank1_order2.txt": ["hseq", "--rank", "1", "--order", "2"],
    "degree_rank1_dim3.txt": ["degree", "--rank", "1", "--dim", "3"],
    "check_giambelli_rank2_w4_n8.txt": ["check", "giambelli", "--rank", "2", "--max-weight", "4", "--order", "8"],
    "solve_worked_example.txt": ["solve", "--rank", "1", "--spec", "3,2", "--inits", "1,1", "--order", "5"],
    "solve_spec_json.txt": ["solve", "--rank", "1", "--spec", "3,2", "--order", "2", "--format", "json"],
    "schur_rank1_k4.txt": ["schur", "--rank", "1", "--k", "4"],
    "product_g13_s1_s1.txt": ["product", "--rank", "1", "--dim", "3", "--a", "1", "--b", "1"],
    "product_g13_s2_s11.txt": ["product", "--rank", "1", "--dim", "3", "--a", "2", "--b", "1,1"],
    "syt_321.txt": ["syt", "--partition", "3,2,1"],
    "pieri_rank1_11_k2.txt": ["pieri", "--rank", "1", "--partition", "1,1", "--k", "2"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, _ = invoke(GOLDEN_CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_documented_examples():
    assert invoke(["hseq", "--rank", "1", "--order", "2"])[1] == "h0 = 1\nh1 = e1\nh2 = e1^2 - e2\n"
    assert invoke(["degree", "--rank", "1", "--dim", "3"])[1] == "2\n"
    assert invoke(["check", "giambelli", "--rank", "2", "--max-weight", "4", "--order", "8"])[0] == 0


@pytest.mark.parametrize("family", ["giambelli", "pieri", "derivative", "euler", "nonhom"])
def test_check_families_and_fault_injection(family):
    base = ["check", family, "--rank", "1", "--max-weight", "3", "--order", "8"]
    code, out, _ = invoke(base)
    assert code == 0 and "FAIL" not in out
    code, out, _ = invoke(base + ["--inject-fault"])
    assert code == 3
    assert out.startswith("FAIL")


def test_check_json_status():
    code, out, _ = invoke(["check", "euler", "--rank", "2", "--format", "json", "--inject-fault"])
    assert code == 3
    env = json.loads(out)
    assert env["status"] == "verification-failed"
    assert env["payload"]["failed"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["hseq"],
        ["hseq", "--rank", "9"],
        ["hseq", "--rank", "1", "--order", "65"],
        ["hseq", "--rank", "1", "--bogus"],
        ["solve", "--rank", "1", "--spec", "1"],
        ["solve", "--rank", "1", "--spec", "0.5,1"],
        ["syt", "--partition", "1,2"],
        ["degree", "--rank", "2", "--dim", "2"],
        ["solve-nonhom", "--rank", "1", "--rhs", "/nonexistent.json"],
        ["wronskian", "--rank", "1", "--partition", "1,1,1"],
    ],
)
def test_usage_errors(argv):
    code, out, err = invoke(argv)
    assert code == 2
    assert out == ""
    assert err.strip()


def test_repeatable_output():
    argv = ["wronskian", "--rank", "2", "--partition", "2,1", "--order", "4", "--format", "json"]
    assert invoke(argv) == invoke(argv)


def test_solve_nonhom(tmp_path):
    rhs = tmp_path / "rhs.json"
    rhs.write_text(json.dumps({"order": 6, "coeffs": ["1", "0", "0", "0", "0", "0", "0"]}))
    code, out, _ = invoke(["solve-nonhom", "--rank", "1", "--rhs", str(rhs), "--order", "4"])
    assert code == 0
    assert out.splitlines() == ["a0 = 0", "a1 = 0", "a2 = 1", "a3 = e1", "a4 = e1^2 - e2"]


def test_wronskian_command():
    code, out, _ = invoke(["wronskian", "--rank", "1", "--partition", "1,1", "--order", "2"])
    assert code == 0
    assert out.splitlines() == ["ratio = e2", "verified = true", "a0 = e2", "a1 = e1*e2", "a2 = e1^2*e2"]
    code, out, _ = invoke(["wronskian", "--rank", "1", "--partition", "1,1", "--order", "2", "--spec", "3,2"])
    assert out.splitlines() == ["ratio = 2", "verified = true", "a0 = 2", "a1 = 6", "a2 = 18"]


def test_schur_poly():
    assert invoke(["schur", "--rank", "2", "--poly", "h1^3"])[1] == "s[3] + 2*s[2,1] + s[1,1,1]\n"
    assert invoke(["schur", "--rank", "1", "--poly", "e2"])[1] == "s[1,1]\n"
    assert invoke(["schur", "--rank", "1", "--k", "4", "--dim", "3"])[1] == "2*s[2,2]\n"


def test_render_examples():
    E = SymbolTable.of("e1", "e2")
    e1, e2 = Polynomial.variables(E)
    assert render(e1**2 - e2) == "e1^2 - e2"
    assert render(SchurExpansion.zero()) == "0"
    assert render(SchurExpansion.zero(), "json") == '{"terms":[]}'
    series = DividedSeries((Fraction(1), Fraction(3), Fraction(7)))
    assert render(series, "json") == '{"order":2,"coeffs":["1","3","7"]}'


@st.composite
def expansions(draw):
    lams = draw(st.lists(partitions(5, 3), max_size=4))
    return SchurExpansion({lam: draw(rationals) for lam in lams})


E3 = SymbolTable.of("e1", "e2", "e3")
values = st.one_of(
    rationals,
    polynomials(E3, 5, 3),
    rational_series(5),
    expansions(),
)


@settings(max_examples=100, deadline=None)
@given(values)
def test_json_roundtrip(v):
    text = render(v, "json")
    back = from_json(json.loads(text))
    assert back == v
    assert render(back, "json") == text
