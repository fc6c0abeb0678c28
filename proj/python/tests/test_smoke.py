import json

import pytest

import gaplab

WORKED = {
    "period": "1",
    "pieces": [
        {"left": "0", "right": "3/4", "slope": "1", "intercept": "1"},
        {"left": "3/4", "right": "1", "slope": "1", "intercept": "-1/2"},
    ],
}


def test_frac_and_reduce():
    assert gaplab.frac("11/4") == "3/4"
    assert gaplab.frac("-1/4") == "3/4"
    assert gaplab.reduce_mod_period("5", "2") == "1"
    r = gaplab.reduce_mod_period("7*pi/16", "1", mode="approx")
    assert float(r) == pytest.approx(0.3744467859455345, abs=1e-15)


def test_evaluate():
    assert gaplab.evaluate("triangle", "7/10") == "3/10"
    assert float(gaplab.evaluate("cosine", "pi", mode="approx")) == pytest.approx(-1.0)


def test_cosine_gap_report():
    r = gaplab.gap_report("cosine", "1/4", 3)
    lengths = [float(g["real"]) for g in r["gap_set"]]
    assert lengths == pytest.approx([0.0913, 0.1459, 1.7628], abs=5e-5)
    assert r["mode"] == "approx"


def test_exact_report_on_dict_function():
    r = gaplab.gap_report(WORKED, "1/8", 7, mode="exact")
    assert r["mode"] == "exact"
    assert r["gaps"][-1]["kind"] == "extremal"


def test_circle_gaps():
    assert gaplab.circle_gaps(["1/4", "1/2", "3/4"]) == ["1/4", "1/4", "1/2"]


def test_verify_and_constructions():
    assert gaplab.verify("three_gap", alpha="sqrt2", N=500)["pass"]
    r = gaplab.verify("general", fn=WORKED, alpha="pi/16", N=7)
    assert r["bound"]["upper"] == 5
    assert r["observed"] == 4
    assert gaplab.verify("main_construction", mode="exact", n=3)["observed"] == 7
    assert gaplab.construct_main(2)["N"] == 8
    w = gaplab.construct_c2(2)
    assert float(w["I"]["real"]) == pytest.approx(1.5707963267948966)
    assert w["report"]["pass"]


def test_errors():
    with pytest.raises(gaplab.GaplabError, match="precondition-violation"):
        gaplab.verify("five_distance", alpha="sqrt2", beta="0", N=10)
    with pytest.raises(gaplab.GaplabError, match="parse-error"):
        gaplab.frac("pi")
    with pytest.raises(ValueError):
        gaplab.reduce_mod_period("1", "0")


def test_cli_roundtrip():
    code, out, _ = gaplab.run_cli("gaps", "--fn", "sawtooth", "--alpha", "1/4", "--N", "4", "--mode", "exact")
    assert code == 0
    assert json.loads(out)["gap_count"] == 1
    assert gaplab.run_cli("verify", "nope")[0] == 2
