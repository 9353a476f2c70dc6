import math

import pytest

import platoon
from platoon import RationalFunction as RF


def test_arithmetic_is_exact():
    f = RF("1/(s+1)")
    assert f + f == RF("2/(s+1)")
    assert f * RF("s+1") == RF("1")
    assert RF("(s^2-1)/(s-1)") == RF("s+1")
    assert RF("s/(2*s+4)").den == ["2", "1"]
    assert str(RF("1/3")) == "1/3"


def test_parse_error_is_typed():
    with pytest.raises(platoon.PlatoonError):
        RF("1/(s+")
    with pytest.raises(platoon.PlatoonError):
        RF("1/0")


def test_hurwitz():
    assert platoon.hurwitz_stable(["1", "2", "1"])
    assert not platoon.hurwitz_stable(["-1", "1"])
    assert not platoon.hurwitz_stable(["1", "0", "1"])


def test_pd_loop_peak():
    t = platoon.integrator_loop_t(RF("1+s"), 2)
    assert t == RF("(s+1)/(s^2+s+1)")
    assert abs(t(1j)) == pytest.approx(math.sqrt(2), abs=1e-12)
    norm, w = platoon.hinf_norm(t)
    x = math.sqrt(3) - 1
    assert norm == pytest.approx(math.sqrt((1 + x) / (1 - x + x * x)), rel=1e-9)
    assert w == pytest.approx(math.sqrt(x), rel=1e-6)


def test_internal_stability_report():
    r = platoon.internal_stability(RF("1/s^2"), RF("1+s"))
    assert r["internally_stable"]
    assert not r["all_proper"]
    assert not platoon.internal_stability(RF("1/s^2"), RF("1"))["internally_stable"]


def test_bezout():
    for m in (1, 4, 7):
        d = platoon.youla_coprime(m)
        assert d["N"] * d["X"] + d["M"] * d["Y"] == RF("1")


def test_synthesis_family():
    doc = platoon.synthesize(4, 0.1, 1.0, 3)
    assert doc["schema"] == "family/1"
    assert len(doc["controllers"]) == 3
    assert doc["certificate"]["peak"] <= 1.1
    assert doc["product_check"]["max_product"] <= 1.1 + 1e-6


def test_lift_preserves_closed_loop():
    r = platoon.search_parameters(4, 0.1)
    c = platoon.lift_order(r["controller"], 4, 2)
    assert platoon.integrator_loop_t(c, 2) == platoon.integrator_loop_t(r["controller"], 4)


def test_middleton_first_order():
    assert platoon.middleton_integral(RF("1/(s+1)")) == pytest.approx(-math.pi / 2, abs=1e-6)


def test_cascade_and_mistuning():
    peak, _ = platoon.cascade_peak([RF("1+s")] * 10, 2)
    assert peak >= 32
    a = platoon.pd_mistune(trials=5)
    assert a == platoon.pd_mistune(trials=5)
    assert a["median_peak"] < platoon.homogeneous_growth(RF("1+s"), 2, 20)["norms"][-1]


def test_bidirectional():
    assert platoon.verify_factorization(6)
    s = platoon.sensitivity_matrix(4)
    assert s[0][0] == RF("s/(s+1)")
    b = platoon.bode(3, 1e-2, 1e2, 10)
    assert b["below_first_order_bound"]
    assert len(b["magnitudes"]) == len(b["omegas"]) * 9
