import json

import pytest
import tameblocks as tb


def test_build_and_order():
    g = tb.build("gl2_3", seed=1)
    assert g.order == 48
    assert g.degree == 8
    p = tb.sylow2(g, seed=1)
    assert p.order == 16


def test_classify_m11():
    rep = tb.classify("m11", seed=3)
    assert rep["class"] == "AA1"
    assert rep["canonical"] == "psl3:p=3,f=1"
    assert rep["case"] == "aa3"
    assert rep["verified"] is True


def test_inspect_pattern():
    frag = tb.inspect("sd:n=4", seed=1)
    assert frag["pattern"] == "bb"
    frag = tb.inspect("pgl2star:p=3,f=1", seed=1)
    assert frag["pattern"] == "ab"
    assert frag["involution_classes"] == 1


def test_arithmetic_invariants():
    assert tb.two_part(48) == 16
    assert tb.olsson_ell("aa") == 3
    assert tb.cartan_bar(4, "sl") == [[4, 2], [2, 3]]
    assert tb.cartan_bar(4, "su") == [[8, 4], [4, 3]]
    assert tb.cartan_double([[4, 2], [2, 3]]) == [[8, 4], [4, 6]]
    d = tb.distinguish(5)
    assert d["sl_value"] != d["su_value"]
    assert tb.canonical_rep("BA2", 4) == "su2pm:p=5,f=1"


def test_group_json_roundtrip():
    g = tb.build("sd:n=4", seed=2)
    text = g.to_json()
    h = tb.Group.from_json(text)
    assert h.order == 16
    assert h.to_json() == text


def test_module_lab_split():
    g = tb.build("gl2_3", seed=1)
    p = tb.sylow2(g, seed=1)
    out = tb.module_lab(g, p, "split", seed=1)
    assert sorted(out["summand_dims"]) == [1, 2]


def test_fingerprint_and_classes():
    g = tb.build("sd:n=4", seed=1)
    fp = json.loads(g.fingerprint_json())
    assert fp["class_count"] == 7
    assert g.class_count() == 7


def test_errors_are_typed():
    with pytest.raises(tb.TameblocksError):
        tb.build("sl2pm:p=5,f=1", seed=1)
