import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wilfmotzkin.engine import motzkin_sequence
from wilfmotzkin.weights import (DegreeOverflowError, ParityPoly, WeightSystem, fold_fall,
                                 preset, weight_at)

from conftest import affine_systems

ALL_PRESETS = [preset("motzkin"), preset("wilf_plain"), preset("wilf_halved"),
               preset("flajolet_stirling", u=-1), preset("flajolet_stirling", u=2)]


def closed_form(name, kind, x, u=None):
    if name == "motzkin":
        return 1
    if name == "wilf_plain":
        return {"rise": -x - 1, "level": x - 1, "fall": 1}[kind]
    if name == "wilf_halved":
        if x % 2:
            return {"rise": (-x - 1) // 2, "level": x - 1, "fall": 2}[kind]
        return {"rise": -x - 1, "level": x - 1, "fall": 1}[kind]
    if name == "flajolet_stirling":
        return {"rise": u * (x + 1), "level": u + x, "fall": 1}[kind]


@pytest.mark.parametrize("name,u", [("motzkin", None), ("wilf_plain", None), ("wilf_halved", None),
                                    ("flajolet_stirling", -3), ("flajolet_stirling", 5)])
def test_presets_match_closed_forms(name, u):
    system = preset(name, u=u)
    for kind in ("rise", "level", "fall"):
        for x in range(1001):
            assert weight_at(system, kind, x) == closed_form(name, kind, x, u)


def test_preset_examples():
    assert preset("wilf_halved").weight_at("rise", 3) == -2
    assert all(preset("motzkin").weight_at("level", x) == 1 for x in range(20))
    assert preset("flajolet_stirling", u=2).weight_at("level", 4) == 6
    assert weight_at(preset("wilf_plain"), "rise", 0) == -1
    assert weight_at(preset("wilf_plain"), "level", 1) == 0
    assert weight_at(preset("wilf_halved"), "fall", 2) == 1


def test_preset_errors():
    with pytest.raises(ValueError, match="unknown preset"):
        preset("catalan")
    with pytest.raises(ValueError, match="requires an integer u"):
        preset("flajolet_stirling")
    with pytest.raises(ValueError):
        preset("motzkin").weight_at("sideways", 0)
    with pytest.raises(ValueError):
        preset("motzkin").rise(-1)


def test_degree_limit():
    with pytest.raises(DegreeOverflowError):
        ParityPoly((0, 0, 0, 1), (1,))
    p = ParityPoly((1, 1), (0, 1))
    with pytest.raises(DegreeOverflowError):
        p * p * p


def test_fold_fall_examples():
    folded = fold_fall(preset("wilf_halved"))
    assert folded.rise(3) == -4
    assert all(folded.fall(x) == 1 for x in range(50))
    assert fold_fall(preset("motzkin")) == preset("motzkin")


@pytest.mark.parametrize("system", ALL_PRESETS, ids=lambda s: s.label)
def test_fold_fall_preserves_presets(system):
    assert motzkin_sequence(fold_fall(system), 12) == motzkin_sequence(system, 12)


@settings(max_examples=50, deadline=None)
@given(affine_systems(-5, 5))
def test_fold_fall_preserves_random(system):
    assert motzkin_sequence(fold_fall(system), 12) == motzkin_sequence(system, 12)


def test_plain_and_halved_agree():
    assert motzkin_sequence(preset("wilf_plain"), 20) == motzkin_sequence(preset("wilf_halved"), 20)


@given(affine_systems())
def test_json_round_trip(system):
    again = WeightSystem.from_json(system.to_json())
    assert again == system
    doc = json.loads(system.to_json())
    assert set(doc) == {"label", "rise", "level", "fall"}
    assert set(doc["rise"]) == {"even", "odd"}


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(0, 10_000))
def test_parity_poly_evaluation(a, b, x):
    p = ParityPoly((a, b), (b, a))
    j = x // 2
    assert p(x) == (a + b * j if x % 2 == 0 else b + a * j)
