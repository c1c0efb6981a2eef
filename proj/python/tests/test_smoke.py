import os
import pathlib

import numpy as np
import pytest

import monokit

FIXTURES = pathlib.Path(os.environ.get("MONOKIT_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[2] / "fixtures"))


def fixture(name):
    return monokit.load(str(FIXTURES / name))


@pytest.mark.parametrize("name", ["box.json", "max_xy0.json", "l1_norm.json"])
@pytest.mark.parametrize("mode", ["line", "plane", "lohne"])
def test_maximal_fixtures(name, mode):
    report = monokit.check(fixture(name), mode)
    assert report.exit_code == 0
    assert report.failed_condition is None


def test_third_quadrant_witness():
    report = monokit.check(fixture("third_quadrant.json"), "lohne")
    assert report.verdict == "NotMaximal"
    assert report.failed_condition == "cone_condition"
    w = report.witness
    assert w["kind"] == "related_point"
    np.testing.assert_array_equal(w["points"][0]["x"], [0.0, 0.0])
    assert "verdict: NotMaximal" in report.text("lohne")


def test_cut_mutation_is_not_maximal():
    report = monokit.check(fixture("box_cut.json"), "line", seed=3)
    assert report.exit_code == 1
    assert report.witness is not None


def test_onedim_and_trace():
    f = fixture("abs.json")
    assert monokit.check(f, "onedim").verdict == "Maximal"
    assert monokit.check(fixture("abs_shrunk.json"), "onedim").verdict == "NotMaximal"
    text = monokit.trace(f, [0.0], [1.0])
    assert "alpha: -inf" in text
    assert "value [-1, 1]" in text


def test_evaluate_and_fitzpatrick():
    value = monokit.evaluate(fixture("box.json"), np.array([0.5, 0.5]))
    assert not value["empty"]
    pairs = [(np.array([0.0]), np.array([0.0])), (np.array([1.0]), np.array([1.0]))]
    phi, c = monokit.fitzpatrick(pairs, np.array([1.0]), np.array([1.0]))
    assert phi == pytest.approx(c)


def test_oracle():
    report = monokit.oracle(fixture("single_pair.json"), 0.5, -1.0, 1.0)
    assert not report["grid_maximal"]
    assert "verdict: NotGridMaximal" in report["text"]


def test_errors():
    with pytest.raises(monokit.ParseError):
        monokit.parse('{"dim": 0}')
    with pytest.raises(monokit.Error):
        monokit.check(fixture("box.json"), "bogus")
    assert fixture("box.json").serialize() == monokit.parse(fixture("box.json").serialize()).serialize()
