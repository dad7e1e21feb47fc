import pytest

import waring7


def test_decompose_and_verify():
    form = waring7.generate("random", seed=3)
    dec = waring7.decompose(form, seed=1)
    assert len(dec["terms"]) == 7
    assert dec["residual"] <= 1e-8
    assert waring7.verify(form, dec) <= 1e-8


def test_failure_is_reported():
    form = waring7.generate("rank-two", seed=1)
    with pytest.raises(waring7.DecompositionFailure) as info:
        waring7.decompose(form, seed=1)
    assert info.value.reason["code"] == "Q_SQUARE"


def test_malformed_form():
    with pytest.raises(waring7.Error):
        waring7.decompose({"side": "primal", "nvars": 3, "degree": 4, "coeffs": []})


def test_probe_is_deterministic():
    form = waring7.generate("random", seed=5)
    a = waring7.probe(form, trials=4, seed=2)
    b = waring7.probe(form, trials=4, seed=2)
    assert a == b
    assert a["trials"] == 4


def test_chain_and_experiments():
    form = waring7.generate("random", seed=6)
    chain = waring7.chain(form, seed=2)
    assert chain["fixed_points"]["kind"] in ("parabolic", "diagonalizable")
    report = waring7.experiments(seed=1, frames=4)
    assert len(report["cases"]) == 5
