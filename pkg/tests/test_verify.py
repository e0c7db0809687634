import json

import pytest

from stringcone import verify
from stringcone.verify import CHECKS, MAX_RANK, ghkk_comparison, sign_witness, verify_many, verify_word
from stringcone.arrangement import Arrangement
from stringcone.words import enumerate_reduced_words, longest_element


def test_longest_word_runs_all_checks():
    report = verify_word((1, 2, 1), 2)
    assert report.passed
    assert report.extension == (1, 2, 1)
    assert [c.name for c in report.checks] == list(CHECKS)


@pytest.mark.parametrize("word", [(), (1,), (2, 1), (1, 3), (2, 3, 2)])
def test_prefix_words_pass(word):
    assert verify_word(word, 3).passed


def test_explicit_extension():
    report = verify_word((1, 2, 3, 2, 1), 3, extension=(1, 2, 3, 2, 1, 2))
    assert report.passed
    with pytest.raises(ValueError):
        verify_word((1, 2), 2, extension=(2, 1, 2))


def test_rank_limit():
    with pytest.raises(ValueError):
        verify_word((1,), MAX_RANK + 1)


def test_failures_carry_counterexamples(monkeypatch):
    monkeypatch.setattr(verify, "_check_unimodular",
                        lambda arr: verify.CheckResult("unimodular", False, {"det": 2}))
    report = verify_word((1, 2, 1), 2)
    assert not report.passed
    data = report.to_json()
    assert data["status"] == "FAIL"
    assert data["checks"][0] == {"name": "unimodular", "status": "FAIL", "counterexample": {"det": 2}}


def test_report_json_is_stable():
    report = verify_many([(1, 2, 1), (2, 1, 2)], 2, jobs=1)
    data = report.to_json()
    assert data["schema"] == 1 and data["words"] == 2 and data["status"] == "PASS"
    assert json.dumps(data, sort_keys=True) == json.dumps(verify_many([(1, 2, 1), (2, 1, 2)], 2, jobs=1).to_json(), sort_keys=True)


def test_process_pool_matches_serial():
    words = enumerate_reduced_words(longest_element(3))[:4]
    serial = verify_many(words, 3, jobs=1).to_json()
    pooled = verify_many(words, 3, jobs=2).to_json()
    assert serial == pooled


def test_ghkk_comparison_on_schubert_example():
    arr, arr0 = Arrangement((1, 2, 3, 2, 1), 3), Arrangement((1, 2, 3, 2, 1, 2), 3)
    out = ghkk_comparison(arr, arr0)
    assert len(out["restricted_inequalities"]) == 12
    assert len(out["ghkk_inequalities"]) == 10
    assert out["ghkk_inside_restricted"] and not out["equal"]
    assert out["witness_only_in"] == "restricted"
    assert out["witness"] == [-1, -1, -1, 1, -1, -1, -1, -1]
    assert out["space"] == ["e(1,2)", "e(1,3)", "e(1,4)", "e(3,4)", "e(2,4)", "e1", "e2", "e3"]


def test_ghkk_comparison_equal_on_longest_word():
    arr = Arrangement((1, 2, 1), 2)
    out = ghkk_comparison(arr, arr)
    assert out["equal"] and "witness" not in out


def test_sign_witness_none_when_contained():
    from stringcone.cones import HCone
    quadrant = HCone(("a", "b"), ((1, 0), (0, 1)))
    half = HCone(("a", "b"), ((1, 0),))
    assert sign_witness(quadrant, half) is None
    assert sign_witness(half, quadrant) == (1, -1)


def test_braid_context_report_on_sl3():
    from stringcone.arrangement import triangle_crossings
    from stringcone.verify import braid_context_report

    arr = Arrangement((1, 2, 1), 2)
    assert set(triangle_crossings(arr, (1, 2))) == {(1, 2), (1, 3), (2, 3)}
    report = braid_context_report(arr, (1, 2))
    assert report["mismatches"] == []
    assert report["shapes"] == {(2, 1): 1, (1, 2): 1}
