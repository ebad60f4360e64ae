import json
import random

import pytest

from case_table import CASES, FAILING, PASSING
from verbal_quandles.axioms import check_word
from verbal_quandles.classifier import (
    NPARAM,
    EnumerationBudgetExceeded,
    EnumerationReport,
    FamilyTag,
    canonical_word,
    classify,
    count_tails,
    enumerate_words,
    family_word,
    iter_tails,
    translated_conjugation_parameters,
    translated_word,
)
from verbal_quandles.freegroup import Word, format_word, parse


def test_canonical_word_examples():
    assert canonical_word(parse("z"), 1) == parse("y*z^-1*y^-1*x*z")
    assert canonical_word(Word(), -1) == parse("y^2*x^-1")
    assert canonical_word(parse("y"), -1) == parse("y*x^-1*y")
    assert canonical_word(parse("y^-1*z*y"), 1) == parse("z^-1*x*y^-1*z*y")


def test_canonical_word_rejects_x_in_tail():
    with pytest.raises(ValueError):
        canonical_word(parse("x"), 1)


def test_empty_tail_negative_sign_is_unclassified_and_fails_q3():
    W = canonical_word(Word(), -1)
    assert classify(W) is None
    assert check_word(W).failed_axiom == "q3"


@pytest.mark.parametrize(
    "text, tag",
    [
        ("y*x^-1*y", FamilyTag(1)),
        ("y*z^-2*y^-1*x*z^2", FamilyTag(3, s=2)),
        ("z^-1*y^-1*x*z*y", FamilyTag(5, s=1)),
        ("z^-2*x*y^-1*z^2*y", FamilyTag(6, s=2)),
        ("y*z^-3*x*y^-1*z^3", FamilyTag(4, s=3)),
        ("y^3*x*y^-3", FamilyTag(2, s=-3)),
        ("x", FamilyTag(2, s=0)),
        ("y*x*y^-1", FamilyTag(2, s=-1)),
    ],
)
def test_classify_examples(text, tag):
    assert classify(parse(text)) == tag


@pytest.mark.parametrize("text", ["y*z^-1*x*z", "z^-1*x*z", "y^2*x^-1", "x*y*x", "y*z1^-1*y^-1*x*z1"])
def test_classify_unclassified(text):
    assert classify(parse(text)) is None


@pytest.mark.parametrize("family", range(1, 7))
@pytest.mark.parametrize("s", range(-5, 6))
def test_templates_classify_to_lowest_family(family, s):
    W = family_word(family, s)
    tag = classify(W)
    assert tag is not None
    if family == 1:
        assert tag == FamilyTag(1)
    elif s == 0 or family == 2:
        assert tag.family == 2
    else:
        assert tag == FamilyTag(family, s=s)
    assert check_word(W).passed


def test_family_tag_invariants():
    with pytest.raises(ValueError):
        FamilyTag(1, s=1)
    with pytest.raises(ValueError):
        FamilyTag(2)
    with pytest.raises(ValueError):
        FamilyTag(3)
    with pytest.raises(ValueError):
        FamilyTag(3, s=1, u=parse("z"))
    with pytest.raises(ValueError):
        FamilyTag(7, s=1)


def test_n_parameter_mode_soundness():
    rng = random.Random(7)
    for _ in range(100):
        length = rng.randint(1, 4)
        sylls, prev = [], None
        for _ in range(length):
            g = rng.choice([p for p in ("z1", "z2") if p != prev])
            sylls.append((g, rng.choice([-2, -1, 1, 2])))
            prev = g
        u = Word(tuple(sylls))
        for family in (3, 4, 5, 6):
            W = family_word(family, u=u)
            tag = classify(W, NPARAM, params=("z1", "z2"))
            assert tag == FamilyTag(family, u=u)
            assert check_word(W, params=("z1", "z2")).passed


def test_n_parameter_single_mode_rejects_long_u():
    W = family_word(3, u=parse("z1*z2"))
    assert classify(W, params=("z1", "z2")) is None
    assert classify(W, NPARAM).family == 3


@pytest.mark.parametrize("name", sorted(PASSING))
def test_named_passing_cases(name):
    for label, tail, eps in CASES[name]:
        W = canonical_word(tail, eps)
        verdict = check_word(W)
        tag = classify(W)
        if verdict.passed:
            assert tag is not None and tag.family in PASSING[name], (name, label)
        else:
            # Only the z-free cases contain non-quandle instances.
            assert name in ("1", "2.1") and verdict.failed_axiom == "q3" and tag is None


@pytest.mark.parametrize("name", FAILING)
def test_named_failing_cases(name):
    for label, tail, eps in CASES[name]:
        W = canonical_word(tail, eps)
        assert check_word(W).failed_axiom == "q3", (name, label, str(W))
        assert classify(W) is None


def test_case_3211_passes():
    for s in (1, 2, -1, -2):
        assert check_word(parse(f"z^{-s}*y^-1*x*z^{s}*y")).passed


def test_case_5_failures_or_translated_conjugations():
    for label, tail, eps in CASES["5"]:
        W = canonical_word(tail, eps)
        v = check_word(W)
        if v.passed:
            s, t = translated_conjugation_parameters(W)
            assert abs(t) >= 2
        else:
            assert v.failed_axiom == "q3"


@pytest.mark.parametrize("s", [-2, -1, 1, 2, 3])
@pytest.mark.parametrize("t", range(-3, 4))
def test_translated_conjugation_words_pass(s, t):
    W = translated_word(s, t)
    assert check_word(W).passed
    if t == 1:
        assert classify(W) == FamilyTag(5, s=s)
    elif t == -1:
        assert classify(W) == FamilyTag(4, s=-s)
    elif t == 0:
        assert W == parse("x")
    else:
        assert classify(W) is None
        assert translated_conjugation_parameters(W) == (s, t)


def test_iteration_order():
    tails = list(iter_tails(2, 1, ("y", "z")))
    assert [format_word(t) for t in tails[:7]] == ["1", "y^-1", "y", "z^-1", "z", "y^-1*z^-1", "y^-1*z"]
    assert len(tails) == count_tails(2, 1, 2)


def test_enumerate_default_bounds():
    report = enumerate_words(3, 2)
    assert report.candidates_checked == 338
    assert report.unclassified == []
    assert report.families_found() == [1, 2, 3, 4, 5, 6]
    assert report.family_parameters(2) == [-2, -1, 0, 1, 2]
    for family in (3, 4, 5, 6):
        assert report.family_parameters(family) == [-2, -1, 1, 2]
    words = [W for W, _ in report.passing]
    assert len(set(words)) == len(words)
    for W, _ in report.passing:
        assert check_word(W).passed


def test_enumerate_small():
    report = enumerate_words(0, 1)
    assert {format_word(W) for W, _ in report.passing} == {"x"}
    report = enumerate_words(1, 1)
    passing = {format_word(W) for W, _ in report.passing}
    assert {"y*x^-1*y", "x"} <= passing
    failing = {format_word(W): v for W, v in report.failing_samples}
    assert failing["y*z^-1*y*x^-1*z"].failed_axiom == "q3"


def test_enumerate_four_syllables_finds_translated_conjugations():
    report = enumerate_words(4, 1)
    assert report.families_found() == [1, 2, 3, 4, 5, 6]
    found = sorted(translated_conjugation_parameters(W) for W in report.unclassified)
    assert found == [(-1, -2), (-1, 2), (1, -2), (1, 2)]


def test_enumerate_n_parameter_completeness():
    report = enumerate_words(3, 1, NPARAM, 2)
    assert report.unclassified == []
    assert report.families_found() == [1, 2, 3, 4, 5, 6]


def test_enumerate_is_deterministic_and_serializable():
    a = enumerate_words(3, 2).to_dict()
    b = enumerate_words(3, 2).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    back = EnumerationReport.from_dict(json.loads(json.dumps(a)))
    assert back.to_dict() == a


def test_enumerate_parallel_matches_serial():
    serial = enumerate_words(3, 1).to_dict()
    parallel = enumerate_words(3, 1, workers=2).to_dict()
    assert serial == parallel


def test_enumerate_budget_guard():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_words(6, 3, max_candidates=1000)
    with pytest.raises(ValueError):
        enumerate_words(-1, 1)
