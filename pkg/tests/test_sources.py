import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from themescope.errors import ArgumentError, ScoringError
from themescope.sources.agreement import cohen_kappa
from themescope.sources.calibrate import calibration_report, calibration_sample
from themescope.sources.models import CalibrationSample, RelevanceLabel, SubredditRecord
from themescope.sources.prefilter import prefilter
from themescope.sources.scoring import binarize, score_source
from themescope.fixtures.mock_llm import ScriptedPort


def record(name, members=100, lang="en", over18=False, description=""):
    return SubredditRecord(
        name=name, members=members, primary_language=lang, over18=over18, description=description
    )


# ---------------------------------------------------------------------------
# prefilter
# ---------------------------------------------------------------------------


def test_prefilter_empty_catalog():
    assert prefilter([], 0.2) == []


def test_prefilter_keeps_largest_by_members():
    catalog = [record(f"sub{i}", members=i * 10) for i in range(10)]
    kept = prefilter(catalog, 0.3)
    assert [r.name for r in kept] == ["sub9", "sub8", "sub7"]


def test_prefilter_excludes_over18_and_non_english():
    catalog = [
        record("adult", over18=True),
        record("german", lang="de"),
        record("unknown", lang=""),
        record("fine", members=5),
        record("variant", lang="en-US", members=3),
    ]
    kept = prefilter(catalog, 1.0)
    assert [r.name for r in kept] == ["fine", "variant"]


def test_prefilter_ties_break_by_name():
    catalog = [record("bravo", members=10), record("alpha", members=10), record("zulu", members=99)]
    kept = prefilter(catalog, 1.0)
    assert [r.name for r in kept] == ["zulu", "alpha", "bravo"]


def test_prefilter_rejects_bad_fraction():
    with pytest.raises(ArgumentError):
        prefilter([record("a")], 0.0)
    with pytest.raises(ArgumentError):
        prefilter([record("a")], 1.2)


@given(
    st.lists(
        st.tuples(st.integers(0, 10_000), st.booleans(), st.sampled_from(["en", "de", ""])),
        max_size=60,
    ),
    st.floats(min_value=0.05, max_value=1.0),
)
@settings(max_examples=150, deadline=None)
def test_prefilter_size_and_membership_properties(rows, fraction):
    catalog = [
        record(f"sub{i:03d}", members=m, over18=o, lang=lang)
        for i, (m, o, lang) in enumerate(rows)
    ]
    kept = prefilter(catalog, fraction)
    eligible = [r for r in catalog if not r.over18 and r.primary_language.startswith("en")]
    assert len(kept) == int(fraction * len(eligible))  # floor
    names = {r.name for r in catalog}
    assert all(r.name in names and not r.over18 for r in kept)
    members = [r.members for r in kept]
    assert members == sorted(members, reverse=True)


# ---------------------------------------------------------------------------
# binarize
# ---------------------------------------------------------------------------


def label(p, c):
    return RelevanceLabel(
        population_relevance=p, population_reason="r", content_relevance=c, content_reason="r"
    )


def test_binarize_thresholds():
    assert binarize(label(3, 4)) is True
    assert binarize(label(5, 3)) is False


def test_binarize_exhaustive_default_thresholds():
    included = [(p, c) for p in range(1, 6) for c in range(1, 6) if binarize(label(p, c))]
    assert len(included) == 6
    assert included == [(p, c) for p in (3, 4, 5) for c in (4, 5)]


def test_binarize_monotone():
    for p in range(1, 6):
        for c in range(1, 6):
            base = binarize(label(p, c))
            if p < 5:
                assert not (base and not binarize(label(p + 1, c)))
            if c < 5:
                assert not (base and not binarize(label(p, c + 1)))


def test_binarize_rejects_out_of_range_thresholds():
    with pytest.raises(ArgumentError):
        binarize(label(3, 4), pop_threshold=0)


def test_relevance_label_rejects_out_of_range_scores():
    with pytest.raises(ArgumentError):
        label(0, 4)
    with pytest.raises(ArgumentError):
        label(3, 6)


# ---------------------------------------------------------------------------
# Cohen's kappa
# ---------------------------------------------------------------------------


def test_kappa_perfect_agreement():
    assert cohen_kappa([1, 0, 1, 1], [1, 0, 1, 1]) == 1.0


def test_kappa_confusion_fixture():
    # confusion [[20, 5], [10, 65]]: p_o = 0.85, marginals a (25, 75) and
    # b (30, 70) give p_e = 0.25*0.30 + 0.75*0.70 = 0.60, kappa = 0.625
    a = ["x"] * 25 + ["y"] * 75
    b = ["x"] * 20 + ["y"] * 5 + ["x"] * 10 + ["y"] * 65
    assert cohen_kappa(a, b) == pytest.approx(0.625, abs=1e-12)


def test_kappa_errors():
    with pytest.raises(ArgumentError):
        cohen_kappa([1], [1, 2])
    with pytest.raises(ArgumentError):
        cohen_kappa([], [])


def test_kappa_degenerate_single_category():
    assert cohen_kappa([1, 1, 1], [1, 1, 1]) == 1.0
    assert cohen_kappa([1, 1], [2, 2]) == 0.0


@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=60), st.randoms())
@settings(max_examples=200, deadline=None)
def test_kappa_symmetry_and_relabeling(a, rnd):
    b = [rnd.choice("abc") for _ in a]
    assert cohen_kappa(a, b) == pytest.approx(cohen_kappa(b, a), abs=1e-12)
    relabel = {"a": "z", "b": "q", "c": "m"}
    assert cohen_kappa([relabel[x] for x in a], [relabel[x] for x in b]) == pytest.approx(
        cohen_kappa(a, b), abs=1e-12
    )
    assert cohen_kappa(a, a) == 1.0


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------


def test_calibration_sample_full_catalog():
    catalog = [record(f"sub{i}") for i in range(10)]
    sample = calibration_sample(catalog, 10, seed=1)
    assert sorted(sample.sampled_names) == sorted(r.name for r in catalog)


def test_calibration_sample_deterministic():
    catalog = [record(f"sub{i}") for i in range(50)]
    assert calibration_sample(catalog, 10, seed=7).sampled_names == calibration_sample(
        catalog, 10, seed=7
    ).sampled_names


def test_calibration_sample_seeds_differ():
    catalog = [record(f"sub{i:04d}") for i in range(5000)]
    s1 = set(calibration_sample(catalog, 100, seed=1).sampled_names)
    s2 = set(calibration_sample(catalog, 100, seed=2).sampled_names)
    assert s1 != s2
    overlap = len(s1 & s2)
    assert overlap < 100  # with 5,000 names two full collisions are absurd


def test_calibration_sample_too_large():
    with pytest.raises(ArgumentError):
        calibration_sample([record("a")], 2, seed=0)


def _sample_with(labels):
    names = [f"s{i}" for i in range(len(labels))]
    sample = CalibrationSample(seed=0, sampled_names=names)
    for name, (h, l) in zip(names, labels):
        sample.human_labels[name] = h
        sample.llm_labels[name] = l
    return sample


def test_calibration_report_identical_labels_pass():
    pairs = [(label(4, 5), label(4, 5))] * 6 + [(label(1, 1), label(1, 1))] * 4
    report = calibration_report(_sample_with(pairs))
    assert report.kappa_population == 1.0
    assert report.kappa_content == 1.0
    assert report.kappa_binary == 1.0
    assert report.passed


def test_calibration_report_adversarial_binary_disagreement():
    # balanced marginals, zero agreement on the include decision
    pairs = [(label(5, 5), label(1, 1))] * 5 + [(label(1, 1), label(5, 5))] * 5
    report = calibration_report(_sample_with(pairs))
    assert report.kappa_binary <= 0
    assert not report.passed


def test_calibration_report_target_is_inclusive():
    # binary confusion [[40, 10], [5, 45]]: p_o = 0.85, p_e = 0.5, kappa = 0.7
    pairs = (
        [(label(5, 5), label(5, 5))] * 40
        + [(label(5, 5), label(1, 1))] * 10
        + [(label(1, 1), label(5, 5))] * 5
        + [(label(1, 1), label(1, 1))] * 45
    )
    report = calibration_report(_sample_with(pairs))
    assert report.kappa_binary == pytest.approx(0.7, abs=1e-12)
    assert report.passed


def test_calibration_report_missing_labels():
    sample = CalibrationSample(seed=0, sampled_names=["a", "b"])
    sample.human_labels["a"] = label(3, 3)
    with pytest.raises(ArgumentError, match="missing"):
        calibration_report(sample)


# ---------------------------------------------------------------------------
# scoring against the port
# ---------------------------------------------------------------------------


def rec_response(p, c):
    return json.dumps(
        {
            "population_relevance": p,
            "population_reason": "mostly US members",
            "content_relevance": c,
            "content_reason": "on-topic discussion",
        }
    )


def test_score_source_passthrough(scripted_port):
    scripted_port.push("source_relevance_labeling", rec_response(5, 4))
    got = score_source(record("jobs"), "topic", "US adults", scripted_port)
    assert (got.population_relevance, got.content_relevance) == (5, 4)
    assert got.population_reason and got.content_reason


def test_score_source_out_of_range_raises_scoring_error(scripted_port):
    scripted_port.push("source_relevance_labeling", *[rec_response(7, 4)] * 3)
    with pytest.raises(ScoringError) as exc:
        score_source(record("jobs"), "topic", "US adults", scripted_port, max_retries=2)
    assert "7" in exc.value.raw_text


def test_score_source_renders_once_per_record_with_substitution(scripted_port):
    catalog = [record(f"sub{i:03d}", description=f"about topic {i}") for i in range(100)]
    scripted_port.push("source_relevance_labeling", *[rec_response(3, 4)] * 100)
    for rec in catalog:
        score_source(rec, "ai and work", "US adults", scripted_port)
    assert scripted_port.call_count("source_relevance_labeling") == 100
    for rec, (_, prompt) in zip(catalog, scripted_port.calls):
        assert f"Subreddit name: {rec.name}" in prompt
        assert f"About description: {rec.description}" in prompt
        assert "$subreddit" not in prompt and "$about" not in prompt
