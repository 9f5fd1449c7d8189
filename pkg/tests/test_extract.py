import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from themescope.corpus.models import QAPair
from themescope.errors import ArgumentError
from themescope.extract.models import (
    MARK_NOT_FOUND,
    MARK_NOT_RELEVANT,
    MARK_RELEVANT,
    Quote,
    clip_summary,
)
from themescope.extract.normalize import normalize_for_match
from themescope.extract.provenance import verify_provenance
from themescope.extract.quotes import extract_quotes, filter_interview_quotes
from themescope.extract.validation import (
    agreement_rate,
    build_validation_sheet,
    read_sheet_csv,
    write_sheet_csv,
)

from conftest import make_thread


# ---------------------------------------------------------------------------
# normalization and provenance
# ---------------------------------------------------------------------------


def test_exact_substring_verifies():
    assert verify_provenance("second comment", "first comment\nsecond comment") is True


def test_smart_quotes_and_doubled_spaces_verify():
    # oracle: hand-applied normalization of both sides
    quote = "it’s  a “big” shift — really"
    source = 'yeah it\'s a "big" shift - really, I think'
    assert normalize_for_match(quote) == "it's a \"big\" shift - really"
    assert verify_provenance(quote, source) is True


def test_substituted_word_fails():
    assert verify_provenance("the cat sat", "the dog sat on the mat") is False


def test_case_folding_and_whitespace_runs():
    assert verify_provenance("The Market\tIs  Bad", "they said the market is bad today")


def test_empty_or_whitespace_quote_never_verifies():
    assert verify_provenance("   ", "anything") is False


@given(st.text(min_size=3, max_size=40), st.text(max_size=20), st.text(max_size=20))
@settings(max_examples=200, deadline=None)
def test_any_span_of_source_verifies(span, prefix, suffix):
    source = prefix + span + suffix
    assert verify_provenance(span, source) or not normalize_for_match(span)


# ---------------------------------------------------------------------------
# summary clipping
# ---------------------------------------------------------------------------


def test_clip_summary_within_bound():
    assert clip_summary("seven words is fine") == ("seven words is fine", False)


def test_clip_summary_truncates_and_flags():
    text = "one two three four five six seven eight nine ten"
    clipped, flagged = clip_summary(text)
    assert clipped == "one two three four five six seven eight"
    assert flagged


# ---------------------------------------------------------------------------
# forum extraction
# ---------------------------------------------------------------------------


def entries_response(*quotes):
    return json.dumps(
        {"entries": [{"quote": q, "summary": "short gloss"} for q in quotes]}
    )


def test_extract_null_is_empty(scripted_port):
    scripted_port.push("quote_extraction", "null")
    result = extract_quotes(make_thread(), "topic", "focus", scripted_port)
    assert result.quotes == [] and result.quarantined == []


def test_extract_verbatim_comment_is_verified(scripted_port):
    thread = make_thread(comments=("alpha comment", "bravo comment text"))
    scripted_port.push("quote_extraction", entries_response("bravo comment text"))
    result = extract_quotes(thread, "topic", "focus", scripted_port)
    assert len(result.quotes) == 1
    q = result.quotes[0]
    assert q.verified and q.community == "jobs" and q.source_id == thread.submission_id
    assert q.quote_id == f"{thread.submission_id}:0"


def test_extract_quarantines_fabrication(scripted_port):
    thread = make_thread(comments=("alpha comment", "bravo comment"))
    scripted_port.push(
        "quote_extraction", entries_response("bravo comment", "totally invented words")
    )
    result = extract_quotes(thread, "topic", "focus", scripted_port)
    assert [q.quote_text for q in result.quotes] == ["bravo comment"]
    assert [q.quote_text for q in result.quarantined] == ["totally invented words"]
    # nothing silently dropped: emitted + quarantined = model output
    assert len(result.quotes) + len(result.quarantined) == 2


def test_extract_truncates_long_summaries(scripted_port):
    thread = make_thread(comments=("alpha comment",))
    response = json.dumps(
        {"entries": [{"quote": "alpha comment",
                      "summary": "way too many words in this summary gloss here now"}]}
    )
    scripted_port.push("quote_extraction", response)
    result = extract_quotes(thread, "topic", "focus", scripted_port)
    q = result.quotes[0]
    assert q.summary_truncated
    assert len(q.summary.split()) == 8


def test_extract_prompt_carries_thread_payload(scripted_port):
    thread = make_thread(title="very particular title")
    scripted_port.push("quote_extraction", "null")
    extract_quotes(thread, "economy", "jobs focus", scripted_port)
    _, prompt = scripted_port.calls[0]
    assert "very particular title" in prompt
    assert "jobs focus" in prompt and "economy" in prompt


# ---------------------------------------------------------------------------
# interview filtering
# ---------------------------------------------------------------------------


def pair(idx, question, answer):
    return QAPair(
        transcript_id="tr1", pair_index=idx, question=question, answer_fragments=(answer,)
    )


def keep(keep_it, summary="kept answer gloss"):
    return json.dumps({"keep": keep_it, "summary": summary if keep_it else ""})


def test_transitional_answer_dropped(scripted_port):
    scripted_port.push("interview_message_filter", keep(False))
    assert filter_interview_quotes([pair(0, "q", "Hello! Sure.")], "topic", scripted_port) == []


def test_substantive_answer_retained(scripted_port):
    scripted_port.push("interview_message_filter", keep(True))
    quotes = filter_interview_quotes(
        [pair(3, "how affected?", "my shifts went down a lot")], "topic", scripted_port
    )
    assert len(quotes) == 1
    q = quotes[0]
    assert q.source_kind == "interview" and q.quote_id == "tr1:3"
    assert q.quote_text == "my shifts went down a lot"
    assert len(q.summary.split()) <= 8
    assert q.verified


def test_filter_count_oracle(scripted_port):
    pairs = [pair(i, f"q{i}", f"answer number {i} with detail") for i in range(100)]
    # script exactly 37 transitional marks
    drop_set = set(range(37))
    for i in range(100):
        scripted_port.push("interview_message_filter", keep(i not in drop_set))
    quotes = filter_interview_quotes(pairs, "topic", scripted_port)
    assert len(quotes) == 63


# ---------------------------------------------------------------------------
# validation sheet and agreement
# ---------------------------------------------------------------------------


def corpus(communities=12, per=30):
    return [
        make_thread(sid=f"{c:02d}-{i:03d}", subreddit=f"community{c:02d}")
        for c in range(communities)
        for i in range(per)
    ]


def test_sheet_samples_k_communities_n_each():
    sheet = build_validation_sheet(corpus(12, 30), k_communities=5, n_per=10, seed=3)
    assert len(sheet.rows) == 50
    assert len({r.community for r in sheet.rows}) == 5
    assert not sheet.flagged_short


def test_sheet_short_corpus_flagged():
    sheet = build_validation_sheet(corpus(3, 4), k_communities=10, n_per=100, seed=3)
    assert len({r.community for r in sheet.rows}) == 3
    assert sheet.flagged_short
    assert len(sheet.rows) == 12


def test_sheet_same_seed_identical():
    a = build_validation_sheet(corpus(), k_communities=4, n_per=7, seed=9)
    b = build_validation_sheet(corpus(), k_communities=4, n_per=7, seed=9)
    assert [r.row_key() for r in a.rows] == [r.row_key() for r in b.rows]


def test_sheet_expands_rows_per_quote():
    threads = corpus(2, 2)
    quotes = {
        threads[0].submission_id: [
            Quote(quote_id="a:0", quote_text="one", summary="s", source_kind="forum", source_id="a"),
            Quote(quote_id="a:1", quote_text="two", summary="s", source_kind="forum", source_id="a"),
        ]
    }
    sheet = build_validation_sheet(threads, k_communities=2, n_per=2, seed=0, quotes_by_source=quotes)
    texts = [r.quote_text for r in sheet.rows if r.quote_text]
    assert sorted(texts) == ["one", "two"]


def _marked_sheet(relevant, total):
    sheet = build_validation_sheet(corpus(10, 20), k_communities=10, n_per=total // 10, seed=1)
    for i, row in enumerate(sheet.rows):
        row.mark = MARK_RELEVANT if i < relevant else MARK_NOT_RELEVANT
    return sheet


def test_agreement_71_of_100_passes():
    rate, passed = agreement_rate(_marked_sheet(71, 100))
    assert rate == pytest.approx(0.71)
    assert passed


def test_agreement_70_of_100_fails_strict():
    rate, passed = agreement_rate(_marked_sheet(70, 100))
    assert rate == pytest.approx(0.70)
    assert not passed


def test_agreement_unmarked_rows_listed():
    sheet = _marked_sheet(50, 100)
    sheet.rows[3].mark = ""
    with pytest.raises(ArgumentError, match="unmarked"):
        agreement_rate(sheet)


@given(st.lists(st.sampled_from([MARK_RELEVANT, MARK_NOT_RELEVANT, MARK_NOT_FOUND]),
                min_size=1, max_size=200))
@settings(max_examples=150, deadline=None)
def test_agreement_recount_oracle(marks):
    sheet = build_validation_sheet(corpus(1, len(marks)), k_communities=1, n_per=len(marks), seed=0)
    for row, mark in zip(sheet.rows, marks):
        row.mark = mark
    rate, passed = agreement_rate(sheet)
    manual = sum(m == MARK_RELEVANT for m in marks) / len(marks)
    assert rate == pytest.approx(manual)
    assert passed == (manual > 0.70)


def test_sheet_csv_round_trip(tmp_path):
    sheet = _marked_sheet(5, 10)
    path = tmp_path / "sheet.csv"
    write_sheet_csv(sheet, path)
    back = read_sheet_csv(path)
    assert [(r.community, r.source_id, r.mark) for r in back.rows] == [
        (r.community, r.source_id, r.mark) for r in sheet.rows
    ]
