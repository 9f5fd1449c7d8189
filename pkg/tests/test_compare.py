import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from themescope.compare.match import suggest_matches, write_suggestions_csv
from themescope.compare.models import (
    MappingMatrix,
    ReferenceTheme,
    ReferenceThemeList,
    read_mapping_matrix_csv,
    write_mapping_matrix_csv,
)
from themescope.compare.stats import overlap_stats
from themescope.errors import ArgumentError
from themescope.fixtures.reference import load_authoritative_themes, load_theme_mapping
from themescope.themes.models import Theme


def gen_theme(title):
    return Theme(theme_id=title, title=title, description=f"generated theme about {title}")


def match_response(match, note="because"):
    return json.dumps({"match": match, "note": note})


# ---------------------------------------------------------------------------
# overlap statistics
# ---------------------------------------------------------------------------


def test_digitized_mapping_matches_published_overlap():
    matrix = load_theme_mapping()
    stats = overlap_stats(matrix, "authoritative", ["forum", "interview"])
    assert stats.per_column["forum"].matched == 16
    assert stats.per_column["forum"].total == 22
    assert stats.per_column["interview"].matched == 16
    assert stats.per_column["interview"].total == 22
    assert stats.union_covered == 31
    assert stats.total_rows == 35
    assert stats.union_percent() == "88.6"
    assert stats.unique_to_reference == 4
    assert stats.unique_to_others == 13


def test_all_true_matrix():
    matrix = MappingMatrix(
        rows=["a", "b"], columns=["ref", "x", "y"], cells=[[True] * 3, [True] * 3]
    )
    stats = overlap_stats(matrix, "ref", ["x", "y"])
    assert stats.per_column["x"].percent() == "100.0"
    assert stats.union_percent() == "100.0"
    assert stats.unique_to_reference == 0 and stats.unique_to_others == 0


def test_unknown_column_rejected():
    matrix = MappingMatrix(rows=["a"], columns=["ref"], cells=[[True]])
    with pytest.raises(ArgumentError, match="unknown column"):
        overlap_stats(matrix, "nope", [])


def test_all_false_row_rejected():
    with pytest.raises(ArgumentError, match="all-false"):
        MappingMatrix(rows=["a"], columns=["x", "y"], cells=[[False, False]])


@given(st.lists(st.tuples(st.booleans(), st.booleans(), st.booleans()), min_size=1, max_size=40))
@settings(max_examples=200, deadline=None)
def test_overlap_stats_set_oracle(rows):
    rows = [r if any(r) else (True, r[1], r[2]) for r in rows]
    matrix = MappingMatrix(
        rows=[f"t{i}" for i in range(len(rows))],
        columns=["ref", "a", "b"],
        cells=[list(r) for r in rows],
    )
    stats = overlap_stats(matrix, "ref", ["a", "b"])
    # oracle: brute-force set arithmetic
    ref = {i for i, r in enumerate(rows) if r[0]}
    a = {i for i, r in enumerate(rows) if r[1]}
    b = {i for i, r in enumerate(rows) if r[2]}
    assert stats.per_column["a"].matched == len(ref & a)
    assert stats.per_column["b"].matched == len(ref & b)
    assert stats.union_covered == len(a | b)
    assert stats.unique_to_reference == len(ref - (a | b))
    assert stats.unique_to_others == len((a | b) - ref)
    assert stats.per_column["a"].matched <= stats.per_column["a"].total
    assert stats.union_covered >= max(len(ref & a), len(ref & b)) - len(ref - (a | b))


def test_overlap_row_permutation_invariant():
    matrix = load_theme_mapping()
    reversed_matrix = MappingMatrix(
        rows=list(reversed(matrix.rows)),
        columns=matrix.columns,
        cells=list(reversed(matrix.cells)),
    )
    a = overlap_stats(matrix, "authoritative", ["forum", "interview"])
    b = overlap_stats(reversed_matrix, "authoritative", ["forum", "interview"])
    assert a == b


def test_matrix_csv_round_trip(tmp_path):
    matrix = load_theme_mapping()
    path = tmp_path / "matrix.csv"
    write_mapping_matrix_csv(matrix, path)
    back = read_mapping_matrix_csv(path)
    assert back.rows == matrix.rows
    assert back.cells == matrix.cells


# ---------------------------------------------------------------------------
# match suggestions
# ---------------------------------------------------------------------------


def reference(*titles):
    return ReferenceThemeList(
        source_name="ref",
        themes=[ReferenceTheme(title=t, description=f"about {t}") for t in titles],
    )


def test_identity_matching_with_echo_mock(scripted_port):
    titles = ["Alpha", "Beta", "Gamma"]
    for t in titles:
        scripted_port.push("theme_match_suggestion", match_response(t))
    suggestions = suggest_matches([gen_theme(t) for t in titles], reference(*titles), scripted_port)
    assert [(s.reference_title, s.candidate_title) for s in suggestions] == [
        (t, t) for t in titles
    ]


def test_scripted_none_gives_unmatched_row(scripted_port):
    scripted_port.push("theme_match_suggestion", match_response(None, "nothing close"))
    (s,) = suggest_matches([gen_theme("Other")], reference("Lone"), scripted_port)
    assert s.candidate_title is None
    assert s.note == "nothing close"


def test_hallucinated_candidate_dropped(scripted_port):
    scripted_port.push("theme_match_suggestion", match_response("Not A Real Theme"))
    (s,) = suggest_matches([gen_theme("Real")], reference("Ref"), scripted_port)
    assert s.candidate_title is None


def test_sixteen_of_twentytwo_match(scripted_port):
    ref = load_authoritative_themes()
    assert len(ref.themes) == 22
    matched_titles = {t.title for t in ref.themes[:16]}
    generated = [gen_theme(t.title) for t in ref.themes[:16]]
    for theme in ref.themes:
        scripted_port.push(
            "theme_match_suggestion",
            match_response(theme.title if theme.title in matched_titles else None),
        )
    suggestions = suggest_matches(generated, ref, scripted_port)
    assert sum(1 for s in suggestions if s.candidate_title) == 16
    assert sum(1 for s in suggestions if s.candidate_title is None) == 6


def test_suggestions_export_for_human_confirmation(scripted_port):
    scripted_port.push("theme_match_suggestion", match_response("Alpha"))
    suggestions = suggest_matches([gen_theme("Alpha")], reference("Alpha"), scripted_port)
    buf = io.StringIO()
    write_suggestions_csv(suggestions, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "reference_title,candidate_title,note,confirmed"
    assert lines[1].startswith("Alpha,Alpha,")


def test_duplicate_reference_titles_rejected():
    with pytest.raises(ArgumentError, match="duplicate"):
        reference("Same", "Same")
