import json

import pytest

from themescope.errors import FixtureError
from themescope.fixtures.corpus_gen import CorpusSpec, generate_corpus, generate_transcripts
from themescope.fixtures.mock_llm import deterministic_port, stable_int
from themescope.fixtures.reference import (
    load_authoritative_themes,
    load_published_distribution,
    load_theme_mapping,
    verify_checksum,
)


def test_reference_list_has_22_themes():
    ref = load_authoritative_themes()
    assert len(ref.themes) == 22
    assert all(t.report_ids for t in ref.themes)
    assert all(1 <= rid <= 6 for t in ref.themes for rid in t.report_ids)


def test_mapping_matrix_has_35_rows():
    matrix = load_theme_mapping()
    assert len(matrix.rows) == 35
    assert matrix.columns == ["authoritative", "forum", "interview"]
    assert sum(1 for cell in matrix.column("authoritative") if cell) == 22


def test_checksum_mismatch_is_fatal():
    with pytest.raises(FixtureError, match="checksum"):
        verify_checksum("x.tsv", "tampered content", {"x.tsv": "0" * 64})


def test_published_distribution_fixture():
    dist = load_published_distribution("forum")
    assert dist.total == 122_191
    assert dist.published_percents["Personal Strategies"] == "18.82"
    assert any("18.81" in note for note in dist.notes)
    interview = load_published_distribution("interview")
    assert interview.total == 16_629
    assert any("16,029" in note for note in interview.notes)
    with pytest.raises(FixtureError):
        load_published_distribution("notes")


def test_corpus_generation_is_byte_deterministic(tmp_path):
    spec = CorpusSpec(n_threads=40, corrupt_lines=2)
    s1, c1, n1 = generate_corpus(spec, seed=7, out_dir=tmp_path / "a")
    s2, c2, n2 = generate_corpus(spec, seed=7, out_dir=tmp_path / "b")
    assert s1.read_bytes() == s2.read_bytes()
    assert c1.read_bytes() == c2.read_bytes()
    assert n1 == n2
    s3, _, _ = generate_corpus(spec, seed=8, out_dir=tmp_path / "c")
    assert s1.read_bytes() != s3.read_bytes()


def test_transcripts_deterministic():
    a = generate_transcripts(5, seed=3)
    b = generate_transcripts(5, seed=3)
    assert [t.to_record() for t in a] == [t.to_record() for t in b]
    assert all(t.turns[0].speaker == "bot" for t in a)


def test_stable_int_is_stable():
    assert stable_int("abc") == stable_int("abc")
    assert stable_int("abc") != stable_int("abd")


def test_deterministic_port_requires_known_tag():
    port = deterministic_port()
    with pytest.raises(AssertionError, match="no scripted response"):
        port.complete("prompt", model_id="m", tag="unknown_template")
