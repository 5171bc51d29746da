import json
import unicodedata

import pytest

from ovp_toolkit.lexicon import (
    CATEGORIES,
    Lexeme,
    LexiconError,
    load_lexicon,
    nfc,
)


def test_all_categories_populated(lexicon):
    for category in CATEGORIES:
        assert lexicon.by_category(category)


def test_counts_match_vocabulary(lexicon):
    assert len(lexicon.by_category("transitive-verb")) == 14
    assert len(lexicon.by_category("intransitive-verb")) == 22
    assert len(lexicon.by_category("noun")) == 33
    assert len(lexicon.by_category("tense-suffix")) == 6
    assert len(lexicon.by_category("subject-pronoun")) == 12
    assert len(lexicon.by_category("subject-suffix")) == 2
    assert len(lexicon.by_category("object-pronoun-prefix")) == 12
    assert len(lexicon.by_category("object-suffix")) == 2


def test_surfaces_are_nfc(lexicon):
    for lexeme in lexicon:
        assert lexeme.surface == unicodedata.normalize("NFC", lexeme.surface)
        for alt in lexeme.alt_surfaces:
            assert alt == unicodedata.normalize("NFC", alt)


def test_tilde_w_is_w_plus_combining_tilde(lexicon):
    they = lexicon.get("sp:uhuw̃a")
    assert "w̃" in they.surface
    # no precomposed w-tilde exists; NFC must keep the two-codepoint form
    assert nfc("w̃") == "w̃"


def test_lenited_surfaces(lexicon):
    assert lexicon.get("tv:tüka").lenited_surface == "düka"
    assert lexicon.get("tv:puni").lenited_surface == "buni"
    assert lexicon.get("tv:kwana").lenited_surface == "gwana"
    assert lexicon.get("tv:sawa").lenited_surface == "zawa"
    assert lexicon.get("tv:tama'i").lenited_surface == "dama'i"
    assert lexicon.get("tv:mui").lenited_surface == "w̃ui"


def test_unknown_id_raises(lexicon):
    with pytest.raises(LexiconError):
        lexicon.get("tv:nope")


def test_unknown_category_raises(lexicon):
    with pytest.raises(LexiconError):
        lexicon.by_category("adjective")


def test_find_gloss_case_insensitive(lexicon):
    hits = lexicon.find_gloss("noun", "Dog")
    assert [h.id for h in hits] == ["n:isha'pugu"]


def test_duplicate_id_rejected(tmp_path):
    entry = {"id": "n:x", "surface": "x", "gloss": "x", "category": "noun"}
    doc = {"entries": [entry, entry]}
    path = tmp_path / "lex.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(LexiconError, match="duplicate"):
        load_lexicon(path)


def test_unknown_field_rejected(tmp_path):
    doc = {
        "entries": [
            {"id": "n:x", "surface": "x", "gloss": "x", "category": "noun", "color": "red"}
        ]
    }
    path = tmp_path / "lex.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(LexiconError, match="unknown fields"):
        load_lexicon(path)


def test_lexeme_invariants():
    with pytest.raises(LexiconError):
        Lexeme(id="x", surface="x", gloss="x", category="adverb")
    with pytest.raises(LexiconError):
        Lexeme(id="x", surface="x", gloss="x", category="noun", lenited_surface="y")
    with pytest.raises(LexiconError):
        Lexeme(id="x", surface="x", gloss="x", category="noun", proximity="distal")


def test_glottal_final(lexicon):
    assert lexicon.get("n:tabuutsi'").glottal_final
    assert not lexicon.get("n:tüba").glottal_final
