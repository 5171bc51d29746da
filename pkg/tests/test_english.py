import pytest

from ovp_toolkit import english
from ovp_toolkit.english import (
    inflect,
    inflect_regular,
    naive_segment,
    render_structured,
    singularize,
)


class TestInflect:
    @pytest.mark.parametrize(
        "lemma,tense,subject,expected",
        [
            ("eat", "past", "he", "ate"),
            ("walk", "past", "he", "walked"),
            ("cook", "present", "she", "cooks"),
            ("cook", "present", "they", "cook"),
            ("swim", "present_continuous", "I", "am swimming"),
            ("swim", "past_continuous", "they", "were swimming"),
            ("see", "future", "he", "will see"),
            ("see", "future_going_to", "he", "is going to see"),
            ("eat", "present_perfect", "she", "has eaten"),
            ("eat", "present_perfect", "they", "have eaten"),
            ("carry", "past", "he", "carried"),
            ("chase", "present", "it", "chases"),
        ],
    )
    def test_natural(self, lemma, tense, subject, expected):
        assert inflect(lemma, tense, subject) == expected

    def test_regular_keeps_lemma_substring(self):
        for lemma in ("eat", "see", "drink", "run", "migrate", "chase"):
            for tense in english.TENSES:
                out = inflect_regular(lemma, tense, "he")
                assert lemma in out, (lemma, tense, out)

    def test_placeholder_inflection(self):
        assert inflect("[migrate]", "future", "it") == "will [migrate]"
        assert inflect("[bake]", "present_continuous", "she") == "is [bake]-ing"
        assert inflect("[walk]", "past", "he") == "[walk]-ed"

    def test_unknown_tense(self):
        with pytest.raises(ValueError):
            inflect("eat", "pluperfect", "he")


def test_singularize():
    assert singularize("dogs") == "dog"
    assert singularize("dishes") == "dish"
    assert singularize("berries") == "berry"
    assert singularize("glass") == "glass"
    assert singularize("tv") == "tv"


class TestRenderStructured:
    def test_proximal_distal_demonstratives(self):
        out = render_structured(
            [
                {"part_of_speech": "subject", "positional": "proximal", "word": "wood"},
                {"part_of_speech": "object", "positional": "proximal", "word": "dog"},
                {
                    "part_of_speech": "verb",
                    "tense": "present continuous (-ing)",
                    "word": "see",
                },
            ]
        )
        assert out == "This wood is seeing this dog."

    def test_plural_demonstratives(self):
        out = render_structured(
            [
                {"part_of_speech": "subject", "positional": "distal", "word": "bird"},
                {
                    "part_of_speech": "object",
                    "positional": "distal",
                    "number": "plural",
                    "word": "fish",
                },
                {"part_of_speech": "verb", "tense": "future (will)", "word": "see"},
            ]
        )
        assert out == "That bird will see those fish."

    def test_bare_pronoun_subject(self):
        out = render_structured(
            [
                {"part_of_speech": "subject", "word": "I"},
                {"part_of_speech": "verb", "tense": "present continuous (-ing)", "word": "swim"},
            ]
        )
        assert out == "I am swimming."


class TestNaiveSegment:
    def test_simple_progressive(self):
        assert naive_segment("I am sitting in a chair.") == [
            {"subject": "I", "verb": "sit", "verb_tense": "present_continuous", "object": None}
        ]

    def test_svo_past(self):
        assert naive_segment("The dog chased the cat.") == [
            {"subject": "dog", "verb": "chase", "verb_tense": "past", "object": "cat"}
        ]

    def test_future_modal_scopes_over_coordination(self):
        out = naive_segment("The birds will migrate and return in the spring.")
        assert [s["verb_tense"] for s in out] == ["future", "future"]
        assert [s["verb"] for s in out] == ["migrate", "return"]
        assert {s["subject"] for s in out} == {"bird"}

    def test_compound_subject_distribution(self):
        out = naive_segment("Rachel and Monica share an apartment.")
        assert {s["subject"] for s in out} == {"rachel", "monica"}
        assert all(s["verb"] == "share" and s["object"] == "apartment" for s in out)

    def test_while_clause_inherits_subject(self):
        out = naive_segment("Maria and Ron were baking bread while singing songs.")
        assert len(out) == 3
        assert out[-1] == {
            "subject": "ron",
            "verb": "sing",
            "verb_tense": "past_continuous",
            "object": "song",
        }

    def test_past_equals_base_disambiguation(self):
        out = naive_segment("Harry wrote and Ron read.")
        assert out[1]["verb_tense"] == "past"

    def test_adverbs_and_prepositions_dropped(self):
        out = naive_segment("Romeo and Juliet loved deeply.")
        assert all(s["object"] is None for s in out)
